#include "oddform/subgroup.hpp"

#include <algorithm>

#include "oddform/error.hpp"

namespace oddform {

SubgroupHandle SubgroupHandle::from_generators(const FormsContext& ctx, std::vector<UMatrix> gens, std::size_t cap,
                                               std::string name) {
  SubgroupHandle h(ctx, std::move(name));
  h.cap_ = cap;
  const UMatrix id = ctx.identity();
  for (auto& g : gens)
    if (g != id && std::find(h.gens_.begin(), h.gens_.end(), g) == h.gens_.end()) h.gens_.push_back(std::move(g));
  h.members_.insert(id);
  h.order_.push_back(id);
  h.closed_ = true;
  h.grow({id});
  return h;
}

SubgroupHandle SubgroupHandle::from_predicate(const FormsContext& ctx, std::string name, Predicate pred,
                                              std::vector<UMatrix> gens) {
  SubgroupHandle h(ctx, std::move(name));
  h.pred_ = std::move(pred);
  h.gens_ = std::move(gens);
  return h;
}

// Right multiplication by every generator until nothing new appears; in a
// finite group this yields the generated subgroup.
void SubgroupHandle::grow(std::vector<UMatrix> frontier) {
  std::size_t head = 0;
  while (head < frontier.size()) {
    const UMatrix cur = frontier[head++];
    for (const UMatrix& g : gens_) {
      UMatrix next = ctx_->multiply(cur, g);
      if (members_.count(next)) continue;
      if (order_.size() >= cap_) {
        truncated_ = true;
        closed_ = false;
        return;
      }
      members_.insert(next);
      order_.push_back(next);
      frontier.push_back(std::move(next));
    }
  }
}

std::vector<UMatrix> SubgroupHandle::elements() const {
  if (!closed_) throw Error(ErrorCode::closure_overflow, "subgroup '" + name_ + "' has no complete closure");
  std::vector<UMatrix> out = order_;
  std::sort(out.begin(), out.end());
  return out;
}

bool SubgroupHandle::contains(const UMatrix& m) const {
  if (pred_) return pred_(m);
  if (!closed_) throw Error(ErrorCode::closure_overflow, "membership in '" + name_ + "' is undecided past the cap");
  return members_.count(m) > 0;
}

bool SubgroupHandle::extend(const UMatrix& g) {
  if (truncated_ || pred_) return false;
  if (members_.count(g)) return true;
  gens_.push_back(g);
  // Elements are closed under the old generators, so only products with g
  // start new branches.
  std::vector<UMatrix> frontier;
  const std::vector<UMatrix> snapshot = order_;
  for (const UMatrix& e : snapshot) {
    UMatrix next = ctx_->multiply(e, g);
    if (members_.count(next)) continue;
    if (order_.size() >= cap_) {
      truncated_ = true;
      closed_ = false;
      return false;
    }
    members_.insert(next);
    order_.push_back(next);
    frontier.push_back(std::move(next));
  }
  grow(std::move(frontier));
  return !truncated_;
}

}  // namespace oddform
