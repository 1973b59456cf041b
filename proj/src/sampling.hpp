#pragma once

// Drives a quantifier over a finite domain: every tuple when the domain is
// small enough, uniform samples otherwise.

#include <cstdint>
#include <random>
#include <vector>

namespace oddform::detail {

class Quantifier {
 public:
  Quantifier(std::size_t domain, int arity, std::size_t limit, std::size_t samples, std::uint64_t seed)
      : domain_(domain), arity_(arity), rng_(seed) {
    double total = 1;
    for (int i = 0; i < arity; ++i) total *= static_cast<double>(domain);
    exhaustive_ = total <= static_cast<double>(limit);
    count_ = domain == 0 ? 0 : (exhaustive_ ? static_cast<std::size_t>(total) : samples);
  }
  bool exhaustive() const { return exhaustive_; }
  std::size_t count() const { return count_; }
  std::vector<std::size_t> tuple(std::size_t k) {
    std::vector<std::size_t> t(static_cast<std::size_t>(arity_));
    if (exhaustive_) {
      for (int i = arity_; i-- > 0;) {
        t[static_cast<std::size_t>(i)] = k % domain_;
        k /= domain_;
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, domain_ - 1);
      for (auto& v : t) v = pick(rng_);
    }
    return t;
  }

 private:
  std::size_t domain_;
  int arity_;
  std::mt19937_64 rng_;
  bool exhaustive_ = true;
  std::size_t count_ = 0;
};

}  // namespace oddform::detail
