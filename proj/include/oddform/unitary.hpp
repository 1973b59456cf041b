#pragma once

// The module M = R^(2n+1) with its lambda-Hermitian form b and quadratic map
// q, the odd unitary group U_(2n+1)(R, Delta), its elementary generators and
// the relations between them.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "oddform/formparam.hpp"
#include "oddform/report.hpp"
#include "oddform/rings.hpp"

namespace oddform {

/// Index set {-n..-1, 0, 1..n}. The basis order is e_1..e_n, e_0, e_-n..e_-1.
struct Theta {
  int n;
  std::size_t dim() const { return static_cast<std::size_t>(2 * n + 1); }
  /// 0-based array position of the basis vector e_i.
  std::size_t pos(int i) const {
    return static_cast<std::size_t>(i > 0 ? i - 1 : (i == 0 ? n : 2 * n + 1 + i));
  }
  int label(std::size_t p) const {
    const int q = static_cast<int>(p);
    return q < n ? q + 1 : (q == n ? 0 : q - 2 * n - 1);
  }
  /// Labels in basis order.
  std::vector<int> all() const;
  /// Labels without 0.
  std::vector<int> hb() const;
  static int eps(int i) { return i > 0 ? 1 : -1; }
  bool valid(int i) const { return i >= -n && i <= n; }
};

using UVector = std::vector<Elem>;  // positions as in Theta::pos

struct UMatrix {
  int n = 0;
  std::vector<Elem> e;  // row-major over positions

  UMatrix() = default;
  explicit UMatrix(int n_) : n(n_), e(static_cast<std::size_t>((2 * n_ + 1) * (2 * n_ + 1)), 0) {}

  std::size_t dim() const { return static_cast<std::size_t>(2 * n + 1); }
  Elem& at(int i, int j) { return e[Theta{n}.pos(i) * dim() + Theta{n}.pos(j)]; }
  Elem at(int i, int j) const { return e[Theta{n}.pos(i) * dim() + Theta{n}.pos(j)]; }
  /// Column j as a vector.
  UVector column(int j) const;
  bool operator==(const UMatrix& o) const { return n == o.n && e == o.e; }
  bool operator<(const UMatrix& o) const { return e < o.e; }
};

struct UMatrixHash {
  std::size_t operator()(const UMatrix& m) const noexcept;
};

using MatrixSet = std::unordered_set<UMatrix, UMatrixHash>;

struct UnitaryCertificate {
  bool unitary = false;
  std::vector<std::string> violations;
};

/// Everything that depends on (n, quadruple, Delta).
class FormsContext {
 public:
  /// Certifies delta as a form parameter.
  FormsContext(int n, std::shared_ptr<const OddQuadruple> q, PointSet delta);

  int n() const noexcept { return n_; }
  Theta theta() const noexcept { return Theta{n_}; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(2 * n_ + 1); }
  const OddQuadruple& quadruple() const noexcept { return *q_; }
  const std::shared_ptr<const OddQuadruple>& quadruple_ptr() const noexcept { return q_; }
  const OddQuadruple& inverse_quadruple() const noexcept { return *q_inv_; }
  const FiniteRing& ring() const noexcept { return q_->ring(); }
  const Heisenberg& heis(int sign = 1) const { return sign >= 0 ? h_ : h_inv_; }
  /// Delta for sign +1, Delta^-1 for sign -1.
  const PointSet& delta(int sign = 1) const { return sign >= 0 ? delta_ : delta_inv_; }
  /// lambda^e with e in {-1, 0, 1}.
  Elem lam(int e) const { return q_->lambda_pow(e); }
  Elem bar(Elem x) const { return q_->bar(x); }
  json digest() const;

  UMatrix identity() const;
  UMatrix multiply(const UMatrix& a, const UMatrix& b) const;
  UVector apply(const UMatrix& a, const UVector& u) const;
  /// Exact inverse in M_(2n+1)(R), or nullopt if a is not invertible.
  std::optional<UMatrix> inverse(const UMatrix& a) const;
  /// Inverse, throwing Error(not_invertible).
  UMatrix inv(const UMatrix& a) const;
  /// a b a^-1 b^-1
  UMatrix commutator(const UMatrix& a, const UMatrix& b) const;
  /// h g h^-1
  UMatrix conjugate(const UMatrix& h, const UMatrix& g) const;

  Elem form_b(const UVector& u, const UVector& v) const;
  HPoint form_q(const UVector& u) const;
  UVector basis(int i) const;

  /// Both conditions of the column criterion; throws Error(not_invertible).
  UnitaryCertificate is_unitary(const UMatrix& s) const;
  UnitaryCertificate is_unitary(const UMatrix& s, const UMatrix& s_inv) const;
  /// b(su, sv) = b(u, v) and q(su) = q(u) mod Delta for every u, v in M, with
  /// invertibility taken as injectivity on M. Throws Error(cap_exceeded)
  /// when |M| > cap.
  bool is_unitary_bruteforce(const UMatrix& s, std::size_t cap = 4096) const;
  /// s^* G s = G for the Gram matrix of b.
  bool preserves_form(const UMatrix& s) const;

  // Elementary generators.
  UMatrix T_short(int i, int j, Elem x) const;
  UMatrix T_extra(int i, HPoint a) const;
  /// As T_extra without the membership check (used for relation
  /// right-hand sides).
  UMatrix T_extra_raw(int i, HPoint a) const;
  UMatrix T_long(int i, Elem y) const { return T_extra(i, {0, y}); }
  UMatrix P(int i, int j) const;
  /// The explicit entry formula for P_ij.
  UMatrix P_explicit(int i, int j) const;

  /// All short and extra short root matrices.
  std::vector<UMatrix> elementary_generators() const;

 private:
  void check_short_indices(int i, int j) const;

  int n_;
  std::shared_ptr<const OddQuadruple> q_;
  std::shared_ptr<const OddQuadruple> q_inv_;
  Heisenberg h_;
  Heisenberg h_inv_;
  PointSet delta_;
  PointSet delta_inv_;
};

/// Matrices of the even group U_(2m)(R, Lambda), indexed by +-1..+-m in the
/// order e_1..e_m, e_-m..e_-1.
struct EvenMatrix {
  int m = 0;
  std::vector<Elem> e;
  explicit EvenMatrix(int m_ = 0) : m(m_), e(static_cast<std::size_t>(4 * m_ * m_), 0) {}
  std::size_t pos(int i) const { return static_cast<std::size_t>(i > 0 ? i - 1 : 2 * m + i); }
  Elem& at(int i, int j) { return e[pos(i) * static_cast<std::size_t>(2 * m) + pos(j)]; }
  Elem at(int i, int j) const { return e[pos(i) * static_cast<std::size_t>(2 * m) + pos(j)]; }
};

EvenMatrix even_identity(const FiniteRing& r, int m);
EvenMatrix even_multiply(const FiniteRing& r, const EvenMatrix& a, const EvenMatrix& b);
EvenMatrix even_short(const FormsContext& ctx, int m, int i, int j, Elem x);
EvenMatrix even_long(const FormsContext& ctx, int m, int i, Elem y);
/// The block embedding (A B; C D) -> (A 0 B; 0 e 0; C 0 D). Throws
/// Error(size_mismatch) unless m <= n.
UMatrix embed_even(const FormsContext& ctx, const EvenMatrix& tau);
/// sigma in U_(2m+1) placed in the middle block.
UMatrix embed_odd(const FormsContext& ctx, const UMatrix& sigma);

enum class ClassicalKind { gl_odd, o_odd, sp_odd, even_as_odd };
ClassicalKind parse_classical_kind(std::string_view name);

/// Instances realizing GL, O, Sp and even unitary groups as odd unitary
/// groups. `base` is S for gl_odd and the commutative ring R otherwise.
/// For even_as_odd, `params` may hold "lambda", "mu" and "Lambda" ("min",
/// "max" or an explicit element list).
FormsContext classical_instance(ClassicalKind kind, const RingSpec& base, int n, const json& params = json::object());

/// Closure of `gens` under products and inverses, sorted. Throws
/// Error(closure_overflow) past `cap` elements.
std::vector<UMatrix> generate_group(const FormsContext& ctx, const std::vector<UMatrix>& gens,
                                    std::size_t cap = 200000);

/// Every unitary matrix, by scanning all |R|^((2n+1)^2) matrices. Throws
/// Error(cap_exceeded) when that count exceeds `scan_cap`.
std::vector<UMatrix> enumerate_unitary_group(const FormsContext& ctx, std::size_t scan_cap = std::size_t{1} << 22);

/// Every invertible matrix, by the same scan.
std::vector<UMatrix> enumerate_invertible(const FormsContext& ctx, std::size_t scan_cap = std::size_t{1} << 22);

json matrix_to_json(const FormsContext& ctx, const UMatrix& m, bool pretty = false);
UMatrix matrix_from_json(const FormsContext& ctx, const json& j);

/// Identities of b and q over all u, v (or samples).
std::vector<CheckReport> verify_forms(const FormsContext& ctx, std::uint64_t seed = 1, std::size_t samples = 20000);

/// The commutator and product relations between elementary matrices, for
/// every admissible index pattern. Values range over all of R and Delta when
/// that is at most `exhaustive_values` per slot; otherwise `samples` random
/// cases are drawn per relation.
std::vector<CheckReport> verify_relations(const FormsContext& ctx, std::uint64_t seed = 1,
                                          std::size_t exhaustive_values = 4, std::size_t samples = 2000);

/// Conjugation of root matrices by the permutation matrices P.
std::vector<CheckReport> verify_permutation_conjugations(const FormsContext& ctx, std::uint64_t seed = 1,
                                                         std::size_t exhaustive_values = 4,
                                                         std::size_t samples = 2000);

}  // namespace oddform
