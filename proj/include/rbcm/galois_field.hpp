// Prime field F_p and its quadratic extension F_{p^2} = F_p(sqrt(e)).

#ifndef RBCM_GALOIS_FIELD_HPP_
#define RBCM_GALOIS_FIELD_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rbcm {

/// Residue in [0, p). Arithmetic goes through a FieldContext.
struct FpElem {
  std::uint32_t value = 0;

  bool is_zero() const { return value == 0; }
  friend auto operator<=>(FpElem, FpElem) = default;
};

/// re + im * sqrt(e).
struct Fp2Elem {
  FpElem re;
  FpElem im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend auto operator<=>(const Fp2Elem&, const Fp2Elem&) = default;
};

bool is_prime(std::uint64_t n);

/// A prime p > 3 together with the fixed generators every other module is
/// written against: e generating F_p^x, and w1 + w2*sqrt(e) generating
/// F_{p^2}^x. Immutable once built; cheap lookups for inverses and roots.
class FieldContext {
 public:
  std::uint32_t p() const { return p_; }
  FpElem e() const { return e_; }
  FpElem w1() const { return w1_; }
  FpElem w2() const { return w2_; }
  /// w1 / w2.
  FpElem w() const { return w_; }

  FpElem elem(std::int64_t v) const;
  FpElem add(FpElem a, FpElem b) const { return {(a.value + b.value) % p_}; }
  FpElem sub(FpElem a, FpElem b) const { return {(a.value + p_ - b.value) % p_}; }
  FpElem neg(FpElem a) const { return {(p_ - a.value) % p_}; }
  FpElem mul(FpElem a, FpElem b) const {
    return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
  }
  /// Throws std::domain_error on zero.
  FpElem inv(FpElem a) const;
  FpElem div(FpElem a, FpElem b) const { return mul(a, inv(b)); }
  FpElem pow(FpElem a, std::uint64_t k) const;
  FpElem square(FpElem a) const { return mul(a, a); }

  bool is_square(FpElem a) const { return a.is_zero() || root_[a.value] != kNoRoot; }
  /// Smaller of the two square roots, or nullopt for non-squares.
  std::optional<FpElem> sqrt(FpElem a) const;

  Fp2Elem embed(FpElem a) const { return {a, FpElem{}}; }
  Fp2Elem sqrt_e() const { return {FpElem{}, FpElem{1}}; }
  Fp2Elem add(const Fp2Elem& a, const Fp2Elem& b) const;
  Fp2Elem sub(const Fp2Elem& a, const Fp2Elem& b) const;
  Fp2Elem neg(const Fp2Elem& a) const;
  Fp2Elem mul(const Fp2Elem& a, const Fp2Elem& b) const;
  Fp2Elem inv(const Fp2Elem& a) const;
  Fp2Elem div(const Fp2Elem& a, const Fp2Elem& b) const { return mul(a, inv(b)); }
  Fp2Elem pow(const Fp2Elem& a, std::uint64_t k) const;
  /// Negative exponents go through the inverse.
  Fp2Elem pow_signed(const Fp2Elem& a, std::int64_t k) const;
  /// x^{(p^2-1)/2} == 1.
  bool is_square(const Fp2Elem& a) const;

  /// Least k >= 1 with a^k = 1; a must be nonzero.
  std::uint64_t multiplicative_order(FpElem a) const;
  std::uint64_t multiplicative_order(const Fp2Elem& a) const;

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.w1_ == b.w1_ && a.w2_ == b.w2_;
  }

 private:
  friend FieldContext make_context(std::uint32_t p);
  static constexpr std::uint32_t kNoRoot = 0xffffffffu;

  std::uint32_t p_ = 0;
  FpElem e_, w1_, w2_, w_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> root_;
};

/// Deterministic context: e is the smallest primitive root, and (w1, w2) is
/// the first pair with w2 = 1..p-1 outer, w1 = 0..p-1 inner whose element
/// has order p^2 - 1. Throws std::invalid_argument unless p is a prime > 3.
FieldContext make_context(std::uint32_t p);

/// re^2 - e*im^2, which equals x^{p+1}.
FpElem norm(const Fp2Elem& x, const FieldContext& ctx);

/// -1, 0 or +1 via Euler's criterion.
int legendre(FpElem x, const FieldContext& ctx);

/// All (x, z) with x^2 - e*z^2 = c, sorted lexicographically. Exactly p + 1
/// pairs for c != 0; only (0, 0) for c = 0.
std::vector<std::pair<FpElem, FpElem>> solve_norm_equation(FpElem c, const FieldContext& ctx);

}  // namespace rbcm

#endif  // RBCM_GALOIS_FIELD_HPP_
