// PGL(2,p) and PSL(2,p) as normalized projective 2x2 matrices, plus the
// F_{p^2} matrices needed to diagonalize non-split elements.

#ifndef RBCM_PROJECTIVE_GROUP_HPP_
#define RBCM_PROJECTIVE_GROUP_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbcm/galois_field.hpp"

namespace rbcm {

enum class DetClass : std::uint8_t { square, nonsquare };

/// Projective matrix with entries in F_p (Scalar = FpElem) or F_{p^2}
/// (Scalar = Fp2Elem). The stored representative has its first nonzero
/// entry, in row-major order, equal to 1; det_class records whether its
/// determinant is a square of the base field (invariant under rescaling).
template <class Scalar>
struct ProjectiveMatrix {
  std::array<Scalar, 4> entries{};
  DetClass det_class = DetClass::square;

  const Scalar& operator()(int row, int col) const { return entries[2 * row + col]; }
  bool in_psl() const { return det_class == DetClass::square; }

  friend auto operator<=>(const ProjectiveMatrix&, const ProjectiveMatrix&) = default;
};

using ProjMat = ProjectiveMatrix<FpElem>;
using ProjMatExt = ProjectiveMatrix<Fp2Elem>;

/// Normalizes; throws std::invalid_argument on a singular matrix.
ProjMat make_projective(const FieldContext& ctx, FpElem a, FpElem b, FpElem c, FpElem d);
ProjMat make_projective(const FieldContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
                        std::int64_t d);
ProjMatExt make_projective(const FieldContext& ctx, const Fp2Elem& a, const Fp2Elem& b,
                           const Fp2Elem& c, const Fp2Elem& d);

ProjMat identity_matrix();
ProjMatExt identity_matrix_ext();
bool is_identity(const ProjMat& g);

ProjMat mul(const FieldContext& ctx, const ProjMat& g, const ProjMat& h);
ProjMat inverse(const FieldContext& ctx, const ProjMat& g);
/// h g h^{-1}
ProjMat conjugate(const FieldContext& ctx, const ProjMat& g, const ProjMat& h);
/// Negative k goes through the inverse.
ProjMat power(const FieldContext& ctx, const ProjMat& g, std::int64_t k);

ProjMatExt mul(const FieldContext& ctx, const ProjMatExt& g, const ProjMatExt& h);
ProjMatExt inverse(const FieldContext& ctx, const ProjMatExt& g);
ProjMatExt conjugate(const FieldContext& ctx, const ProjMatExt& g, const ProjMatExt& h);
ProjMatExt extend(const FieldContext& ctx, const ProjMat& g);
bool is_diagonal(const ProjMatExt& g);

/// Least k >= 1 with g^k = 1, by iterated multiplication.
std::uint64_t order(const FieldContext& ctx, const ProjMat& g);

/// Determinant of the stored (normalized) representative.
FpElem representative_det(const FieldContext& ctx, const ProjMat& g);

/// The SL(2,p) lift of a PSL element: of the two matrices {M, -M} with
/// determinant 1, the one whose row-major entries are lexicographically
/// smaller. Throws std::invalid_argument if g is not in PSL(2,p).
std::array<FpElem, 4> sl_lift(const FieldContext& ctx, const ProjMat& g);

/// t^2 for t the trace of an SL lift; well defined up to the lift's sign.
struct TraceClass {
  FpElem t2;
  friend auto operator<=>(const TraceClass&, const TraceClass&) = default;
};

/// tr^2 / det; defined on all of PGL and equal to t^2 on PSL.
TraceClass trace_class(const FieldContext& ctx, const ProjMat& g);

/// Order read off from t^2 alone: 2 iff t^2 = 0, 3 iff t^2 = 1, 4 iff
/// t^2 = 2, 5 iff (t^2 - 1)^2 = t^2. The identity returns nullopt.
/// Throws std::invalid_argument if g is not in PSL(2,p).
std::optional<int> trace_order_test(const FieldContext& ctx, const ProjMat& g);

struct AlphaBetaGamma {
  ProjMat alpha;  // [[e, 0], [0, 1]], order p - 1
  ProjMat beta;   // [[1, 1], [0, 1]], order p
  ProjMat gamma;  // [[w, e], [1, w]], order p + 1
};

AlphaBetaGamma canonical_alpha_beta_gamma(const FieldContext& ctx);

/// Conjugacy class of PGL(2,p): identity, alpha^k (1 <= k <= (p-1)/2),
/// beta, or gamma^l (1 <= l <= (p+1)/2).
struct ConjugacyTag {
  enum class Kind : std::uint8_t { identity, alpha_power, beta, gamma_power };
  Kind kind = Kind::identity;
  std::uint32_t exponent = 0;

  std::string to_string() const;
  friend auto operator<=>(const ConjugacyTag&, const ConjugacyTag&) = default;
};

ConjugacyTag conjugacy_rep(const FieldContext& ctx, const ProjMat& g);

/// The matrix alpha^k, beta or gamma^l named by a tag.
ProjMat class_matrix(const FieldContext& ctx, const ConjugacyTag& tag);

struct Diagonalization {
  ProjMatExt tau;
  Fp2Elem s;
};

/// For sigma = alpha^k: tau = 1, s = sqrt(e)^k. For sigma = gamma^l:
/// tau = [[sqrt(e), -e], [sqrt(e), e]] and s = ((w - sqrt(e)) / r)^l with
/// r the square root of w^2 - e taken as sqrt(e) * (smaller root of
/// (w^2 - e)/e). In both cases tau sigma tau^{-1} = diag(s, 1/s).
/// Throws std::invalid_argument for identity/beta tags.
Diagonalization diagonalizer_tau(const FieldContext& ctx, const ConjugacyTag& sigma);

/// Dense integer key ((a p + b) p + c) p + d of the normalized entries.
std::uint32_t dense_key(const FieldContext& ctx, const ProjMat& g);

std::string to_string(const ProjMat& g);

/// The element lists of PGL(2,p) and PSL(2,p) with O(1) lookup of PSL
/// positions. Built once per prime and shared read-only.
class ProjectiveGroup {
 public:
  struct ClassRep {
    ConjugacyTag tag;
    ProjMat matrix;
    std::uint64_t order = 1;
  };

  /// Largest prime whose dense lookup table (p^4 entries) we allocate.
  static constexpr std::uint32_t kMaxPrime = 67;

  explicit ProjectiveGroup(FieldContext ctx);

  const FieldContext& field() const { return ctx_; }
  std::uint32_t p() const { return ctx_.p(); }
  const AlphaBetaGamma& generators() const { return abg_; }

  /// Sorted.
  const std::vector<ProjMat>& pgl_elements() const { return pgl_; }
  /// Sorted.
  const std::vector<ProjMat>& psl_elements() const { return psl_; }
  std::size_t pgl_order() const { return pgl_.size(); }
  std::size_t psl_order() const { return psl_.size(); }

  /// Position in psl_elements(), or -1 when g is not in PSL.
  std::int32_t psl_index(const ProjMat& g) const { return psl_index_[dense_key(ctx_, g)]; }

  /// Non-identity class representatives: alpha^k, beta, gamma^l.
  const std::vector<ClassRep>& class_reps() const { return reps_; }

  /// Centralizer of g in PGL(2,p), sorted.
  std::vector<ProjMat> centralizer(const ProjMat& g) const;

  ProjMat mul(const ProjMat& g, const ProjMat& h) const { return rbcm::mul(ctx_, g, h); }
  ProjMat inverse(const ProjMat& g) const { return rbcm::inverse(ctx_, g); }
  ProjMat conjugate(const ProjMat& g, const ProjMat& h) const { return rbcm::conjugate(ctx_, g, h); }

 private:
  FieldContext ctx_;
  AlphaBetaGamma abg_;
  std::vector<ProjMat> pgl_;
  std::vector<ProjMat> psl_;
  std::vector<std::int32_t> psl_index_;
  std::vector<ClassRep> reps_;
};

}  // namespace rbcm

#endif  // RBCM_PROJECTIVE_GROUP_HPP_
