// The parametric RBCM families on PSL(2,p), p > 5, and their comparison with
// the exhaustive search.

#ifndef RBCM_CLOSED_FORM_HPP_
#define RBCM_CLOSED_FORM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbcm/family_params.hpp"
#include "rbcm/projective_group.hpp"
#include "rbcm/rbcm_search.hpp"

namespace rbcm {

/// [[a, 1], [a^2 - 1, a]]; requires a not in {0, 1, -1}.
ProjMat build_omega_I_alpha(const FieldContext& ctx, FpElem a);

/// Solutions (x, z) of (x - a)^2 - e z^2 = a^2 - 1, sorted.
std::vector<std::pair<FpElem, FpElem>> I_gamma_solutions(const FieldContext& ctx, FpElem a);
/// [[x, -e z], [z, 2a - x]] for the solution at `solution` (0 = smallest).
ProjMat build_omega_I_gamma(const FieldContext& ctx, FpElem a, std::size_t solution = 0);

/// [[0, -1/z], [z, 0]]; requires z != 0.
ProjMat build_omega_II_beta(const FieldContext& ctx, FpElem z);

/// [[a, 1], [-a^2 - 1, -a]]; requires a != 0 and a^2 != -1.
ProjMat build_omega_II_alpha(const FieldContext& ctx, FpElem a);

/// Solutions (x, y) of (y + a_check)^2 - e x^2 = a_check^2 + e, sorted.
std::vector<std::pair<FpElem, FpElem>> II_gamma_solutions(const FieldContext& ctx, FpElem a_check);
/// [[x, y], [-(2 a_check + y)/e, -x]]; requires a_check != 0, a_check^2 != -e.
ProjMat build_omega_II_gamma(const FieldContext& ctx, FpElem a_check, std::size_t solution = 0);

/// Admissibility of a_check for II_gamma of order n, stated in a_check
/// directly (a^2 = a_check^2 / e substituted into the type II criterion).
bool II_gamma_admissible(const FieldContext& ctx, int n, FpElem a_check);

/// sigma paired with a family member: alpha^{(p-1)u/2n}, gamma^{(p+1)v/2n},
/// beta, alpha^{(p-1)u/n}, gamma^{(p+1)v/n}.
ProjMat family_sigma(const FieldContext& ctx, const FamilyParams& params);

/// omega for a family member, honouring params.solution.
ProjMat family_omega(const FieldContext& ctx, const FamilyParams& params);

struct ClosedFormCandidate {
  FamilyParams params;
  RbcmSpec spec;
  /// nullopt when the spec passed every RBCM check.
  std::optional<std::string> violation;
};

/// One candidate per admissible parameter tuple. For p = 5 the candidates
/// are the permutation-model classes carried over to PSL(2,5).
std::vector<ClosedFormCandidate> enumerate_closed_form(const ProjectiveGroup& group, RbcmType type);

/// Parameter tuples the type I exclusion 2a^2 = 1 removes from the
/// gamma branch with n = 2 (non-empty only when 2 is a square mod p).
std::vector<FamilyParams> excluded_gamma_n2_params(const ProjectiveGroup& group);

struct Finding {
  std::string code;
  std::string message;
  friend auto operator<=>(const Finding&, const Finding&) = default;
};

struct DuplicateRecord {
  FamilyParams first;
  FamilyParams second;
  /// tau with tau sigma1 tau^-1 = sigma2 and tau omega1 tau^-1 = omega2.
  std::optional<ProjMat> witness;
};

struct SpuriousRecord {
  FamilyParams params;
  std::string reason;
};

struct BucketReport {
  RbcmType type = RbcmType::I;
  std::uint32_t valence = 0;
  std::size_t brute_force_classes = 0;
  std::size_t closed_form_candidates = 0;
  std::size_t closed_form_classes = 0;
  std::size_t matched = 0;
  std::vector<CanonicalKey> misses;
  std::vector<SpuriousRecord> spuria;
  std::vector<DuplicateRecord> duplicates;

  bool agrees() const;
};

struct ValidationReport {
  std::uint32_t p = 0;
  std::vector<BucketReport> buckets;
  std::vector<Finding> findings;
  /// Brute-force classes with closed-form provenance attached where found.
  std::vector<IsoClass> classes_I;
  std::vector<IsoClass> classes_II;

  std::size_t total_misses() const;
  std::size_t total_spuria() const;
  bool duplicates_witnessed() const;
  bool agrees() const;
};

ValidationReport cross_validate(const ProjectiveGroup& group, SearchOptions options = {});

}  // namespace rbcm

#endif  // RBCM_CLOSED_FORM_HPP_
