// Exhaustive enumeration of regular balanced Cayley maps on PSL(2,p) and
// reduction to isomorphism classes under simultaneous PGL(2,p)-conjugation.

#ifndef RBCM_RBCM_SEARCH_HPP_
#define RBCM_RBCM_SEARCH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbcm/family_params.hpp"
#include "rbcm/projective_group.hpp"

namespace rbcm {

enum class RbcmType : std::uint8_t { I, II };

std::string to_string(RbcmType t);

struct RbcmSpec {
  ProjMat sigma;
  ProjMat omega;
  RbcmType type = RbcmType::I;
  std::uint32_t valence = 0;
  /// omega_i = sigma^i omega sigma^{-i}, i = 0 .. valence-1.
  std::vector<ProjMat> orbit;
};

/// Builds the spec with valence = |sigma| and the orbit filled in.
RbcmSpec make_spec(const ProjectiveGroup& group, const ProjMat& sigma, const ProjMat& omega, RbcmType type);

/// Why a (sigma, omega) pair is not an RBCM; nullopt when it is one.
std::optional<std::string> spec_violation(const ProjectiveGroup& group, const RbcmSpec& spec);

/// Default search bound; RBCM_MAX_P overrides it.
inline constexpr std::uint32_t kDefaultMaxSearchPrime = 31;
std::uint32_t max_search_prime();

struct SearchOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 0;
};

struct SearchStats {
  std::size_t pairs_checked = 0;
  /// Pairs meeting the algebraic conditions whose orbit had the wrong size.
  std::size_t orbit_mismatches = 0;
  std::size_t non_generating = 0;
};

struct SearchResult {
  std::vector<RbcmSpec> specs;
  SearchStats stats;
  std::vector<std::string> warnings;
};

/// sigma runs over the class representatives alpha^k, beta, gamma^l and
/// omega over PSL(2,p). Throws std::out_of_range above max_search_prime().
SearchResult enumerate_rbcms(const ProjectiveGroup& group, RbcmType type, SearchOptions options = {});

/// Valence condition a classified map must satisfy: for type I,
/// valence | p-1 or valence | p+1; for type II, valence divides p-1 or p+1,
/// or equals p.
bool valence_divisibility_holds(std::uint32_t p, RbcmType type, std::uint32_t valence);

struct CanonicalKey {
  std::uint32_t valence = 0;
  RbcmType type = RbcmType::I;
  ConjugacyTag sigma_tag;
  ProjMat sigma;
  ProjMat omega;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Computes the minimal member of a spec's PGL-conjugation orbit. Caches the
/// conjugating cosets per sigma; safe to share between threads.
class Canonicalizer {
 public:
  explicit Canonicalizer(const ProjectiveGroup& group);

  CanonicalKey key(const RbcmSpec& spec) const;
  RbcmSpec canonical(const RbcmSpec& spec) const;

 private:
  struct SigmaEntry {
    ProjMat target;
    std::vector<ProjMat> conjugators;
  };
  const SigmaEntry& entry(const ProjMat& sigma) const;

  const ProjectiveGroup& group_;
  std::map<ConjugacyTag, ProjMat> class_min_;
  mutable std::mutex mutex_;
  mutable std::map<ProjMat, SigmaEntry> cache_;
};

struct IsoClass {
  RbcmSpec representative;
  CanonicalKey key;
  std::size_t members_found = 0;
  std::optional<FamilyParams> provenance;
};

/// Sorted by canonical key (valence first).
std::vector<IsoClass> reduce_to_iso_classes(const ProjectiveGroup& group, std::span<const RbcmSpec> specs);
std::vector<IsoClass> reduce_to_iso_classes(const Canonicalizer& canon, std::span<const RbcmSpec> specs);

/// tau in PGL(2,p) with tau sigma1 tau^{-1} = sigma2 and tau omega1 tau^{-1} = omega2.
std::optional<ProjMat> isomorphism_witness(const ProjectiveGroup& group, const RbcmSpec& s1, const RbcmSpec& s2);
bool isomorphic(const ProjectiveGroup& group, const RbcmSpec& s1, const RbcmSpec& s2);

}  // namespace rbcm

#endif  // RBCM_RBCM_SEARCH_HPP_
