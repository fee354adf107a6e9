// Cayley maps as rotation systems: construction, balance and regularity
// checks, face tracing and genus.

#ifndef RBCM_MAP_TOPOLOGY_HPP_
#define RBCM_MAP_TOPOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbcm/projective_group.hpp"
#include "rbcm/rbcm_search.hpp"

namespace rbcm {

/// A finite group with elements 0..order-1. Products are tabulated for
/// groups of at most kTableLimit elements and computed on demand otherwise.
class DenseGroup {
 public:
  using MulFn = std::function<std::uint32_t(std::uint32_t, std::uint32_t)>;
  static constexpr std::size_t kTableLimit = 60;

  DenseGroup(std::size_t order, std::uint32_t identity, MulFn mul);

  static DenseGroup cyclic(std::uint32_t n);
  /// Elements indexed as in group.psl_elements(); keeps a reference to group.
  static DenseGroup psl(const ProjectiveGroup& group);

  std::size_t order() const { return order_; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return table_.empty() ? mul_(a, b) : table_[a * order_ + b];
  }
  std::uint32_t inverse(std::uint32_t a) const;
  bool tabulated() const { return !table_.empty(); }

 private:
  std::size_t order_;
  std::uint32_t identity_;
  MulFn mul_;
  std::vector<std::uint32_t> table_;
};

enum class MapErrorKind : std::uint8_t {
  empty_generators,
  element_out_of_range,
  duplicate_generator,
  identity_in_omega,
  not_inverse_closed,
  rho_not_single_cycle,
  non_generating,
};

std::string to_string(MapErrorKind kind);

class MapError : public std::invalid_argument {
 public:
  MapError(MapErrorKind kind, const std::string& detail);
  MapErrorKind kind() const { return kind_; }

 private:
  MapErrorKind kind_;
};

struct CayleyMapStruct {
  std::size_t vertex_count = 0;
  /// Omega as group element indices.
  std::vector<std::uint32_t> generators;
  /// rho[j] = position of rho(Omega[j]) in generators.
  std::vector<std::uint32_t> rho;
  /// inverse_of[j] = position of Omega[j]^{-1} in generators.
  std::vector<std::uint32_t> inverse_of;
  /// Arc (eta, Omega[j]) has id eta * |Omega| + j.
  std::vector<std::vector<std::uint32_t>> faces;
  std::size_t edge_count = 0;
  long euler_char = 0;
  long genus = 0;

  std::size_t arc_count() const { return vertex_count * generators.size(); }
  std::size_t face_count() const { return faces.size(); }
};

/// Throws MapError naming the violated precondition. `rho` is given as
/// positions: rho[j] is the index in `omega` of the successor of omega[j].
CayleyMapStruct build_map(const DenseGroup& group, std::span<const std::uint32_t> omega,
                          std::span<const std::uint32_t> rho);

/// rho(w^{-1}) = rho(w)^{-1} for every generator w.
bool is_balanced(const CayleyMapStruct& map);

/// Candidate automorphism given as an image function on element indices.
using ElementMap = std::function<std::uint32_t(std::uint32_t)>;

/// Whether w -> rho(w) extends to an automorphism. With a witness, checks
/// that it agrees with rho on Omega (the witness is trusted to be an
/// automorphism, e.g. conjugation). Without one, extends rho along the
/// Cayley graph and verifies the full multiplication table; groups larger
/// than kGenericRegularityLimit are rejected (false).
inline constexpr std::size_t kGenericRegularityLimit = 360;
bool is_regular_balanced(const CayleyMapStruct& map, const DenseGroup& group, const ElementMap* witness = nullptr);

/// (2 - V + E - F) / 2; throws std::logic_error if not a non-negative integer.
long genus(const CayleyMapStruct& map);

/// Common face length, or 0 when faces differ in length.
std::size_t uniform_face_length(const CayleyMapStruct& map);

/// Every arc occurs in exactly one face, once.
bool faces_partition_arcs(const CayleyMapStruct& map);

/// The map of an RBCM: Omega = orbit, rho = conjugation by sigma.
CayleyMapStruct map_from_spec(const ProjectiveGroup& pgroup, const DenseGroup& group, const RbcmSpec& spec);

/// Conjugation by spec.sigma as an ElementMap on PSL indices.
ElementMap conjugation_witness(const ProjectiveGroup& pgroup, const ProjMat& sigma);

struct MapSummary {
  std::uint32_t p = 0;
  RbcmType type = RbcmType::I;
  std::uint32_t valence = 0;
  ProjMat sigma;
  ProjMat omega;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  long euler_char = 0;
  long genus = 0;
  std::size_t face_length = 0;
};

MapSummary summarize(const ProjectiveGroup& pgroup, const RbcmSpec& spec, const CayleyMapStruct& map);

}  // namespace rbcm

#endif  // RBCM_MAP_TOPOLOGY_HPP_
