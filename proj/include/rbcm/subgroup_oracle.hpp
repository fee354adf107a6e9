// Generation tests for subgroups of PSL(2,p): closure-based ground truth and
// the closed-form generation criteria for the three RBCM families.

#ifndef RBCM_SUBGROUP_ORACLE_HPP_
#define RBCM_SUBGROUP_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbcm/galois_field.hpp"
#include "rbcm/projective_group.hpp"

namespace rbcm {

enum class SubgroupKind : std::uint8_t {
  full,  // all of PSL(2,p)
  point_stabilizer,
  dihedral,
  a4,
  s4,
  a5,
  cyclic,
  other,
};

struct SubgroupReport {
  std::size_t order = 0;
  bool is_full_psl = false;
  SubgroupKind kind = SubgroupKind::other;
  /// Group order for dihedral(m) / cyclic(m); zero otherwise.
  std::size_t kind_order = 0;

  /// "cyclic(7)", "dihedral(10)", "S4", "point_stabilizer", ...
  std::string diagnosis() const;
};

/// Largest order a proper subgroup of PSL(2,p) can have, rounded up:
/// max(p(p-1), 60, 2(p+1)). Closure stops once it is exceeded.
std::size_t proper_subgroup_bound(std::uint32_t p);

/// Breadth-first closure of <gens> inside PSL(2,p). Stops early (reporting
/// the full group) once the subgroup outgrows proper_subgroup_bound().
/// Throws std::invalid_argument for an empty list or a generator outside PSL.
SubgroupReport closure(const ProjectiveGroup& group, std::span<const ProjMat> gens);

/// All elements of <gens>, sorted; no early exit.
std::vector<ProjMat> generated_subgroup(const ProjectiveGroup& group, std::span<const ProjMat> gens);

bool generates_psl(const ProjectiveGroup& group, std::span<const ProjMat> gens);

/// True when every generator fixes one common point of P^1(F_{p^2}).
bool has_common_eigenvector(const FieldContext& ctx, std::span<const ProjMat> gens);

/// Structural label of an explicit finite group given as elements + product.
/// Recognises cyclic, dihedral (order >= 4, including the Klein group), and
/// the non-dihedral groups of order 12/24/60 as A4/S4/A5.
struct StructureLabel {
  SubgroupKind kind = SubgroupKind::other;
  std::size_t order = 0;
};

template <class Elem, class Mul>
StructureLabel classify_structure(const std::vector<Elem>& elements, const Elem& identity, Mul&& mul);

// Type I, orbit of size 2n: a is the diagonal entry of the (diagonalized)
// generator and bc = a^2 - 1. Generates iff a not in {0, 1, -1} and, for
// n = 2, 2a^2 != 1.
bool lemma_I_criterion(const FieldContext& ctx, int n, FpElem a);

// Type II with sigma = beta: generates iff the lower-left entry z != 0.
bool lemma_II_beta_criterion(FpElem z);

// Type II with diagonalizable sigma of order n; takes a^2 (sign-free), with
// bc = -a^2 - 1. Generates iff a^2 not in {0, -1}, and
//   n = 3: 3a^2 not in {-1, -2} and 9a^4 + 9a^2 + 1 != 0,
//   n = 5: 5a^4 + 5a^2 + 1 != 0.
bool lemma_II_criterion(const FieldContext& ctx, int n, FpElem a2);

/// One (sigma, omega) pair where a criterion and the closure disagree.
struct LemmaDisagreement {
  std::string family;  // "I", "II_beta", "II"
  ConjugacyTag sigma;
  ProjMat omega;
  int n = 0;
  FpElem a2;
  bool criterion = false;
  bool oracle = false;
  std::string oracle_diagnosis;
};

struct LemmaSweepReport {
  std::uint32_t p = 0;
  std::size_t type_I_checked = 0;
  std::size_t type_II_beta_checked = 0;
  std::size_t type_II_checked = 0;
  std::vector<LemmaDisagreement> disagreements;
  /// Type I, n = 2, gamma branch, 2a^2 = 1: where the closure places these
  /// candidates. Empty when 2 is a non-square mod p.
  std::vector<LemmaDisagreement> gamma_n2_half_square_cases;
};

/// Exhaustive lemma-vs-closure comparison over every class representative
/// sigma and every qualifying omega. The a-parameter is read from
/// tau omega tau^{-1} with tau from diagonalizer_tau().
LemmaSweepReport lemma_oracle_sweep(const ProjectiveGroup& group);

// ---------------------------------------------------------------------------

template <class Elem, class Mul>
StructureLabel classify_structure(const std::vector<Elem>& elements, const Elem& identity, Mul&& mul) {
  const std::size_t n = elements.size();
  auto elem_order = [&](const Elem& g) {
    std::size_t k = 1;
    Elem x = g;
    while (!(x == identity)) {
      x = mul(x, g);
      ++k;
    }
    return k;
  };
  std::vector<std::size_t> orders;
  orders.reserve(n);
  for (const auto& g : elements)
    orders.push_back(elem_order(g));
  for (std::size_t o : orders)
    if (o == n)
      return {SubgroupKind::cyclic, n};
  // Dihedral of order n >= 4: a cyclic subgroup of order n/2 whose complement
  // consists of involutions.
  if (n >= 4 && n % 2 == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (orders[i] != n / 2)
        continue;
      std::vector<Elem> rot;
      Elem x = identity;
      for (std::size_t k = 0; k < n / 2; ++k) {
        rot.push_back(x);
        x = mul(x, elements[i]);
      }
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (std::find(rot.begin(), rot.end(), elements[j]) == rot.end() && orders[j] != 2)
          ok = false;
      }
      if (ok)
        return {SubgroupKind::dihedral, n};
    }
  }
  if (n == 12) {
    // A4: exactly three involutions, pairwise commuting.
    std::vector<Elem> inv;
    for (std::size_t i = 0; i < n; ++i)
      if (orders[i] == 2)
        inv.push_back(elements[i]);
    bool commuting = inv.size() == 3;
    for (std::size_t i = 0; i < inv.size() && commuting; ++i)
      for (std::size_t j = i + 1; j < inv.size() && commuting; ++j)
        commuting = mul(inv[i], inv[j]) == mul(inv[j], inv[i]);
    return {commuting ? SubgroupKind::a4 : SubgroupKind::other, 0};
  }
  if (n == 24)
    return {SubgroupKind::s4, 0};
  if (n == 60)
    return {SubgroupKind::a5, 0};
  return {SubgroupKind::other, 0};
}

}  // namespace rbcm

#endif  // RBCM_SUBGROUP_ORACLE_HPP_
