// Parameter tuple naming one member of a closed-form RBCM family.

#ifndef RBCM_FAMILY_PARAMS_HPP_
#define RBCM_FAMILY_PARAMS_HPP_

#include <compare>
#include <cstdint>
#include <string>

#include "rbcm/galois_field.hpp"

namespace rbcm {

enum class Family : std::uint8_t { I_alpha, I_gamma, II_beta, II_alpha, II_gamma, a5 };

std::string to_string(Family f);

struct FamilyParams {
  Family family = Family::I_alpha;
  int n = 0;
  FpElem a;        // I_alpha, I_gamma, II_alpha
  FpElem a_check;  // II_gamma
  FpElem z;        // II_beta
  int u_or_v = 0;
  /// Index into the sorted norm-equation solutions (I_gamma, II_gamma);
  /// 0 is the canonical choice. For the a5 family, the class index.
  int solution = 0;

  /// "a=3,u=1" style, fields relevant to the family only.
  std::string describe() const;

  friend auto operator<=>(const FamilyParams&, const FamilyParams&) = default;
};

}  // namespace rbcm

#endif  // RBCM_FAMILY_PARAMS_HPP_
