// The A5 case in the symmetric-group model. Products compose left to right:
// (a b)(x) = b(a(x)), so (12)(23) = (132).

#ifndef RBCM_PERM_A5_HPP_
#define RBCM_PERM_A5_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbcm/projective_group.hpp"
#include "rbcm/subgroup_oracle.hpp"

namespace rbcm {

struct Perm5 {
  /// images[i] is the image of the letter i + 1; letters are 1..5.
  std::array<std::uint8_t, 5> images{1, 2, 3, 4, 5};

  static Perm5 identity() { return {}; }
  /// Parses cycle notation such as "(12)(345)" or "(1)". Throws
  /// std::invalid_argument on malformed input.
  static Perm5 from_cycles(std::string_view text);
  /// Cycle notation, smallest letter first in each cycle; "(1)" for identity.
  std::string to_cycles() const;

  int operator()(int letter) const { return images[letter - 1]; }
  friend auto operator<=>(const Perm5&, const Perm5&) = default;
};

/// First a, then b.
Perm5 compose(const Perm5& a, const Perm5& b);
Perm5 inverse(const Perm5& a);
Perm5 power(const Perm5& a, int k);
int order(const Perm5& a);
bool is_even(const Perm5& a);
/// sigma omega sigma^{-1} as a left-to-right product.
Perm5 conjugate(const Perm5& omega, const Perm5& sigma);

std::vector<Perm5> symmetric_group();
std::vector<Perm5> alternating_group();

/// (12345), (123), (12)(34), (12)(345), (1234), (12); the first three lie in A5.
std::vector<Perm5> s5_class_representatives();

SubgroupReport perm_closure(const std::vector<Perm5>& gens);

enum class PermRbcmType : std::uint8_t { I, II };

struct A5Class {
  PermRbcmType type = PermRbcmType::I;
  int valence = 0;
  /// Minimal member of the S5-conjugation orbit.
  Perm5 sigma;
  Perm5 omega;
  std::size_t members_found = 0;
};

/// Brute force over sigma in S5 and omega in A5, reduced under simultaneous
/// S5-conjugation. Sorted by (valence, sigma, omega).
std::vector<A5Class> enumerate_a5_rbcms(PermRbcmType type);

/// nullopt when (sigma, omega) is an RBCM of the given type, else the reason
/// (for a non-generating orbit, the diagnosis of the generated subgroup).
std::optional<std::string> a5_violation(const Perm5& sigma, const Perm5& omega, PermRbcmType type);

bool a5_isomorphic(const Perm5& sigma1, const Perm5& omega1, const Perm5& sigma2, const Perm5& omega2);

struct StepCheck {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Re-evaluates the hand computations of the A5 case analysis.
std::vector<StepCheck> verify_worked_steps();

/// An explicit isomorphism A5 -> PSL(2,5), found by search.
class A5Isomorphism {
 public:
  /// Throws std::invalid_argument unless group.p() == 5.
  explicit A5Isomorphism(const ProjectiveGroup& group);

  ProjMat image(const Perm5& even) const;
  /// The PGL(2,5) element inducing the same automorphism as conjugation by
  /// sigma in S5.
  ProjMat translate_outer(const Perm5& sigma) const;

  const Perm5& x() const { return x_; }
  const Perm5& y() const { return y_; }

 private:
  const ProjectiveGroup& group_;
  Perm5 x_, y_;
  std::vector<Perm5> domain_;
  std::vector<ProjMat> images_;
};

}  // namespace rbcm

#endif  // RBCM_PERM_A5_HPP_
