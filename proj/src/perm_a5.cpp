#include "rbcm/perm_a5.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rbcm {

Perm5 Perm5::from_cycles(std::string_view text) {
  Perm5 result;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && text[i] == ' ')
      ++i;
  };
  skip_space();
  if (i == text.size())
    throw std::invalid_argument("empty cycle notation");
  std::array<bool, 5> used{};
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<int> cycle;
    while (i < text.size() && text[i] != ')') {
      const char c = text[i++];
      if (c == ' ' || c == ',')
        continue;
      if (c < '1' || c > '5')
        throw std::invalid_argument("letter out of range in \"" + std::string(text) + "\"");
      cycle.push_back(c - '0');
    }
    if (i == text.size())
      throw std::invalid_argument("unclosed cycle in \"" + std::string(text) + "\"");
    ++i;
    if (cycle.empty())
      throw std::invalid_argument("empty cycle in \"" + std::string(text) + "\"");
    for (int letter : cycle) {
      if (used[letter - 1])
        throw std::invalid_argument("repeated letter in \"" + std::string(text) + "\"");
      used[letter - 1] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      result.images[cycle[k] - 1] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
    skip_space();
  }
  return result;
}

std::string Perm5::to_cycles() const {
  std::string out;
  std::array<bool, 5> seen{};
  for (int start = 1; start <= 5; ++start) {
    if (seen[start - 1] || (*this)(start) == start)
      continue;
    out += '(';
    for (int x = start; !seen[x - 1]; x = (*this)(x)) {
      seen[x - 1] = true;
      out += static_cast<char>('0' + x);
    }
    out += ')';
  }
  return out.empty() ? "(1)" : out;
}

Perm5 compose(const Perm5& a, const Perm5& b) {
  Perm5 c;
  for (int x = 1; x <= 5; ++x)
    c.images[x - 1] = static_cast<std::uint8_t>(b(a(x)));
  return c;
}

Perm5 inverse(const Perm5& a) {
  Perm5 c;
  for (int x = 1; x <= 5; ++x)
    c.images[a(x) - 1] = static_cast<std::uint8_t>(x);
  return c;
}

Perm5 power(const Perm5& a, int k) {
  const Perm5 base = k < 0 ? inverse(a) : a;
  Perm5 result;
  for (int i = 0; i < (k < 0 ? -k : k); ++i)
    result = compose(result, base);
  return result;
}

int order(const Perm5& a) {
  int k = 1;
  for (Perm5 x = a; x != Perm5::identity(); x = compose(x, a))
    ++k;
  return k;
}

bool is_even(const Perm5& a) {
  int transpositions = 0;
  std::array<bool, 5> seen{};
  for (int start = 1; start <= 5; ++start) {
    if (seen[start - 1])
      continue;
    int len = 0;
    for (int x = start; !seen[x - 1]; x = a(x)) {
      seen[x - 1] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Perm5 conjugate(const Perm5& omega, const Perm5& sigma) {
  return compose(compose(sigma, omega), inverse(sigma));
}

std::vector<Perm5> symmetric_group() {
  std::vector<Perm5> out;
  Perm5 p;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

std::vector<Perm5> alternating_group() {
  std::vector<Perm5> out;
  for (const auto& p : symmetric_group())
    if (is_even(p))
      out.push_back(p);
  return out;
}

std::vector<Perm5> s5_class_representatives() {
  std::vector<Perm5> out;
  for (const char* s : {"(12345)", "(123)", "(12)(34)", "(12)(345)", "(1234)", "(12)"})
    out.push_back(Perm5::from_cycles(s));
  return out;
}

SubgroupReport perm_closure(const std::vector<Perm5>& gens) {
  if (gens.empty())
    throw std::invalid_argument("closure needs at least one generator");
  std::vector<Perm5> members{Perm5::identity()};
  std::set<Perm5> seen{Perm5::identity()};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& g : gens) {
      Perm5 h = compose(members[i], g);
      if (seen.insert(h).second)
        members.push_back(h);
    }
  }
  SubgroupReport report;
  report.order = members.size();
  const bool all_even = std::all_of(gens.begin(), gens.end(), [](const Perm5& g) { return is_even(g); });
  if (all_even && members.size() == 60) {
    report.is_full_psl = true;
    report.kind = SubgroupKind::full;
    return report;
  }
  const StructureLabel label = classify_structure(members, Perm5::identity(), compose);
  report.kind = label.kind;
  report.kind_order = label.order;
  return report;
}

std::optional<std::string> a5_violation(const Perm5& sigma, const Perm5& omega, PermRbcmType type) {
  if (!is_even(omega))
    return "omega not in A5";
  const int m = order(sigma);
  const int w = order(omega);
  if (type == PermRbcmType::I) {
    if (m % 2 != 0)
      return "type I needs even valence";
    if (w <= 2)
      return "type I needs |omega| > 2";
    if (conjugate(omega, power(sigma, m / 2)) != inverse(omega))
      return "sigma^n omega sigma^-n != omega^-1";
  } else if (w != 2) {
    return "type II needs |omega| = 2";
  }
  std::vector<Perm5> orbit;
  Perm5 x = omega;
  for (int i = 0; i < m; ++i) {
    orbit.push_back(x);
    x = conjugate(x, sigma);
  }
  if (std::set<Perm5>(orbit.begin(), orbit.end()).size() != static_cast<std::size_t>(m))
    return "orbit shorter than |sigma|";
  const SubgroupReport sub = perm_closure(orbit);
  if (!sub.is_full_psl)
    return "orbit generates " + sub.diagnosis();
  return std::nullopt;
}

namespace {

std::pair<Perm5, Perm5> canonical_pair(const Perm5& sigma, const Perm5& omega) {
  std::pair<Perm5, Perm5> best{sigma, omega};
  for (const auto& tau : symmetric_group()) {
    std::pair<Perm5, Perm5> cand{conjugate(sigma, tau), conjugate(omega, tau)};
    if (cand < best)
      best = cand;
  }
  return best;
}

}  // namespace

std::vector<A5Class> enumerate_a5_rbcms(PermRbcmType type) {
  std::map<std::tuple<int, Perm5, Perm5>, A5Class> classes;
  const auto a5 = alternating_group();
  for (const auto& sigma : symmetric_group()) {
    if (sigma == Perm5::identity())
      continue;
    for (const auto& omega : a5) {
      if (a5_violation(sigma, omega, type))
        continue;
      const auto [cs, co] = canonical_pair(sigma, omega);
      const int valence = order(sigma);
      auto [it, inserted] = classes.try_emplace({valence, cs, co});
      if (inserted)
        it->second = A5Class{type, valence, cs, co, 0};
      ++it->second.members_found;
    }
  }
  std::vector<A5Class> out;
  for (auto& [k, c] : classes)
    out.push_back(c);
  return out;
}

bool a5_isomorphic(const Perm5& sigma1, const Perm5& omega1, const Perm5& sigma2, const Perm5& omega2) {
  for (const auto& tau : symmetric_group())
    if (conjugate(sigma1, tau) == sigma2 && conjugate(omega1, tau) == omega2)
      return true;
  return false;
}

std::vector<StepCheck> verify_worked_steps() {
  std::vector<StepCheck> out;
  auto P = [](std::string_view s) { return Perm5::from_cycles(s); };
  auto mul = [](std::initializer_list<Perm5> xs) {
    Perm5 r;
    for (const auto& x : xs)
      r = compose(r, x);
    return r;
  };
  auto same = [&](std::string label, const Perm5& actual, const Perm5& expected) {
    out.push_back({std::move(label), expected.to_cycles(), actual.to_cycles(), actual == expected});
  };
  auto has_order = [&](std::string label, const Perm5& x, int expected) {
    const int got = order(x);
    out.push_back({std::move(label), std::to_string(expected), std::to_string(got), got == expected});
  };
  // w[i] = sigma^i omega sigma^-i
  auto orbit = [](const Perm5& sigma, const Perm5& omega) {
    std::vector<Perm5> w{omega};
    for (int i = 1; i <= 6; ++i)
      w.push_back(conjugate(w.back(), sigma));
    return w;
  };

  same("(12)(23)", mul({P("(12)"), P("(23)")}), P("(132)"));
  same("(12)(34)*(12)(35)", mul({P("(12)(34)"), P("(12)(35)")}), P("(345)"));

  {
    const Perm5 s = P("(1425)"), o = P("(123)");
    const auto w = orbit(s, o);
    same("I/4 sigma=(1425): omega_2 = omega^-1", w[2], inverse(o));
    same("I/4 sigma=(1425): omega_1", w[1], P("(543)"));
    const Perm5 t = mul({o, w[1], o, inverse(w[1])});
    same("I/4 sigma=(1425): omega omega_1 omega omega_1^-1", t, P("(14)(23)"));
    has_order("I/4 sigma=(1425): |omega omega_1 omega omega_1^-1|", t, 2);
    same("I/4 sigma=(1425): (omega omega_1 omega omega_1^-1) omega_1", mul({t, w[1]}), mul({o, w[1], o}));
    same("I/4 sigma=(1425): omega omega_1 omega", mul({o, w[1], o}), P("(13254)"));
    has_order("I/4 sigma=(1425): |omega omega_1 omega|", mul({o, w[1], o}), 5);
  }
  {
    const Perm5 o = P("(12345)");
    const auto w1 = orbit(P("(1243)"), o);
    same("I/4 sigma=(1243): omega_1", w1[1], P("(31425)"));
    same("I/4 sigma=(1243): (31425) = omega^-2", P("(31425)"), power(o, -2));
    const auto w2 = orbit(P("(1342)"), o);
    same("I/4 sigma=(1342): omega_1", w2[1], P("(24135)"));
    same("I/4 sigma=(1342): (24135) = omega^2", P("(24135)"), power(o, 2));
  }
  {
    const Perm5 s = P("(12)(345)"), o = P("(123)");
    const auto w = orbit(s, o);
    same("I/6 sigma=(12)(345): omega_3 = omega^-1", w[3], inverse(o));
    same("I/6 sigma=(12)(345): omega_1", w[1], P("(215)"));
    same("I/6 sigma=(12)(345): omega_2", w[2], P("(124)"));
    same("I/6 sigma=(12)(345): omega omega_1^-1", mul({o, inverse(w[1])}), P("(15)(23)"));
    same("I/6 sigma=(12)(345): (omega omega_1^-1) omega_2", mul({o, inverse(w[1]), w[2]}), P("(15234)"));
  }
  {
    const Perm5 s = P("(123)"), o = P("(24)(35)");
    const auto w = orbit(s, o);
    same("II/3: (45) centralizes sigma=(123)", conjugate(s, P("(45)")), s);
    same("II/3: (45) takes (25)(34) to (24)(35)", conjugate(P("(25)(34)"), P("(45)")), o);
    same("II/3 omega=(24)(35): omega_1", w[1], P("(14)(25)"));
    same("II/3 omega=(24)(35): omega_2", w[2], P("(15)(34)"));
    const Perm5 q = mul({w[1], w[2], w[1], w[3]});
    same("II/3 omega=(24)(35): omega_1 omega_2 omega_1 omega_3", q, P("(153)"));
    same("II/3 omega=(24)(35): omega_1 (omega_1 omega_2 omega_1 omega_3)", mul({w[1], q}),
         mul({w[2], w[1], w[3]}));
    same("II/3 omega=(24)(35): omega_2 omega_1 omega_3", mul({w[2], w[1], w[3]}), P("(14523)"));
  }
  const Perm5 s5 = P("(12345)");
  {
    const auto w = orbit(s5, P("(12)(34)"));
    same("II/5 omega_5=(12)(34): omega_1", w[1], P("(15)(23)"));
    same("II/5 omega_5=(12)(34): omega_2", w[2], P("(12)(45)"));
    same("II/5 omega_5=(12)(34): omega_3", w[3], P("(15)(34)"));
    same("II/5 omega_5=(12)(34): omega_4", w[4], P("(23)(45)"));
    same("II/5 omega_5=(12)(34): omega_3 omega_5", mul({w[3], w[5]}), P("(152)"));
    same("II/5 omega_5=(12)(34): omega_5 omega_4", mul({w[5], w[4]}), P("(13542)"));
    same("II/5 omega_5=(12)(34): omega_5 omega_4 omega_5 omega_3", mul({w[5], w[4], w[5], w[3]}), P("(13)(45)"));
  }
  {
    const auto w = orbit(s5, P("(13)(24)"));
    same("II/5 omega_5=(13)(24): omega_1", w[1], P("(13)(25)"));
    same("II/5 omega_5=(13)(24): omega_2", w[2], P("(14)(25)"));
    same("II/5 omega_5=(13)(24): omega_3", w[3], P("(14)(35)"));
    same("II/5 omega_5=(13)(24): omega_4", w[4], P("(24)(35)"));
    same("II/5 omega_5=(13)(24): omega_4 omega_5", mul({w[4], w[5]}), P("(135)"));
    same("II/5 omega_5=(13)(24): omega_5 omega_2", mul({w[5], w[2]}), P("(13452)"));
    same("II/5 omega_5=(13)(24): omega_5 omega_2 omega_5 omega_4", mul({w[5], w[2], w[5], w[4]}), P("(25)(34)"));
  }
  {
    const auto w = orbit(s5, P("(14)(23)"));
    same("II/5 omega_5=(14)(23): omega_1", w[1], P("(12)(35)"));
    same("II/5 omega_5=(14)(23): omega_2", w[2], P("(15)(24)"));
    same("II/5 omega_5=(14)(23): omega_3", w[3], P("(13)(45)"));
    same("II/5 omega_5=(14)(23): omega_4", w[4], P("(25)(34)"));
    const Perm5 r = mul({w[4], w[5]});
    same("II/5 omega_5=(14)(23): omega_4 omega_5", r, P("(14253)"));
    for (int i = 1; i <= 5; ++i)
      same("II/5 omega_5=(14)(23): omega_" + std::to_string(i) + " = omega_5 (omega_4 omega_5)^" + std::to_string(i),
           w[i], mul({w[5], power(r, i)}));
    const SubgroupReport sub = perm_closure({w[4], w[5]});
    out.push_back({"II/5 omega_5=(14)(23): <omega_4, omega_5>", "dihedral(10)", sub.diagnosis(),
                   sub.diagnosis() == "dihedral(10)"});
  }
  return out;
}

A5Isomorphism::A5Isomorphism(const ProjectiveGroup& group) : group_(group) {
  if (group.p() != 5)
    throw std::invalid_argument("A5 isomorphism needs PSL(2,5)");
  const auto& ctx = group.field();
  domain_ = alternating_group();

  bool found_xy = false;
  for (const auto& a : domain_) {
    for (const auto& b : domain_) {
      if (order(a) == 2 && order(b) == 3 && order(compose(a, b)) == 5) {
        x_ = a;
        y_ = b;
        found_xy = true;
        break;
      }
    }
    if (found_xy)
      break;
  }

  auto index_of = [&](const Perm5& g) {
    return static_cast<std::size_t>(std::lower_bound(domain_.begin(), domain_.end(), g) - domain_.begin());
  };

  // Try matrix pairs (X, Y) with the same order profile; extend along the
  // Cayley graph and keep the first consistent bijective homomorphism.
  for (const auto& X : group.psl_elements()) {
    if (rbcm::order(ctx, X) != 2)
      continue;
    for (const auto& Y : group.psl_elements()) {
      if (rbcm::order(ctx, Y) != 3 || rbcm::order(ctx, group.mul(X, Y)) != 5)
        continue;
      std::vector<std::optional<ProjMat>> img(domain_.size());
      std::vector<Perm5> queue{Perm5::identity()};
      img[index_of(Perm5::identity())] = identity_matrix();
      bool ok = true;
      for (std::size_t i = 0; i < queue.size() && ok; ++i) {
        const ProjMat m = *img[index_of(queue[i])];
        for (const auto& [gp, gm] : {std::pair{x_, X}, std::pair{y_, Y}}) {
          const Perm5 h = compose(queue[i], gp);
          const ProjMat hm = group.mul(m, gm);
          auto& slot = img[index_of(h)];
          if (!slot) {
            slot = hm;
            queue.push_back(h);
          } else if (!(*slot == hm)) {
            ok = false;
            break;
          }
        }
      }
      if (!ok || queue.size() != domain_.size())
        continue;
      images_.clear();
      for (const auto& s : img)
        images_.push_back(*s);
      if (std::set<ProjMat>(images_.begin(), images_.end()).size() != domain_.size())
        continue;
      for (std::size_t i = 0; i < domain_.size() && ok; ++i)
        for (std::size_t j = 0; j < domain_.size() && ok; ++j)
          ok = images_[index_of(compose(domain_[i], domain_[j]))] == group.mul(images_[i], images_[j]);
      if (ok)
        return;
    }
  }
  throw std::logic_error("no isomorphism A5 -> PSL(2,5) found");
}

ProjMat A5Isomorphism::image(const Perm5& even) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), even);
  if (it == domain_.end() || *it != even)
    throw std::invalid_argument(even.to_cycles() + " is not in A5");
  return images_[static_cast<std::size_t>(it - domain_.begin())];
}

ProjMat A5Isomorphism::translate_outer(const Perm5& sigma) const {
  const ProjMat tx = image(conjugate(x_, sigma));
  const ProjMat ty = image(conjugate(y_, sigma));
  const ProjMat X = image(x_), Y = image(y_);
  for (const auto& tau : group_.pgl_elements())
    if (group_.conjugate(X, tau) == tx && group_.conjugate(Y, tau) == ty)
      return tau;
  throw std::logic_error("no PGL(2,5) element induces conjugation by " + sigma.to_cycles());
}

}  // namespace rbcm
