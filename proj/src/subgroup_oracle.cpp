#include "rbcm/subgroup_oracle.hpp"

#include <stdexcept>

namespace rbcm {

namespace {

// Per-thread visit stamps indexed by PSL position; reset by bumping the epoch.
struct VisitStamps {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  void begin(std::size_t size) {
    if (stamp.size() < size) {
      stamp.assign(size, 0);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }
  // True when newly visited.
  bool visit(std::size_t i) {
    if (stamp[i] == epoch)
      return false;
    stamp[i] = epoch;
    return true;
  }
};

thread_local VisitStamps tls_stamps;

void check_generators(const ProjectiveGroup& group, std::span<const ProjMat> gens) {
  if (gens.empty())
    throw std::invalid_argument("closure needs at least one generator");
  for (const auto& g : gens)
    if (group.psl_index(g) < 0)
      throw std::invalid_argument("generator " + to_string(g) + " is not in PSL(2," +
                                  std::to_string(group.p()) + ")");
}

// BFS closure; returns the members, or an empty vector when `limit` was exceeded.
std::vector<ProjMat> bfs(const ProjectiveGroup& group, std::span<const ProjMat> gens, std::size_t limit) {
  auto& stamps = tls_stamps;
  stamps.begin(group.psl_order());
  std::vector<ProjMat> members{identity_matrix()};
  stamps.visit(static_cast<std::size_t>(group.psl_index(members[0])));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& g : gens) {
      ProjMat y = group.mul(members[i], g);
      const std::int32_t idx = group.psl_index(y);
      if (idx < 0)
        throw std::logic_error("product left PSL(2,p): " + to_string(y));
      if (!stamps.visit(static_cast<std::size_t>(idx)))
        continue;
      members.push_back(y);
      if (members.size() > group.psl_order())
        throw std::logic_error("closure exceeded |PSL(2,p)|");
      if (members.size() > limit)
        return {};
    }
  }
  return members;
}

FpElem fp_part(const Fp2Elem& x) {
  if (!x.im.is_zero())
    throw std::logic_error("expected an F_p value in F_{p^2}");
  return x.re;
}

// a^2 = M00^2 / det(M) for a tau-conjugated generator M.
FpElem diagonal_square(const FieldContext& ctx, const ProjMatExt& m) {
  const Fp2Elem det = ctx.sub(ctx.mul(m.entries[0], m.entries[3]),
                              ctx.mul(m.entries[1], m.entries[2]));
  return fp_part(ctx.div(ctx.mul(m.entries[0], m.entries[0]), det));
}

std::vector<ProjMat> sigma_orbit(const ProjectiveGroup& group, const ProjMat& sigma,
                                 const ProjMat& omega, std::size_t count) {
  std::vector<ProjMat> out;
  out.reserve(count);
  ProjMat x = omega;
  for (std::size_t i = 1; i <= count; ++i) {
    x = group.conjugate(x, sigma);
    out.push_back(x);
  }
  return out;
}

bool is_involution(const FieldContext& ctx, const ProjMat& g) {
  return !is_identity(g) && trace_class(ctx, g).t2.is_zero();
}

}  // namespace

std::string SubgroupReport::diagnosis() const {
  switch (kind) {
    case SubgroupKind::full:
      return "PSL";
    case SubgroupKind::point_stabilizer:
      return "point_stabilizer";
    case SubgroupKind::dihedral:
      return "dihedral(" + std::to_string(kind_order) + ")";
    case SubgroupKind::a4:
      return "A4";
    case SubgroupKind::s4:
      return "S4";
    case SubgroupKind::a5:
      return "A5";
    case SubgroupKind::cyclic:
      return "cyclic(" + std::to_string(kind_order) + ")";
    case SubgroupKind::other:
      return "other";
  }
  return "other";
}

std::size_t proper_subgroup_bound(std::uint32_t p) {
  const std::size_t pp = p;
  return std::max({pp * (pp - 1), std::size_t{60}, 2 * (pp + 1)});
}

bool has_common_eigenvector(const FieldContext& ctx, std::span<const ProjMat> gens) {
  // Points (0 : 1) and (1 : t), t in F_{p^2}.
  auto fixes_infinity = [](const ProjMat& m) { return m.entries[1].is_zero(); };
  bool all = true;
  for (const auto& g : gens)
    all = all && fixes_infinity(g);
  if (all)
    return true;
  const std::uint32_t p = ctx.p();
  for (std::uint32_t re = 0; re < p; ++re) {
    for (std::uint32_t im = 0; im < p; ++im) {
      const Fp2Elem t{FpElem{re}, FpElem{im}};
      bool fixed = true;
      for (const auto& g : gens) {
        // M (1, t)^T = (a + b t, c + d t) is proportional to (1, t)
        // iff c + d t = t (a + b t).
        const Fp2Elem a = ctx.embed(g.entries[0]), b = ctx.embed(g.entries[1]);
        const Fp2Elem c = ctx.embed(g.entries[2]), d = ctx.embed(g.entries[3]);
        const Fp2Elem lhs = ctx.add(c, ctx.mul(d, t));
        const Fp2Elem rhs = ctx.mul(t, ctx.add(a, ctx.mul(b, t)));
        if (!(lhs == rhs)) {
          fixed = false;
          break;
        }
      }
      if (fixed)
        return true;
    }
  }
  return false;
}

SubgroupReport closure(const ProjectiveGroup& group, std::span<const ProjMat> gens) {
  check_generators(group, gens);
  const std::size_t full = group.psl_order();
  const std::size_t bound = proper_subgroup_bound(group.p());
  std::vector<ProjMat> members = bfs(group, gens, bound < full ? bound : full);
  SubgroupReport report;
  if (members.empty() || members.size() == full) {
    report.order = full;
    report.is_full_psl = true;
    report.kind = SubgroupKind::full;
    return report;
  }
  report.order = members.size();
  const auto& ctx = group.field();
  const StructureLabel label = classify_structure(
      members, identity_matrix(), [&](const ProjMat& x, const ProjMat& y) { return mul(ctx, x, y); });
  if (label.kind == SubgroupKind::cyclic) {
    report.kind = label.kind;
    report.kind_order = label.order;
  } else if (has_common_eigenvector(ctx, gens)) {
    report.kind = SubgroupKind::point_stabilizer;
  } else {
    report.kind = label.kind;
    report.kind_order = label.order;
  }
  return report;
}

std::vector<ProjMat> generated_subgroup(const ProjectiveGroup& group, std::span<const ProjMat> gens) {
  check_generators(group, gens);
  std::vector<ProjMat> members = bfs(group, gens, group.psl_order());
  std::sort(members.begin(), members.end());
  return members;
}

bool generates_psl(const ProjectiveGroup& group, std::span<const ProjMat> gens) {
  return closure(group, gens).is_full_psl;
}

bool lemma_I_criterion(const FieldContext& ctx, int n, FpElem a) {
  const FpElem a2 = ctx.square(a);
  if (a2.is_zero() || a2.value == 1)
    return false;
  if (n == 2 && ctx.mul(ctx.elem(2), a2).value == 1)
    return false;
  return true;
}

bool lemma_II_beta_criterion(FpElem z) { return !z.is_zero(); }

bool lemma_II_criterion(const FieldContext& ctx, int n, FpElem a2) {
  const FpElem minus_one = ctx.elem(-1);
  if (a2.is_zero() || a2 == minus_one)
    return false;
  const FpElem a4 = ctx.square(a2);
  if (n == 3) {
    const FpElem three_a2 = ctx.mul(ctx.elem(3), a2);
    if (three_a2 == minus_one || three_a2 == ctx.elem(-2))
      return false;
    const FpElem poly = ctx.add(ctx.add(ctx.mul(ctx.elem(9), a4), ctx.mul(ctx.elem(9), a2)), FpElem{1});
    if (poly.is_zero())
      return false;
  }
  if (n == 5) {
    const FpElem poly = ctx.add(ctx.add(ctx.mul(ctx.elem(5), a4), ctx.mul(ctx.elem(5), a2)), FpElem{1});
    if (poly.is_zero())
      return false;
  }
  return true;
}

LemmaSweepReport lemma_oracle_sweep(const ProjectiveGroup& group) {
  const auto& ctx = group.field();
  LemmaSweepReport report;
  report.p = group.p();
  using Kind = ConjugacyTag::Kind;

  for (const auto& rep : group.class_reps()) {
    const ProjMat& sigma = rep.matrix;
    if (rep.tag.kind == Kind::beta) {
      for (const auto& omega : group.psl_elements()) {
        if (!is_involution(ctx, omega))
          continue;
        const auto orbit = sigma_orbit(group, sigma, omega, group.p());
        const SubgroupReport sub = closure(group, orbit);
        const FpElem z = sl_lift(ctx, omega)[2];
        const bool crit = lemma_II_beta_criterion(z);
        ++report.type_II_beta_checked;
        if (crit != sub.is_full_psl)
          report.disagreements.push_back(
              {"II_beta", rep.tag, omega, static_cast<int>(group.p()), FpElem{}, crit, sub.is_full_psl, sub.diagnosis()});
      }
      continue;
    }

    const Diagonalization diag = diagonalizer_tau(ctx, rep.tag);
    const std::uint64_t m = rep.order;

    if (m % 2 == 0 && m >= 4) {
      const int n = static_cast<int>(m / 2);
      const ProjMat sigma_n = power(ctx, sigma, n);
      for (const auto& omega : group.psl_elements()) {
        if (is_identity(omega) || is_involution(ctx, omega))
          continue;
        if (!(group.conjugate(omega, sigma_n) == group.inverse(omega)))
          continue;
        const ProjMatExt psi = conjugate(ctx, extend(ctx, omega), diag.tau);
        if (!(psi.entries[0] == psi.entries[3]))
          throw std::logic_error("type I generator not of the form [[a, b], [c, a]]");
        const FpElem a2 = diagonal_square(ctx, psi);
        const auto lift = sl_lift(ctx, omega);
        const FpElem a = ctx.div(ctx.add(lift[0], lift[3]), ctx.elem(2));
        if (!(ctx.square(a) == a2))
          throw std::logic_error("half-trace does not match diagonalized entry");
        const auto orbit = sigma_orbit(group, sigma, omega, static_cast<std::size_t>(n));
        const SubgroupReport sub = closure(group, orbit);
        const bool crit = lemma_I_criterion(ctx, n, a);
        ++report.type_I_checked;
        LemmaDisagreement rec{"I", rep.tag, omega, n, a2, crit, sub.is_full_psl, sub.diagnosis()};
        if (rep.tag.kind == Kind::gamma_power && n == 2 && ctx.mul(ctx.elem(2), a2).value == 1)
          report.gamma_n2_half_square_cases.push_back(rec);
        if (crit != sub.is_full_psl)
          report.disagreements.push_back(rec);
      }
    }

    if (m >= 3) {
      const int n = static_cast<int>(m);
      for (const auto& omega : group.psl_elements()) {
        if (!is_involution(ctx, omega))
          continue;
        const ProjMatExt psi = conjugate(ctx, extend(ctx, omega), diag.tau);
        const FpElem a2 = diagonal_square(ctx, psi);
        const auto orbit = sigma_orbit(group, sigma, omega, static_cast<std::size_t>(n));
        const SubgroupReport sub = closure(group, orbit);
        const bool crit = lemma_II_criterion(ctx, n, a2);
        ++report.type_II_checked;
        if (crit != sub.is_full_psl)
          report.disagreements.push_back({"II", rep.tag, omega, n, a2, crit, sub.is_full_psl, sub.diagnosis()});
      }
    }
  }
  return report;
}

}  // namespace rbcm
