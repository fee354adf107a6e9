#include "rbcm/closed_form.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rbcm/perm_a5.hpp"
#include "rbcm/subgroup_oracle.hpp"

namespace rbcm {

namespace {

FpElem require_nonzero(FpElem x, const char* what) {
  if (x.is_zero())
    throw std::invalid_argument(std::string(what) + " must be nonzero");
  return x;
}

template <class Solutions>
const auto& pick_solution(const Solutions& sols, std::size_t solution) {
  if (solution >= sols.size())
    throw std::out_of_range("solution index " + std::to_string(solution) + " out of range (" +
                            std::to_string(sols.size()) + " solutions)");
  return sols[solution];
}

bool type_I_admissible(const FieldContext& ctx, int n, FpElem a) { return lemma_I_criterion(ctx, n, a); }

}  // namespace

ProjMat build_omega_I_alpha(const FieldContext& ctx, FpElem a) {
  const FpElem a2 = ctx.square(a);
  if (a.is_zero() || a2.value == 1)
    throw std::invalid_argument("I_alpha needs a not in {0, 1, -1}");
  return make_projective(ctx, a, FpElem{1}, ctx.sub(a2, FpElem{1}), a);
}

std::vector<std::pair<FpElem, FpElem>> I_gamma_solutions(const FieldContext& ctx, FpElem a) {
  std::vector<std::pair<FpElem, FpElem>> out;
  for (const auto& [shifted, z] : solve_norm_equation(ctx.sub(ctx.square(a), FpElem{1}), ctx))
    out.emplace_back(ctx.add(shifted, a), z);
  std::sort(out.begin(), out.end());
  return out;
}

ProjMat build_omega_I_gamma(const FieldContext& ctx, FpElem a, std::size_t solution) {
  if (a.is_zero() || ctx.square(a).value == 1)
    throw std::invalid_argument("I_gamma needs a not in {0, 1, -1}");
  const auto sols = I_gamma_solutions(ctx, a);
  const auto& [x, z] = pick_solution(sols, solution);
  return make_projective(ctx, x, ctx.neg(ctx.mul(ctx.e(), z)), z, ctx.sub(ctx.add(a, a), x));
}

ProjMat build_omega_II_beta(const FieldContext& ctx, FpElem z) {
  require_nonzero(z, "z");
  return make_projective(ctx, FpElem{}, ctx.neg(ctx.inv(z)), z, FpElem{});
}

ProjMat build_omega_II_alpha(const FieldContext& ctx, FpElem a) {
  const FpElem a2 = ctx.square(a);
  if (a.is_zero() || a2 == ctx.elem(-1))
    throw std::invalid_argument("II_alpha needs a != 0 and a^2 != -1");
  return make_projective(ctx, a, FpElem{1}, ctx.neg(ctx.add(a2, FpElem{1})), ctx.neg(a));
}

std::vector<std::pair<FpElem, FpElem>> II_gamma_solutions(const FieldContext& ctx, FpElem a_check) {
  std::vector<std::pair<FpElem, FpElem>> out;
  const FpElem c = ctx.add(ctx.square(a_check), ctx.e());
  for (const auto& [shifted, x] : solve_norm_equation(c, ctx))
    out.emplace_back(x, ctx.sub(shifted, a_check));
  std::sort(out.begin(), out.end());
  return out;
}

ProjMat build_omega_II_gamma(const FieldContext& ctx, FpElem a_check, std::size_t solution) {
  if (a_check.is_zero() || ctx.square(a_check) == ctx.neg(ctx.e()))
    throw std::invalid_argument("II_gamma needs a_check != 0 and a_check^2 != -e");
  const auto sols = II_gamma_solutions(ctx, a_check);
  const auto& [x, y] = pick_solution(sols, solution);
  const FpElem lower = ctx.neg(ctx.div(ctx.add(ctx.add(a_check, a_check), y), ctx.e()));
  return make_projective(ctx, x, y, lower, ctx.neg(x));
}

bool II_gamma_admissible(const FieldContext& ctx, int n, FpElem a_check) {
  const FpElem e = ctx.e();
  const FpElem c2 = ctx.square(a_check);
  if (a_check.is_zero() || c2 == ctx.neg(e))
    return false;
  const FpElem c4 = ctx.square(c2);
  const FpElem e2 = ctx.square(e);
  if (n == 3) {
    const FpElem three_c2 = ctx.mul(ctx.elem(3), c2);
    if (three_c2 == ctx.neg(e) || three_c2 == ctx.neg(ctx.add(e, e)))
      return false;
    const FpElem poly = ctx.add(ctx.add(ctx.mul(ctx.elem(9), c4), ctx.mul(ctx.elem(9), ctx.mul(c2, e))), e2);
    if (poly.is_zero())
      return false;
  }
  if (n == 5) {
    const FpElem poly = ctx.add(ctx.add(ctx.mul(ctx.elem(5), c4), ctx.mul(ctx.elem(5), ctx.mul(c2, e))), e2);
    if (poly.is_zero())
      return false;
  }
  return true;
}

ProjMat family_sigma(const FieldContext& ctx, const FamilyParams& params) {
  const auto abg = canonical_alpha_beta_gamma(ctx);
  const std::int64_t p = ctx.p();
  const std::int64_t n = params.n, uv = params.u_or_v;
  switch (params.family) {
    case Family::I_alpha:
      return power(ctx, abg.alpha, (p - 1) * uv / (2 * n));
    case Family::I_gamma:
      return power(ctx, abg.gamma, (p + 1) * uv / (2 * n));
    case Family::II_beta:
      return abg.beta;
    case Family::II_alpha:
      return power(ctx, abg.alpha, (p - 1) * uv / n);
    case Family::II_gamma:
      return power(ctx, abg.gamma, (p + 1) * uv / n);
    case Family::a5:
      break;
  }
  throw std::invalid_argument("family_sigma: the a5 family has no matrix formula");
}

ProjMat family_omega(const FieldContext& ctx, const FamilyParams& params) {
  const auto sol = static_cast<std::size_t>(params.solution);
  switch (params.family) {
    case Family::I_alpha:
      return build_omega_I_alpha(ctx, params.a);
    case Family::I_gamma:
      return build_omega_I_gamma(ctx, params.a, sol);
    case Family::II_beta:
      return build_omega_II_beta(ctx, params.z);
    case Family::II_alpha:
      return build_omega_II_alpha(ctx, params.a);
    case Family::II_gamma:
      return build_omega_II_gamma(ctx, params.a_check, sol);
    case Family::a5:
      break;
  }
  throw std::invalid_argument("family_omega: the a5 family has no matrix formula");
}

namespace {

void emit(const ProjectiveGroup& group, RbcmType type, FamilyParams params, std::vector<ClosedFormCandidate>& out) {
  const auto& ctx = group.field();
  ClosedFormCandidate c;
  c.params = params;
  c.spec = make_spec(group, family_sigma(ctx, params), family_omega(ctx, params), type);
  c.violation = spec_violation(group, c.spec);
  out.push_back(std::move(c));
}

std::vector<ClosedFormCandidate> a5_candidates(const ProjectiveGroup& group, RbcmType type) {
  const A5Isomorphism iso(group);
  std::vector<ClosedFormCandidate> out;
  int index = 0;
  for (const auto& cls : enumerate_a5_rbcms(type == RbcmType::I ? PermRbcmType::I : PermRbcmType::II)) {
    ClosedFormCandidate c;
    c.params.family = Family::a5;
    c.params.n = type == RbcmType::I ? cls.valence / 2 : cls.valence;
    c.params.solution = index++;
    c.spec = make_spec(group, iso.translate_outer(cls.sigma), iso.image(cls.omega), type);
    c.violation = spec_violation(group, c.spec);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<ClosedFormCandidate> enumerate_closed_form(const ProjectiveGroup& group, RbcmType type) {
  const auto& ctx = group.field();
  const int p = static_cast<int>(group.p());
  if (p == 5)
    return a5_candidates(group, type);

  std::vector<ClosedFormCandidate> out;
  if (type == RbcmType::I) {
    for (Family fam : {Family::I_alpha, Family::I_gamma}) {
      const int m = fam == Family::I_alpha ? p - 1 : p + 1;
      for (int n = 2; 2 * n <= m; ++n) {
        if (m % (2 * n) != 0)
          continue;
        for (int u = 1; u < n; ++u) {
          if (std::gcd(u, 2 * n) != 1)
            continue;
          for (int av = 0; av < p; ++av) {
            const FpElem a{static_cast<std::uint32_t>(av)};
            if (!type_I_admissible(ctx, n, a))
              continue;
            FamilyParams fp;
            fp.family = fam;
            fp.n = n;
            fp.u_or_v = u;
            fp.a = a;
            emit(group, type, fp, out);
          }
        }
      }
    }
    return out;
  }

  for (int zv = 1; zv < p; ++zv) {
    FamilyParams fp;
    fp.family = Family::II_beta;
    fp.n = p;
    fp.z = FpElem{static_cast<std::uint32_t>(zv)};
    emit(group, type, fp, out);
  }
  for (Family fam : {Family::II_alpha, Family::II_gamma}) {
    const int m = fam == Family::II_alpha ? p - 1 : p + 1;
    for (int n = 3; n <= m; ++n) {
      if (m % n != 0)
        continue;
      for (int u = 1; 2 * u < n; ++u) {
        if (std::gcd(u, n) != 1)
          continue;
        for (int av = 0; av < p; ++av) {
          const FpElem a{static_cast<std::uint32_t>(av)};
          FamilyParams fp;
          fp.family = fam;
          fp.n = n;
          fp.u_or_v = u;
          if (fam == Family::II_alpha) {
            if (!lemma_II_criterion(ctx, n, ctx.square(a)))
              continue;
            fp.a = a;
          } else {
            if (!II_gamma_admissible(ctx, n, a))
              continue;
            fp.a_check = a;
          }
          emit(group, type, fp, out);
        }
      }
    }
  }
  return out;
}

std::vector<FamilyParams> excluded_gamma_n2_params(const ProjectiveGroup& group) {
  const auto& ctx = group.field();
  std::vector<FamilyParams> out;
  if ((group.p() + 1) % 4 != 0)
    return out;
  for (std::uint32_t av = 2; av + 1 < group.p(); ++av) {
    const FpElem a{av};
    if (ctx.mul(ctx.elem(2), ctx.square(a)).value != 1)
      continue;
    FamilyParams fp;
    fp.family = Family::I_gamma;
    fp.n = 2;
    fp.u_or_v = 1;
    fp.a = a;
    out.push_back(fp);
  }
  return out;
}

bool BucketReport::agrees() const {
  if (!misses.empty() || !spuria.empty())
    return false;
  for (const auto& d : duplicates)
    if (!d.witness)
      return false;
  return true;
}

std::size_t ValidationReport::total_misses() const {
  std::size_t n = 0;
  for (const auto& b : buckets)
    n += b.misses.size();
  return n;
}

std::size_t ValidationReport::total_spuria() const {
  std::size_t n = 0;
  for (const auto& b : buckets)
    n += b.spuria.size();
  return n;
}

bool ValidationReport::duplicates_witnessed() const {
  for (const auto& b : buckets)
    for (const auto& d : b.duplicates)
      if (!d.witness)
        return false;
  return true;
}

bool ValidationReport::agrees() const {
  for (const auto& b : buckets)
    if (!b.agrees())
      return false;
  return true;
}

namespace {

// Families grouped by everything except the free field parameter.
struct FamilyGroupKey {
  RbcmType type;
  Family family;
  int n;
  int u_or_v;
  auto operator<=>(const FamilyGroupKey&) const = default;
};

bool sign_pair(const FieldContext& ctx, const FamilyParams& x, const FamilyParams& y) {
  switch (x.family) {
    case Family::II_beta:
      return y.z == ctx.neg(x.z);
    case Family::II_gamma:
      return y.a_check == ctx.neg(x.a_check);
    default:
      return y.a == ctx.neg(x.a);
  }
}

}  // namespace

ValidationReport cross_validate(const ProjectiveGroup& group, SearchOptions options) {
  const auto& ctx = group.field();
  const Canonicalizer canon(group);
  ValidationReport report;
  report.p = group.p();

  for (RbcmType type : {RbcmType::I, RbcmType::II}) {
    const SearchResult brute = enumerate_rbcms(group, type, options);
    if (type == RbcmType::I)
      for (const auto& w : brute.warnings)
        report.findings.push_back({"orbit_size_counterexample", w});
    std::vector<IsoClass> classes = reduce_to_iso_classes(canon, brute.specs);
    std::map<CanonicalKey, std::size_t> class_at;
    for (std::size_t i = 0; i < classes.size(); ++i)
      class_at[classes[i].key] = i;

    std::map<std::uint32_t, BucketReport> buckets;
    for (const auto& c : classes) {
      auto& b = buckets[c.key.valence];
      b.type = type;
      b.valence = c.key.valence;
      ++b.brute_force_classes;
    }

    const auto candidates = enumerate_closed_form(group, type);
    std::map<CanonicalKey, std::size_t> first_hit;
    std::map<FamilyGroupKey, std::pair<std::size_t, std::set<CanonicalKey>>> family_groups;
    std::map<FamilyGroupKey, bool> all_sign_pairs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& cand = candidates[i];
      auto& b = buckets[cand.spec.valence];
      b.type = type;
      b.valence = cand.spec.valence;
      ++b.closed_form_candidates;
      if (cand.violation) {
        b.spuria.push_back({cand.params, *cand.violation});
        continue;
      }
      const CanonicalKey key = canon.key(cand.spec);
      auto cls = class_at.find(key);
      if (cls == class_at.end()) {
        b.spuria.push_back({cand.params, "valid map absent from the exhaustive search"});
        continue;
      }
      const FamilyGroupKey gk{type, cand.params.family, cand.params.n, cand.params.u_or_v};
      auto& fg = family_groups[gk];
      ++fg.first;
      fg.second.insert(key);
      auto [hit, inserted] = first_hit.try_emplace(key, i);
      if (inserted) {
        classes[cls->second].provenance = cand.params;
        continue;
      }
      const auto& first = candidates[hit->second];
      b.duplicates.push_back({first.params, cand.params, isomorphism_witness(group, first.spec, cand.spec)});
      auto [flag, fresh] = all_sign_pairs.try_emplace(gk, true);
      flag->second = flag->second && first.params.family == cand.params.family &&
                     sign_pair(ctx, first.params, cand.params);
    }

    for (auto& [valence, b] : buckets) {
      for (const auto& c : classes) {
        if (c.key.valence != valence)
          continue;
        if (first_hit.contains(c.key)) {
          ++b.matched;
        } else {
          b.misses.push_back(c.key);
          report.findings.push_back({"missed_class", "type " + to_string(type) + " valence " +
                                                         std::to_string(valence) + ": sigma=" + to_string(c.key.sigma) +
                                                         " omega=" + to_string(c.key.omega)});
        }
      }
      std::set<CanonicalKey> cf_keys;
      for (const auto& [k, idx] : first_hit)
        if (k.valence == valence)
          cf_keys.insert(k);
      b.closed_form_classes = cf_keys.size();
      for (const auto& s : b.spuria)
        report.findings.push_back({"spurious_candidate", "type " + to_string(type) + " " + to_string(s.params.family) +
                                                             " " + s.params.describe() + ": " + s.reason});
      report.buckets.push_back(std::move(b));
    }

    for (const auto& [gk, fg] : family_groups) {
      if (fg.first == fg.second.size())
        continue;
      auto flag = all_sign_pairs.find(gk);
      const bool signs = flag != all_sign_pairs.end() && flag->second;
      const std::string code = !signs ? "parameter_identification"
                               : gk.family == Family::II_beta ? "pm_z_identification"
                                                              : "pm_a_identification";
      report.findings.push_back(
          {code, to_string(gk.family) + " n=" + std::to_string(gk.n) +
                     (gk.family == Family::II_beta ? "" : " u_or_v=" + std::to_string(gk.u_or_v)) + ": " +
                     std::to_string(fg.first) + " parameter values give " + std::to_string(fg.second.size()) +
                     " isomorphism classes"});
    }

    if (type == RbcmType::I) {
      for (const auto& fp : excluded_gamma_n2_params(group)) {
        const RbcmSpec spec = make_spec(group, family_sigma(ctx, fp), family_omega(ctx, fp), type);
        const SubgroupReport sub = closure(group, spec.orbit);
        report.findings.push_back(
            {"legendre_gamma_n2", "2 is a square mod " + std::to_string(group.p()) + "; excluded " + fp.describe() +
                                      " generates " + sub.diagnosis()});
      }
      report.classes_I = std::move(classes);
    } else {
      report.classes_II = std::move(classes);
    }
  }
  return report;
}

}  // namespace rbcm
