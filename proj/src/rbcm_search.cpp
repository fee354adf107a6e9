#include "rbcm/rbcm_search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

#include "rbcm/subgroup_oracle.hpp"

namespace rbcm {

std::string to_string(RbcmType t) { return t == RbcmType::I ? "I" : "II"; }

std::string to_string(Family f) {
  switch (f) {
    case Family::I_alpha:
      return "I_alpha";
    case Family::I_gamma:
      return "I_gamma";
    case Family::II_beta:
      return "II_beta";
    case Family::II_alpha:
      return "II_alpha";
    case Family::II_gamma:
      return "II_gamma";
    case Family::a5:
      return "a5";
  }
  return "?";
}

std::string FamilyParams::describe() const {
  const std::string nstr = "n=" + std::to_string(n);
  switch (family) {
    case Family::I_alpha:
      return nstr + ",u=" + std::to_string(u_or_v) + ",a=" + std::to_string(a.value);
    case Family::I_gamma:
      return nstr + ",v=" + std::to_string(u_or_v) + ",a=" + std::to_string(a.value) +
             (solution ? ",solution=" + std::to_string(solution) : "");
    case Family::II_beta:
      return nstr + ",z=" + std::to_string(z.value);
    case Family::II_alpha:
      return nstr + ",u=" + std::to_string(u_or_v) + ",a=" + std::to_string(a.value);
    case Family::II_gamma:
      return nstr + ",v=" + std::to_string(u_or_v) + ",a_check=" + std::to_string(a_check.value) +
             (solution ? ",solution=" + std::to_string(solution) : "");
    case Family::a5:
      return nstr + ",index=" + std::to_string(solution);
  }
  return nstr;
}

RbcmSpec make_spec(const ProjectiveGroup& group, const ProjMat& sigma, const ProjMat& omega, RbcmType type) {
  RbcmSpec spec;
  spec.sigma = sigma;
  spec.omega = omega;
  spec.type = type;
  spec.valence = static_cast<std::uint32_t>(order(group.field(), sigma));
  spec.orbit.reserve(spec.valence);
  ProjMat x = omega;
  for (std::uint32_t i = 0; i < spec.valence; ++i) {
    spec.orbit.push_back(x);
    x = group.conjugate(x, sigma);
  }
  return spec;
}

std::optional<std::string> spec_violation(const ProjectiveGroup& group, const RbcmSpec& spec) {
  const auto& ctx = group.field();
  if (group.psl_index(spec.omega) < 0)
    return "omega not in PSL";
  if (order(ctx, spec.sigma) != spec.valence)
    return "valence differs from |sigma|";
  if (spec.orbit.size() != spec.valence)
    return "orbit length differs from valence";
  std::set<ProjMat> distinct(spec.orbit.begin(), spec.orbit.end());
  if (distinct.size() != spec.valence)
    return "orbit has " + std::to_string(distinct.size()) + " distinct elements, expected " +
           std::to_string(spec.valence);
  const std::uint64_t omega_order = order(ctx, spec.omega);
  if (spec.type == RbcmType::I) {
    if (spec.valence % 2 != 0)
      return "type I needs even valence";
    if (omega_order <= 2)
      return "type I needs |omega| > 2";
    const ProjMat sn = power(ctx, spec.sigma, spec.valence / 2);
    if (!(group.conjugate(spec.omega, sn) == group.inverse(spec.omega)))
      return "sigma^n omega sigma^-n != omega^-1";
  } else if (omega_order != 2) {
    return "type II needs |omega| = 2";
  }
  const SubgroupReport sub = closure(group, spec.orbit);
  if (!sub.is_full_psl)
    return "orbit generates " + sub.diagnosis();
  return std::nullopt;
}

std::uint32_t max_search_prime() {
  if (const char* env = std::getenv("RBCM_MAX_P")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::uint32_t>(std::min<unsigned long>(v, ProjectiveGroup::kMaxPrime));
  }
  return kDefaultMaxSearchPrime;
}

namespace {

struct RepResult {
  std::vector<RbcmSpec> specs;
  SearchStats stats;
  std::vector<std::string> warnings;
};

RepResult scan_representative(const ProjectiveGroup& group, const ProjectiveGroup::ClassRep& rep, RbcmType type) {
  const auto& ctx = group.field();
  RepResult out;
  const std::uint64_t m = rep.order;
  if (type == RbcmType::I && m % 2 != 0)
    return out;
  const ProjMat sigma_n = type == RbcmType::I ? power(ctx, rep.matrix, static_cast<std::int64_t>(m / 2)) : ProjMat{};
  for (const auto& omega : group.psl_elements()) {
    if (is_identity(omega))
      continue;
    const bool involution = trace_class(ctx, omega).t2.is_zero();
    if (type == RbcmType::I) {
      if (involution || !(group.conjugate(omega, sigma_n) == group.inverse(omega)))
        continue;
    } else if (!involution) {
      continue;
    }
    ++out.stats.pairs_checked;
    RbcmSpec spec = make_spec(group, rep.matrix, omega, type);
    std::set<ProjMat> distinct(spec.orbit.begin(), spec.orbit.end());
    if (distinct.size() != spec.valence) {
      // Type II orbits shorter than |sigma| are expected (omega centralized by
      // a power of sigma); only type I is a counterexample worth reporting.
      ++out.stats.orbit_mismatches;
      if (type == RbcmType::I)
        out.warnings.push_back("orbit size " + std::to_string(distinct.size()) + " != " +
                               std::to_string(spec.valence) + " for sigma=" + rep.tag.to_string() +
                               " omega=" + to_string(omega));
      continue;
    }
    if (!closure(group, spec.orbit).is_full_psl) {
      ++out.stats.non_generating;
      continue;
    }
    out.specs.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

SearchResult enumerate_rbcms(const ProjectiveGroup& group, RbcmType type, SearchOptions options) {
  if (group.p() > max_search_prime())
    throw std::out_of_range("p = " + std::to_string(group.p()) + " exceeds the search bound " +
                            std::to_string(max_search_prime()) + " (raise with RBCM_MAX_P)");
  const auto& reps = group.class_reps();
  std::vector<RepResult> partial(reps.size());
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(reps.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reps.size(); i = next++)
      partial[i] = scan_representative(group, reps[i], type);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
  }

  SearchResult result;
  for (auto& part : partial) {
    result.stats.pairs_checked += part.stats.pairs_checked;
    result.stats.orbit_mismatches += part.stats.orbit_mismatches;
    result.stats.non_generating += part.stats.non_generating;
    for (auto& s : part.specs)
      result.specs.push_back(std::move(s));
    for (auto& w : part.warnings)
      result.warnings.push_back(std::move(w));
  }
  return result;
}

bool valence_divisibility_holds(std::uint32_t p, RbcmType type, std::uint32_t valence) {
  if (valence == 0)
    return false;
  const bool divides = (p - 1) % valence == 0 || (p + 1) % valence == 0;
  if (type == RbcmType::I)
    return divides;
  return divides || valence == p;
}

Canonicalizer::Canonicalizer(const ProjectiveGroup& group) : group_(group) {
  for (const auto& g : group.pgl_elements()) {
    if (is_identity(g))
      continue;
    class_min_.try_emplace(conjugacy_rep(group.field(), g), g);
  }
}

const Canonicalizer::SigmaEntry& Canonicalizer::entry(const ProjMat& sigma) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(sigma);
  if (it != cache_.end())
    return it->second;
  SigmaEntry e;
  if (is_identity(sigma)) {
    e.target = sigma;
    e.conjugators = group_.pgl_elements();
  } else {
    e.target = class_min_.at(conjugacy_rep(group_.field(), sigma));
    for (const auto& tau : group_.pgl_elements())
      if (group_.conjugate(sigma, tau) == e.target)
        e.conjugators.push_back(tau);
  }
  return cache_.emplace(sigma, std::move(e)).first->second;
}

CanonicalKey Canonicalizer::key(const RbcmSpec& spec) const {
  const SigmaEntry& e = entry(spec.sigma);
  CanonicalKey k;
  k.valence = spec.valence;
  k.type = spec.type;
  k.sigma_tag = is_identity(spec.sigma) ? ConjugacyTag{} : conjugacy_rep(group_.field(), spec.sigma);
  k.sigma = e.target;
  bool first = true;
  for (const auto& tau : e.conjugators) {
    ProjMat w = group_.conjugate(spec.omega, tau);
    if (first || w < k.omega) {
      k.omega = w;
      first = false;
    }
  }
  return k;
}

RbcmSpec Canonicalizer::canonical(const RbcmSpec& spec) const {
  const CanonicalKey k = key(spec);
  return make_spec(group_, k.sigma, k.omega, spec.type);
}

std::vector<IsoClass> reduce_to_iso_classes(const Canonicalizer& canon, std::span<const RbcmSpec> specs) {
  std::map<CanonicalKey, IsoClass> classes;
  for (const auto& spec : specs) {
    const CanonicalKey k = canon.key(spec);
    auto [it, inserted] = classes.try_emplace(k);
    if (inserted) {
      it->second.key = k;
      it->second.representative = canon.canonical(spec);
    }
    ++it->second.members_found;
  }
  std::vector<IsoClass> out;
  out.reserve(classes.size());
  for (auto& [k, c] : classes)
    out.push_back(std::move(c));
  return out;
}

std::vector<IsoClass> reduce_to_iso_classes(const ProjectiveGroup& group, std::span<const RbcmSpec> specs) {
  const Canonicalizer canon(group);
  return reduce_to_iso_classes(canon, specs);
}

std::optional<ProjMat> isomorphism_witness(const ProjectiveGroup& group, const RbcmSpec& s1, const RbcmSpec& s2) {
  if (s1.type != s2.type || s1.valence != s2.valence)
    return std::nullopt;
  std::optional<ProjMat> tau0;
  for (const auto& tau : group.pgl_elements()) {
    if (group.conjugate(s1.sigma, tau) == s2.sigma) {
      tau0 = tau;
      break;
    }
  }
  if (!tau0)
    return std::nullopt;
  for (const auto& c : group.centralizer(s1.sigma)) {
    const ProjMat tau = group.mul(*tau0, c);
    if (group.conjugate(s1.omega, tau) == s2.omega)
      return tau;
  }
  return std::nullopt;
}

bool isomorphic(const ProjectiveGroup& group, const RbcmSpec& s1, const RbcmSpec& s2) {
  return isomorphism_witness(group, s1, s2).has_value();
}

}  // namespace rbcm
