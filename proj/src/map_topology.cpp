#include "rbcm/map_topology.hpp"

#include <limits>
#include <unordered_map>

namespace rbcm {

namespace {
constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
}

DenseGroup::DenseGroup(std::size_t order, std::uint32_t identity, MulFn mul)
    : order_(order), identity_(identity), mul_(std::move(mul)) {
  if (order_ <= kTableLimit) {
    table_.resize(order_ * order_);
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        table_[a * order_ + b] = mul_(a, b);
  }
}

DenseGroup DenseGroup::cyclic(std::uint32_t n) {
  return DenseGroup(n, 0, [n](std::uint32_t a, std::uint32_t b) { return (a + b) % n; });
}

DenseGroup DenseGroup::psl(const ProjectiveGroup& group) {
  const auto& elems = group.psl_elements();
  const std::uint32_t id = static_cast<std::uint32_t>(group.psl_index(identity_matrix()));
  return DenseGroup(elems.size(), id, [&group, &elems](std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(group.psl_index(group.mul(elems[a], elems[b])));
  });
}

std::uint32_t DenseGroup::inverse(std::uint32_t a) const {
  std::uint32_t prev = identity_;
  for (std::uint32_t cur = a; cur != identity_; cur = mul(cur, a))
    prev = cur;
  return prev;
}

std::string to_string(MapErrorKind kind) {
  switch (kind) {
    case MapErrorKind::empty_generators:
      return "empty_generators";
    case MapErrorKind::element_out_of_range:
      return "element_out_of_range";
    case MapErrorKind::duplicate_generator:
      return "duplicate_generator";
    case MapErrorKind::identity_in_omega:
      return "identity_in_omega";
    case MapErrorKind::not_inverse_closed:
      return "not_inverse_closed";
    case MapErrorKind::rho_not_single_cycle:
      return "rho_not_single_cycle";
    case MapErrorKind::non_generating:
      return "non_generating";
  }
  return "unknown";
}

MapError::MapError(MapErrorKind kind, const std::string& detail)
    : std::invalid_argument(to_string(kind) + ": " + detail), kind_(kind) {}

CayleyMapStruct build_map(const DenseGroup& group, std::span<const std::uint32_t> omega,
                          std::span<const std::uint32_t> rho) {
  const std::size_t m = omega.size();
  if (m == 0)
    throw MapError(MapErrorKind::empty_generators, "Omega is empty");
  std::unordered_map<std::uint32_t, std::uint32_t> position;
  for (std::uint32_t j = 0; j < m; ++j) {
    if (omega[j] >= group.order())
      throw MapError(MapErrorKind::element_out_of_range, "generator index " + std::to_string(omega[j]));
    if (omega[j] == group.identity())
      throw MapError(MapErrorKind::identity_in_omega, "position " + std::to_string(j));
    if (!position.emplace(omega[j], j).second)
      throw MapError(MapErrorKind::duplicate_generator, "element " + std::to_string(omega[j]));
  }

  if (rho.size() != m)
    throw MapError(MapErrorKind::rho_not_single_cycle, "rho has " + std::to_string(rho.size()) + " entries");
  {
    std::vector<bool> seen(m, false);
    std::uint32_t j = 0;
    for (std::size_t step = 0; step < m; ++step) {
      if (rho[j] >= m || seen[j])
        throw MapError(MapErrorKind::rho_not_single_cycle, "cycle through position 0 is not all of Omega");
      seen[j] = true;
      j = rho[j];
    }
    if (j != 0)
      throw MapError(MapErrorKind::rho_not_single_cycle, "rho does not close up after |Omega| steps");
  }

  CayleyMapStruct map;
  map.vertex_count = group.order();
  map.generators.assign(omega.begin(), omega.end());
  map.rho.assign(rho.begin(), rho.end());
  map.inverse_of.resize(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    auto it = position.find(group.inverse(omega[j]));
    if (it == position.end())
      throw MapError(MapErrorKind::not_inverse_closed, "inverse of element " + std::to_string(omega[j]));
    map.inverse_of[j] = it->second;
  }

  {
    std::vector<bool> reached(group.order(), false);
    std::vector<std::uint32_t> queue{group.identity()};
    reached[group.identity()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::uint32_t g : map.generators) {
        const std::uint32_t h = group.mul(queue[i], g);
        if (!reached[h]) {
          reached[h] = true;
          queue.push_back(h);
        }
      }
    if (queue.size() != group.order())
      throw MapError(MapErrorKind::non_generating,
                     "Omega generates " + std::to_string(queue.size()) + " of " + std::to_string(group.order()) +
                         " elements");
  }

  // Arc (eta, w_j) is followed by (eta w_j, rho(w_j^{-1})).
  const std::size_t arcs = map.arc_count();
  std::vector<bool> used(arcs, false);
  for (std::size_t start = 0; start < arcs; ++start) {
    if (used[start])
      continue;
    std::vector<std::uint32_t> face;
    std::size_t arc = start;
    while (!used[arc]) {
      used[arc] = true;
      face.push_back(static_cast<std::uint32_t>(arc));
      const std::uint32_t eta = static_cast<std::uint32_t>(arc / m);
      const std::uint32_t j = static_cast<std::uint32_t>(arc % m);
      arc = static_cast<std::size_t>(group.mul(eta, map.generators[j])) * m + map.rho[map.inverse_of[j]];
    }
    if (arc != start)
      throw std::logic_error("face tracing did not return to its starting arc");
    map.faces.push_back(std::move(face));
  }
  map.edge_count = arcs / 2;
  map.euler_char = static_cast<long>(map.vertex_count) - static_cast<long>(map.edge_count) +
                   static_cast<long>(map.faces.size());
  map.genus = genus(map);
  return map;
}

bool is_balanced(const CayleyMapStruct& map) {
  for (std::size_t j = 0; j < map.generators.size(); ++j)
    if (map.rho[map.inverse_of[j]] != map.inverse_of[map.rho[j]])
      return false;
  return true;
}

bool is_regular_balanced(const CayleyMapStruct& map, const DenseGroup& group, const ElementMap* witness) {
  const std::size_t m = map.generators.size();
  if (witness) {
    for (std::size_t j = 0; j < m; ++j)
      if ((*witness)(map.generators[j]) != map.generators[map.rho[j]])
        return false;
    return true;
  }
  const std::size_t n = group.order();
  if (n > kGenericRegularityLimit)
    return false;
  std::vector<std::uint32_t> phi(n, kUnset);
  phi[group.identity()] = group.identity();
  std::vector<std::uint32_t> queue{group.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::uint32_t g = queue[i];
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t h = group.mul(g, map.generators[j]);
      const std::uint32_t target = group.mul(phi[g], map.generators[map.rho[j]]);
      if (phi[h] == kUnset) {
        phi[h] = target;
        queue.push_back(h);
      } else if (phi[h] != target) {
        return false;
      }
    }
  }
  if (queue.size() != n)
    return false;
  std::vector<bool> hit(n, false);
  for (std::uint32_t v : phi) {
    if (hit[v])
      return false;
    hit[v] = true;
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (phi[group.mul(a, b)] != group.mul(phi[a], phi[b]))
        return false;
  return true;
}

long genus(const CayleyMapStruct& map) {
  const long chi = static_cast<long>(map.vertex_count) - static_cast<long>(map.edge_count) +
                   static_cast<long>(map.faces.size());
  if ((2 - chi) % 2 != 0 || chi > 2)
    throw std::logic_error("Euler characteristic " + std::to_string(chi) + " gives no valid genus");
  return (2 - chi) / 2;
}

std::size_t uniform_face_length(const CayleyMapStruct& map) {
  if (map.faces.empty())
    return 0;
  const std::size_t len = map.faces.front().size();
  for (const auto& f : map.faces)
    if (f.size() != len)
      return 0;
  return len;
}

bool faces_partition_arcs(const CayleyMapStruct& map) {
  std::vector<bool> seen(map.arc_count(), false);
  std::size_t total = 0;
  for (const auto& f : map.faces) {
    for (std::uint32_t arc : f) {
      if (arc >= seen.size() || seen[arc])
        return false;
      seen[arc] = true;
      ++total;
    }
  }
  return total == map.arc_count();
}

CayleyMapStruct map_from_spec(const ProjectiveGroup& pgroup, const DenseGroup& group, const RbcmSpec& spec) {
  std::vector<std::uint32_t> omega, rho;
  const std::size_t m = spec.orbit.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::int32_t idx = pgroup.psl_index(spec.orbit[i]);
    if (idx < 0)
      throw MapError(MapErrorKind::element_out_of_range, "generator " + to_string(spec.orbit[i]) + " not in PSL");
    omega.push_back(static_cast<std::uint32_t>(idx));
    rho.push_back(static_cast<std::uint32_t>((i + 1) % m));
  }
  return build_map(group, omega, rho);
}

ElementMap conjugation_witness(const ProjectiveGroup& pgroup, const ProjMat& sigma) {
  return [&pgroup, sigma](std::uint32_t i) {
    return static_cast<std::uint32_t>(pgroup.psl_index(pgroup.conjugate(pgroup.psl_elements()[i], sigma)));
  };
}

MapSummary summarize(const ProjectiveGroup& pgroup, const RbcmSpec& spec, const CayleyMapStruct& map) {
  MapSummary s;
  s.p = pgroup.p();
  s.type = spec.type;
  s.valence = spec.valence;
  s.sigma = spec.sigma;
  s.omega = spec.omega;
  s.vertices = map.vertex_count;
  s.edges = map.edge_count;
  s.faces = map.face_count();
  s.euler_char = map.euler_char;
  s.genus = map.genus;
  s.face_length = uniform_face_length(map);
  return s;
}

}  // namespace rbcm
