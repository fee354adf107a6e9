#include "rbcm/projective_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbcm {

namespace {

template <class Scalar>
ProjectiveMatrix<Scalar> normalize(const FieldContext& ctx, std::array<Scalar, 4> m) {
  Scalar det = ctx.sub(ctx.mul(m[0], m[3]), ctx.mul(m[1], m[2]));
  if (det.is_zero())
    throw std::invalid_argument("singular matrix has no projective class");
  int first = 0;
  while (m[first].is_zero())
    ++first;
  const Scalar scale = ctx.inv(m[first]);
  for (auto& x : m)
    x = ctx.mul(x, scale);
  det = ctx.mul(det, ctx.mul(scale, scale));
  ProjectiveMatrix<Scalar> out;
  out.entries = m;
  out.det_class = ctx.is_square(det) ? DetClass::square : DetClass::nonsquare;
  return out;
}

DetClass combine(DetClass a, DetClass b) {
  return a == b ? DetClass::square : DetClass::nonsquare;
}

template <class Scalar>
std::array<Scalar, 4> adjugate(const FieldContext& ctx, const std::array<Scalar, 4>& m) {
  return {m[3], ctx.neg(m[1]), ctx.neg(m[2]), m[0]};
}

template <class Scalar>
std::array<Scalar, 4> raw_mul(const FieldContext& ctx, const std::array<Scalar, 4>& a,
                              const std::array<Scalar, 4>& b) {
  return {ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[2])),
          ctx.add(ctx.mul(a[0], b[1]), ctx.mul(a[1], b[3])),
          ctx.add(ctx.mul(a[2], b[0]), ctx.mul(a[3], b[2])),
          ctx.add(ctx.mul(a[2], b[1]), ctx.mul(a[3], b[3]))};
}

}  // namespace

ProjMat make_projective(const FieldContext& ctx, FpElem a, FpElem b, FpElem c, FpElem d) {
  return normalize<FpElem>(ctx, {a, b, c, d});
}

ProjMat make_projective(const FieldContext& ctx, std::int64_t a, std::int64_t b, std::int64_t c,
                        std::int64_t d) {
  return make_projective(ctx, ctx.elem(a), ctx.elem(b), ctx.elem(c), ctx.elem(d));
}

ProjMatExt make_projective(const FieldContext& ctx, const Fp2Elem& a, const Fp2Elem& b,
                           const Fp2Elem& c, const Fp2Elem& d) {
  return normalize<Fp2Elem>(ctx, {a, b, c, d});
}

ProjMat identity_matrix() {
  ProjMat id;
  id.entries = {FpElem{1}, FpElem{0}, FpElem{0}, FpElem{1}};
  return id;
}

ProjMatExt identity_matrix_ext() {
  ProjMatExt id;
  id.entries = {Fp2Elem{FpElem{1}, {}}, Fp2Elem{}, Fp2Elem{}, Fp2Elem{FpElem{1}, {}}};
  return id;
}

bool is_identity(const ProjMat& g) { return g == identity_matrix(); }

ProjMat mul(const FieldContext& ctx, const ProjMat& g, const ProjMat& h) {
  const std::uint64_t p = ctx.p();
  const auto& a = g.entries;
  const auto& b = h.entries;
  std::array<std::uint64_t, 4> r = {
      (std::uint64_t{a[0].value} * b[0].value + std::uint64_t{a[1].value} * b[2].value) % p,
      (std::uint64_t{a[0].value} * b[1].value + std::uint64_t{a[1].value} * b[3].value) % p,
      (std::uint64_t{a[2].value} * b[0].value + std::uint64_t{a[3].value} * b[2].value) % p,
      (std::uint64_t{a[2].value} * b[1].value + std::uint64_t{a[3].value} * b[3].value) % p};
  int first = 0;
  while (r[first] == 0)
    ++first;
  const std::uint64_t scale = ctx.inv(FpElem{static_cast<std::uint32_t>(r[first])}).value;
  ProjMat out;
  for (int i = 0; i < 4; ++i)
    out.entries[i] = FpElem{static_cast<std::uint32_t>(r[i] * scale % p)};
  out.det_class = combine(g.det_class, h.det_class);
  return out;
}

ProjMat inverse(const FieldContext& ctx, const ProjMat& g) {
  return normalize<FpElem>(ctx, adjugate(ctx, g.entries));
}

ProjMat conjugate(const FieldContext& ctx, const ProjMat& g, const ProjMat& h) {
  return mul(ctx, mul(ctx, h, g), inverse(ctx, h));
}

ProjMat power(const FieldContext& ctx, const ProjMat& g, std::int64_t k) {
  ProjMat base = k < 0 ? inverse(ctx, g) : g;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  ProjMat result = identity_matrix();
  while (n) {
    if (n & 1)
      result = mul(ctx, result, base);
    base = mul(ctx, base, base);
    n >>= 1;
  }
  return result;
}

ProjMatExt mul(const FieldContext& ctx, const ProjMatExt& g, const ProjMatExt& h) {
  return normalize<Fp2Elem>(ctx, raw_mul(ctx, g.entries, h.entries));
}

ProjMatExt inverse(const FieldContext& ctx, const ProjMatExt& g) {
  return normalize<Fp2Elem>(ctx, adjugate(ctx, g.entries));
}

ProjMatExt conjugate(const FieldContext& ctx, const ProjMatExt& g, const ProjMatExt& h) {
  return mul(ctx, mul(ctx, h, g), inverse(ctx, h));
}

ProjMatExt extend(const FieldContext& ctx, const ProjMat& g) {
  return normalize<Fp2Elem>(ctx, {ctx.embed(g.entries[0]), ctx.embed(g.entries[1]),
                                  ctx.embed(g.entries[2]), ctx.embed(g.entries[3])});
}

bool is_diagonal(const ProjMatExt& g) {
  return g.entries[1].is_zero() && g.entries[2].is_zero();
}

std::uint64_t order(const FieldContext& ctx, const ProjMat& g) {
  const std::uint64_t p = ctx.p();
  const std::uint64_t cap = p * (p * p - 1);
  ProjMat x = g;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (is_identity(x))
      return k;
    x = mul(ctx, x, g);
  }
  throw std::logic_error("element order exceeds |PGL(2,p)|");
}

FpElem representative_det(const FieldContext& ctx, const ProjMat& g) {
  const auto& m = g.entries;
  return ctx.sub(ctx.mul(m[0], m[3]), ctx.mul(m[1], m[2]));
}

std::array<FpElem, 4> sl_lift(const FieldContext& ctx, const ProjMat& g) {
  if (!g.in_psl())
    throw std::invalid_argument("SL lift requested for an element outside PSL(2,p)");
  const FpElem lambda = *ctx.sqrt(ctx.inv(representative_det(ctx, g)));
  std::array<FpElem, 4> plus, minus;
  for (int i = 0; i < 4; ++i) {
    plus[i] = ctx.mul(lambda, g.entries[i]);
    minus[i] = ctx.neg(plus[i]);
  }
  return std::min(plus, minus);
}

TraceClass trace_class(const FieldContext& ctx, const ProjMat& g) {
  const FpElem tr = ctx.add(g.entries[0], g.entries[3]);
  return {ctx.div(ctx.square(tr), representative_det(ctx, g))};
}

std::optional<int> trace_order_test(const FieldContext& ctx, const ProjMat& g) {
  if (!g.in_psl())
    throw std::invalid_argument("trace-order test applies to PSL(2,p) only");
  if (is_identity(g))
    return std::nullopt;
  const FpElem t2 = trace_class(ctx, g).t2;
  if (t2.is_zero())
    return 2;
  if (t2.value == 1)
    return 3;
  if (t2 == ctx.elem(2))
    return 4;
  const FpElem s = ctx.sub(t2, FpElem{1});
  if (ctx.square(s) == t2)
    return 5;
  return std::nullopt;
}

AlphaBetaGamma canonical_alpha_beta_gamma(const FieldContext& ctx) {
  return {make_projective(ctx, ctx.e(), FpElem{0}, FpElem{0}, FpElem{1}),
          make_projective(ctx, FpElem{1}, FpElem{1}, FpElem{0}, FpElem{1}),
          make_projective(ctx, ctx.w(), ctx.e(), FpElem{1}, ctx.w())};
}

std::string ConjugacyTag::to_string() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::alpha_power:
      return "alpha^" + std::to_string(exponent);
    case Kind::beta:
      return "beta";
    case Kind::gamma_power:
      return "gamma^" + std::to_string(exponent);
  }
  return "?";
}

ConjugacyTag conjugacy_rep(const FieldContext& ctx, const ProjMat& g) {
  using Kind = ConjugacyTag::Kind;
  if (is_identity(g))
    return {Kind::identity, 0};
  const FpElem tr = ctx.add(g.entries[0], g.entries[3]);
  const FpElem disc = ctx.sub(ctx.square(tr), ctx.mul(ctx.elem(4), representative_det(ctx, g)));
  if (disc.is_zero())
    return {Kind::beta, 0};
  const TraceClass target = trace_class(ctx, g);
  const auto gens = canonical_alpha_beta_gamma(ctx);
  const bool split = legendre(disc, ctx) == 1;
  const ProjMat& base = split ? gens.alpha : gens.gamma;
  const std::uint32_t half = split ? (ctx.p() - 1) / 2 : (ctx.p() + 1) / 2;
  ProjMat cur = base;
  for (std::uint32_t k = 1; k <= half; ++k) {
    if (trace_class(ctx, cur) == target)
      return {split ? Kind::alpha_power : Kind::gamma_power, k};
    cur = mul(ctx, cur, base);
  }
  throw std::logic_error("element matches no conjugacy class representative");
}

ProjMat class_matrix(const FieldContext& ctx, const ConjugacyTag& tag) {
  const auto gens = canonical_alpha_beta_gamma(ctx);
  switch (tag.kind) {
    case ConjugacyTag::Kind::identity:
      return identity_matrix();
    case ConjugacyTag::Kind::alpha_power:
      return power(ctx, gens.alpha, tag.exponent);
    case ConjugacyTag::Kind::beta:
      return gens.beta;
    case ConjugacyTag::Kind::gamma_power:
      return power(ctx, gens.gamma, tag.exponent);
  }
  throw std::logic_error("bad conjugacy tag");
}

Diagonalization diagonalizer_tau(const FieldContext& ctx, const ConjugacyTag& sigma) {
  const Fp2Elem rt = ctx.sqrt_e();
  const Fp2Elem e = ctx.embed(ctx.e());
  if (sigma.kind == ConjugacyTag::Kind::alpha_power)
    return {identity_matrix_ext(), ctx.pow(rt, sigma.exponent)};
  if (sigma.kind != ConjugacyTag::Kind::gamma_power)
    throw std::invalid_argument("diagonalizer needs an alpha or gamma power, got " +
                                sigma.to_string());
  const Fp2Elem w = ctx.embed(ctx.w());
  // w^2 - e is a non-square in F_p, so (w^2 - e)/e is a square.
  const FpElem ratio = ctx.div(ctx.sub(ctx.square(ctx.w()), ctx.e()), ctx.e());
  const Fp2Elem r = ctx.mul(rt, ctx.embed(*ctx.sqrt(ratio)));
  const Fp2Elem base = ctx.div(ctx.sub(w, rt), r);
  ProjMatExt tau = make_projective(ctx, rt, ctx.neg(e), rt, e);
  return {tau, ctx.pow(base, sigma.exponent)};
}

std::uint32_t dense_key(const FieldContext& ctx, const ProjMat& g) {
  const std::uint32_t p = ctx.p();
  return ((g.entries[0].value * p + g.entries[1].value) * p + g.entries[2].value) * p +
         g.entries[3].value;
}

std::string to_string(const ProjMat& g) {
  const auto& m = g.entries;
  return "[[" + std::to_string(m[0].value) + "," + std::to_string(m[1].value) + "],[" +
         std::to_string(m[2].value) + "," + std::to_string(m[3].value) + "]]";
}

ProjectiveGroup::ProjectiveGroup(FieldContext ctx)
    : ctx_(std::move(ctx)), abg_(canonical_alpha_beta_gamma(ctx_)) {
  const std::uint32_t p = ctx_.p();
  if (p > kMaxPrime)
    throw std::invalid_argument("projective group tables support p <= " +
                                std::to_string(kMaxPrime));
  // First nonzero entry 1: either [0 1; c d] with c != 0, or [1 b; c d].
  for (std::uint32_t c = 1; c < p; ++c)
    for (std::uint32_t d = 0; d < p; ++d)
      pgl_.push_back(make_projective(ctx_, FpElem{0}, FpElem{1}, FpElem{c}, FpElem{d}));
  for (std::uint32_t b = 0; b < p; ++b)
    for (std::uint32_t c = 0; c < p; ++c)
      for (std::uint32_t d = 0; d < p; ++d)
        if (ctx_.sub(FpElem{d}, ctx_.mul(FpElem{b}, FpElem{c})).value != 0)
          pgl_.push_back(make_projective(ctx_, FpElem{1}, FpElem{b}, FpElem{c}, FpElem{d}));

  psl_index_.assign(std::size_t{p} * p * p * p, -1);
  for (const auto& g : pgl_) {
    if (g.in_psl()) {
      psl_index_[dense_key(ctx_, g)] = static_cast<std::int32_t>(psl_.size());
      psl_.push_back(g);
    }
  }

  using Kind = ConjugacyTag::Kind;
  for (std::uint32_t k = 1; k <= (p - 1) / 2; ++k) {
    ProjMat m = power(ctx_, abg_.alpha, k);
    reps_.push_back({{Kind::alpha_power, k}, m, order(ctx_, m)});
  }
  reps_.push_back({{Kind::beta, 0}, abg_.beta, p});
  for (std::uint32_t l = 1; l <= (p + 1) / 2; ++l) {
    ProjMat m = power(ctx_, abg_.gamma, l);
    reps_.push_back({{Kind::gamma_power, l}, m, order(ctx_, m)});
  }
}

std::vector<ProjMat> ProjectiveGroup::centralizer(const ProjMat& g) const {
  std::vector<ProjMat> out;
  for (const auto& t : pgl_)
    if (mul(t, g) == mul(g, t))
      out.push_back(t);
  return out;
}

}  // namespace rbcm
