#include "rbcm/galois_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rbcm {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

// Order of x in a cyclic group of order `group_order`, given a power function.
template <class PowFn>
std::uint64_t order_in_cyclic(std::uint64_t group_order, PowFn&& is_one_at) {
  std::uint64_t ord = group_order;
  for (std::uint64_t q : prime_factors(group_order)) {
    while (ord % q == 0 && is_one_at(ord / q))
      ord /= q;
  }
  return ord;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

FpElem FieldContext::elem(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0)
    r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FpElem FieldContext::inv(FpElem a) const {
  if (a.is_zero())
    throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
  return {inverse_[a.value]};
}

FpElem FieldContext::pow(FpElem a, std::uint64_t k) const {
  FpElem result{1 % p_};
  FpElem base = a;
  while (k) {
    if (k & 1)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::optional<FpElem> FieldContext::sqrt(FpElem a) const {
  if (a.is_zero())
    return FpElem{};
  if (root_[a.value] == kNoRoot)
    return std::nullopt;
  return FpElem{root_[a.value]};
}

Fp2Elem FieldContext::add(const Fp2Elem& a, const Fp2Elem& b) const {
  return {add(a.re, b.re), add(a.im, b.im)};
}

Fp2Elem FieldContext::sub(const Fp2Elem& a, const Fp2Elem& b) const {
  return {sub(a.re, b.re), sub(a.im, b.im)};
}

Fp2Elem FieldContext::neg(const Fp2Elem& a) const { return {neg(a.re), neg(a.im)}; }

Fp2Elem FieldContext::mul(const Fp2Elem& a, const Fp2Elem& b) const {
  return {add(mul(a.re, b.re), mul(e_, mul(a.im, b.im))),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

Fp2Elem FieldContext::inv(const Fp2Elem& a) const {
  // (re - im*sqrt(e)) / norm
  FpElem n = norm(a, *this);
  if (n.is_zero())
    throw std::domain_error("inverse of zero in F_{p^2}");
  FpElem ninv = inv(n);
  return {mul(a.re, ninv), neg(mul(a.im, ninv))};
}

Fp2Elem FieldContext::pow(const Fp2Elem& a, std::uint64_t k) const {
  Fp2Elem result = embed(FpElem{1});
  Fp2Elem base = a;
  while (k) {
    if (k & 1)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Fp2Elem FieldContext::pow_signed(const Fp2Elem& a, std::int64_t k) const {
  if (k < 0)
    return pow(inv(a), static_cast<std::uint64_t>(-k));
  return pow(a, static_cast<std::uint64_t>(k));
}

bool FieldContext::is_square(const Fp2Elem& a) const {
  if (a.is_zero())
    return true;
  std::uint64_t q = std::uint64_t{p_} * p_;
  return pow(a, (q - 1) / 2) == embed(FpElem{1});
}

std::uint64_t FieldContext::multiplicative_order(FpElem a) const {
  if (a.is_zero())
    throw std::domain_error("order of zero");
  return order_in_cyclic(p_ - 1, [&](std::uint64_t k) { return pow(a, k).value == 1; });
}

std::uint64_t FieldContext::multiplicative_order(const Fp2Elem& a) const {
  if (a.is_zero())
    throw std::domain_error("order of zero");
  const Fp2Elem one = embed(FpElem{1});
  return order_in_cyclic(std::uint64_t{p_} * p_ - 1,
                         [&](std::uint64_t k) { return pow(a, k) == one; });
}

FieldContext make_context(std::uint32_t p) {
  if (p <= 3)
    throw std::invalid_argument("field prime must be > 3, got " + std::to_string(p));
  if (!is_prime(p))
    throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  if (p > 65521)
    throw std::invalid_argument("field prime too large: " + std::to_string(p));

  FieldContext ctx;
  ctx.p_ = p;
  ctx.inverse_.assign(p, 0);
  for (std::uint32_t x = 1; x < p; ++x)
    ctx.inverse_[x] = static_cast<std::uint32_t>(ctx.pow(FpElem{x}, p - 2).value);
  ctx.root_.assign(p, FieldContext::kNoRoot);
  for (std::uint32_t x = 1; x < p; ++x) {
    std::uint32_t s = ctx.mul(FpElem{x}, FpElem{x}).value;
    if (ctx.root_[s] == FieldContext::kNoRoot)
      ctx.root_[s] = x;
  }

  for (std::uint32_t g = 2; g < p; ++g) {
    if (ctx.multiplicative_order(FpElem{g}) == p - 1) {
      ctx.e_ = FpElem{g};
      break;
    }
  }

  const std::uint64_t full = std::uint64_t{p} * p - 1;
  for (std::uint32_t w2 = 1; w2 < p; ++w2) {
    for (std::uint32_t w1 = 0; w1 < p; ++w1) {
      if (ctx.multiplicative_order(Fp2Elem{FpElem{w1}, FpElem{w2}}) == full) {
        ctx.w1_ = FpElem{w1};
        ctx.w2_ = FpElem{w2};
        ctx.w_ = ctx.div(ctx.w1_, ctx.w2_);
        return ctx;
      }
    }
  }
  throw std::logic_error("no generator of F_{p^2}^x found");
}

FpElem norm(const Fp2Elem& x, const FieldContext& ctx) {
  return ctx.sub(ctx.square(x.re), ctx.mul(ctx.e(), ctx.square(x.im)));
}

int legendre(FpElem x, const FieldContext& ctx) {
  if (x.is_zero())
    return 0;
  return ctx.pow(x, (ctx.p() - 1) / 2).value == 1 ? 1 : -1;
}

std::vector<std::pair<FpElem, FpElem>> solve_norm_equation(FpElem c, const FieldContext& ctx) {
  std::vector<std::pair<FpElem, FpElem>> out;
  for (std::uint32_t zv = 0; zv < ctx.p(); ++zv) {
    FpElem z{zv};
    FpElem rhs = ctx.add(c, ctx.mul(ctx.e(), ctx.square(z)));
    auto root = ctx.sqrt(rhs);
    if (!root)
      continue;
    out.emplace_back(*root, z);
    if (!root->is_zero())
      out.emplace_back(ctx.neg(*root), z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rbcm
