#include "fq.hpp"

#include <algorithm>

namespace witt {

namespace {

using Poly = std::vector<Int>; // coefficients low-to-high, reduced mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Int pmod(const Int& x, const Int& p) {
  Int r = x % p;
  if (r < 0) r += p;
  return r;
}

[[maybe_unused]] Poly padd(const Poly& a, const Poly& b, const Int& p) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Int s = (i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0));
    r[i] = pmod(s, p);
  }
  trim(r);
  return r;
}

Poly psub(const Poly& a, const Poly& b, const Int& p) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Int s = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
    r[i] = pmod(s, p);
  }
  trim(r);
  return r;
}

Poly pmul(const Poly& a, const Poly& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = pmod(c, p);
  trim(r);
  return r;
}

// Remainder of a by monic f.
Poly prem(Poly a, const Poly& f, const Int& p) {
  trim(a);
  while (a.size() >= f.size()) {
    Int lead = a.back();
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i)
      a[shift + i] = pmod(a[shift + i] - lead * f[i], p);
    trim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, const Int& p) {
  return prem(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, Int n, const Poly& f, const Int& p) {
  Poly r = {Int(1)};
  base = prem(std::move(base), f, p);
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    n >>= 1;
  }
  return r;
}

Poly pgcd(Poly a, Poly b, const Int& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Int linv = inv_mod(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = pmod(c * linv, p); // make monic
    a = prem(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^k) - x has a factor in common with f iff f has an irreducible factor
// of degree dividing k (Rabin).
bool irreducible(const Poly& f, const Int& p, int e) {
  Int pe;
  mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  Poly x = {Int(0), Int(1)};
  Poly xq = ppowmod(x, pe, f, p);
  if (psub(xq, x, p) != Poly{}) return false;
  for (const auto& [r, m] : factor(Int(e))) {
    (void)m;
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(),
               static_cast<unsigned long>(e / r.get_si()));
    Poly g = psub(ppowmod(x, pk, f, p), x, p);
    Poly d = pgcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

} // namespace

std::shared_ptr<const FqCtx> FqCtx::make(const Int& p, int e) {
  if (!is_prime(p)) fail(Err::BadArg, "q must be a power of an odd prime");
  if (p == 2) fail(Err::Unsupported, "even characteristic not supported");
  if (e < 1 || e > 12) fail(Err::BadArg, "extension degree out of range");
  auto ctx = std::make_shared<FqCtx>();
  ctx->p = p;
  ctx->e = e;
  mpz_pow_ui(ctx->q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  if (e == 1) {
    ctx->mod = {Int(0), Int(1)}; // x, unused
    return ctx;
  }
  // Lexicographically first monic irreducible of degree e (by encoded tail).
  for (Int n = 0; n < ctx->q; ++n) {
    Poly f(static_cast<size_t>(e) + 1, Int(0));
    Int m = n;
    for (int i = 0; i < e; ++i) {
      f[static_cast<size_t>(i)] = m % p;
      m /= p;
    }
    f[static_cast<size_t>(e)] = 1;
    if (irreducible(f, p, e)) {
      ctx->mod = f;
      return ctx;
    }
  }
  fail(Err::Internal, "no irreducible polynomial found");
}

FqElem FqCtx::zero() const { return FqElem{std::vector<Int>(static_cast<size_t>(e), Int(0))}; }

FqElem FqCtx::one() const { return from_int(1); }

FqElem FqCtx::from_int(const Int& n) const {
  auto r = zero();
  r.c[0] = pmod(n, p);
  return r;
}

FqElem FqCtx::from_coeffs(std::vector<Int> c) const {
  if (c.size() > static_cast<size_t>(e)) {
    Poly r = prem(std::move(c), mod, p);
    c = std::move(r);
  }
  c.resize(static_cast<size_t>(e), Int(0));
  for (auto& x : c) x = pmod(x, p);
  return FqElem{std::move(c)};
}

bool FqCtx::is_zero(const FqElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const Int& x) { return x == 0; });
}

FqElem FqCtx::add(const FqElem& a, const FqElem& b) const {
  FqElem r = a;
  for (int i = 0; i < e; ++i) r.c[static_cast<size_t>(i)] = pmod(r.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)], p);
  return r;
}

FqElem FqCtx::sub(const FqElem& a, const FqElem& b) const {
  FqElem r = a;
  for (int i = 0; i < e; ++i) r.c[static_cast<size_t>(i)] = pmod(r.c[static_cast<size_t>(i)] - b.c[static_cast<size_t>(i)], p);
  return r;
}

FqElem FqCtx::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem FqCtx::mul(const FqElem& a, const FqElem& b) const {
  if (e == 1) return FqElem{{pmod(a.c[0] * b.c[0], p)}};
  Poly pa(a.c.begin(), a.c.end()), pb(b.c.begin(), b.c.end());
  Poly r = pmulmod(pa, pb, mod, p);
  return from_coeffs(std::move(r));
}

FqElem FqCtx::inv(const FqElem& a) const {
  if (is_zero(a)) fail(Err::NonInvertible, "inverse of zero in F_q");
  if (e == 1) return FqElem{{inv_mod(a.c[0], p)}};
  // a^(q-2)
  return pow(a, Int(q - 2));
}

FqElem FqCtx::pow(const FqElem& a, Int n) const {
  if (n < 0) {
    FqElem b = inv(a);
    return pow(b, Int(-n));
  }
  if (e == 1) return FqElem{{mod_pow(a.c[0], n, p)}};
  Poly pa(a.c.begin(), a.c.end());
  return from_coeffs(ppowmod(pa, n, mod, p));
}

bool FqCtx::is_square(const FqElem& a) const {
  if (is_zero(a)) return true;
  if (e == 1) return legendre(a.c[0], p) == 1;
  FqElem t = pow(a, Int((q - 1) / 2));
  return t == one();
}

std::optional<FqElem> FqCtx::sqrt(const FqElem& a) const {
  if (is_zero(a)) return zero();
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks in F_q*, |F_q*| = 2^s * t.
  Int t = q - 1;
  int s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t /= 2;
    ++s;
  }
  FqElem z = nonsquare();
  FqElem c = pow(z, t);
  FqElem x = pow(a, Int((t + 1) / 2));
  FqElem b = pow(a, t);
  int m = s;
  while (!(b == one())) {
    int i = 0;
    FqElem bb = b;
    while (!(bb == one())) {
      bb = mul(bb, bb);
      ++i;
    }
    Int ex = 1;
    for (int j = 0; j < m - i - 1; ++j) ex *= 2;
    FqElem c2 = pow(c, ex);
    x = mul(x, c2);
    c = mul(c2, c2);
    b = mul(b, c);
    m = i;
  }
  return x;
}

Int FqCtx::encode(const FqElem& a) const {
  Int n = 0;
  for (int i = e - 1; i >= 0; --i) n = n * p + a.c[static_cast<size_t>(i)];
  return n;
}

FqElem FqCtx::decode(Int n) const {
  n = pmod(n, q);
  auto r = zero();
  for (int i = 0; i < e; ++i) {
    r.c[static_cast<size_t>(i)] = n % p;
    n /= p;
  }
  return r;
}

std::string FqCtx::to_string(const FqElem& a) const { return encode(a).get_str(); }

FqElem FqCtx::nonsquare() const {
  for (Int n = 1; n < q; ++n) {
    FqElem a = decode(n);
    if (!is_square(a)) return a;
  }
  fail(Err::Internal, "no nonsquare in F_q");
}

} // namespace witt
