#include "field.hpp"

#include <sstream>

namespace witt {

namespace {

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(Err::BadArg, "empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(Err::BadArg, "bad rational literal: " + s);
  if (q.get_den() == 0) fail(Err::BadArg, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

} // namespace

const Rat& FieldCtx::rat(const Scalar& s) const {
  if (!std::holds_alternative<Rat>(s)) fail(Err::Internal, "scalar is not rational");
  return std::get<Rat>(s);
}

const FqElem& FieldCtx::fqe(const Scalar& s) const {
  if (!std::holds_alternative<FqElem>(s)) fail(Err::Internal, "scalar is not an F_q element");
  return std::get<FqElem>(s);
}

// ---- scalar layer (base-field coefficients) ----

namespace {

struct Sc {
  const FieldCtx& B; // base context (non-ext)

  bool finite() const { return B.kind == FieldKind::Finite; }

  Scalar zero() const { return finite() ? Scalar(B.fq->zero()) : Scalar(Rat(0)); }
  Scalar one() const { return finite() ? Scalar(B.fq->one()) : Scalar(Rat(1)); }
  Scalar from_int(const Int& n) const {
    return finite() ? Scalar(B.fq->from_int(n)) : Scalar(Rat(n));
  }
  bool is_zero(const Scalar& a) const {
    return finite() ? B.fq->is_zero(std::get<FqElem>(a)) : std::get<Rat>(a) == 0;
  }
  Scalar add(const Scalar& a, const Scalar& b) const {
    if (finite()) return B.fq->add(std::get<FqElem>(a), std::get<FqElem>(b));
    return Rat(std::get<Rat>(a) + std::get<Rat>(b));
  }
  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (finite()) return B.fq->sub(std::get<FqElem>(a), std::get<FqElem>(b));
    return Rat(std::get<Rat>(a) - std::get<Rat>(b));
  }
  Scalar neg(const Scalar& a) const {
    if (finite()) return B.fq->neg(std::get<FqElem>(a));
    return Rat(-std::get<Rat>(a));
  }
  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (finite()) return B.fq->mul(std::get<FqElem>(a), std::get<FqElem>(b));
    return Rat(std::get<Rat>(a) * std::get<Rat>(b));
  }
  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) fail(Err::NonInvertible, "division by zero");
    if (finite()) return B.fq->inv(std::get<FqElem>(a));
    return Rat(1 / std::get<Rat>(a));
  }
  bool eq(const Scalar& a, const Scalar& b) const {
    if (finite()) return std::get<FqElem>(a) == std::get<FqElem>(b);
    return std::get<Rat>(a) == std::get<Rat>(b);
  }
  std::string str(const Scalar& a) const {
    if (finite()) return B.fq->to_string(std::get<FqElem>(a));
    return std::get<Rat>(a).get_str();
  }
  Scalar parse(const std::string& s) const {
    if (finite()) return B.fq->decode(Int(parse_rat(s).get_num())); // integers only
    return parse_rat(s);
  }
};

} // namespace

// ---- factories ----

FieldPtr FieldCtx::rationals() {
  auto f = std::make_shared<FieldCtx>();
  f->kind = FieldKind::Rationals;
  return f;
}

FieldPtr FieldCtx::padic(const Int& p) {
  if (!is_prime(p)) fail(Err::BadArg, "p must be prime");
  auto f = std::make_shared<FieldCtx>();
  f->kind = FieldKind::Padic;
  f->p = p;
  return f;
}

FieldPtr FieldCtx::finite(const Int& p, int e) {
  auto f = std::make_shared<FieldCtx>();
  f->kind = FieldKind::Finite;
  f->fq = FqCtx::make(p, e);
  f->p = p;
  return f;
}

FieldPtr FieldCtx::quadext(const FieldPtr& base, const Elem& d) {
  if (!base) fail(Err::BadArg, "null base field");
  if (base->is_ext()) fail(Err::Unsupported, "quadratic extensions nest at most once");
  if (base->is_zero(d)) fail(Err::BadArg, "zero radicand");
  if (base->is_square(d)) fail(Err::BadArg, "radicand is a square in the base field");
  auto f = std::make_shared<FieldCtx>();
  f->kind = FieldKind::QuadExt;
  f->base = base;
  f->d = d;
  if (base->kind == FieldKind::Rationals) {
    Rat dr = std::get<Rat>(d.a);
    f->d0 = squarefree_part(Int(dr.get_num()) * Int(dr.get_den()));
    auto t = rat_sqrt(dr / Rat(f->d0));
    if (!t) fail(Err::Internal, "squarefree normalization failed");
    f->scale = *t;
  } else if (base->kind == FieldKind::Padic) {
    f->shape = ext_place_shape(base->p, std::get<Rat>(d.a));
    if (f->shape.shape == ExtShape::Split)
      fail(Err::Internal, "square radicand slipped past the square test");
  }
  return f;
}

std::string FieldCtx::key() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Padic: return "Qp:" + p.get_str();
    case FieldKind::Finite:
      return "Fq:" + fq->p.get_str() + (fq->e > 1 ? "^" + std::to_string(fq->e) : "");
    case FieldKind::QuadExt: return base->key() + "(sqrt " + base->to_string(d) + ")";
  }
  return "?";
}

bool same_field(const FieldCtx& a, const FieldCtx& b) { return a.key() == b.key(); }

// ---- element construction ----

Elem FieldCtx::zero() const {
  Sc sc{base_ctx()};
  return Elem{sc.zero(), sc.zero()};
}

Elem FieldCtx::one() const {
  Sc sc{base_ctx()};
  return Elem{sc.one(), sc.zero()};
}

Elem FieldCtx::from_int(const Int& n) const {
  Sc sc{base_ctx()};
  return Elem{sc.from_int(n), sc.zero()};
}

Elem FieldCtx::from_rat(const Rat& x) const {
  const FieldCtx& B = base_ctx();
  Sc sc{B};
  if (B.kind == FieldKind::Finite) {
    FqElem num = B.fq->from_int(Int(x.get_num()));
    FqElem den = B.fq->from_int(Int(x.get_den()));
    return Elem{B.fq->mul(num, B.fq->inv(den)), sc.zero()};
  }
  return Elem{x, sc.zero()};
}

Elem FieldCtx::make(const Scalar& a, const Scalar& b) const {
  Sc sc{base_ctx()};
  bool fin = base_ctx().kind == FieldKind::Finite;
  auto check = [&](Scalar s) {
    if (fin != std::holds_alternative<FqElem>(s)) fail(Err::BadArg, "scalar kind mismatch");
    if (fin && std::get<FqElem>(s).c.size() != static_cast<size_t>(base_ctx().fq->e))
      fail(Err::BadArg, "F_q element has wrong length");
    if (!fin) {
      Rat& r = std::get<Rat>(s);
      if (r.get_den() == 0) fail(Err::BadArg, "zero denominator");
      r.canonicalize();
    }
    return s;
  };
  Scalar ca = check(a), cb = check(b);
  if (!is_ext() && !sc.is_zero(cb)) fail(Err::BadArg, "second component in a base field");
  return Elem{ca, cb};
}

Elem FieldCtx::parse(const std::string& s) const {
  Sc sc{base_ctx()};
  if (!is_ext()) {
    if (s.find(',') != std::string::npos) fail(Err::BadArg, "pair literal in a base field");
    return Elem{sc.parse(s), sc.zero()};
  }
  auto comma = s.find(',');
  if (comma == std::string::npos) return Elem{sc.parse(s), sc.zero()};
  return Elem{sc.parse(s.substr(0, comma)), sc.parse(s.substr(comma + 1))};
}

std::string FieldCtx::to_string(const Elem& x) const {
  Sc sc{base_ctx()};
  if (!is_ext()) return sc.str(x.a);
  return sc.str(x.a) + "," + sc.str(x.b);
}

// ---- arithmetic ----

bool FieldCtx::is_zero(const Elem& x) const {
  Sc sc{base_ctx()};
  return sc.is_zero(x.a) && sc.is_zero(x.b);
}

bool FieldCtx::eq(const Elem& x, const Elem& y) const {
  Sc sc{base_ctx()};
  return sc.eq(x.a, y.a) && sc.eq(x.b, y.b);
}

Elem FieldCtx::add(const Elem& x, const Elem& y) const {
  Sc sc{base_ctx()};
  return Elem{sc.add(x.a, y.a), sc.add(x.b, y.b)};
}

Elem FieldCtx::sub(const Elem& x, const Elem& y) const {
  Sc sc{base_ctx()};
  return Elem{sc.sub(x.a, y.a), sc.sub(x.b, y.b)};
}

Elem FieldCtx::neg(const Elem& x) const {
  Sc sc{base_ctx()};
  return Elem{sc.neg(x.a), sc.neg(x.b)};
}

Elem FieldCtx::mul(const Elem& x, const Elem& y) const {
  Sc sc{base_ctx()};
  if (!is_ext()) return Elem{sc.mul(x.a, y.a), sc.zero()};
  const Scalar& ds = d.a;
  Scalar a = sc.add(sc.mul(x.a, y.a), sc.mul(ds, sc.mul(x.b, y.b)));
  Scalar b = sc.add(sc.mul(x.a, y.b), sc.mul(x.b, y.a));
  return Elem{a, b};
}

Elem FieldCtx::inv(const Elem& x) const {
  Sc sc{base_ctx()};
  if (is_zero(x)) fail(Err::NonInvertible, "division by zero");
  if (!is_ext()) return Elem{sc.inv(x.a), sc.zero()};
  // N = a^2 - d b^2
  Scalar n = sc.sub(sc.mul(x.a, x.a), sc.mul(d.a, sc.mul(x.b, x.b)));
  Scalar ni = sc.inv(n);
  return Elem{sc.mul(x.a, ni), sc.neg(sc.mul(x.b, ni))};
}

Elem FieldCtx::div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }

Elem FieldCtx::pow(const Elem& x, long n) const {
  if (n < 0) return pow(inv(x), -n);
  Elem r = one(), b = x;
  while (n > 0) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

Elem FieldCtx::conj(const Elem& x) const {
  if (!is_ext()) fail(Err::WrongFieldKind, "conjugation needs a quadratic extension");
  Sc sc{base_ctx()};
  return Elem{x.a, sc.neg(x.b)};
}

Elem FieldCtx::norm_to_base(const Elem& x) const {
  if (!is_ext()) fail(Err::WrongFieldKind, "norm needs a quadratic extension");
  Sc sc{base_ctx()};
  Scalar n = sc.sub(sc.mul(x.a, x.a), sc.mul(d.a, sc.mul(x.b, x.b)));
  return Elem{n, sc.zero()};
}

Elem FieldCtx::trace_to_base(const Elem& x) const {
  if (!is_ext()) fail(Err::WrongFieldKind, "trace needs a quadratic extension");
  Sc sc{base_ctx()};
  return Elem{sc.add(x.a, x.a), sc.zero()};
}

// ---- squares ----

namespace {

// Constructive square root of x + y*sqrt(dr) with rational coordinates
// (quartic resolvent). Finds a root exactly when one with rational
// coordinates exists.
std::optional<std::pair<Rat, Rat>> pair_sqrt_over_q(const Rat& x, const Rat& y, const Rat& dr) {
  if (x == 0 && y == 0) return std::make_pair(Rat(0), Rat(0));
  if (y == 0) {
    if (auto r = rat_sqrt(x)) return std::make_pair(*r, Rat(0));
    if (auto r = rat_sqrt(x / dr)) return std::make_pair(Rat(0), *r);
    return std::nullopt;
  }
  Rat n = x * x - dr * y * y;
  auto s = rat_sqrt(n);
  if (!s) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Rat sv = sign ? Rat(-*s) : *s;
    Rat t = (x + sv) / 2;
    auto u = rat_sqrt(t);
    if (!u || *u == 0) continue;
    Rat v = y / (2 * *u);
    if (*u * *u + dr * v * v == x) return std::make_pair(*u, v);
  }
  return std::nullopt;
}

} // namespace

bool FieldCtx::is_square(const Elem& x) const {
  if (is_zero(x)) return true;
  switch (kind) {
    case FieldKind::Rationals:
      return rat_is_square(std::get<Rat>(x.a));
    case FieldKind::Padic: {
      auto [v, u] = split_p(std::get<Rat>(x.a), p);
      if (v % 2 != 0) return false;
      if (p == 2) return rat_mod(u, 8) == 1;
      return legendre(rat_mod(u, p), p) == 1;
    }
    case FieldKind::Finite:
      return fq->is_square(std::get<FqElem>(x.a));
    case FieldKind::QuadExt:
      break;
  }
  switch (base->kind) {
    case FieldKind::Rationals: {
      // Square iff the resolvent construction succeeds: N(x) must be a
      // rational square and one half-sum a square.
      Rat dr = std::get<Rat>(d.a);
      Rat xa = std::get<Rat>(x.a), xb = std::get<Rat>(x.b);
      if (xb == 0) return rat_is_square(xa) || rat_is_square(xa / dr);
      Rat n = xa * xa - dr * xb * xb;
      auto s = rat_sqrt(n);
      if (!s) return false;
      for (int sign = 0; sign < 2; ++sign) {
        Rat sv = sign ? Rat(-*s) : *s;
        if (rat_is_square(Rat((xa + sv) / 2))) return true;
      }
      return false;
    }
    case FieldKind::Padic: {
      ExtPair z = ext_from_sqrt_basis(shape, std::get<Rat>(x.a), std::get<Rat>(x.b));
      return ext_is_square(shape, z);
    }
    case FieldKind::Finite: {
      // Euler criterion in F_{q^2}.
      Int q = base->fq->q;
      Int ex = (q * q - 1) / 2;
      Elem t = pow(x, ex.get_si());
      return eq(t, one());
    }
    default:
      fail(Err::Internal, "bad base kind");
  }
}

std::optional<Elem> FieldCtx::try_sqrt(const Elem& x) const {
  Sc sc{base_ctx()};
  if (is_zero(x)) return zero();
  switch (kind) {
    case FieldKind::Rationals:
    case FieldKind::Padic: {
      auto r = rat_sqrt(std::get<Rat>(x.a));
      if (!r) return std::nullopt;
      return Elem{*r, sc.zero()};
    }
    case FieldKind::Finite: {
      auto r = fq->sqrt(std::get<FqElem>(x.a));
      if (!r) return std::nullopt;
      return Elem{*r, sc.zero()};
    }
    case FieldKind::QuadExt:
      break;
  }
  if (base->kind != FieldKind::Finite) {
    Rat dr = std::get<Rat>(d.a);
    auto r = pair_sqrt_over_q(std::get<Rat>(x.a), std::get<Rat>(x.b), dr);
    if (!r) return std::nullopt;
    return Elem{r->first, r->second};
  }
  // Tonelli-Shanks in F_{q^2}.
  if (!is_square(x)) return std::nullopt;
  Int q2 = base->fq->q * base->fq->q;
  Int t = q2 - 1;
  int s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t /= 2;
    ++s;
  }
  auto pow_int = [&](Elem b, Int n) {
    Elem r = one();
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) r = mul(r, b);
      b = mul(b, b);
      n >>= 1;
    }
    return r;
  };
  Elem z = zero();
  bool found = false;
  for (Int i = 0; i < base->fq->q && !found; ++i)
    for (Int j = 1; j < base->fq->q && !found; ++j) {
      Elem cand{base->fq->decode(i), base->fq->decode(j)};
      if (!is_square(cand)) {
        z = cand;
        found = true;
      }
    }
  if (!found) fail(Err::Internal, "no nonsquare in F_{q^2}");
  Elem c = pow_int(z, t);
  Elem r = pow_int(x, Int((t + 1) / 2));
  Elem b = pow_int(x, t);
  int m = s;
  while (!eq(b, one())) {
    int i = 0;
    Elem bb = b;
    while (!eq(bb, one())) {
      bb = mul(bb, bb);
      ++i;
    }
    Elem c2 = c;
    for (int j = 0; j < m - i - 1; ++j) c2 = mul(c2, c2);
    r = mul(r, c2);
    c = mul(c2, c2);
    b = mul(b, c);
    m = i;
  }
  return r;
}

} // namespace witt
