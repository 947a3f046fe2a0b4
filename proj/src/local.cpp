#include "local.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace witt {

std::string Place::str() const {
  if (real) {
    if (real_sign == 0) return "real";
    return real_sign > 0 ? "real+" : "real-";
  }
  std::string s = p.get_str();
  switch (ext) {
    case Ext::None: return s;
    case Ext::Split0: return s + ":split0";
    case Ext::Split1: return s + ":split1";
    case Ext::Inert: return s + ":inert";
    case Ext::Ramified: return s + ":ram";
  }
  return s;
}

// ---- Hilbert over Q_p ----

namespace {

// Square class of a nonzero rational in Q_2: (v mod 2, unit mod 8) -> 0..7.
// Unit order: 1, 5, 7 (= -1), 3 (= -5); then the same times 2.
int q2_class_index(const Rat& a) {
  auto [v, u] = split_p(a, 2);
  static const int unit_idx[8] = {-1, 0, -1, 3, -1, 1, -1, 2};
  int ui = unit_idx[rat_mod(u, 8).get_si()];
  return (v % 2 != 0 ? 4 : 0) + ui;
}

const Rat& q2_class_rep(int idx) {
  static const Rat reps[8] = {Rat(1), Rat(5), Rat(-1), Rat(-5),
                              Rat(2), Rat(10), Rat(-2), Rat(-10)};
  return reps[idx];
}

// Conic z^2 = a x^2 + b y^2 solvability over Q_2: primitive solution mod 32.
bool q2_conic(long a, long b) {
  for (long z = 0; z < 32; ++z)
    for (long x = 0; x < 32; ++x)
      for (long y = 0; y < 32; ++y) {
        if (z % 2 == 0 && x % 2 == 0 && y % 2 == 0) continue;
        if (((z * z - a * x * x - b * y * y) % 32 + 32) % 32 == 0) return true;
      }
  return false;
}

int q2_hilbert_table(int ia, int ib) {
  static int table[8][8];
  static std::once_flag once;
  std::call_once(once, [] {
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        table[i][j] = q2_conic(q2_class_rep(i).get_num().get_si(),
                               q2_class_rep(j).get_num().get_si())
                          ? 1
                          : -1;
  });
  return table[ia][ib];
}

} // namespace

int hilbert_qp(const Int& p, const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) fail(Err::BadArg, "hilbert symbol of zero");
  if (p == 2) return q2_hilbert_table(q2_class_index(a), q2_class_index(b));
  auto [alpha, u] = split_p(a, p);
  auto [beta, w] = split_p(b, p);
  int r = 1;
  if ((alpha % 2) && (beta % 2) && legendre(Int(p - 1), p) == -1) r = -r;
  if ((beta % 2) && legendre(rat_mod(u, p), p) == -1) r = -r;
  if ((alpha % 2) && legendre(rat_mod(w, p), p) == -1) r = -r;
  return r;
}

// ---- split-place embeddings: x + y sqrt(d0) -> Q_p via a lifted root ----

namespace {

struct RootKey {
  std::string p, d0;
  auto operator<=>(const RootKey&) const = default;
};

std::map<RootKey, std::pair<int, Int>> g_roots; // (precision K, root mod p^K)
std::mutex g_roots_mu;

Int pow_int(const Int& p, int k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

// Canonical root of x^2 = d0 mod p^K. Odd p: Newton from the smaller root
// mod p. p = 2 (d0 = 1 mod 8): bit-by-bit lift of the branch with r = 1 mod 4.
Int split_root_mod(const Int& p, const Int& d0, int K) {
  RootKey key{p.get_str(), d0.get_str()};
  std::lock_guard<std::mutex> lk(g_roots_mu);
  auto it = g_roots.find(key);
  if (it != g_roots.end() && it->second.first >= K)
    return it->second.second % pow_int(p, K);
  Int r;
  int have;
  if (p != 2) {
    Int r0 = 0;
    for (Int c = 1; c < p; ++c)
      if ((c * c - d0) % p == 0) {
        r0 = c;
        break;
      }
    if (r0 == 0) fail(Err::Internal, "no split root mod p");
    if (r0 > p - r0) r0 = p - r0;
    r = r0;
    have = 1;
    while (have < K) {
      // Newton doubling: r <- r - (r^2 - d0) / (2r) mod p^{2*have}
      have = std::min(2 * have, K + 2);
      Int mod = pow_int(p, have);
      r = (r - (r * r - d0) % mod * inv_mod(Int(2 * r % mod), mod)) % mod;
      if (r < 0) r += mod;
    }
  } else {
    if (rat_mod(Rat(d0), 8) != 1) fail(Err::Internal, "dyadic split needs d0 = 1 mod 8");
    r = 1;
    have = 3;
    while (have < K) {
      Int mod2 = pow_int(2, have + 1);
      if ((r * r - d0) % mod2 != 0) r += pow_int(2, have - 1);
      ++have;
    }
    Int mod = pow_int(2, K);
    r %= mod;
  }
  g_roots[key] = {K, r};
  return r % pow_int(p, K);
}

// Valuation and unit class data of x + y sqrt(d0) embedded in Q_p at a split
// place. sign selects the root branch (+1: canonical root, -1: its negative).
// Returns (v, unit representative mod p^4-ish) with enough precision for
// square and Hilbert class decisions.
std::pair<long, Int> split_val_unit(const Int& p, const Int& d0, int sign, const Rat& x,
                                    const Rat& y) {
  if (x == 0 && y == 0) fail(Err::BadArg, "valuation of zero");
  if (y == 0) {
    auto [v, u] = split_p(x, p);
    return {v, rat_mod(u, pow_int(p, 4))};
  }
  Int m = lcm(Int(x.get_den()), Int(y.get_den()));
  Int X(x.get_num() * (m / x.get_den()));
  Int Y(y.get_num() * (m / y.get_den()));
  long vm = val_p(m, p);
  Int mod = pow_int(p, 4);
  // element = (X + Y r) / m; strip p^vm and the p-free part of m separately
  Int m_unit_inv = inv_mod(Int(m / pow_int(p, static_cast<int>(vm)) % mod), mod);
  for (int K = 16; K <= 1 << 14; K *= 2) {
    Int r = split_root_mod(p, d0, K);
    if (sign < 0) r = pow_int(p, K) - r;
    Int T = (X + Y * r) % pow_int(p, K);
    if (T < 0) T += pow_int(p, K);
    if (T == 0) continue;
    long vT = val_p(T, p);
    if (vT >= K - 4) continue; // not enough precision to trust
    Int u = (T / pow_int(p, static_cast<int>(vT))) % mod * m_unit_inv % mod;
    return {vT - vm, u};
  }
  fail(Err::Internal, "split embedding needed too much precision");
}

} // namespace

// ---- global places ----

namespace {

void add_odd_support(std::set<Int>& primes, const Rat& x) {
  if (x == 0) return;
  for (const auto& q : odd_prime_support(x)) primes.insert(q);
}

// Coordinates of a QuadExt(Q) element in the squarefree basis: x + y' sqrt(d0).
std::pair<Rat, Rat> d0_coords(const FieldCtx& K, const Elem& e) {
  return {std::get<Rat>(e.a), Rat(std::get<Rat>(e.b) * K.scale)};
}

std::vector<Place> places_over(const FieldCtx& K, const Int& p) {
  ExtPlaceShape sh = ext_place_shape(p, Rat(K.d0));
  switch (sh.shape) {
    case ExtShape::Split:
      return {Place::finite(p, Place::Ext::Split0), Place::finite(p, Place::Ext::Split1)};
    case ExtShape::Inert:
      return {Place::finite(p, Place::Ext::Inert)};
    case ExtShape::Ramified:
      return {Place::finite(p, Place::Ext::Ramified)};
  }
  fail(Err::Internal, "bad shape");
}

ExtPlaceShape shape_at(const FieldCtx& K, const Int& p) {
  return ext_place_shape(p, Rat(K.d0));
}

} // namespace

std::vector<Place> places_for(const FieldCtx& K, const std::vector<Elem>& elems) {
  std::vector<Place> out;
  if (K.kind == FieldKind::Rationals) {
    out.push_back(Place::real_place());
    out.push_back(Place::finite(2));
    std::set<Int> primes;
    for (const auto& e : elems)
      if (!K.is_zero(e)) add_odd_support(primes, std::get<Rat>(e.a));
    for (const auto& q : primes) out.push_back(Place::finite(q));
    return out;
  }
  if (K.kind != FieldKind::QuadExt || K.base->kind != FieldKind::Rationals)
    fail(Err::WrongFieldKind, "places exist for global fields only");
  if (K.d0 > 0) {
    out.push_back(Place::real_embedding(+1));
    out.push_back(Place::real_embedding(-1));
  }
  std::set<Int> primes;
  if (K.d0 % 2 == 0) primes.insert(2);
  add_odd_support(primes, Rat(K.d0));
  for (const auto& e : elems) {
    if (K.is_zero(e)) continue;
    auto [x, y] = d0_coords(K, e);
    add_odd_support(primes, x);
    add_odd_support(primes, y);
    Rat n = x * x - Rat(K.d0) * y * y;
    add_odd_support(primes, n);
  }
  for (auto pl : places_over(K, 2)) out.push_back(pl);
  for (const auto& q : primes)
    if (q != 2)
      for (auto pl : places_over(K, q)) out.push_back(pl);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int real_sign_at(const FieldCtx& K, const Place& v, const Elem& a) {
  if (!v.real) fail(Err::BadArg, "not a real place");
  if (K.is_zero(a)) fail(Err::BadArg, "sign of zero");
  if (K.kind == FieldKind::Rationals) {
    return std::get<Rat>(a.a) > 0 ? 1 : -1;
  }
  if (K.kind != FieldKind::QuadExt || K.base->kind != FieldKind::Rationals)
    fail(Err::WrongFieldKind, "real signs exist for global fields only");
  if (K.d0 < 0) fail(Err::BadArg, "no real embeddings for negative radicand");
  auto [x, y0] = d0_coords(K, a);
  Rat y = v.real_sign >= 0 ? y0 : Rat(-y0);
  if (y == 0) return x > 0 ? 1 : -1;
  if (x == 0) return y > 0 ? 1 : -1;
  if ((x > 0) == (y > 0)) return x > 0 ? 1 : -1;
  Rat n = x * x - Rat(K.d0) * y * y; // sign(x + y sqrt(d0)) = sign(x) * sign(N)
  if (n == 0) fail(Err::Internal, "norm zero for nonzero element");
  int sx = x > 0 ? 1 : -1, sn = n > 0 ? 1 : -1;
  return sx * sn;
}

namespace {

Int first_nonresidue(const Int& p) {
  for (Int c = 2; c < p; ++c)
    if (legendre(c, p) == -1) return c;
  fail(Err::Internal, "no quadratic nonresidue mod p");
}

// Square class over Q_p of (v, unit mod p^4): odd p via Legendre, p = 2 via
// unit mod 8. Returns a small rational representative.
Rat qp_class_rep(const Int& p, long v, const Int& unit) {
  bool odd_v = (v % 2 + 2) % 2 == 1;
  if (p == 2) {
    static const long unit_reps[8] = {0, 1, 0, -5, 0, 5, 0, -1};
    Rat r(unit_reps[Int(unit % 8).get_si()]);
    return odd_v ? Rat(r * 2) : r;
  }
  Rat r = legendre(Int(unit % p), p) == 1 ? Rat(1) : Rat(first_nonresidue(p));
  return odd_v ? Rat(r * Rat(p)) : r;
}

} // namespace

bool is_local_square(const FieldCtx& K, const Place& v, const Elem& a) {
  if (K.is_zero(a)) return true;
  if (K.kind == FieldKind::Rationals) {
    Rat x = std::get<Rat>(a.a);
    if (v.real) return x > 0;
    auto [val, u] = split_p(x, v.p);
    if (val % 2 != 0) return false;
    if (v.p == 2) return rat_mod(u, 8) == 1;
    return legendre(rat_mod(u, v.p), v.p) == 1;
  }
  if (K.kind != FieldKind::QuadExt || K.base->kind != FieldKind::Rationals)
    fail(Err::WrongFieldKind, "local squares at places of global fields only");
  auto [x, y] = d0_coords(K, a);
  if (v.real) return real_sign_at(K, v, a) > 0;
  if (v.ext == Place::Ext::Split0 || v.ext == Place::Ext::Split1) {
    int sign = v.ext == Place::Ext::Split0 ? 1 : -1;
    auto [val, unit] = split_val_unit(v.p, K.d0, sign, x, y);
    if (val % 2 != 0) return false;
    if (v.p == 2) return unit % 8 == 1;
    return legendre(unit % v.p, v.p) == 1;
  }
  ExtPlaceShape sh = shape_at(K, v.p);
  return ext_is_square(sh, ext_from_sqrt_basis(sh, x, y));
}

int hilbert_at(const FieldCtx& K, const Place& v, const Elem& a, const Elem& b) {
  if (K.is_zero(a) || K.is_zero(b)) fail(Err::BadArg, "hilbert symbol of zero");
  if (K.kind == FieldKind::Rationals) {
    Rat x = std::get<Rat>(a.a), y = std::get<Rat>(b.a);
    if (v.real) return (x < 0 && y < 0) ? -1 : 1;
    return hilbert_qp(v.p, x, y);
  }
  if (K.kind != FieldKind::QuadExt || K.base->kind != FieldKind::Rationals)
    fail(Err::WrongFieldKind, "place-indexed hilbert symbols need a global field");
  if (v.real) {
    return (real_sign_at(K, v, a) < 0 && real_sign_at(K, v, b) < 0) ? -1 : 1;
  }
  auto [ax, ay] = d0_coords(K, a);
  auto [bx, by] = d0_coords(K, b);
  if (v.ext == Place::Ext::Split0 || v.ext == Place::Ext::Split1) {
    int sign = v.ext == Place::Ext::Split0 ? 1 : -1;
    auto [va, ua] = split_val_unit(v.p, K.d0, sign, ax, ay);
    auto [vb, ub] = split_val_unit(v.p, K.d0, sign, bx, by);
    return hilbert_qp(v.p, qp_class_rep(v.p, va, ua), qp_class_rep(v.p, vb, ub));
  }
  ExtPlaceShape sh = shape_at(K, v.p);
  return ext_hilbert(sh, ext_from_sqrt_basis(sh, ax, ay), ext_from_sqrt_basis(sh, bx, by));
}

int hilbert_local(const FieldCtx& K, const Elem& a, const Elem& b) {
  if (K.is_zero(a) || K.is_zero(b)) fail(Err::BadArg, "hilbert symbol of zero");
  switch (K.kind) {
    case FieldKind::Padic:
      return hilbert_qp(K.p, std::get<Rat>(a.a), std::get<Rat>(b.a));
    case FieldKind::Finite:
      return 1; // every conic over a finite field has a point
    case FieldKind::QuadExt:
      break;
    case FieldKind::Rationals:
      fail(Err::WrongFieldKind, "global field: use hilbert_at with a place");
  }
  switch (K.base->kind) {
    case FieldKind::Padic:
      return ext_hilbert(K.shape,
                         ext_from_sqrt_basis(K.shape, std::get<Rat>(a.a), std::get<Rat>(a.b)),
                         ext_from_sqrt_basis(K.shape, std::get<Rat>(b.a), std::get<Rat>(b.b)));
    case FieldKind::Finite:
      return 1;
    default:
      fail(Err::WrongFieldKind, "global field: use hilbert_at with a place");
  }
}

std::vector<Elem> square_class_reps(const FieldCtx& K) {
  switch (K.kind) {
    case FieldKind::Padic: {
      if (K.p == 2) {
        std::vector<Elem> out;
        for (int i = 0; i < 8; ++i) out.push_back(K.from_rat(q2_class_rep(i)));
        return out;
      }
      Int u = first_nonresidue(K.p);
      return {K.one(), K.from_int(u), K.from_int(K.p), K.from_rat(Rat(u * K.p))};
    }
    case FieldKind::Finite:
      return {K.one(), K.make(K.fq->nonsquare(), K.fq->zero())};
    case FieldKind::QuadExt:
      break;
    case FieldKind::Rationals:
      fail(Err::WrongFieldKind, "square class reps exist for local contexts only");
  }
  switch (K.base->kind) {
    case FieldKind::Padic: {
      std::vector<Elem> out;
      for (const auto& rp : ext_square_class_reps(K.shape)) {
        auto [x, y] = ext_to_sqrt_basis(K.shape, rp);
        out.push_back(K.make(x, y));
      }
      return out;
    }
    case FieldKind::Finite: {
      // 1 and any nonsquare of F_{q^2}.
      for (Int i = 0; i < K.base->fq->q; ++i)
        for (Int j = 1; j < K.base->fq->q; ++j) {
          Elem cand = K.make(K.base->fq->decode(i), K.base->fq->decode(j));
          if (!K.is_square(cand)) return {K.one(), cand};
        }
      fail(Err::Internal, "no nonsquare found in F_{q^2}");
    }
    default:
      fail(Err::WrongFieldKind, "square class reps exist for local contexts only");
  }
}

int square_class_index(const FieldCtx& K, const Elem& a) {
  if (K.is_zero(a)) fail(Err::BadArg, "square class of zero");
  auto reps = square_class_reps(K);
  for (size_t i = 0; i < reps.size(); ++i)
    if (K.is_square(K.div(a, reps[i]))) return static_cast<int>(i);
  fail(Err::Internal, "element matches no square class");
}

} // namespace witt
