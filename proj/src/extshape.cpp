#include "extshape.hpp"

#include <bitset>
#include <map>
#include <memory>
#include <mutex>

namespace witt {

namespace {

Rat pow2_rat(long k) {
  Int t;
  mpz_pow_ui(t.get_mpz_t(), Int(2).get_mpz_t(), static_cast<unsigned long>(k));
  return Rat(t);
}

Rat powp_rat(const Int& p, long k) {
  Int t;
  mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return Rat(t);
}

} // namespace

ExtPlaceShape ext_place_shape(const Int& p, const Rat& dd) {
  if (dd == 0) fail(Err::BadArg, "zero radicand");
  ExtPlaceShape sh;
  sh.p = p;
  sh.dd = dd;
  long v = val_p(dd, p);
  auto [vv, u] = split_p(dd, p);
  (void)vv;
  if (p != 2) {
    if (v % 2 != 0) {
      sh.shape = ExtShape::Ramified;
      sh.e = 2;
      sh.f = 1;
      sh.A = dd / powp_rat(p, v - 1);
      sh.B = 0;
      sh.r = powp_rat(p, (v - 1) / 2);
      sh.s = 0;
      sh.pix = 0;
      sh.piy = 1;
    } else if (legendre(rat_mod(u, p), p) == 1) {
      sh.shape = ExtShape::Split;
    } else {
      sh.shape = ExtShape::Inert;
      sh.e = 1;
      sh.f = 2;
      sh.A = u;
      sh.B = 0;
      sh.r = powp_rat(p, v / 2);
      sh.s = 0;
      sh.pix = Rat(p);
      sh.piy = 0;
    }
    return sh;
  }
  // p = 2
  if (v % 2 != 0) {
    sh.shape = ExtShape::Ramified; // g = sqrt(2u), pi = g
    sh.e = 2;
    sh.f = 1;
    sh.A = dd / pow2_rat(v - 1);
    sh.B = 0;
    sh.r = pow2_rat((v - 1) / 2);
    sh.s = 0;
    sh.pix = 0;
    sh.piy = 1;
    return sh;
  }
  Int m = rat_mod(u, 8);
  if (m == 1) {
    sh.shape = ExtShape::Split;
    return sh;
  }
  if (m == 5) {
    sh.shape = ExtShape::Inert; // g = (1+sqrt(u))/2
    sh.e = 1;
    sh.f = 2;
    sh.A = (u - 1) / 4;
    sh.B = 1;
    sh.r = pow2_rat(v / 2) * 2;
    sh.s = -pow2_rat(v / 2);
    sh.pix = 2;
    sh.piy = 0;
    return sh;
  }
  // u = 3 or 7 mod 8: ramified, g = sqrt(u), pi = 1 + g
  sh.shape = ExtShape::Ramified;
  sh.e = 2;
  sh.f = 1;
  sh.A = u;
  sh.B = 0;
  sh.r = pow2_rat(v / 2);
  sh.s = 0;
  sh.pix = 1;
  sh.piy = 1;
  return sh;
}

ExtPair ext_from_sqrt_basis(const ExtPlaceShape& sh, const Rat& x, const Rat& y) {
  // x + y*sqrt(dd) = (x + y*s) + (y*r) g
  return {x + y * sh.s, y * sh.r};
}

ExtPair ext_to_sqrt_basis(const ExtPlaceShape& sh, const ExtPair& z) {
  // g = (sqrt(dd) - s)/r
  Rat y = z.second / sh.r;
  return {z.first - y * sh.s, y};
}

ExtPair ext_mul(const ExtPlaceShape& sh, const ExtPair& a, const ExtPair& b) {
  return {a.first * b.first + sh.A * a.second * b.second,
          a.first * b.second + a.second * b.first + sh.B * a.second * b.second};
}

Rat ext_norm(const ExtPlaceShape& sh, const ExtPair& a) {
  // conj(g) = B - g, so N(x+yg) = x^2 + Bxy - Ay^2.
  return a.first * a.first + sh.B * a.first * a.second - sh.A * a.second * a.second;
}

ExtPair ext_inv(const ExtPlaceShape& sh, const ExtPair& a) {
  Rat n = ext_norm(sh, a);
  if (n == 0) fail(Err::NonInvertible, "inverse of zero in quadratic extension");
  // (x+yg)^(-1) = (x + By - yg)/N
  return {(a.first + sh.B * a.second) / n, -a.second / n};
}

long ext_val(const ExtPlaceShape& sh, const ExtPair& a) {
  if (a.first == 0 && a.second == 0) fail(Err::BadArg, "valuation of zero");
  long vn = val_p(ext_norm(sh, a), sh.p);
  return sh.f == 2 ? vn / 2 : vn;
}

ExtPair ext_div_pi(const ExtPlaceShape& sh, ExtPair a, long k) {
  ExtPair pi{sh.pix, sh.piy};
  ExtPair step = k >= 0 ? ext_inv(sh, pi) : pi;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) a = ext_mul(sh, a, step);
  return a;
}

namespace {

// ---- odd-p residue arithmetic in F_{p^2} = F_p[g]/(g^2 - Bg - A) ----

struct ResPair {
  Int x, y;
};

ResPair res_mul(const ResPair& a, const ResPair& b, const Int& A, const Int& B, const Int& p) {
  Int x = (a.x * b.x + A * a.y * b.y) % p;
  Int y = (a.x * b.y + a.y * b.x + B * a.y * b.y) % p;
  if (x < 0) x += p;
  if (y < 0) y += p;
  return {x, y};
}

// Euler criterion in F_{p^2}: a^((p^2-1)/2), a a unit.
int res_euler2(ResPair a, const Int& A, const Int& B, const Int& p) {
  Int n = (p * p - 1) / 2;
  ResPair r{1, 0};
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = res_mul(r, a, A, B, p);
    a = res_mul(a, a, A, B, p);
    n >>= 1;
  }
  if (r.y != 0) fail(Err::Internal, "Euler power not in prime field");
  if (r.x == 1) return 1;
  if (r.x == p - 1) return -1;
  fail(Err::Internal, "Euler power not a sign");
}

// Unit residue symbol of a v_w = 0 element, odd p.
int ext_unit_symbol(const ExtPlaceShape& sh, const ExtPair& a) {
  if (sh.f == 2) {
    ResPair r{rat_mod(a.first, sh.p), rat_mod(a.second, sh.p)};
    return res_euler2(r, rat_mod(sh.A, sh.p), rat_mod(sh.B, sh.p), sh.p);
  }
  // ramified: residue is the x-coordinate
  return legendre(rat_mod(a.first, sh.p), sh.p);
}

// ---- dyadic residue ring O/2^6 as pairs (x,y) mod 64 ----

constexpr long DY_M = 64;
constexpr long DY_N = DY_M * DY_M;
using DySet = std::bitset<DY_N>;

struct DyadicRing {
  long A, B;
  int e;           // v_w(2)
  int pi_kind;     // 0: pi=2 (inert), 1: pi=g, 2: pi=1+g
  DySet sq;        // squares
  std::vector<long> piN_elems[2]; // [0]: pi^(2e+1) O, [1]: pi^(2e+3) O
  DySet sq_cl_low;  // squares + pi^(2e+1) O (unit square test)
  std::map<int, std::pair<DySet, DySet>> tsets; // class idx -> (T_all, T_xunit)
  std::map<std::pair<int, int>, int> hilbert_memo;
  std::vector<ExtPair> reps;
  std::mutex mu;

  static long enc(long x, long y) { return x * DY_M + y; }

  long mul(long i, long j) const {
    long x1 = i / DY_M, y1 = i % DY_M, x2 = j / DY_M, y2 = j % DY_M;
    long x = (x1 * x2 + A * y1 * y2) % DY_M;
    long y = (x1 * y2 + y1 * x2 + B * y1 * y2) % DY_M;
    return enc(x, y);
  }

  bool in_piO(long i) const {
    long x = i / DY_M, y = i % DY_M;
    switch (pi_kind) {
      case 0: return x % 2 == 0 && y % 2 == 0;
      case 1: return x % 2 == 0;
      default: return (x + y) % 2 == 0;
    }
  }
};

long dy_enc_pair(const ExtPair& a) {
  return DyadicRing::enc(rat_mod(a.first, DY_M).get_si(), rat_mod(a.second, DY_M).get_si());
}

std::map<std::tuple<long, long, int, int>, std::shared_ptr<DyadicRing>> g_rings;
std::mutex g_rings_mu;

std::shared_ptr<DyadicRing> dyadic_ring(const ExtPlaceShape& sh) {
  int pk = sh.pix == 2 ? 0 : (sh.pix == 0 ? 1 : 2);
  long A = rat_mod(sh.A, DY_M).get_si();
  long B = rat_mod(sh.B, DY_M).get_si();
  auto key = std::make_tuple(A, B, sh.e, pk);
  std::lock_guard<std::mutex> lk(g_rings_mu);
  auto it = g_rings.find(key);
  if (it != g_rings.end()) return it->second;
  auto ring = std::make_shared<DyadicRing>();
  ring->A = A;
  ring->B = B;
  ring->e = sh.e;
  ring->pi_kind = pk;
  for (long i = 0; i < DY_N; ++i) ring->sq.set(ring->mul(i, i));
  long pi = DyadicRing::enc(rat_mod(sh.pix, DY_M).get_si(), rat_mod(sh.piy, DY_M).get_si());
  for (int which = 0; which < 2; ++which) {
    int N = 2 * sh.e + 1 + 2 * which;
    long piN = DyadicRing::enc(1, 0);
    for (int k = 0; k < N; ++k) piN = ring->mul(piN, pi);
    DySet seen;
    for (long i = 0; i < DY_N; ++i) {
      long v = ring->mul(piN, i);
      if (!seen.test(v)) {
        seen.set(v);
        ring->piN_elems[which].push_back(v);
      }
    }
  }
  // closure of squares under + pi^(2e+1) O
  for (long s = 0; s < DY_N; ++s) {
    if (!ring->sq.test(s)) continue;
    long sx = s / DY_M, sy = s % DY_M;
    for (long t : ring->piN_elems[0]) {
      long tx = t / DY_M, ty = t % DY_M;
      ring->sq_cl_low.set(DyadicRing::enc((sx + tx) % DY_M, (sy + ty) % DY_M));
    }
  }
  g_rings[key] = ring;
  return ring;
}

bool dy_unit_is_square(const ExtPlaceShape& sh, const ExtPair& unit) {
  auto ring = dyadic_ring(sh);
  return ring->sq_cl_low.test(dy_enc_pair(unit));
}

// T sets for the conic z^2 = a x^2 + b y^2: T = {z^2 - a x^2} + pi^(2e+3) O.
const std::pair<DySet, DySet>& dy_tsets(DyadicRing& ring, int cls, long a_enc) {
  auto it = ring.tsets.find(cls);
  if (it != ring.tsets.end()) return it->second;
  DySet t_all, t_xu;
  std::vector<long> sq_list;
  sq_list.reserve(DY_N);
  for (long z = 0; z < DY_N; ++z) sq_list.push_back(ring.mul(z, z));
  DySet raw_all, raw_xu;
  for (long x = 0; x < DY_N; ++x) {
    long ax2 = ring.mul(a_enc, ring.mul(x, x));
    long ax = ax2 / DY_M, ay = ax2 % DY_M;
    bool xu = !ring.in_piO(x);
    for (long zz : sq_list) {
      long v = DyadicRing::enc(((zz / DY_M) - ax + DY_M) % DY_M, ((zz % DY_M) - ay + DY_M) % DY_M);
      raw_all.set(v);
      if (xu) raw_xu.set(v);
    }
  }
  for (long s = 0; s < DY_N; ++s) {
    bool ia = raw_all.test(s), ix = raw_xu.test(s);
    if (!ia && !ix) continue;
    long sx = s / DY_M, sy = s % DY_M;
    for (long t : ring.piN_elems[1]) {
      long v = DyadicRing::enc((sx + t / DY_M) % DY_M, (sy + t % DY_M) % DY_M);
      if (ia) t_all.set(v);
      if (ix) t_xu.set(v);
    }
  }
  return ring.tsets.emplace(cls, std::make_pair(std::move(t_all), std::move(t_xu))).first->second;
}

std::vector<ExtPair> dy_square_class_reps(const ExtPlaceShape& sh) {
  auto ring = dyadic_ring(sh);
  {
    std::lock_guard<std::mutex> lk(ring->mu);
    if (!ring->reps.empty()) return ring->reps;
  }
  std::vector<ExtPair> reps;
  reps.push_back(ExtPair{1, 0}); // keep 1 first; the scan finds the rest
  ExtPair pi{sh.pix, sh.piy};
  for (int delta = 0; delta <= 1 && reps.size() < 16; ++delta) {
    for (long x = 0; x < 8 && reps.size() < 16; ++x) {
      for (long y = 0; y < 8 && reps.size() < 16; ++y) {
        if (x == 0 && y == 0) continue;
        ExtPair cand{Rat(x), Rat(y)};
        if (ext_val(sh, cand) != 0) continue;
        if (delta) cand = ext_mul(sh, cand, pi);
        bool fresh = true;
        for (const auto& r : reps) {
          ExtPair ratio = ext_mul(sh, cand, ext_inv(sh, r));
          if (ext_is_square(sh, ratio)) {
            fresh = false;
            break;
          }
        }
        if (fresh) reps.push_back(cand);
      }
    }
  }
  if (reps.size() != 16) fail(Err::Internal, "dyadic square class discovery incomplete");
  std::lock_guard<std::mutex> lk(ring->mu);
  if (ring->reps.empty()) ring->reps = reps;
  return ring->reps;
}

int dy_hilbert(const ExtPlaceShape& sh, const ExtPair& a, const ExtPair& b) {
  auto ring = dyadic_ring(sh);
  int ia = ext_square_class_index(sh, a);
  int ib = ext_square_class_index(sh, b);
  {
    std::lock_guard<std::mutex> lk(ring->mu);
    auto it = ring->hilbert_memo.find({ia, ib});
    if (it != ring->hilbert_memo.end()) return it->second;
  }
  auto reps = dy_square_class_reps(sh);
  long a_enc = dy_enc_pair(reps[static_cast<size_t>(ia)]);
  long b_enc = dy_enc_pair(reps[static_cast<size_t>(ib)]);
  std::lock_guard<std::mutex> lk(ring->mu);
  const auto& [t_all, t_xu] = dy_tsets(*ring, ia, a_enc);
  bool iso = false;
  for (long y = 0; y < DY_N && !iso; ++y) {
    long by2 = ring->mul(b_enc, ring->mul(y, y));
    if (!ring->in_piO(y)) {
      if (t_all.test(by2)) iso = true;
    } else {
      if (t_xu.test(by2)) iso = true;
    }
  }
  int r = iso ? 1 : -1;
  ring->hilbert_memo[{ia, ib}] = r;
  return r;
}

} // namespace

bool ext_is_square(const ExtPlaceShape& sh, const ExtPair& a) {
  if (sh.shape == ExtShape::Split) fail(Err::Internal, "split completion has no pair square test");
  if (a.first == 0 && a.second == 0) return true;
  long v = ext_val(sh, a);
  if (v % 2 != 0) return false;
  ExtPair u = ext_div_pi(sh, a, v);
  if (sh.p == 2) return dy_unit_is_square(sh, u);
  return ext_unit_symbol(sh, u) == 1;
}

int ext_hilbert(const ExtPlaceShape& sh, const ExtPair& a, const ExtPair& b) {
  if (sh.shape == ExtShape::Split) fail(Err::Internal, "hilbert at split completion: embed first");
  if ((a.first == 0 && a.second == 0) || (b.first == 0 && b.second == 0))
    fail(Err::BadArg, "hilbert symbol of zero");
  if (sh.p == 2) return dy_hilbert(sh, a, b);
  long alpha = ext_val(sh, a), beta = ext_val(sh, b);
  ExtPair ua = ext_div_pi(sh, a, alpha), ub = ext_div_pi(sh, b, beta);
  int m1 = sh.f == 2 ? 1 : legendre(Int(sh.p - 1), sh.p); // (-1 | k)
  int r = 1;
  if ((alpha % 2) && (beta % 2) && m1 == -1) r = -r;
  if (beta % 2 && ext_unit_symbol(sh, ua) == -1) r = -r;
  if (alpha % 2 && ext_unit_symbol(sh, ub) == -1) r = -r;
  return r;
}

std::vector<ExtPair> ext_square_class_reps(const ExtPlaceShape& sh) {
  if (sh.shape == ExtShape::Split) fail(Err::Internal, "split completion: use base reps");
  if (sh.p == 2) return dy_square_class_reps(sh);
  ExtPair one{1, 0};
  ExtPair pi{sh.pix, sh.piy};
  ExtPair u{0, 0};
  if (sh.f == 1) {
    for (Int c = 2; c < sh.p; ++c)
      if (legendre(c, sh.p) == -1) {
        u = {Rat(c), 0};
        break;
      }
  } else {
    bool found = false;
    for (Int n = 1; n < sh.p * sh.p && !found; ++n) {
      Int c0 = n % sh.p, c1 = n / sh.p;
      ExtPair cand{Rat(c0), Rat(c1)};
      if (ext_val(sh, cand) == 0 && ext_unit_symbol(sh, cand) == -1) {
        u = cand;
        found = true;
      }
    }
    if (!found) fail(Err::Internal, "no unit nonsquare found");
  }
  return {one, u, pi, ext_mul(sh, u, pi)};
}

int ext_square_class_index(const ExtPlaceShape& sh, const ExtPair& a) {
  auto reps = ext_square_class_reps(sh);
  for (size_t i = 0; i < reps.size(); ++i) {
    ExtPair ratio = ext_mul(sh, a, ext_inv(sh, reps[i]));
    if (ext_is_square(sh, ratio)) return static_cast<int>(i);
  }
  fail(Err::Internal, "element matches no square class");
}

} // namespace witt
