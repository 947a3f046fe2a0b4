#include "quaternion.hpp"

#include <array>

namespace witt {

namespace {

void check_nonzero(const FieldCtx& K, const Elem& a, const Elem& b) {
  if (K.is_zero(a) || K.is_zero(b)) fail(Err::BadArg, "quaternion parameters must be nonzero");
}

} // namespace

QuatAlg quat_algebra(const FieldPtr& K, const Elem& a, const Elem& b) {
  if (!K) fail(Err::BadArg, "null field context");
  check_nonzero(*K, a, b);
  return QuatAlg{K, a, b};
}

Quat QuatAlg::zero() const { return {K->zero(), K->zero(), K->zero(), K->zero()}; }
Quat QuatAlg::one() const { return {K->one(), K->zero(), K->zero(), K->zero()}; }
Quat QuatAlg::i() const { return {K->zero(), K->one(), K->zero(), K->zero()}; }
Quat QuatAlg::j() const { return {K->zero(), K->zero(), K->one(), K->zero()}; }
Quat QuatAlg::k() const { return {K->zero(), K->zero(), K->zero(), K->one()}; }

Quat QuatAlg::make(const Elem& e0, const Elem& e1, const Elem& e2, const Elem& e3) const {
  return {e0, e1, e2, e3};
}

Quat QuatAlg::from_elem(const Elem& e) const { return {e, K->zero(), K->zero(), K->zero()}; }

bool QuatAlg::is_zero(const Quat& q) const {
  return K->is_zero(q.x0) && K->is_zero(q.x1) && K->is_zero(q.x2) && K->is_zero(q.x3);
}

bool QuatAlg::eq(const Quat& q, const Quat& r) const { return is_zero(sub(q, r)); }

Quat QuatAlg::add(const Quat& q, const Quat& r) const {
  return {K->add(q.x0, r.x0), K->add(q.x1, r.x1), K->add(q.x2, r.x2), K->add(q.x3, r.x3)};
}

Quat QuatAlg::sub(const Quat& q, const Quat& r) const {
  return {K->sub(q.x0, r.x0), K->sub(q.x1, r.x1), K->sub(q.x2, r.x2), K->sub(q.x3, r.x3)};
}

Quat QuatAlg::neg(const Quat& q) const {
  return {K->neg(q.x0), K->neg(q.x1), K->neg(q.x2), K->neg(q.x3)};
}

Quat QuatAlg::scal(const Elem& c, const Quat& q) const {
  return {K->mul(c, q.x0), K->mul(c, q.x1), K->mul(c, q.x2), K->mul(c, q.x3)};
}

Quat QuatAlg::mul(const Quat& q, const Quat& r) const {
  const FieldCtx& F = *K;
  Elem ab = F.mul(a, b);
  auto m = [&](const Elem& u, const Elem& v) { return F.mul(u, v); };
  Elem z0 = F.add(F.sub(F.add(m(q.x0, r.x0), F.mul(a, m(q.x1, r.x1))),
                        F.mul(ab, m(q.x3, r.x3))),
                  F.mul(b, m(q.x2, r.x2)));
  Elem z1 = F.add(F.sub(F.add(m(q.x0, r.x1), m(q.x1, r.x0)), F.mul(b, m(q.x2, r.x3))),
                  F.mul(b, m(q.x3, r.x2)));
  Elem z2 = F.sub(F.add(F.add(m(q.x0, r.x2), m(q.x2, r.x0)), F.mul(a, m(q.x1, r.x3))),
                  F.mul(a, m(q.x3, r.x1)));
  Elem z3 = F.sub(F.add(F.add(m(q.x0, r.x3), m(q.x3, r.x0)), m(q.x1, r.x2)),
                  m(q.x2, r.x1));
  return {z0, z1, z2, z3};
}

Quat QuatAlg::conj(const Quat& q) const {
  return {q.x0, K->neg(q.x1), K->neg(q.x2), K->neg(q.x3)};
}

Elem QuatAlg::trd(const Quat& q) const { return K->add(q.x0, q.x0); }

Elem QuatAlg::nrd(const Quat& q) const {
  const FieldCtx& F = *K;
  Elem s = F.mul(q.x0, q.x0);
  s = F.sub(s, F.mul(a, F.mul(q.x1, q.x1)));
  s = F.sub(s, F.mul(b, F.mul(q.x2, q.x2)));
  s = F.add(s, F.mul(F.mul(a, b), F.mul(q.x3, q.x3)));
  return s;
}

Quat QuatAlg::inv(const Quat& q) const {
  Elem n = nrd(q);
  if (K->is_zero(n)) fail(Err::NonInvertible, "reduced norm vanishes");
  return scal(K->inv(n), conj(q));
}

Quat QuatAlg::pure_part(const Quat& q) const { return {K->zero(), q.x1, q.x2, q.x3}; }

bool QuatAlg::is_pure(const Quat& q) const { return K->is_zero(q.x0); }

std::string QuatAlg::to_string(const Quat& q) const {
  return "(" + K->to_string(q.x0) + ") + (" + K->to_string(q.x1) + ")i + (" +
         K->to_string(q.x2) + ")j + (" + K->to_string(q.x3) + ")k";
}

QForm norm_form(const QuatAlg& A) {
  const FieldCtx& K = *A.K;
  return QForm{A.K, {K.one(), K.neg(A.a), K.neg(A.b), K.mul(A.a, A.b)}};
}

QForm pure_norm_form(const QuatAlg& A) {
  const FieldCtx& K = *A.K;
  return QForm{A.K, {K.neg(A.a), K.neg(A.b), K.mul(A.a, A.b)}};
}

int quat_invariant_at(const QuatAlg& A, const Place& v) {
  return hilbert_at(*A.K, v, A.a, A.b);
}

int quat_invariant_local(const QuatAlg& A) { return hilbert_local(*A.K, A.a, A.b); }

bool is_split(const QuatAlg& A) {
  // (a,b) splits iff the conic <1,-a,-b> has a point.
  QForm c{A.K, {A.K->one(), A.K->neg(A.a), A.K->neg(A.b)}};
  return is_isotropic(c);
}

bool is_division(const QuatAlg& A) { return !is_split(A); }

bool is_reduced_norm(const QuatAlg& A, const Elem& lambda) {
  if (A.K->is_zero(lambda)) fail(Err::BadArg, "reduced norm membership needs lambda != 0");
  return represents(norm_form(A), lambda);
}

std::optional<Quat> reduced_norm_witness(const QuatAlg& A, const Elem& lambda) {
  if (A.K->is_zero(lambda)) fail(Err::BadArg, "reduced norm membership needs lambda != 0");
  auto v = represent_witness(norm_form(A), lambda);
  if (!v) return std::nullopt;
  Quat x = A.make((*v)[0], (*v)[1], (*v)[2], (*v)[3]);
  if (!A.K->eq(A.nrd(x), lambda)) fail(Err::Internal, "norm witness failed verification");
  return x;
}

Mat2 mat2_zero(const FieldCtx& K) {
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) r.e[s][t] = K.zero();
  return r;
}

Mat2 mat2_id(const FieldCtx& K) {
  Mat2 r = mat2_zero(K);
  r.e[0][0] = K.one();
  r.e[1][1] = K.one();
  return r;
}

Mat2 mat2_add(const FieldCtx& K, const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) r.e[s][t] = K.add(x.e[s][t], y.e[s][t]);
  return r;
}

Mat2 mat2_sub(const FieldCtx& K, const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) r.e[s][t] = K.sub(x.e[s][t], y.e[s][t]);
  return r;
}

Mat2 mat2_mul(const FieldCtx& K, const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      r.e[s][t] = K.add(K.mul(x.e[s][0], y.e[0][t]), K.mul(x.e[s][1], y.e[1][t]));
  return r;
}

Mat2 mat2_scal(const FieldCtx& K, const Elem& c, const Mat2& x) {
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) r.e[s][t] = K.mul(c, x.e[s][t]);
  return r;
}

Elem mat2_det(const FieldCtx& K, const Mat2& x) {
  return K.sub(K.mul(x.e[0][0], x.e[1][1]), K.mul(x.e[0][1], x.e[1][0]));
}

Elem mat2_tr(const FieldCtx& K, const Mat2& x) { return K.add(x.e[0][0], x.e[1][1]); }

Mat2 mat2_adjugate(const FieldCtx& K, const Mat2& x) {
  Mat2 r;
  r.e[0][0] = x.e[1][1];
  r.e[1][1] = x.e[0][0];
  r.e[0][1] = K.neg(x.e[0][1]);
  r.e[1][0] = K.neg(x.e[1][0]);
  return r;
}

Mat2 mat2_inv(const FieldCtx& K, const Mat2& x) {
  Elem d = mat2_det(K, x);
  if (K.is_zero(d)) fail(Err::NonInvertible, "singular 2x2 matrix");
  return mat2_scal(K, K.inv(d), mat2_adjugate(K, x));
}

Mat2 mat2_transpose(const FieldCtx& K, const Mat2& x) {
  (void)K;
  Mat2 r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) r.e[s][t] = x.e[t][s];
  return r;
}

bool mat2_eq(const FieldCtx& K, const Mat2& x, const Mat2& y) {
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      if (!K.eq(x.e[s][t], y.e[s][t])) return false;
  return true;
}

Mat2 SplitRep::of(const QuatAlg& A, const Quat& q) const {
  const FieldCtx& K = *A.K;
  Mat2 r = mat2_scal(K, q.x0, one);
  r = mat2_add(K, r, mat2_scal(K, q.x1, i));
  r = mat2_add(K, r, mat2_scal(K, q.x2, j));
  r = mat2_add(K, r, mat2_scal(K, q.x3, k));
  return r;
}

namespace {

// A point (x, y, z) != 0 with a x^2 + b y^2 = z^2.
std::optional<std::array<Elem, 3>> conic_point(const QuatAlg& A) {
  const FieldCtx& K = *A.K;
  FieldKind base = K.base_kind();
  if (K.kind == FieldKind::Rationals ||
      (K.kind == FieldKind::QuadExt && base == FieldKind::Rationals)) {
    QForm c{A.K, {A.a, A.b, K.neg(K.one())}};
    auto v = isotropic_vector(c); // Unsupported over QuadExt; propagates
    if (!v) return std::nullopt;
    return std::array<Elem, 3>{(*v)[0], (*v)[1], (*v)[2]};
  }
  if (K.kind == FieldKind::Finite ||
      (K.kind == FieldKind::QuadExt && base == FieldKind::Finite)) {
    // z^2 = a x^2 + b: <1,-a> represents every nonzero value over a finite
    // field, so a y=1 point exists; cap the scan to stay honest on huge q.
    if (K.is_square(K.neg(K.mul(A.a, A.b)))) {
      // a x^2 + b y^2 = a(x^2 - (-b/a) y^2) isotropic: x = sqrt(-b/a), y=1, z=0.
      Elem r = *K.try_sqrt(K.neg(K.div(A.b, A.a)));
      return std::array<Elem, 3>{r, K.one(), K.zero()};
    }
    const FqCtx& fq = (K.kind == FieldKind::Finite) ? *K.fq : *K.base->fq;
    Int card = fq.q;
    if (K.kind == FieldKind::QuadExt) card = card * card;
    for (Int t = 0; t < 4000 && t < card; ++t) {
      Elem x = (K.kind == FieldKind::Finite)
                   ? K.make(Scalar{fq.decode(t)}, Scalar{fq.zero()})
                   : K.make(Scalar{fq.decode(Int(t % fq.q))}, Scalar{fq.decode(Int(t / fq.q))});
      Elem z2 = K.add(K.mul(A.a, K.mul(x, x)), A.b);
      auto z = K.try_sqrt(z2);
      if (z) return std::array<Elem, 3>{x, K.one(), *z};
    }
    fail(Err::NotFound, "conic point scan budget exhausted");
  }
  fail(Err::Unsupported, "explicit conic points need an exact global or finite field");
}

using Vec4 = std::array<Elem, 4>;

Vec4 coords(const Quat& q) { return {q.x0, q.x1, q.x2, q.x3}; }

} // namespace

SplitRep split_rep_from(const QuatAlg& A, const Quat& e) {
  const FieldCtx& K = *A.K;
  if (A.is_zero(e) || !K.is_zero(A.nrd(e))) fail(Err::BadArg, "splitting needs a nonzero zero divisor");

  // Left ideal A*e is 2-dimensional; its spanning set is {e, ie, je, ke}.
  std::array<Quat, 4> gens = {e, A.mul(A.i(), e), A.mul(A.j(), e), A.mul(A.k(), e)};

  // Pick two independent generators f0, f1 and two pivot coordinates by
  // Gaussian elimination on the 4x4 coordinate matrix of gens.
  std::array<Vec4, 4> rows;
  for (int s = 0; s < 4; ++s) rows[s] = coords(gens[s]);
  int f0 = -1, f1 = -1, p0 = -1, p1 = -1;
  std::array<Vec4, 4> red = rows;
  for (int s = 0; s < 4 && f1 < 0; ++s) {
    int piv = -1;
    for (int t = 0; t < 4; ++t)
      if (!K.is_zero(red[s][t]) && t != p0) { piv = t; break; }
    if (piv < 0) continue;
    if (f0 < 0) {
      f0 = s; p0 = piv;
    } else {
      f1 = s; p1 = piv;
    }
    // eliminate this pivot from the later generators
    for (int u = s + 1; u < 4; ++u) {
      if (K.is_zero(red[u][piv])) continue;
      Elem c = K.div(red[u][piv], red[s][piv]);
      for (int t = 0; t < 4; ++t) red[u][t] = K.sub(red[u][t], K.mul(c, red[s][t]));
    }
  }
  if (f1 < 0) fail(Err::Internal, "left ideal of a zero divisor was not 2-dimensional");

  Vec4 b0 = rows[f0], b1 = rows[f1];
  // 2x2 solve on the pivot coordinates: [b0 b1] c = w.
  Elem m00 = b0[p0], m01 = b1[p0], m10 = b0[p1], m11 = b1[p1];
  Elem det = K.sub(K.mul(m00, m11), K.mul(m01, m10));
  if (K.is_zero(det)) fail(Err::Internal, "pivot minor degenerate");
  auto solve = [&](const Vec4& w) {
    Elem c0 = K.div(K.sub(K.mul(w[p0], m11), K.mul(m01, w[p1])), det);
    Elem c1 = K.div(K.sub(K.mul(m00, w[p1]), K.mul(w[p0], m10)), det);
    for (int t = 0; t < 4; ++t) {
      Elem got = K.add(K.mul(c0, b0[t]), K.mul(c1, b1[t]));
      if (!K.eq(got, w[t])) fail(Err::Internal, "vector left the ideal during splitting");
    }
    return std::pair<Elem, Elem>{c0, c1};
  };

  Quat fb0 = gens[f0], fb1 = gens[f1];
  auto rep = [&](const Quat& x) {
    Mat2 m;
    auto [c00, c10] = solve(coords(A.mul(x, fb0)));
    auto [c01, c11] = solve(coords(A.mul(x, fb1)));
    m.e[0][0] = c00; m.e[1][0] = c10;
    m.e[0][1] = c01; m.e[1][1] = c11;
    return m;
  };

  SplitRep R;
  R.one = rep(A.one());
  R.i = rep(A.i());
  R.j = rep(A.j());
  R.k = rep(A.k());

  // Verify the defining relations and norm compatibility.
  Mat2 id = mat2_id(K);
  bool ok = mat2_eq(K, R.one, id);
  ok = ok && mat2_eq(K, mat2_mul(K, R.i, R.i), mat2_scal(K, A.a, id));
  ok = ok && mat2_eq(K, mat2_mul(K, R.j, R.j), mat2_scal(K, A.b, id));
  ok = ok && mat2_eq(K, mat2_mul(K, R.i, R.j), R.k);
  ok = ok && mat2_eq(K, mat2_mul(K, R.j, R.i), mat2_scal(K, K.neg(K.one()), R.k));
  ok = ok && K.eq(mat2_det(K, R.i), K.neg(A.a));
  ok = ok && K.eq(mat2_det(K, R.j), K.neg(A.b));
  if (!ok) fail(Err::Internal, "split representation failed verification");
  return R;
}

std::optional<SplitRep> split_rep(const QuatAlg& A) {
  const FieldCtx& K = *A.K;
  auto pt = conic_point(A);
  if (!pt) return std::nullopt;
  // e = z + x i + y j is a nonzero zero divisor: nrd(e) = z^2 - a x^2 - b y^2 = 0.
  return split_rep_from(A, A.make((*pt)[2], (*pt)[0], (*pt)[1], K.zero()));
}

int brauer_invariant_at(const FieldCtx& K, const SymbolList& s, const Place& v) {
  int inv = 1;
  for (const auto& [a, b] : s) inv *= hilbert_at(K, v, a, b);
  return inv;
}

std::vector<Place> brauer_ram_places(const FieldCtx& K, const SymbolList& s) {
  if (K.kind != FieldKind::Rationals &&
      !(K.kind == FieldKind::QuadExt && K.base_kind() == FieldKind::Rationals))
    fail(Err::WrongFieldKind, "ramification sets live over global fields");
  std::vector<Elem> entries;
  for (const auto& [a, b] : s) {
    if (K.is_zero(a) || K.is_zero(b)) fail(Err::BadArg, "symbol entries must be nonzero");
    entries.push_back(a);
    entries.push_back(b);
  }
  std::vector<Place> ram;
  for (const Place& v : places_for(K, entries))
    if (brauer_invariant_at(K, s, v) == -1) ram.push_back(v);
  return ram;
}

bool brauer_trivial(const FieldCtx& K, const SymbolList& s) {
  return brauer_ram_places(K, s).empty();
}

bool brauer_equal(const FieldCtx& K, const SymbolList& s1, const SymbolList& s2) {
  SymbolList diff = s1;
  diff.insert(diff.end(), s2.begin(), s2.end());
  return brauer_trivial(K, diff);
}

namespace {

std::vector<Elem> linsolve(const FieldCtx& K, std::vector<std::vector<Elem>> m,
                           std::vector<Elem> rhs) {
  size_t n = rhs.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && K.is_zero(m[piv][c])) ++piv;
    if (piv == n) fail(Err::Internal, "singular basis in coordinate solve");
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    Elem inv = K.inv(m[c][c]);
    for (size_t t = c; t < n; ++t) m[c][t] = K.mul(m[c][t], inv);
    rhs[c] = K.mul(rhs[c], inv);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || K.is_zero(m[r][c])) continue;
      Elem f = m[r][c];
      for (size_t t = c; t < n; ++t) m[r][t] = K.sub(m[r][t], K.mul(f, m[c][t]));
      rhs[r] = K.sub(rhs[r], K.mul(f, rhs[c]));
    }
  }
  return rhs;
}

} // namespace

std::vector<Elem> quat_coords(const QuatAlg& A, const std::array<Quat, 4>& basis, const Quat& x) {
  const FieldCtx& K = *A.K;
  std::vector<std::vector<Elem>> m(4, std::vector<Elem>());
  for (const Quat& b : basis) {
    m[0].push_back(b.x0);
    m[1].push_back(b.x1);
    m[2].push_back(b.x2);
    m[3].push_back(b.x3);
  }
  return linsolve(K, m, {x.x0, x.x1, x.x2, x.x3});
}

std::vector<Elem> mat2_coords(const FieldCtx& K, const std::array<Mat2, 4>& basis, const Mat2& m) {
  std::vector<std::vector<Elem>> rows(4, std::vector<Elem>());
  for (const Mat2& b : basis)
    for (size_t r = 0; r < 2; ++r)
      for (size_t c = 0; c < 2; ++c) rows[2 * r + c].push_back(b.e[r][c]);
  return linsolve(K, rows, {m.e[0][0], m.e[0][1], m.e[1][0], m.e[1][1]});
}

} // namespace witt
