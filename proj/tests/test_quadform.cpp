#include "doctest.h"

#include "quadform.hpp"
#include "rng.hpp"

using namespace witt;

namespace {

Elem rand_entry(const FieldPtr& K, Rng& rng, long bound) {
  long n = 0;
  while (n == 0) n = rng.int_in(-bound, bound);
  return K->from_int(n);
}

QForm rand_form(const FieldPtr& K, Rng& rng, size_t rank, long bound) {
  std::vector<Elem> d;
  for (size_t i = 0; i < rank; ++i) d.push_back(rand_entry(K, rng, bound));
  return make_form(K, d);
}

} // namespace

TEST_SUITE_BEGIN("quadform");

TEST_CASE("diagonalization handles pivots, swaps, and the split-basis fallback") {
  auto Q = FieldCtx::rationals();
  auto E = [&](long n) { return Q->from_int(n); };
  // hyperbolic plane given by an antidiagonal gram matrix
  Gram g = {{E(0), E(1)}, {E(1), E(0)}};
  QForm q = diagonalize(Q, g);
  REQUIRE(q.rank() == 2);
  CHECK(is_witt_trivial(q));
  CHECK(isometric(q, hyperbolic_form(Q, 1)));
  // a 3x3 with a zero leading entry
  Gram g3 = {{E(0), E(2), E(1)}, {E(2), E(0), E(0)}, {E(1), E(0), E(5)}};
  QForm q3 = diagonalize(Q, g3);
  CHECK(q3.rank() == 3);
  Gram bad = {{E(1), E(2)}, {E(3), E(1)}};
  CHECK_THROWS_AS((void)diagonalize(Q, bad), Error);
  Gram sing = {{E(1), E(1)}, {E(1), E(1)}};
  CHECK_THROWS_AS((void)diagonalize(Q, sing), Error);
  CHECK_THROWS_AS((void)make_form(Q, {Q->zero()}), Error);
}

TEST_CASE("diagonalization of random congruence transforms is isometric") {
  auto Q = FieldCtx::rationals();
  Rng rng(0xD1A6, 1);
  for (int t = 0; t < 40; ++t) {
    size_t n = static_cast<size_t>(rng.int_in(1, 4));
    QForm d = rand_form(Q, rng, n, 9);
    // G = P^T D P for a random invertible P (unit upper triangular times swaps)
    std::vector<std::vector<Rat>> P(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) P[i][i] = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) P[i][j] = Rat(rng.int_in(-3, 3));
    Gram g(n, std::vector<Elem>(n, Q->zero()));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rat s = 0;
        for (size_t k = 0; k < n; ++k) s += P[k][i] * Q->rat(d.diag[k].a) * P[k][j];
        g[i][j] = Q->from_rat(s);
      }
    QForm q = diagonalize(Q, g);
    CHECK(isometric(q, d));
  }
}

TEST_CASE("frozen invariants") {
  auto Q = FieldCtx::rationals();
  auto E = [&](long n) { return Q->from_int(n); };
  QForm q2 = make_form(Q, {E(1), E(1)});
  CHECK(Q->eq(det_form(q2), E(1)));
  CHECK(Q->eq(disc_form(q2), E(-1)));
  CHECK(signature_at(q2, Place::real_place()) == 2);
  CHECK(hasse_at(q2, Place::finite(2)) == 1);
  QForm q4 = make_form(Q, {E(1), E(1), E(1), E(1)});
  CHECK(Q->is_square(disc_form(q4)));
  CHECK(in_In(q4, 2));
  CHECK(!in_In(q4, 3)); // clifford invariant is -1 at 2 and infinity
  CHECK(clifford_e2_at(q4, Place::finite(2)) == -1);
  CHECK(clifford_e2_at(q4, Place::real_place()) == -1);
  QForm q8 = direct_sum(q4, q4);
  CHECK(in_In(q8, 3));
  CHECK(!in_In(q8, 4));
  CHECK(arason_e3_nontrivial(q8));
  QForm q16 = direct_sum(q8, q8);
  CHECK(in_In(q16, 4));
  CHECK(!arason_e3_nontrivial(q16));
  CHECK_THROWS_AS((void)arason_e3_nontrivial(q4), Error);
  QForm odd = make_form(Q, {E(1), E(2), E(3)});
  CHECK(!in_In(odd, 1));
}

TEST_CASE("frozen isotropy decisions over Q") {
  auto Q = FieldCtx::rationals();
  auto F = [&](std::vector<long> v) {
    std::vector<Elem> d;
    for (long n : v) d.push_back(Q->from_int(n));
    return make_form(Q, d);
  };
  CHECK(!is_isotropic(F({1, 1, 1, -7}))); // 7 is not a sum of three squares
  CHECK(is_isotropic(F({1, 1, 1, 1, -7})));
  CHECK(!is_isotropic(F({1, 1, -3})));
  CHECK(is_isotropic(F({1, 1, -2})));
  CHECK(!is_isotropic(F({1, 1})));
  CHECK(is_isotropic(F({1, -1})));
  CHECK(!is_isotropic(F({2, 3, 5, 7}))); // definite over R
  CHECK(is_isotropic(F({1, 1, 1, 1, 1, -7})));
  CHECK(represents(F({1, 1, 1}), Q->from_int(6)));
  CHECK(!represents(F({1, 1, 1}), Q->from_int(7)));
  CHECK(represents(F({1, 1, 1, 1}), Q->from_int(7)));
}

TEST_CASE("isotropy decisions match explicit vectors over Q") {
  auto Q = FieldCtx::rationals();
  Rng rng(0x150D, 3);
  for (int t = 0; t < 120; ++t) {
    size_t r = static_cast<size_t>(rng.int_in(2, 5));
    QForm q = rand_form(Q, rng, r, 12);
    auto v = isotropic_vector(q); // exact: nullopt certifies anisotropy
    CHECK(is_isotropic(q) == v.has_value());
    if (v) {
      CHECK(Q->is_zero(form_eval(q, *v)));
      bool nonzero = false;
      for (const auto& e : *v) nonzero |= !Q->is_zero(e);
      CHECK(nonzero);
    }
  }
}

TEST_CASE("representation witnesses are exact") {
  auto Q = FieldCtx::rationals();
  Rng rng(0x9E9E, 4);
  for (int t = 0; t < 60; ++t) {
    size_t r = static_cast<size_t>(rng.int_in(1, 4));
    QForm q = rand_form(Q, rng, r, 9);
    std::vector<Elem> v;
    for (size_t i = 0; i < r; ++i) v.push_back(Q->from_int(rng.int_in(-4, 4)));
    Elem lam = form_eval(q, v);
    if (Q->is_zero(lam)) continue;
    CHECK(represents(q, lam));
    auto w = represent_witness(q, lam);
    REQUIRE(w.has_value());
    CHECK(Q->eq(form_eval(q, *w), lam));
  }
  QForm pos = make_form(Q, {Q->from_int(1), Q->from_int(1)});
  CHECK(!represent_witness(pos, Q->from_int(-5)).has_value());
}

TEST_CASE("witt decomposition over Q") {
  auto Q = FieldCtx::rationals();
  Rng rng(0xDEC0, 5);
  for (int t = 0; t < 50; ++t) {
    size_t r = static_cast<size_t>(rng.int_in(1, 5));
    QForm q = rand_form(Q, rng, r, 10);
    WittDecomp wd = witt_decompose(q);
    CHECK(!is_isotropic(wd.kernel));
    CHECK(wd.kernel.rank() + 2 * static_cast<size_t>(wd.index) == r);
    CHECK(isometric(q, direct_sum(wd.kernel, hyperbolic_form(Q, wd.index))));
  }
}

TEST_CASE("witt decomposition over local contexts") {
  for (long p : {2L, 3L, 5L}) {
    auto Qp = FieldCtx::padic(p);
    Rng rng(0xDEC1, static_cast<uint64_t>(p));
    for (int t = 0; t < 30; ++t) {
      size_t r = static_cast<size_t>(rng.int_in(1, 6));
      QForm q = rand_form(Qp, rng, r, 30);
      WittDecomp wd = witt_decompose(q);
      CHECK(wd.kernel.rank() <= 4);
      if (wd.kernel.rank() >= 2) CHECK(!is_isotropic_local(wd.kernel));
      CHECK(witt_equal(q, wd.kernel));
      CHECK(wd.kernel.rank() + 2 * static_cast<size_t>(wd.index) == r);
    }
  }
  // frozen: <1,1,-1,-1,3> over Q_3 has kernel <3> and index 2
  auto Q3 = FieldCtx::padic(3);
  QForm q = make_form(Q3, {Q3->from_int(1), Q3->from_int(1), Q3->from_int(-1),
                           Q3->from_int(-1), Q3->from_int(3)});
  WittDecomp wd = witt_decompose(q);
  CHECK(wd.index == 2);
  REQUIRE(wd.kernel.rank() == 1);
  CHECK(Q3->eq(wd.kernel.diag[0], Q3->from_int(3)));
  // rank-4 anisotropic over Q_2: the sum of four squares
  auto Q2 = FieldCtx::padic(2);
  QForm f4 = make_form(Q2, {Q2->one(), Q2->one(), Q2->one(), Q2->one()});
  CHECK(!is_isotropic_local(f4));
  CHECK(witt_decompose(f4).index == 0);
  // over a dyadic quadratic extension
  auto K = FieldCtx::quadext(Q2, Q2->from_int(-1));
  Rng rng(0xDEC2, 9);
  for (int t = 0; t < 12; ++t) {
    size_t r = static_cast<size_t>(rng.int_in(1, 5));
    auto reps = square_class_reps(*K);
    std::vector<Elem> d;
    for (size_t i = 0; i < r; ++i)
      d.push_back(reps[static_cast<size_t>(rng.int_in(0, 15))]);
    QForm qk = make_form(K, d);
    WittDecomp wdk = witt_decompose(qk);
    CHECK(witt_equal(qk, wdk.kernel));
    if (wdk.kernel.rank() >= 2) CHECK(!is_isotropic_local(wdk.kernel));
  }
}

TEST_CASE("witt ring relations") {
  auto Q = FieldCtx::rationals();
  Rng rng(0x3177, 6);
  for (int t = 0; t < 60; ++t) {
    Elem a = rand_entry(Q, rng, 20), b = rand_entry(Q, rng, 20);
    QForm qa = make_form(Q, {a, Q->neg(a)});
    CHECK(is_witt_trivial(qa));
    if (!Q->is_zero(Q->add(a, b))) {
      // <a,b> = <a+b, ab(a+b)>
      Elem s = Q->add(a, b);
      QForm lhs = make_form(Q, {a, b});
      QForm rhs = make_form(Q, {s, Q->mul(Q->mul(a, b), s)});
      CHECK(isometric(lhs, rhs));
    }
    QForm sq = scale_form(make_form(Q, {a, b}), Q->mul(b, b));
    CHECK(isometric(sq, make_form(Q, {a, b})));
  }
}

TEST_CASE("hasse product formula over global fields") {
  auto Q = FieldCtx::rationals();
  Rng rng(0x6A55, 7);
  for (int t = 0; t < 25; ++t) {
    QForm q = rand_form(Q, rng, static_cast<size_t>(rng.int_in(2, 5)), 30);
    int prod = 1;
    for (const auto& v : places_for(*Q, q.diag)) prod *= hasse_at(q, v);
    CHECK(prod == 1);
  }
  auto K = FieldCtx::quadext(Q, Q->from_int(-5));
  Rng rng2(0x6A56, 8);
  for (int t = 0; t < 10; ++t) {
    std::vector<Elem> d;
    for (int i = 0; i < 3; ++i)
      d.push_back(K->make(Rat(rng2.int_in(1, 9)), Rat(rng2.int_in(-4, 4))));
    QForm q = make_form(K, d);
    int prod = 1;
    for (const auto& v : places_for(*K, q.diag)) prod *= hasse_at(q, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("pfister forms: isotropic implies hyperbolic, and I^n membership") {
  auto Q = FieldCtx::rationals();
  Rng rng(0x9F15, 9);
  for (int t = 0; t < 50; ++t) {
    Elem a = rand_entry(Q, rng, 15), b = rand_entry(Q, rng, 15);
    QForm pf2 = pfister_form(Q, {a, b});
    CHECK(pf2.rank() == 4);
    CHECK(in_In(pf2, 2));
    if (is_isotropic(pf2)) CHECK(is_witt_trivial(pf2));
    Elem c = rand_entry(Q, rng, 15);
    QForm pf3 = pfister_form(Q, {a, b, c});
    CHECK(in_In(pf3, 3));
    if (is_isotropic(pf3)) CHECK(is_witt_trivial(pf3));
  }
  QForm eights = pfister_form(Q, {Q->from_int(-1), Q->from_int(-1), Q->from_int(-1)});
  CHECK(signature_at(eights, Place::real_place()) == 8);
  CHECK(arason_e3_nontrivial(eights));
  // e2 is multiplicative on I^2
  Rng rng2(0x9F16, 10);
  for (int t = 0; t < 20; ++t) {
    QForm p1 = pfister_form(Q, {rand_entry(Q, rng2, 12), rand_entry(Q, rng2, 12)});
    QForm p2 = pfister_form(Q, {rand_entry(Q, rng2, 12), rand_entry(Q, rng2, 12)});
    QForm s = direct_sum(p1, p2);
    auto elems = s.diag;
    for (const auto& v : places_for(*Q, elems))
      CHECK(clifford_e2_at(s, v) == clifford_e2_at(p1, v) * clifford_e2_at(p2, v));
  }
}

TEST_CASE("forms over quadratic extensions of Q") {
  auto Q = FieldCtx::rationals();
  auto K = FieldCtx::quadext(Q, Q->from_int(2));
  Elem r2 = K->make(Rat(0), Rat(1));
  QForm q = make_form(K, {r2});
  Place rp = Place::real_embedding(+1), rm = Place::real_embedding(-1);
  CHECK(signature_at(q, rp) == 1);
  CHECK(signature_at(q, rm) == -1);
  // <sqrt2, -sqrt2> is hyperbolic; <1, -sqrt2> is not even
  CHECK(is_witt_trivial(make_form(K, {r2, K->neg(r2)})));
  CHECK(!is_witt_trivial(make_form(K, {K->one(), K->neg(r2)})));
  // 1 + sqrt2 is a norm from K(sqrt(-1))? isotropy of <1,1,-(1+sqrt2)>
  QForm n = make_form(K, {K->one(), K->one(), K->neg(K->make(Rat(1), Rat(1)))});
  // 1+sqrt2 > 0 at real+, 1-sqrt2 < 0 at real-: negative at an embedding
  // forces anisotropy there
  CHECK(!is_isotropic(n));
  // 4 + 2 sqrt2 = 1^2 + (1+sqrt2)^2 is a sum of two squares by construction
  QForm m = make_form(K, {K->one(), K->one(), K->neg(K->make(Rat(4), Rat(2)))});
  CHECK(is_isotropic(m));
  Rng rng(0xAB3C, 11);
  for (int t = 0; t < 15; ++t) {
    std::vector<Elem> d;
    for (int i = 0; i < 2; ++i)
      d.push_back(K->make(Rat(rng.int_in(1, 8)), Rat(rng.int_in(-3, 3))));
    QForm f = make_form(K, d);
    CHECK(is_witt_trivial(direct_sum(f, neg_form(f))));
    CHECK(witt_equal(f, f));
  }
}

TEST_CASE("isotropy over finite fields and their extensions") {
  auto F = FieldCtx::finite(7, 1);
  QForm q3 = make_form(F, {F->from_int(1), F->from_int(3), F->from_int(5)});
  CHECK(is_isotropic_local(q3));
  QForm q2 = make_form(F, {F->one(), F->neg(square_class_reps(*F)[1])});
  CHECK(!is_isotropic_local(q2));
  WittDecomp wd = witt_decompose(q2);
  CHECK(wd.index == 0);
  CHECK(wd.kernel.rank() == 2);
  auto F9 = FieldCtx::finite(3, 2);
  QForm f3 = make_form(F9, {F9->one(), F9->one(), F9->one()});
  CHECK(is_isotropic_local(f3));
  CHECK(witt_decompose(f3).kernel.rank() == 1);
}

TEST_SUITE_END();
