#include "doctest.h"

#include <set>

#include "field.hpp"
#include "rng.hpp"

using namespace witt;

TEST_SUITE_BEGIN("field");

TEST_CASE("rational arithmetic and squares") {
  auto Q = FieldCtx::rationals();
  Elem a = Q->parse("3/4");
  Elem b = Q->parse("-2/3");
  CHECK(Q->to_string(Q->mul(a, b)) == "-1/2");
  CHECK(Q->to_string(Q->add(a, b)) == "1/12");
  CHECK(Q->to_string(Q->inv(b)) == "-3/2");
  CHECK(Q->is_square(Q->parse("9/16")));
  CHECK(!Q->is_square(Q->parse("2")));
  CHECK(!Q->is_square(Q->parse("-9")));
  CHECK(Q->to_string(*Q->try_sqrt(Q->parse("9/16"))) == "3/4");
  CHECK_THROWS_AS((void)Q->inv(Q->zero()), Error);
}

TEST_CASE("p-adic squares: frozen decisions") {
  auto Q5 = FieldCtx::padic(5);
  // 4 = 2^2; -1 is a square in Q_5 (5 = 1 mod 4); 5 is not (odd valuation).
  CHECK(Q5->is_square(Q5->parse("4")));
  CHECK(Q5->is_square(Q5->parse("-1")));
  CHECK(!Q5->is_square(Q5->parse("5")));
  CHECK(Q5->is_square(Q5->parse("25")));
  CHECK(!Q5->is_square(Q5->parse("2"))); // 2 is a nonresidue mod 5
  CHECK(Q5->is_square(Q5->parse("6")));  // 6 = 1 mod 5, unit square
  CHECK(Q5->is_square(Q5->parse("1/4")));
  CHECK(!Q5->is_square(Q5->parse("1/5")));

  auto Q2 = FieldCtx::padic(2);
  CHECK(Q2->is_square(Q2->parse("17")));  // 17 = 1 mod 8
  CHECK(!Q2->is_square(Q2->parse("3")));
  CHECK(!Q2->is_square(Q2->parse("5")));
  CHECK(!Q2->is_square(Q2->parse("7")));
  CHECK(!Q2->is_square(Q2->parse("2")));
  CHECK(!Q2->is_square(Q2->parse("-1")));
  CHECK(Q2->is_square(Q2->parse("4")));
  CHECK(Q2->is_square(Q2->parse("9/25"))); // 9/25 = 9 * (1/25), both units, 9*that = 1 mod 8
  auto Q7 = FieldCtx::padic(7);
  CHECK(Q7->is_square(Q7->parse("2")));   // 2 = 3^2 mod 7
  CHECK(!Q7->is_square(Q7->parse("-1"))); // 7 = 3 mod 4
}

TEST_CASE("finite field arithmetic in F_9") {
  auto F9 = FieldCtx::finite(3, 2);
  // q = 9; multiplicative group has order 8.
  Elem g = F9->zero();
  int order_seen = 0;
  for (Int n = 1; n < 9; ++n) {
    Elem x = Elem{F9->fq->decode(n), F9->fq->zero()};
    Elem acc = x;
    int ord = 1;
    while (!F9->eq(acc, F9->one())) {
      acc = F9->mul(acc, x);
      ++ord;
    }
    if (ord == 8) {
      g = x;
      ++order_seen;
    }
  }
  CHECK(order_seen == 4); // phi(8) = 4 generators
  // Euler: squares are exactly even powers of a generator.
  std::set<Int> squares;
  Elem acc = F9->one();
  for (int k = 0; k < 8; ++k) {
    acc = F9->mul(acc, g);
    if (k % 2 == 1) squares.insert(F9->fq->encode(std::get<FqElem>(acc.a)));
  }
  int count = 0;
  for (Int n = 1; n < 9; ++n) {
    Elem x = Elem{F9->fq->decode(n), F9->fq->zero()};
    bool sq = F9->is_square(x);
    CHECK(sq == (squares.count(n) > 0));
    if (sq) {
      ++count;
      auto r = F9->try_sqrt(x);
      REQUIRE(r.has_value());
      CHECK(F9->eq(F9->mul(*r, *r), x));
    }
  }
  CHECK(count == 4);
}

TEST_CASE("finite prime field sqrt via Tonelli-Shanks") {
  auto F = FieldCtx::finite(41, 1);
  for (Int n = 1; n < 41; ++n) {
    Elem x = F->from_int(n);
    if (F->is_square(x)) {
      auto r = F->try_sqrt(x);
      REQUIRE(r.has_value());
      CHECK(F->eq(F->mul(*r, *r), x));
    } else {
      CHECK(!F->try_sqrt(x).has_value());
    }
  }
}

TEST_CASE("quadratic extension of Q: arithmetic and conjugation") {
  auto Q = FieldCtx::rationals();
  auto K = FieldCtx::quadext(Q, Q->parse("2"));
  Elem z = K->parse("1,1"); // 1 + sqrt(2)
  CHECK(K->to_string(K->mul(z, z)) == "3,2");
  CHECK(K->to_string(K->norm_to_base(z)) == "-1,0");
  CHECK(K->to_string(K->trace_to_base(z)) == "2,0");
  CHECK(K->to_string(K->inv(z)) == "-1,1");
  CHECK(K->eq(K->mul(z, K->conj(z)), K->neg(K->one())));
  // 3 + 2*sqrt(2) = (1+sqrt(2))^2
  CHECK(K->is_square(K->parse("3,2")));
  auto r = K->try_sqrt(K->parse("3,2"));
  REQUIRE(r.has_value());
  CHECK(K->eq(K->mul(*r, *r), K->parse("3,2")));
  // 2 = (sqrt(2))^2
  CHECK(K->is_square(K->parse("2,0")));
  CHECK(K->eq(*K->try_sqrt(K->parse("2,0")), K->parse("0,1")));
  CHECK(!K->is_square(K->parse("3,0")));
  CHECK(!K->is_square(K->parse("1,1")));
  CHECK(!K->is_square(K->parse("-1,0")));
  // 6 = sqrt(2)^2 * 3: not a square; 8 = (2 sqrt(2))^2 is.
  CHECK(!K->is_square(K->parse("6,0")));
  CHECK(K->is_square(K->parse("8,0")));
  CHECK_THROWS_AS((void)FieldCtx::quadext(Q, Q->parse("9")), Error);
  CHECK_THROWS_AS((void)FieldCtx::quadext(K, K->one()), Error);
}

TEST_CASE("quadratic extension square test agrees with explicit squaring") {
  auto Q = FieldCtx::rationals();
  for (int dv : {-1, 2, 3, -5, 12}) {
    auto K = FieldCtx::quadext(Q, Q->from_int(dv));
    Rng rng(7, static_cast<uint64_t>(dv + 100));
    for (int i = 0; i < 40; ++i) {
      Elem z = K->make(Rat(rng.int_in(-9, 9), rng.int_in(1, 5)),
                       Rat(rng.int_in(-9, 9), rng.int_in(1, 5)));
      Elem z2 = K->mul(z, z);
      CHECK(K->is_square(z2));
      if (!K->is_zero(z)) {
        auto r = K->try_sqrt(z2);
        REQUIRE(r.has_value());
        CHECK(K->eq(K->mul(*r, *r), z2));
      }
    }
  }
}

TEST_CASE("local quadratic extensions: square decisions") {
  auto Q5 = FieldCtx::padic(5);
  // Q_5(sqrt(2)): unramified (2 is a nonresidue mod 5).
  auto K = FieldCtx::quadext(Q5, Q5->parse("2"));
  CHECK(K->is_square(K->parse("2,0")));
  CHECK(!K->is_square(K->parse("5,0")));       // uniformizer
  CHECK(K->is_square(K->parse("25,0")));
  CHECK(K->is_square(K->parse("-1,0")));       // square already in Q_5
  CHECK(K->is_square(K->parse("3,0")));        // nonresidue * nonresidue units
  CHECK(!K->is_square(K->parse("10,0")));      // 5 * residue-class-2: odd valuation
  // z = 1 + sqrt(2): N(z) = -1, unit; square iff Euler in F_25 says so.
  Elem z = K->parse("1,1");
  Elem z2 = K->mul(z, z);
  CHECK(K->is_square(z2));

  // Q_5(sqrt(5)): ramified.
  auto R = FieldCtx::quadext(Q5, Q5->parse("5"));
  CHECK(R->is_square(R->parse("5,0")));        // (sqrt 5)^2
  CHECK(!R->is_square(R->parse("0,1")));       // sqrt(5) has valuation 1
  CHECK(R->is_square(R->parse("-1,0")));
  CHECK(!R->is_square(R->parse("2,0")));       // unit nonresidue stays nonsquare
  CHECK(R->is_square(R->parse("6,2")));        // (1 + sqrt5)^2
  CHECK(!R->is_square(R->parse("10,1")));      // v_w = 1, odd
}

TEST_CASE("local quadratic extensions: random square consistency") {
  for (int p : {3, 5, 13, 2}) {
    auto Qp = FieldCtx::padic(p);
    for (int dv : {-1, 2, 3, 5, 6, -2, 17}) {
      Elem de = Qp->from_int(dv);
      if (Qp->is_square(de) || Qp->is_zero(de)) continue;
      auto K = FieldCtx::quadext(Qp, de);
      Rng rng(11, static_cast<uint64_t>(p * 100 + dv + 50));
      for (int i = 0; i < 25; ++i) {
        Elem z = K->make(Rat(rng.int_in(-20, 20), rng.int_in(1, 6)),
                         Rat(rng.int_in(-20, 20), rng.int_in(1, 6)));
        Elem w = K->make(Rat(rng.int_in(-20, 20), rng.int_in(1, 6)),
                         Rat(rng.int_in(-20, 20), rng.int_in(1, 6)));
        if (K->is_zero(z)) continue;
        CHECK(K->is_square(K->mul(z, z)));
        // square classes are multiplicative: w z^2 is a square iff w is
        if (!K->is_zero(w)) CHECK(K->is_square(K->mul(w, K->mul(z, z))) == K->is_square(w));
      }
    }
  }
}

TEST_CASE("F_q(sqrt(n)): squares in F_{q^2}") {
  auto F3 = FieldCtx::finite(3, 1);
  Elem ns = F3->from_int(2); // 2 is not a square mod 3
  CHECK(!F3->is_square(ns));
  auto K = FieldCtx::quadext(F3, ns);
  // F_9: every element of F_3 becomes a square; sqrt(2) itself is one of the
  // 4 nonzero squares iff Euler says so. Count squares: (9-1)/2 = 4 nonzero.
  int cnt = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      Elem z = K->make(F3->fq->from_int(x), F3->fq->from_int(y));
      if (K->is_zero(z)) continue;
      if (K->is_square(z)) {
        ++cnt;
        auto r = K->try_sqrt(z);
        REQUIRE(r.has_value());
        CHECK(K->eq(K->mul(*r, *r), z));
      }
    }
  CHECK(cnt == 4);
  CHECK(K->is_square(K->make(F3->fq->from_int(2), F3->fq->from_int(0))));
}

TEST_CASE("field keys and parsing round trips") {
  auto Q = FieldCtx::rationals();
  auto Q2 = FieldCtx::padic(2);
  auto F9 = FieldCtx::finite(3, 2);
  auto K = FieldCtx::quadext(Q, Q->parse("-2"));
  CHECK(Q->key() == "Q");
  CHECK(Q2->key() == "Qp:2");
  CHECK(F9->key() == "Fq:3^2");
  CHECK(K->key() == "Q(sqrt -2)");
  CHECK(same_field(*K, *FieldCtx::quadext(Q, Q->parse("-2"))));
  CHECK(!same_field(*K, *FieldCtx::quadext(Q, Q->parse("-1"))));
  Elem e = K->parse("-7/3,22");
  CHECK(K->eq(K->parse(K->to_string(e)), e));
}

TEST_SUITE_END();
