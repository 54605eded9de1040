#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "malcev/subgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace malcev;
using namespace tu;

static Coords wc(const Presentation &P, const std::string &s) {
  return word_to_coords(P, parse_word(s, P.size()));
}

static std::vector<Coords> gens(const Presentation &P,
                                std::initializer_list<const char *> ws) {
  std::vector<Coords> out;
  for (const char *w : ws)
    out.push_back(wc(P, w));
  return out;
}

static std::vector<Coords> rows_of(const Subgroup &S) {
  std::vector<Coords> r;
  for (int k = 1; k <= S.size(); ++k)
    r.push_back(S.row(k));
  return r;
}

/* validate a result of gcd_combination against plain gmp */
static void check_comb(const std::vector<Int> &a) {
  GcdCombination r = gcd_combination(a);
  Int d = 0, sum = 0, mx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = gcd(d, a[i]);
    sum += r.coeff[i] * a[i];
    if (abs(a[i]) > mx)
      mx = abs(a[i]);
  }
  CHECK(r.d == d);
  CHECK(r.d > 0);
  CHECK(sum == r.d);
  bool half = true;
  for (const auto &c : r.coeff) {
    CHECK(abs(c) <= mx);
    if (2 * abs(c) > mx)
      half = false;
  }
  CHECK(r.half_bound == half);
}

TEST_CASE("gcd combination basics") {
  check_comb({6, 10, 15});
  CHECK(gcd_combination({6, 10, 15}).d == 1);

  GcdCombination z = gcd_combination({0, 0, 7});
  CHECK(z.d == 7);
  CHECK(z.coeff == std::vector<Int>{0, 0, 1});

  GcdCombination n = gcd_combination({-4, 6});
  CHECK(n.d == 2);
  CHECK(n.coeff[0] * -4 + n.coeff[1] * 6 == 2);

  CHECK(gcd_combination({-9}).d == 9);
  CHECK(gcd_combination({-9}).coeff == std::vector<Int>{-1});

  CHECK_THROWS_AS(gcd_combination({}), std::invalid_argument);
  CHECK_THROWS_AS(gcd_combination({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("gcd combination random") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<long> val(-1000000000000L, 1000000000000L);
  std::uniform_int_distribution<int> mode(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    int n = len(rng);
    std::vector<Int> a(n);
    bool nonzero = false;
    for (auto &x : a) {
      switch (mode(rng)) {
      case 0:
        x = 0;
        break;
      case 1:
        x = val(rng) % 20;
        break;
      case 2:
        x = Int(val(rng)) * 6; /* common factor */
        break;
      default:
        x = val(rng);
      }
      if (x != 0)
        nonzero = true;
    }
    if (!nonzero)
      a[0] = 42;
    check_comb(a);
  }
}

TEST_CASE("full form worked examples") {
  Presentation P = heis();

  Subgroup s1(P, gens(P, {"a1 a3", "a1"}));
  CHECK(rows_of(s1) == std::vector<Coords>{vec(P, {1, 0, 0}), vec(P, {0, 0, 1})});
  CHECK(s1.pivot(1) == 1);
  CHECK(s1.pivot(2) == 3);

  /* the closure step adjoins the commutator a3 */
  Subgroup s2(P, gens(P, {"a1", "a2"}));
  CHECK(rows_of(s2) == std::vector<Coords>{vec(P, {1, 0, 0}), vec(P, {0, 1, 0}),
                                           vec(P, {0, 0, 1})});

  Subgroup s3(P, std::vector<Coords>{});
  CHECK(s3.size() == 0);
  Subgroup s4(P, std::vector<Coords>{identity(P)});
  CHECK(s4.size() == 0);

  Presentation Z = zn(1);
  Subgroup s5(Z, std::vector<Coords>{vec(Z, {2}), vec(Z, {3})});
  CHECK(rows_of(s5) == std::vector<Coords>{vec(Z, {1})});

  /* index 4: products of a1^2 and a2 only reach even a3 coordinates */
  Subgroup s6(P, gens(P, {"a1^2", "a2"}));
  CHECK(rows_of(s6) == std::vector<Coords>{vec(P, {2, 0, 0}), vec(P, {0, 1, 0}),
                                           vec(P, {0, 0, 2})});

  Subgroup s7(P, gens(P, {"a1^2", "a2", "a3"}));
  CHECK(rows_of(s7) == std::vector<Coords>{vec(P, {2, 0, 0}), vec(P, {0, 1, 0}),
                                           vec(P, {0, 0, 1})});
  CHECK(s7.pivot_entry(1) == 2);
  CHECK(s7.pivot_entry(3) == 1);
}

TEST_CASE("full form with ambient torsion") {
  Presentation Z12 = zmod(12);
  Subgroup s(Z12, std::vector<Coords>{vec(Z12, {8})});
  CHECK(rows_of(s) == std::vector<Coords>{vec(Z12, {4})});
  CHECK(s.order() == Int(3));
  CHECK(s.contains(vec(Z12, {8})));
  CHECK(!s.contains(vec(Z12, {2})));
  CHECK(s.contains(identity(Z12)));

  Subgroup s2(Z12, std::vector<Coords>{vec(Z12, {8}), vec(Z12, {6})});
  CHECK(rows_of(s2) == std::vector<Coords>{vec(Z12, {2})});
  CHECK(s2.order() == Int(6));

  Presentation Q = heis125();
  Subgroup c(Q, gens(Q, {"a1"}));
  CHECK(rows_of(c) == std::vector<Coords>{vec(Q, {1, 0, 0})});
  CHECK(c.order() == Int(5));

  /* a1, a2 generate everything: the commutator closure brings in a3 */
  Subgroup w(Q, gens(Q, {"a1", "a2"}));
  CHECK(w.size() == 3);
  CHECK(w.order() == Int(125));
}

TEST_CASE("membership worked examples") {
  Presentation P = heis();

  Subgroup F(P, gens(P, {"a1", "a2"}));
  auto g1 = F.decompose(vec(P, {0, 0, 1}));
  REQUIRE(g1.has_value());
  CHECK(*g1 == std::vector<Int>{0, 0, 1});

  Subgroup F2(P, gens(P, {"a1^2", "a3"}));
  CHECK(!F2.contains(vec(P, {1, 0, 0})));
  CHECK(F2.contains(vec(P, {2, 0, 0})));

  auto g3 = F2.decompose(identity(P));
  REQUIRE(g3.has_value());
  CHECK(*g3 == std::vector<Int>{0, 0});

  Subgroup F3(P, std::vector<Coords>{});
  CHECK(F3.contains(identity(P)));
  CHECK(!F3.contains(vec(P, {0, 0, 1})));

  /* the index-4 subgroup: odd a3 coordinates stay outside */
  Subgroup F4(P, gens(P, {"a1^2", "a2"}));
  CHECK(!F4.contains(vec(P, {0, 0, 1})));
  CHECK(F4.contains(vec(P, {0, 0, 2})));
  CHECK(F4.contains(vec(P, {2, 1, 0})));  /* a1^2 a2 */
  CHECK(!F4.contains(vec(P, {2, 1, 1})));
}

TEST_CASE("decompose reconstructs through the rows") {
  std::mt19937_64 rng(4242);
  for (Presentation P : {heis(), ut4(), heis125()}) {
    std::uniform_int_distribution<int> n(1, 3);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Coords> gs;
      for (int i = 0, k = n(rng); i < k; ++i)
        gs.push_back(word_to_coords(P, random_word(rng, P.size(), 4, 5)));
      Subgroup S(P, gs);

      /* random member: product of generators */
      Coords h = identity(P);
      for (int i = 0; i < 6; ++i) {
        const Coords &g = gs[std::uniform_int_distribution<int>(
            0, static_cast<int>(gs.size()) - 1)(rng)];
        h = multiply(P, h, power(P, g, e(rng)));
      }
      auto gamma = S.decompose(h);
      REQUIRE(gamma.has_value());
      Coords acc = identity(P);
      for (int k = 1; k <= S.size(); ++k)
        acc = multiply(P, acc, power(P, S.row(k), (*gamma)[k - 1]));
      CHECK(acc == h);

      /* subgroup axioms through membership */
      CHECK(S.contains(invert(P, h)));
      CHECK(S.contains(multiply(P, h, h)));
      if (S.size() > 0)
        CHECK(S.contains(conjugate(P, h, S.row(1))));
    }
  }
}

TEST_CASE("express worked examples") {
  Presentation P = heis();

  Subgroup S(P, gens(P, {"a1", "a2"}));
  auto w = S.express(vec(P, {0, 0, 1}));
  REQUIRE(w.has_value());
  /* re-evaluate over the inputs by hand */
  Coords acc = identity(P);
  for (const Letter &l : *w)
    acc = multiply(P, acc, power(P, S.inputs()[l.gen - 1], l.exp));
  CHECK(acc == vec(P, {0, 0, 1}));

  Subgroup S2(P, gens(P, {"a1"}));
  auto w2 = S2.express(vec(P, {3, 0, 0}));
  REQUIRE(w2.has_value());
  CHECK(*w2 == GroupWord{{1, 3}});

  Subgroup S3(P, gens(P, {"a1^2"}));
  CHECK(!S3.express(vec(P, {1, 0, 0})).has_value());

  /* big exponents ride on the run-length encoding */
  Subgroup S4(P, gens(P, {"a1^2", "a2", "a3"}));
  auto w4 = S4.express(vec(P, {2000000, 0, 0}));
  REQUIRE(w4.has_value());
  CHECK(*w4 == GroupWord{{1, 1000000}});

  /* conjugates over letter generators in ut4 */
  Presentation U = ut4();
  Subgroup S5(U, gens(U, {"a1", "a2"}));
  Coords cj = wc(U, "a2 a1 a2^-1");
  auto w5 = S5.express(cj);
  REQUIRE(w5.has_value());
  Coords acc5 = identity(U);
  for (const Letter &l : *w5)
    acc5 = multiply(U, acc5, power(U, S5.inputs()[l.gen - 1], l.exp));
  CHECK(acc5 == cj);
}

/* expression tracking is exact but capped; keep the generators small
   enough that the replayed words stay within the cap */
TEST_CASE("express random members") {
  std::mt19937_64 rng(909);
  for (Presentation P : {heis(), heis125()}) {
    std::uniform_int_distribution<int> n(1, 3);
    std::uniform_int_distribution<long> e(-5, 5);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Coords> gs;
      for (int i = 0, k = n(rng); i < k; ++i)
        gs.push_back(word_to_coords(P, random_word(rng, P.size(), 3, 4)));
      Subgroup S(P, gs);
      Coords h = identity(P);
      for (int i = 0; i < 5; ++i) {
        const Coords &g = gs[std::uniform_int_distribution<int>(
            0, static_cast<int>(gs.size()) - 1)(rng)];
        h = multiply(P, h, power(P, g, e(rng)));
      }
      auto w = S.express(h);
      REQUIRE(w.has_value());
      Coords acc = identity(P);
      for (const Letter &l : *w)
        acc = multiply(P, acc, power(P, S.inputs()[l.gen - 1], l.exp));
      CHECK(acc == h);
    }
  }
}

TEST_CASE("full form is canonical") {
  std::mt19937_64 rng(31337);
  for (Presentation P : {heis(), ut4(), heis125()}) {
    std::uniform_int_distribution<int> n(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Coords> gs;
      for (int i = 0, k = n(rng); i < k; ++i)
        gs.push_back(word_to_coords(P, random_word(rng, P.size(), 4, 6)));
      Subgroup S(P, gs);

      /* permuted inputs */
      std::vector<Coords> perm = gs;
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(rows_of(Subgroup(P, perm)) == rows_of(S));

      /* some inputs inverted */
      std::vector<Coords> inv = gs;
      for (auto &g : inv)
        if (coin(rng))
          g = invert(P, g);
      CHECK(rows_of(Subgroup(P, inv)) == rows_of(S));

      /* redundant extra products appended */
      std::vector<Coords> aug = gs;
      Coords prod = identity(P);
      for (const auto &g : gs)
        prod = multiply(P, prod, power(P, g, coin(rng) ? 2 : -1));
      aug.push_back(prod);
      aug.push_back(conjugate(P, gs[0], prod));
      CHECK(rows_of(Subgroup(P, aug)) == rows_of(S));
    }
  }
}

/* right-multiplication closure; fine for subgroups of a finite group */
static std::set<Coords> enumerate_closure(const Presentation &P,
                                          const std::vector<Coords> &gs) {
  std::set<Coords> seen{identity(P)};
  std::vector<Coords> queue{identity(P)};
  while (!queue.empty()) {
    Coords g = std::move(queue.back());
    queue.pop_back();
    for (const auto &h : gs) {
      Coords x = multiply(P, g, h);
      if (seen.insert(x).second)
        queue.push_back(x);
    }
  }
  return seen;
}

TEST_CASE("membership agrees with exhaustive enumeration") {
  Presentation Q = heis125();
  std::vector<Coords> all;
  for (long x = 0; x < 5; ++x)
    for (long y = 0; y < 5; ++y)
      for (long z = 0; z < 5; ++z)
        all.push_back(vec(Q, {x, y, z}));
  REQUIRE(all.size() == 125);

  /* every cyclic subgroup */
  for (const auto &g : all) {
    Subgroup S(Q, std::vector<Coords>{g});
    std::set<Coords> real = enumerate_closure(Q, {g});
    CHECK(S.order() == Int(real.size()));
    for (const auto &h : all)
      CHECK(S.contains(h) == (real.count(h) > 0));
  }

  /* sampled two-generated subgroups */
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> pick(0, 124);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Coords> gs{all[pick(rng)], all[pick(rng)]};
    Subgroup S(Q, gs);
    std::set<Coords> real = enumerate_closure(Q, gs);
    CHECK(S.order() == Int(real.size()));
    Int lagrange = 125 / *S.order();
    CHECK(*S.order() * lagrange == 125);
    for (const auto &h : all)
      CHECK(S.contains(h) == (real.count(h) > 0));
  }
}

TEST_CASE("subgroup presentations") {
  Presentation P = heis();

  /* index 2 subgroup: h3 = a3 and [h2,h1] = a3^2 = h3^2 */
  Subgroup s7(P, gens(P, {"a1^2", "a2", "a3"}));
  Presentation H7 = s7.presentation();
  CHECK(H7.size() == 3);
  CHECK(H7.weight(1) == 1);
  CHECK(H7.weight(3) == 2);
  CHECK(!H7.is_torsion(1));
  CHECK(H7.conj_tail(1, 2) == BlockList{{3, 2}});

  /* index 4 subgroup: h3 = a3^2 and [h2,h1] = a3^2 = h3 */
  Subgroup s6(P, gens(P, {"a1^2", "a2"}));
  Presentation H6 = s6.presentation();
  CHECK(H6.conj_tail(1, 2) == BlockList{{3, 1}});

  /* central cyclic: a copy of Z sitting at weight 2 */
  Subgroup sc(P, gens(P, {"a3"}));
  Presentation HC = sc.presentation();
  CHECK(HC.size() == 1);
  CHECK(HC.weight(1) == 2);
  CHECK(!HC.is_torsion(1));

  Presentation Q = heis125();
  Subgroup c5(Q, gens(Q, {"a1"}));
  Presentation H5 = c5.presentation();
  CHECK(H5.size() == 1);
  CHECK(H5.is_torsion(1));
  CHECK(H5.torsion_exponent(1) == 5);
  CHECK(H5.power_tail(1).empty());

  /* abelian slice of ut4 */
  Presentation U = ut4();
  Subgroup ab(U, gens(U, {"a1", "a3"}));
  CHECK(ab.size() == 2);
  Presentation HA = ab.presentation();
  CHECK(HA.conj_tail(1, 2).empty());

  /* heis-like slice with an inverted commutator */
  Subgroup hs(U, gens(U, {"a1", "a2"}));
  CHECK(rows_of(hs) == std::vector<Coords>{vec(U, {1, 0, 0, 0, 0, 0}),
                                           vec(U, {0, 1, 0, 0, 0, 0}),
                                           vec(U, {0, 0, 0, 1, 0, 0})});
  Presentation HH = hs.presentation();
  CHECK(HH.conj_tail(1, 2) == BlockList{{3, -1}});

  /* trivial subgroup, trivial presentation */
  Subgroup st(P, std::vector<Coords>{});
  CHECK(st.presentation().size() == 0);
}

/* evaluate a tail over the rows of a subgroup */
static Coords eval_tail(const Presentation &P, const Subgroup &S,
                        const BlockList &tail) {
  Coords acc = identity(P);
  for (const auto &b : tail)
    acc = multiply(P, acc, power(P, S.row(b.gen), b.exp));
  return acc;
}

TEST_CASE("subgroup presentation relations hold in the ambient group") {
  std::mt19937_64 rng(2025);
  for (Presentation P : {heis(), ut4(), heis125()}) {
    std::uniform_int_distribution<int> n(1, 3);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Coords> gs;
      for (int i = 0, k = n(rng); i < k; ++i)
        gs.push_back(word_to_coords(P, random_word(rng, P.size(), 4, 5)));
      Subgroup S(P, gs);
      Presentation H = S.presentation();
      REQUIRE(H.size() == S.size());

      for (int i = 1; i <= H.size(); ++i) {
        if (H.is_torsion(i))
          CHECK(power(P, S.row(i), H.torsion_exponent(i)) ==
                eval_tail(P, S, H.power_tail(i)));
        for (int j = i + 1; j <= H.size(); ++j) {
          CHECK(commutator(P, S.row(j), S.row(i)) ==
                eval_tail(P, S, H.conj_tail(i, j)));
          CHECK(commutator(P, invert(P, S.row(j)), S.row(i)) ==
                eval_tail(P, S, H.conj_inv_tail(i, j)));
        }
      }
    }
  }
}

TEST_CASE("subgroup presentation order matches in the 125 group") {
  Presentation Q = heis125();
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<long> e(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Coords> gs{vec(Q, {e(rng), e(rng), e(rng)}),
                           vec(Q, {e(rng), e(rng), e(rng)})};
    Subgroup S(Q, gs);
    Presentation H = S.presentation();
    Int pres_order = 1;
    for (int i = 1; i <= H.size(); ++i) {
      REQUIRE(H.is_torsion(i));
      pres_order *= H.torsion_exponent(i);
    }
    CHECK(S.order() == pres_order);
  }
}
