#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include <fstream>
#include <sstream>

using namespace malcev;
using namespace tu;

TEST_CASE("parser rejects malformed input") {
  auto bad = [](const std::string &text) {
    CHECK_THROWS_AS(parse_presentation_text(text), parse_error);
  };
  bad("");
  bad("weight 1 1\n");                       /* gens must come first */
  bad("gens 2\ngens 2\n");
  bad("gens 2\nweight 1 0\n");
  bad("gens 2\nweight 2 2\nweight 1 3\n");   /* decreasing weights */
  bad("gens 2\npow 1 1 : 0\n");              /* exponent < 2 */
  bad("gens 2\npow 1 4 : 0\npow 1 4 : 0\n"); /* duplicate */
  bad("gens 2\nconj 1 2 : \n");              /* needs i < j */
  bad("gens 2\nconj 2 1 : 1 2\n");           /* too many entries */
  bad("gens 3\nconj 2 1 :\n");               /* too few entries */
  bad("gens 2\nbogus 1\n");
  bad("gens 2\nname 1 2bad\n");
  bad("gens 2\nname 1 x\nname 2 x\n");       /* duplicate name */
  bad("gens x\n");
}

TEST_CASE("constructor checks the tail invariants") {
  CHECK_THROWS_AS(parse_presentation_text("gens 3\nconj 2 1 : 0 0\n"),
                  parse_error); /* wrong arity */
  PresentationData d;
  d.resize(3);
  d.conj[0][1] = {{2, Int(1)}}; /* [a2,a1] supported on a2: illegal */
  CHECK_THROWS_AS(Presentation(std::move(d)), invalid_presentation);

  PresentationData d2;
  d2.resize(3);
  d2.weight = {1, 1, 1};
  d2.conj[0][1] = {{3, Int(1)}}; /* weight 1 < 1+1: violates weight respect */
  CHECK_THROWS_AS(Presentation(std::move(d2)), invalid_presentation);

  PresentationData d3;
  d3.resize(2);
  d3.power_tail[0] = {{2, Int(1)}}; /* tail without torsion exponent */
  CHECK_THROWS_AS(Presentation(std::move(d3)), invalid_presentation);
}

TEST_CASE("serialize round trips") {
  for (const Presentation &P : {heis(), heis125(), ut4(), zn(3), zmod(12)}) {
    std::string s = P.serialize();
    Presentation Q = parse_presentation_text(s, "reparsed");
    CHECK(Q.serialize() == s);
    REQUIRE(Q.size() == P.size());
    for (int i = 1; i <= P.size(); ++i) {
      CHECK(Q.weight(i) == P.weight(i));
      CHECK(Q.torsion_exponent(i) == P.torsion_exponent(i));
    }
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
      GroupWord w = random_word(rng, P.size(), 8, 5);
      CHECK(word_to_coords(P, w) == word_to_coords(Q, w));
    }
  }
}

TEST_CASE("derived inverse tails match explicit ones") {
  /* heis with conjinv spelled out: a2^-1 a1 = a1 a2^-1 a3^-1 */
  Presentation P = heis();
  Presentation Q = parse_presentation_text("gens 3\n"
                                           "weight 1 1\n"
                                           "weight 2 1\n"
                                           "weight 3 2\n"
                                           "conj 2 1 : 1\n"
                                           "conjinv 2 1 : -1\n",
                                           "heis-explicit");
  CHECK(P.conj_inv_tail(1, 2) == Q.conj_inv_tail(1, 2));
  REQUIRE(P.conj_inv_tail(1, 2).size() == 1);
  CHECK(P.conj_inv_tail(1, 2)[0].gen == 3);
  CHECK(P.conj_inv_tail(1, 2)[0].exp == -1);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    GroupWord w = random_word(rng, 3, 10, 4);
    CHECK(word_to_coords(P, w) == word_to_coords(Q, w));
  }
}

TEST_CASE("names appear in parsing and formatting") {
  Presentation P = parse_presentation_text("gens 2\n"
                                           "name 1 x\n"
                                           "name 2 y\n",
                                           "named");
  GroupWord w = parse_word("x y^-3 a1", P.size(), P.names());
  CHECK(word_to_coords(P, w) == vec(P, {2, -3}));
  CHECK(format_word(w, P.names()) == "x y^-3 x");
}

TEST_CASE("consistency of the stock groups") {
  for (const Presentation &P : {heis(), heis125(), ut4(), zn(4), zmod(9)}) {
    ConsistencyReport r = check_consistency(P);
    CHECK(r.consistent);
    CHECK(r.witness.empty());
  }
}

TEST_CASE("imposing a2^2 = 1 on heis is inconsistent") {
  Presentation P = parse_presentation_text("gens 3\n"
                                           "weight 1 1\n"
                                           "weight 2 1\n"
                                           "weight 3 2\n"
                                           "conj 2 1 : 1\n"
                                           "pow 2 2 : 0\n",
                                           "heis-bad");
  ConsistencyReport r = check_consistency(P);
  REQUIRE_FALSE(r.consistent);
  /* the failure word collects to a3^2, which should have been trivial */
  Coords w = word_to_coords(P, r.witness);
  CHECK(w == vec(P, {0, 0, 2}));
}

TEST_CASE("bad inverse tails are flagged") {
  Presentation P = parse_presentation_text("gens 3\n"
                                           "weight 1 1\n"
                                           "weight 2 1\n"
                                           "weight 3 2\n"
                                           "conj 2 1 : 1\n"
                                           "conjinv 2 1 : 1\n", /* wrong sign */
                                           "heis-badinv");
  ConsistencyReport r = check_consistency(P);
  REQUIRE_FALSE(r.consistent);
  CHECK_FALSE(word_to_coords(P, r.witness).is_identity());
}

TEST_CASE("load_presentation reads files") {
  CHECK_THROWS_AS(load_presentation("/nonexistent/file"), parse_error);
  std::string path = "/tmp/malcev_heis_test.txt";
  {
    std::ofstream f(path);
    f << heis().serialize();
  }
  Presentation P = load_presentation(path);
  CHECK(P.size() == 3);
  CHECK(check_consistency(P).consistent);
}
