#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "malcev/freenil.hpp"
#include "malcev/slp.hpp"
#include "malcev/subgroup.hpp"

using namespace malcev;
using namespace tu;

/* eliminate the doubling generators greatest-first, recovering the word
   the compressed relator stands for */
static GroupWord replay(const CompressedPresentation &cp, GroupWord w) {
  for (int g = cp.total; g > cp.rank; --g) {
    GroupWord def;
    for (const GroupWord &r : cp.relators)
      if (r.size() == 3 && r[0].gen == g && r[0].exp == -1) {
        def = {r[1], r[2]};
        break;
      }
    REQUIRE(def.size() == 2);
    GroupWord out;
    for (const Letter &l : w) {
      if (l.gen != g) {
        out.push_back(l);
        continue;
      }
      REQUIRE((l.exp == 1 || l.exp == -1));
      GroupWord piece = l.exp == 1 ? def : word_inverse(def);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    w = std::move(out);
  }
  return w;
}

TEST_CASE("parsing") {
  SUBCASE("doubling example") {
    Slp A = parse_slp("term B1 a1; prod B2 B1 B1; prod B3 B2 B2; root B3");
    CHECK(A.size() == 3);
    CHECK(A.length() == 4);
    GroupWord w = A.expand(16);
    REQUIRE(w.size() == 4);
    for (const Letter &l : w)
      CHECK(l == Letter{1, 1});
    CHECK(slp_to_coords(heis(), A) == vec(heis(), {4, 0, 0}));
  }
  SUBCASE("epsilon program") {
    Slp A = parse_slp("term B1 eps; root B1");
    CHECK(A.size() == 1);
    CHECK(A.length() == 0);
    CHECK(A.expand(4).empty());
    CHECK(slp_to_coords(heis(), A).is_identity());
  }
  SUBCASE("inverse letters and comments") {
    Slp A = parse_slp("# inverse squared\n"
                      "term B1 a2^-1\n"
                      "prod B2 B1 B1\n"
                      "root B2\n");
    CHECK(slp_to_coords(heis(), A) == vec(heis(), {0, -2, 0}));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_slp("prod B1 B1 B1; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("prod B2 B1 B1; term B1 a1; root B2"),
                    parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1; term B1 a2; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1; prod B2 B1 B1; root B1"),
                    parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1; root B2"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1; root B1; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a0; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 a1^2; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("term B1 x; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp("flub B1 a1; root B1"), parse_error);
    CHECK_THROWS_AS(parse_slp(""), parse_error);
    /* out of range only surfaces against a group */
    Slp A = parse_slp("term B1 a7; root B1");
    CHECK_THROWS_AS(slp_to_coords(heis(), A), parse_error);
  }
  SUBCASE("serialize round trip") {
    Slp A = power_program(parse_word("a1 a2^-1 a3", 3), 12);
    Slp B = parse_slp(A.serialize());
    CHECK(B.size() == A.size());
    CHECK(B.length() == A.length());
    CHECK(slp_to_coords(ut4(), B) == slp_to_coords(ut4(), A));
  }
}

TEST_CASE("evaluation") {
  Presentation P = heis();
  SUBCASE("doubling a single generator") {
    std::string text = "term B1 a1\n";
    for (int k = 2; k <= 21; ++k)
      text += "prod B" + std::to_string(k) + " B" + std::to_string(k - 1) +
              " B" + std::to_string(k - 1) + "\n";
    Slp A = parse_slp(text + "root B21");
    Coords g = slp_to_coords(P, A);
    CHECK(g[1] == Int(1) << 20);
    CHECK(g[2] == 0);
    CHECK(g[3] == 0);
  }
  SUBCASE("doubling a1 a2 hits the closed form") {
    for (int d = 1; d <= 10; ++d) {
      std::string text = "term T1 a1; term T2 a2; prod W0 T1 T2\n";
      for (int k = 1; k <= d; ++k)
        text += "prod W" + std::to_string(k) + " W" + std::to_string(k - 1) +
                " W" + std::to_string(k - 1) + "\n";
      Slp A = parse_slp(text + "root W" + std::to_string(d));
      Coords g = slp_to_coords(P, A);
      Int n = Int(1) << d;
      CHECK(g[1] == n);
      CHECK(g[2] == n);
      CHECK(g[3] == (n / 2) * (n - 1));
      CHECK(g == power(P, vec(P, {1, 1, 0}), n));
    }
  }
  SUBCASE("random programs agree with plain collection") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
      int size = 2 + static_cast<int>(rng() % 13);
      std::vector<SlpProduction> prods;
      std::vector<std::string> names;
      for (int k = 1; k <= size; ++k) {
        SlpProduction p;
        if (k > 1 && rng() % 3) {
          p.pair = true;
          p.b = 1 + static_cast<int>(rng() % (k - 1));
          p.c = 1 + static_cast<int>(rng() % (k - 1));
        } else if (rng() % 8 == 0) {
          p.letter = Letter{0, 0};
        } else {
          p.letter = Letter{1 + static_cast<int>(rng() % 3),
                            rng() % 2 ? 1 : -1};
        }
        prods.push_back(p);
        names.push_back("N" + std::to_string(k));
      }
      Slp A(names, prods);
      GroupWord w = A.expand(1 << 13);
      CHECK(slp_to_coords(P, A) == word_to_coords(P, w));
    }
  }
}

TEST_CASE("power programs") {
  SUBCASE("single letter, large exponent") {
    Slp A = power_program(parse_word("a1", 1), Int(1) << 20);
    CHECK(A.size() <= 43);
    Coords g = slp_to_coords(heis(), A);
    CHECK(g[1] == Int(1) << 20);
  }
  SUBCASE("n = 1 reproduces the word") {
    GroupWord w = parse_word("a1 a2", 2);
    Slp A = power_program(w, 1);
    CHECK(A.expand(8) == w);
  }
  SUBCASE("three letters to the fifth") {
    GroupWord w = parse_word("a1 a2 a3", 3);
    Slp A = power_program(w, 5);
    CHECK(A.length() == 15);
    GroupWord big;
    for (int k = 0; k < 5; ++k)
      big.insert(big.end(), w.begin(), w.end());
    CHECK(A.expand(32) == big);
  }
  SUBCASE("exponents inside the word") {
    GroupWord w = parse_word("a1^3 a2^-4", 2);
    Slp A = power_program(w, 6);
    CHECK(slp_to_coords(zn(2), A) == vec(zn(2), {18, -24}));
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(power_program(GroupWord{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(power_program(parse_word("a1", 1), 0),
                    std::invalid_argument);
  }
  SUBCASE("size bound and agreement with power") {
    std::mt19937_64 rng(31);
    Presentation P = ut4();
    for (int t = 0; t < 40; ++t) {
      GroupWord w =
          random_word(rng, P.size(), 1 + static_cast<int>(rng() % 64), 1);
      long n = 1 + static_cast<long>(rng() % 32);
      Slp A = power_program(w, n);
      long L = to_long(word_length(w), "len");
      long logn = 0;
      while ((1L << logn) < n)
        ++logn;
      CHECK(A.size() <= 2 * L + 2 * logn);
      CHECK(slp_to_coords(P, A) == power(P, word_to_coords(P, w), n));
    }
  }
}

TEST_CASE("coordinates to programs") {
  SUBCASE("pinned small cases") {
    Presentation P = heis();
    Slp A = coords_to_slp(P, vec(P, {3, 0, 0}));
    CHECK(A.size() <= 6);
    GroupWord w = A.expand(8);
    REQUIRE(w.size() == 3);
    for (const Letter &l : w)
      CHECK(l == Letter{1, 1});

    Slp Z = coords_to_slp(P, vec(P, {0, 0, 0}));
    CHECK(Z.length() == 0);
    CHECK(slp_to_coords(P, Z).is_identity());

    Coords big = vec(P, {0, 1, 0});
    big[1] = Int(1) << 20;
    Slp B = coords_to_slp(P, big);
    CHECK(B.size() <= 50);
    CHECK(slp_to_coords(P, B) == big);
  }
  SUBCASE("round trips, negative entries included") {
    std::mt19937_64 rng(37);
    for (const Presentation &P : {heis(), ut4(), heis125(), zn(3)}) {
      for (int t = 0; t < 25; ++t) {
        Coords g = word_to_coords(P, random_word(rng, P.size(), 8, 5));
        CHECK(slp_to_coords(P, coords_to_slp(P, g)) == g);
      }
    }
    Presentation P = heis();
    CHECK(slp_to_coords(P, coords_to_slp(P, vec(P, {-3, 5, -7}))) ==
          vec(P, {-3, 5, -7}));
  }
}

TEST_CASE("compressed presentations") {
  SUBCASE("one big power relator") {
    CompressedPresentation cp =
        compress_presentation(1, {parse_word("a1^1024", 1)});
    CHECK(cp.total - cp.rank == 10);
    CHECK(cp.relators.size() == 11);
    for (const GroupWord &r : cp.relators)
      CHECK(r.size() <= 3);
    GroupWord flat = word_reduce(replay(cp, cp.relators.back()));
    REQUIRE(flat.size() == 1);
    CHECK(flat[0] == Letter{1, 1024});
    /* the quotient keeps the doubling generators as a chain of index-2
       steps (pivot entries 2), but it is still cyclic of order 1024:
       the whole group and the image of a1 have the same order */
    FpGroup gp = from_finite_presentation(cp.total, cp.relators, 1);
    std::vector<Coords> units;
    for (int i = 1; i <= gp.quotient.size(); ++i)
      units.push_back(unit(gp.quotient, i));
    CHECK(Subgroup(gp.quotient, units).order() == Int(1024));
    CHECK(Subgroup(gp.quotient, std::vector<Coords>{gp.gen_image[0]}).order() ==
          Int(1024));
  }
  SUBCASE("short relators pass through") {
    GroupWord r = parse_word("a1 a2 a1^-1", 2);
    CompressedPresentation cp = compress_presentation(2, {r});
    CHECK(cp.total == 2);
    REQUIRE(cp.relators.size() == 1);
    CHECK(cp.relators[0] == r);
  }
  SUBCASE("negative exponent") {
    CompressedPresentation cp =
        compress_presentation(1, {parse_word("a1^-8", 1)});
    GroupWord flat = word_reduce(replay(cp, cp.relators.back()));
    REQUIRE(flat.size() == 1);
    CHECK(flat[0] == Letter{1, -8});
  }
  SUBCASE("chains share prefixes") {
    CompressedPresentation cp = compress_presentation(
        1, {parse_word("a1^12", 1), parse_word("a1^13", 1)});
    CHECK(cp.total - cp.rank == 5);
    CHECK(cp.relators.size() == 7);
    GroupWord f12 = word_reduce(replay(cp, cp.relators[4]));
    GroupWord f13 = word_reduce(replay(cp, cp.relators[6]));
    CHECK(f12 == parse_word("a1^12", 1));
    CHECK(f13 == parse_word("a1^13", 1));
  }
  SUBCASE("quotients match the uncompressed presentation") {
    std::vector<GroupWord> rels = {parse_word("a1^4", 2),
                                   parse_word("a2^4", 2),
                                   parse_word("a1 a2 a1^-1 a2^-1", 2)};
    FpGroup plain = from_finite_presentation(2, rels, 1);
    CompressedPresentation cp = compress_presentation(2, rels);
    FpGroup comp = from_finite_presentation(cp.total, cp.relators, 1);
    Subgroup all_plain(plain.quotient, [&] {
      std::vector<Coords> v;
      for (int i = 1; i <= plain.quotient.size(); ++i)
        v.push_back(unit(plain.quotient, i));
      return v;
    }());
    Subgroup all_comp(comp.quotient, [&] {
      std::vector<Coords> v;
      for (int i = 1; i <= comp.quotient.size(); ++i)
        v.push_back(unit(comp.quotient, i));
      return v;
    }());
    CHECK(all_plain.order() == Int(16));
    CHECK(all_comp.order() == Int(16));
  }
  SUBCASE("relators of a nilpotent presentation") {
    for (const Presentation &P : {heis(), heis125(), ut4(), zmod(12)}) {
      std::vector<GroupWord> rels = presentation_relators(P);
      for (const GroupWord &r : rels)
        CHECK(word_to_coords(P, r).is_identity());
      CompressedPresentation cp = compress_presentation(P.size(), rels);
      for (const GroupWord &r : cp.relators)
        for (const Letter &l : r)
          CHECK((l.exp == 1 || l.exp == -1));
      /* replayed relators land back in the group and still vanish */
      for (const GroupWord &r : cp.relators) {
        GroupWord flat = replay(cp, r);
        CHECK(word_to_coords(P, flat).is_identity());
      }
    }
  }
}
