/* Acceptance gate: one pass/fail line per criterion, nonzero exit on any
   failure.  Each criterion re-derives its expected values independently
   (matrix oracle, exhaustive enumeration, closed forms). */

#include "malcev/collection.hpp"
#include "malcev/conjugacy.hpp"
#include "malcev/freenil.hpp"
#include "malcev/morphism.hpp"
#include "malcev/presentation.hpp"
#include "malcev/slp.hpp"
#include "malcev/subgroup.hpp"
#include "malcev/word.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace malcev;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

struct Report {
  bool ok = true;
  std::string detail;
};

std::string fmt_s(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

Coords rand_elem(std::mt19937_64 &rng, const Presentation &P, int nletters,
                 long maxexp) {
  return word_to_coords(P, tu::random_word(rng, P.size(), nletters, maxexp));
}

/* ---- 1: normal forms vs the unitriangular matrix oracle ---- */

Report c1() {
  Timer t;
  std::mt19937_64 rng(101);
  Presentation H = tu::heis(), U = tu::ut4();
  int words = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    /* alternate single-letter and block shapes, total length <= 200 */
    bool blocks = rep % 2 == 0;
    int len = 1 + static_cast<int>(rng() % (blocks ? 50 : 200));
    long maxexp = blocks ? 4 : 1;
    GroupWord wh = tu::random_word(rng, 3, len, maxexp);
    GroupWord wu = tu::random_word(rng, 6, len, maxexp);
    if (word_length(wh) > 200 || word_length(wu) > 200)
      return {false, "generated an overlong word"};
    if (word_to_coords(H, wh).c != tu::heis_readout(tu::heis_mat(wh)))
      return {false, "HEIS mismatch on " + format_word(wh)};
    if (word_to_coords(U, wu).c != tu::ut4_readout(tu::ut4_mat(wu)))
      return {false, "UT4 mismatch on " + format_word(wu)};
    words += 2;
  }
  double el = t.s();
  if (el >= 10.0)
    return {false, "took " + fmt_s(el)};
  return {true, std::to_string(words) + " words, " + fmt_s(el)};
}

/* ---- 2: exhaustive conjugacy and centralizers on the 125 group ---- */

Report c2() {
  Timer t;
  Presentation P = tu::heis125();
  std::vector<Coords> els;
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 5; ++b)
      for (long c = 0; c < 5; ++c)
        els.push_back(tu::vec(P, {a, b, c}));

  /* brute force: conjugation orbits and commuting counts */
  std::map<Coords, int> cls;
  int ncls = 0;
  for (const auto &g : els) {
    if (cls.count(g))
      continue;
    int id = ncls++;
    for (const auto &x : els)
      cls.emplace(conjugate(P, g, x), id);
  }
  std::vector<long> brute_cent(els.size(), 0);
  for (size_t i = 0; i < els.size(); ++i)
    for (const auto &x : els)
      if (multiply(P, els[i], x) == multiply(P, x, els[i]))
        ++brute_cent[i];

  ConjugacySolver solver(P);
  for (size_t i = 0; i < els.size(); ++i) {
    auto ord = solver.centralizer(els[i]).order();
    if (!ord || *ord != brute_cent[i])
      return {false, "centralizer order mismatch at " + format_coords(els[i])};
  }
  long yes = 0;
  for (const auto &g : els)
    for (const auto &h : els) {
      auto u = solver.conjugator(g, h);
      bool expected = cls.at(g) == cls.at(h);
      if (u.has_value() != expected)
        return {false, "conjugacy decision mismatch on (" + format_coords(g) +
                           ", " + format_coords(h) + ")"};
      if (u) {
        ++yes;
        if (conjugate(P, g, *u) != h)
          return {false, "bad conjugator on (" + format_coords(g) + ", " +
                             format_coords(h) + ")"};
      }
    }
  double el = t.s();
  if (el >= 60.0)
    return {false, "took " + fmt_s(el)};
  return {true, "15625 pairs (" + std::to_string(yes) + " conjugate), 125 centralizers, " + fmt_s(el)};
}

/* ---- 3: full form canonical under generating-set changes ---- */

Report c3() {
  struct Case {
    const char *name;
    Presentation P;
  };
  std::vector<Case> cases = {
      {"HEIS", tu::heis()}, {"UT4", tu::ut4()}, {"125", tu::heis125()}};
  int checked = 0;
  for (auto &cs : cases) {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 200; ++trial) {
      int k = 1 + static_cast<int>(rng() % 4);
      std::vector<Coords> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back(rand_elem(rng, cs.P, 4, 3));
      std::string base = serialize_full_form(Subgroup(cs.P, gens));

      std::vector<Coords> perm = gens;
      std::shuffle(perm.begin(), perm.end(), rng);
      if (serialize_full_form(Subgroup(cs.P, perm)) != base)
        return {false, std::string(cs.name) + ": permutation changed the full form"};

      std::vector<Coords> inv = gens;
      for (auto &g : inv)
        if (rng() % 2)
          g = invert(cs.P, g);
      if (serialize_full_form(Subgroup(cs.P, inv)) != base)
        return {false, std::string(cs.name) + ": inversion changed the full form"};

      std::vector<Coords> aug = gens;
      aug.push_back(multiply(cs.P, gens[rng() % k], gens[rng() % k]));
      aug.push_back(multiply(cs.P, gens[rng() % k],
                             invert(cs.P, gens[rng() % k])));
      if (serialize_full_form(Subgroup(cs.P, aug)) != base)
        return {false, std::string(cs.name) + ": augmentation changed the full form"};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " generating sets x 3 transforms"};
}

/* ---- 4: every YES witness re-verifies by collection ---- */

Report c4() {
  int verified = 0;
  std::mt19937_64 rng(404);
  std::vector<Presentation> groups = {tu::heis(), tu::ut4(), tu::heis125()};

  /* membership gamma and express */
  for (const auto &P : groups)
    for (int trial = 0; trial < 60; ++trial) {
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<Coords> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back(rand_elem(rng, P, 3, 2));
      Subgroup S(P, gens);
      Coords g = identity(P);
      for (int j = 0; j < 4; ++j) {
        long e = static_cast<long>(rng() % 7) - 3;
        g = multiply(P, g, power(P, gens[rng() % k], e));
      }
      auto gamma = S.decompose(g);
      if (!gamma)
        return {false, "membership witness missing for a known member"};
      Coords chk = identity(P);
      for (int r = 1; r <= S.size(); ++r)
        chk = multiply(P, chk, power(P, S.row(r), (*gamma)[r - 1]));
      if (chk != g)
        return {false, "membership gamma failed re-verification"};
      auto expr = S.express(g);
      if (!expr)
        return {false, "express returned nothing for a known member"};
      if (eval_word(P, *expr, gens) != g)
        return {false, "express word failed re-verification"};
      verified += 2;
    }

  /* conjugators */
  for (const auto &P : groups) {
    ConjugacySolver solver(P);
    for (int trial = 0; trial < 60; ++trial) {
      Coords g = rand_elem(rng, P, 5, 3), x = rand_elem(rng, P, 5, 3);
      Coords h = conjugate(P, g, x);
      auto u = solver.conjugator(g, h);
      if (!u)
        return {false, "conjugator missing for a constructed conjugate"};
      if (conjugate(P, g, *u) != h)
        return {false, "conjugator failed re-verification"};
      ++verified;
    }
  }

  /* preimages, via homomorphisms whose values are known independently */
  {
    Presentation H = tu::heis(), Z5 = tu::zmod(5), P125 = tu::heis125();
    for (int trial = 0; trial < 10; ++trial) {
      Homomorphism phi;
      if (trial % 2 == 0) {
        phi.source = H;
        phi.target = Z5;
        phi.gen = {unit(H, 1), unit(H, 2), unit(H, 3)};
        phi.img = {rand_elem(rng, Z5, 2, 3), rand_elem(rng, Z5, 2, 3),
                   identity(Z5)};
      } else {
        phi.source = P125;
        phi.target = P125;
        Coords i1 = rand_elem(rng, P125, 3, 3), i2 = rand_elem(rng, P125, 3, 3);
        phi.gen = {unit(P125, 1), unit(P125, 2), unit(P125, 3)};
        phi.img = {i1, i2, commutator(P125, i2, i1)};
      }
      KernelImage ki(phi);
      for (int probe = 0; probe < 5; ++probe) {
        GroupWord w = tu::random_word(
            rng, static_cast<int>(phi.gen.size()), 4, 2);
        Coords h = eval_word(phi.target, w, phi.img);
        auto g = ki.preimage(h);
        if (!g)
          return {false, "preimage missing for an image point"};
        auto back = ki.apply(*g);
        if (!back || *back != h)
          return {false, "preimage failed re-verification"};
        ++verified;
      }
    }
  }

  /* word witnesses for constructed trivial words */
  {
    struct Fp {
      int rank, cls;
      std::vector<GroupWord> rels;
    };
    GroupWord comm = {{1, -1}, {2, -1}, {1, 1}, {2, 1}};
    std::vector<Fp> fps = {
        {2, 2, {comm}},
        {1, 1, {{{1, 12}}}},
        {2, 2, {{{1, 5}}, {{2, 5}}}},
    };
    for (const auto &fp : fps) {
      FpGroup gp = from_finite_presentation(fp.rank, fp.rels, fp.cls);
      for (int trial = 0; trial < 20; ++trial) {
        GroupWord w;
        int terms = 2 + static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k) {
          const GroupWord &r = fp.rels[rng() % fp.rels.size()];
          GroupWord body = rng() % 2 ? r : word_inverse(r);
          GroupWord conj = tu::random_word(rng, fp.rank, 1 + rng() % 3, 1);
          GroupWord ci = word_inverse(conj);
          w.insert(w.end(), ci.begin(), ci.end());
          w.insert(w.end(), body.begin(), body.end());
          w.insert(w.end(), conj.begin(), conj.end());
        }
        w = word_reduce(w);
        WordWitness res = word_witness(gp, w);
        if (!res.trivial)
          return {false, "word witness missed a constructed trivial word"};
        GroupWord rebuilt;
        for (const auto &term : res.terms) {
          GroupWord body = term.sign < 0
                               ? word_inverse(fp.rels[term.relator - 1])
                               : fp.rels[term.relator - 1];
          GroupWord ci = word_inverse(term.conj);
          rebuilt.insert(rebuilt.end(), ci.begin(), ci.end());
          rebuilt.insert(rebuilt.end(), body.begin(), body.end());
          rebuilt.insert(rebuilt.end(), term.conj.begin(), term.conj.end());
        }
        if (word_to_coords(gp.free, rebuilt) != word_to_coords(gp.free, w))
          return {false, "word witness failed re-verification"};
        ++verified;
      }
    }
  }
  return {true, std::to_string(verified) + " witnesses re-verified"};
}

/* ---- 5: fitted growth exponents per coordinate ---- */

Report c5() {
  Timer t;
  std::mt19937_64 rng(505);
  std::ostringstream worst;
  double worst_margin = -1e9;
  for (const Presentation &P : {tu::heis(), tu::ut4()}) {
    std::vector<int> lengths;
    for (int L = 32; L <= 4096; L *= 2)
      lengths.push_back(L);
    const int samples = 8;
    std::vector<std::vector<double>> ymax(
        P.size(), std::vector<double>(lengths.size(), 0.0));
    for (size_t li = 0; li < lengths.size(); ++li)
      for (int s = 0; s < samples; ++s) {
        Coords c = word_to_coords(
            P, tu::random_word(rng, P.size(), lengths[li], 1));
        for (int i = 1; i <= P.size(); ++i) {
          double v = std::fabs(c[i].get_d());
          ymax[i - 1][li] = std::max(ymax[i - 1][li], v);
        }
      }
    for (int i = 1; i <= P.size(); ++i) {
      /* least-squares slope of log2(2 + max|c_i|) against log2 L */
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = static_cast<int>(lengths.size());
      for (int li = 0; li < n; ++li) {
        double x = std::log2(static_cast<double>(lengths[li]));
        double y = std::log2(2.0 + ymax[i - 1][li]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      double bound = P.weight(i) + 0.2;
      if (slope > bound) {
        std::ostringstream o;
        o << "coordinate " << i << " (weight " << P.weight(i) << ") grew like L^"
          << slope;
        return {false, o.str()};
      }
      if (slope - P.weight(i) > worst_margin) {
        worst_margin = slope - P.weight(i);
        worst.str("");
        worst.precision(2);
        worst << std::fixed << "worst slope " << slope << " vs weight "
              << P.weight(i);
      }
    }
  }
  double el = t.s();
  if (el >= 30.0)
    return {false, "took " + fmt_s(el)};
  return {true, worst.str() + ", " + fmt_s(el)};
}

/* ---- 6: doubling programs up to depth 1000, closed form ---- */

Report c6() {
  Timer t;
  Presentation H = tu::heis();
  for (int d = 1; d <= 1000; ++d) {
    std::vector<SlpProduction> prods;
    prods.push_back({false, 0, 0, {1, 1}});
    prods.push_back({false, 0, 0, {2, 1}});
    prods.push_back({true, 1, 2, {}});
    for (int k = 1; k <= d; ++k)
      prods.push_back({true, 2 + k, 2 + k, {}});
    std::vector<std::string> names;
    for (size_t k = 1; k <= prods.size(); ++k)
      names.push_back("B" + std::to_string(k));
    Slp A(std::move(names), std::move(prods));
    Coords c = slp_to_coords(H, A);
    Int n = Int(1) << d;
    if (c[1] != n || c[2] != n || c[3] != n / 2 * (n - 1))
      return {false, "closed form failed at depth " + std::to_string(d)};
  }
  double el = t.s();
  if (el >= 5.0)
    return {false, "took " + fmt_s(el)};
  return {true, "depths 1..1000, " + fmt_s(el)};
}

/* ---- 7: quasilinear collection at scale ---- */

Report c7() {
  Presentation H = tu::heis();
  std::mt19937_64 rng(707);
  GroupWord big = tu::random_word(rng, 3, 1000000, 1);
  Timer t1;
  Coords c = word_to_coords(H, big);
  double big_s = t1.s();
  if (c.c != tu::heis_readout(tu::heis_mat(big)))
    return {false, "wrong normal form on the long word"};
  if (big_s >= 5.0)
    return {false, "10^6 letters took " + fmt_s(big_s)};

  auto best_of = [&](int len) {
    GroupWord w = tu::random_word(rng, 3, len, 1);
    double best = 1e18;
    for (int rep = 0; rep < 3; ++rep) {
      Timer tt;
      volatile int pin = word_to_coords(H, w).size();
      (void)pin;
      best = std::min(best, tt.s());
    }
    return best;
  };
  double t18 = best_of(1 << 18);
  double t19 = best_of(1 << 19);
  double ratio = t19 / t18;
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << "10^6 letters in " << big_s << " s, doubling ratio "
    << ratio;
  if (ratio > 2.5)
    return {false, o.str()};
  return {true, o.str()};
}

/* ---- 8: subgroup presentations are sound ---- */

Report c8() {
  std::mt19937_64 rng(808);
  Presentation P125 = tu::heis125();
  std::vector<Coords> els;
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 5; ++b)
      for (long c = 0; c < 5; ++c)
        els.push_back(tu::vec(P125, {a, b, c}));

  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<Coords> gens;
    for (int i = 0; i < k; ++i)
      gens.push_back(els[rng() % els.size()]);
    Subgroup S(P125, gens);
    Presentation Q = S.presentation();
    std::vector<Coords> rows;
    for (int r = 1; r <= S.size(); ++r)
      rows.push_back(S.row(r));
    for (const auto &rel : presentation_relators(Q))
      if (!eval_word(P125, rel, rows).is_identity())
        return {false, "subgroup relator does not collect to identity"};
    if (!check_consistency(Q).consistent)
      return {false, "subgroup presentation inconsistent"};
    Int order_q = 1;
    for (int i = 1; i <= Q.size(); ++i) {
      if (!Q.is_torsion(i))
        return {false, "subgroup of a finite group got an infinite generator"};
      order_q *= Q.torsion_exponent(i);
    }
    Int order_enum = 0;
    for (const auto &e : els)
      if (S.contains(e))
        ++order_enum;
    if (order_q != order_enum)
      return {false, "presentation order " + order_q.get_str() +
                         " vs enumerated " + order_enum.get_str()};
    ++checked;
  }

  /* infinite ambient groups: relator and consistency checks */
  for (const Presentation &P : {tu::heis(), tu::ut4()})
    for (int trial = 0; trial < 15; ++trial) {
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<Coords> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back(rand_elem(rng, P, 3, 2));
      Subgroup S(P, gens);
      Presentation Q = S.presentation();
      std::vector<Coords> rows;
      for (int r = 1; r <= S.size(); ++r)
        rows.push_back(S.row(r));
      for (const auto &rel : presentation_relators(Q))
        if (!eval_word(P, rel, rows).is_identity())
          return {false, "subgroup relator does not collect to identity"};
      if (!check_consistency(Q).consistent)
        return {false, "subgroup presentation inconsistent"};
      ++checked;
    }
  return {true, std::to_string(checked) + " subgroups (50 with exact order)"};
}

/* ---- 9: kernel exactness ---- */

Report c9() {
  std::mt19937_64 rng(909);
  Presentation H = tu::heis(), Z2 = tu::zn(2), P125 = tu::heis125(),
               Z5 = tu::zmod(5);
  auto enumerate = [](const Presentation &P) {
    std::vector<Coords> els = {identity(P)};
    for (int i = 1; i <= P.size(); ++i) {
      std::vector<Coords> next;
      for (const auto &e : els)
        for (Int v = 0; v < P.torsion_exponent(i); ++v) {
          Coords c = e;
          c[i] = v;
          next.push_back(c);
        }
      els = next;
    }
    return els;
  };
  std::vector<Coords> els125 = enumerate(P125), els5 = enumerate(Z5);

  int homs = 0, finite_checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Homomorphism phi;
    const std::vector<Coords> *src_els = nullptr, *tgt_els = nullptr;
    switch (trial % 4) {
    case 0: /* HEIS -> Z/5, abelianization recipe */
      phi.source = H;
      phi.target = Z5;
      phi.gen = {unit(H, 1), unit(H, 2), unit(H, 3)};
      phi.img = {rand_elem(rng, Z5, 2, 3), rand_elem(rng, Z5, 2, 3),
                 identity(Z5)};
      break;
    case 1: { /* 125 -> 125 endomorphism */
      phi.source = P125;
      phi.target = P125;
      Coords i1 = els125[rng() % 125], i2 = els125[rng() % 125];
      phi.gen = {unit(P125, 1), unit(P125, 2), unit(P125, 3)};
      phi.img = {i1, i2, commutator(P125, i2, i1)};
      src_els = &els125;
      tgt_els = &els125;
      break;
    }
    case 2: /* 125 -> Z/5 */
      phi.source = P125;
      phi.target = Z5;
      phi.gen = {unit(P125, 1), unit(P125, 2), unit(P125, 3)};
      phi.img = {els5[rng() % 5], els5[rng() % 5], identity(Z5)};
      src_els = &els125;
      tgt_els = &els5;
      break;
    case 3: { /* Z^2 -> 125, commuting images (powers of one element) */
      phi.source = Z2;
      phi.target = P125;
      Coords g = els125[rng() % 125];
      phi.gen = {unit(Z2, 1), unit(Z2, 2)};
      phi.img = {power(P125, g, static_cast<long>(rng() % 5)),
                 power(P125, g, static_cast<long>(rng() % 5))};
      break;
    }
    }
    KernelImage ki(phi);
    for (int r = 1; r <= ki.kernel().size(); ++r) {
      auto v = ki.apply(ki.kernel().row(r));
      if (!v || !v->is_identity())
        return {false, "kernel generator does not map to the identity"};
    }
    if (src_els && tgt_els) {
      Subgroup K(phi.source, phi.gen);
      Int nk = 0, nker = 0, nim = 0;
      for (const auto &e : *src_els) {
        if (K.contains(e))
          ++nk;
        if (ki.kernel().contains(e))
          ++nker;
      }
      for (const auto &e : *tgt_els)
        if (ki.image().contains(e))
          ++nim;
      if (nker * nim != nk)
        return {false, "|ker|*|im| = " + Int(nker * nim).get_str() +
                           " but |K| = " + nk.get_str()};
      ++finite_checked;
    }
    ++homs;
  }
  return {true, std::to_string(homs) + " homomorphisms (" +
                    std::to_string(finite_checked) + " with exact counting)"};
}

/* ---- 10: the finite-presentation pipeline realizes Z^2 ---- */

Report c10() {
  GroupWord comm = {{1, -1}, {2, -1}, {1, 1}, {2, 1}};
  FpGroup gp = from_finite_presentation(2, {comm}, 2);
  const Presentation &Q = gp.quotient;
  if (Q.size() != 2 || Q.weight(1) != 1 || Q.weight(2) != 1)
    return {false, "quotient is not on two weight-1 generators"};
  if (Q.is_torsion(1) || Q.is_torsion(2))
    return {false, "quotient gained torsion"};
  if (gp.gen_image[0] != tu::vec(Q, {1, 0}) ||
      gp.gen_image[1] != tu::vec(Q, {0, 1}))
    return {false, "generators do not map to the unit coordinates"};
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 50; ++trial) {
    long a = static_cast<long>(rng() % 101) - 50,
         b = static_cast<long>(rng() % 101) - 50,
         c = static_cast<long>(rng() % 101) - 50,
         d = static_cast<long>(rng() % 101) - 50;
    if (multiply(Q, tu::vec(Q, {a, b}), tu::vec(Q, {c, d})) !=
        tu::vec(Q, {a + c, b + d}))
      return {false, "multiplication is not coordinatewise addition"};
  }
  bool pivot_ok = false;
  for (int r = 1; r <= gp.closure.size(); ++r)
    if (gp.closure.pivot(r) == 3 && gp.closure.pivot_entry(r) == 1 &&
        gp.free.weight(3) == 2)
      pivot_ok = true;
  if (!pivot_ok)
    return {false, "weight-2 generator lacks a pivot-1 kernel row"};
  return {true, "Z^2 realized; kernel row pins the commutator generator"};
}

} // namespace

int main() {
  struct Crit {
    const char *label;
    Report (*fn)();
  };
  const Crit crits[] = {
      {"normal forms match the matrix oracle (HEIS, UT4)", c1},
      {"exhaustive conjugacy/centralizer oracle on the 125 group", c2},
      {"full form canonical under generating-set changes", c3},
      {"all YES witnesses re-verify by collection", c4},
      {"coordinate growth exponents within weight + 0.2", c5},
      {"doubling SLPs to depth 1000 match the closed form", c6},
      {"10^6-letter collection under 5 s, doubling ratio <= 2.5", c7},
      {"subgroup presentations sound, orders exact on the 125 group", c8},
      {"kernel exactness for 20 homomorphisms", c9},
      {"from_finite_presentation realizes Z^2", c10},
  };
  bool all = true;
  int idx = 0;
  for (const auto &c : crits) {
    ++idx;
    Report rep;
    try {
      rep = c.fn();
    } catch (const std::exception &e) {
      rep = {false, std::string("exception: ") + e.what()};
    }
    all = all && rep.ok;
    std::cout << (rep.ok ? "[PASS] " : "[FAIL] ") << idx << ". " << c.label;
    if (!rep.detail.empty())
      std::cout << " -- " << rep.detail;
    std::cout << "\n";
  }
  std::cout << (all ? "acceptance: all criteria passed\n"
                    : "acceptance: FAILURES above\n");
  return all ? 0 : 1;
}
