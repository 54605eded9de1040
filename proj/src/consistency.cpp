#include "malcev/collection.hpp"
#include "malcev/presentation.hpp"

namespace malcev {

namespace {

std::string gname(const Presentation &P, int i) {
  return P.name(i).empty() ? "a" + std::to_string(i) : P.name(i);
}

Coords tail_elt(const Presentation &P, const BlockList &t) {
  std::vector<Int> raw(P.size());
  for (const Block &b : t)
    raw[b.gen - 1] += b.exp;
  return coords_reduce(P, std::move(raw));
}

} // namespace

/* Collect each overlap word in two bracket orders; the results agree for
   every overlap iff the normal form is well defined.  Any mismatch yields
   a word that ought to be trivial but is not. */
ConsistencyReport check_consistency(const Presentation &P) {
  const int m = P.size();
  ConsistencyReport rep;

  Coords mismatch_a, mismatch_b;
  auto differ = [&](const Coords &x, const Coords &y) {
    if (x == y)
      return false;
    mismatch_a = x;
    mismatch_b = y;
    return true;
  };
  auto fail = [&](std::string what) {
    rep.consistent = false;
    rep.overlap = std::move(what);
    rep.witness = to_word(multiply(P, invert(P, mismatch_a), mismatch_b));
    return rep;
  };

  /* associativity overlaps a_k a_j a_i, i < j < k */
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      for (int k = j + 1; k <= m; ++k) {
        Coords gi = unit(P, i), gj = unit(P, j), gk = unit(P, k);
        Coords t1 = multiply(P, multiply(P, gk, gj), gi);
        Coords t2 = multiply(P, gk, multiply(P, gj, gi));
        if (differ(t1, t2))
          return fail("(" + gname(P, k) + " " + gname(P, j) + ") " +
                      gname(P, i) + " vs " + gname(P, k) + " (" + gname(P, j) +
                      " " + gname(P, i) + ")");
      }

  /* power overlaps at each torsion generator */
  for (int i = 1; i <= m; ++i) {
    if (!P.is_torsion(i))
      continue;
    const Int &e = P.torsion_exponent(i);
    Coords gi = unit(P, i);
    Coords ti = tail_elt(P, P.power_tail(i));
    if (differ(multiply(P, gi, ti), multiply(P, ti, gi)))
      return fail(gname(P, i) + "^" + Int(e + 1).get_str() + " both ways");
    for (int j = 1; j <= m; ++j) {
      if (j == i)
        continue;
      Coords gj = unit(P, j);
      Coords head = power(P, gi, e - 1);
      /* a_i^{e} a_j */
      if (differ(multiply(P, ti, gj),
                 multiply(P, head, multiply(P, gi, gj))))
        return fail(gname(P, i) + "^" + e.get_str() + " " + gname(P, j) +
                    " both ways");
      /* a_j a_i^{e} */
      if (differ(multiply(P, gj, ti),
                 multiply(P, multiply(P, gj, gi), head)))
        return fail(gname(P, j) + " " + gname(P, i) + "^" + e.get_str() +
                    " both ways");
    }
  }

  /* inverse compatibility: the stored tail of a_j^{-1} a_i must equal the
     commutator [a_j^{-1}, a_i] that the group law forces, and conjugating
     by a_i then a_i^{-1} must be the identity map */
  for (int i = 1; i < m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      Coords gi = unit(P, i), gj = unit(P, j);
      Coords gi_inv = invert(P, gi);
      Coords stored = tail_elt(P, P.conj_inv_tail(i, j));
      Coords forced = commutator(P, invert(P, gj), gi);
      if (differ(stored, forced))
        return fail("inverse tail of (" + gname(P, j) + ", " + gname(P, i) +
                    ")");
      if (differ(conjugate(P, conjugate(P, gj, gi), gi_inv), gj))
        return fail(gname(P, j) + " under " + gname(P, i) +
                    " and back");
      if (differ(conjugate(P, conjugate(P, gj, gi_inv), gi), gj))
        return fail(gname(P, j) + " under " + gname(P, i) +
                    "^-1 and back");
    }

  return rep;
}

} // namespace malcev
