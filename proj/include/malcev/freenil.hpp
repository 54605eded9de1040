#pragma once

#include "malcev/presentation.hpp"
#include "malcev/subgroup.hpp"

namespace malcev {

/* Consistent nilpotent presentation of the free nilpotent group of the
   given class on `rank` generators.  Generators are the Hall basic
   commutators ordered by weight; the weight-1 generators are named
   x1..x<rank>.  Structure tails are computed inside the group of units
   of the degree-truncated free associative ring over Z, where x_k is
   represented as 1 + X_k. */
Presentation free_nilpotent(int cls, int rank);

/* Normal-form coordinates of a word over the Hall generators, evaluated
   directly in the truncated associative ring.  This path never touches
   the collection engine, so it doubles as an oracle for it. */
std::vector<Int> magnus_coords(int cls, int rank, const GroupWord &w);

/* The class-cls quotient of <x_1..x_rank | relators>, carved out of the
   free nilpotent group.  The normal closure of the relators is generated
   by the iterated commutators [r, y_1, ..., y_j] (y over the generators
   and their inverses, j < cls) and reduced to full form; pivot entries
   become torsion exponents, generators whose pivot entry is 1 are
   eliminated, and every structure tail is recollected in the free group
   and reduced modulo the closure. */
struct FpGroup {
  int rank = 0;
  int cls = 0;
  std::vector<GroupWord> relators; /* over x_1..x_rank */
  Presentation free;
  Presentation quotient;
  std::vector<int> keep;          /* quotient index k -> free index keep[k-1] */
  std::vector<Coords> gen_image;  /* x_t -> its quotient coordinates */
  Subgroup closure;               /* full form of the normal closure, in free */
  std::vector<int> comm_rel;      /* closure input k: 1-based relator index */
  std::vector<GroupWord> comm_xs; /* its bracketing letters, exponents +-1 */

  /* canonical coset representative: reduce f modulo the closure rows */
  Coords rep(const Coords &f) const;
  /* free -> quotient normal form (rep, then the kept coordinates) */
  Coords project(const Coords &f) const;
  /* word over x_1..x_rank -> quotient coordinates */
  Coords eval(const GroupWord &w) const;
};

FpGroup from_finite_presentation(int rank, const std::vector<GroupWord> &relators,
                                 int cls);

} // namespace malcev
