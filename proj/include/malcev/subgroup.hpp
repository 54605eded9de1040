#pragma once

#include "malcev/collection.hpp"
#include "malcev/presentation.hpp"

#include <optional>

namespace malcev {

/* d = gcd(a_1..a_n) together with small cofactors: sum coeff_i a_i = d,
   |coeff_i| <= max |a_i| (asserted).  half_bound reports whether the
   stronger bound 2|coeff_i| <= max |a_i| also held; it usually does, but
   only the weak bound is guaranteed. */
struct GcdCombination {
  Int d;
  std::vector<Int> coeff;
  bool half_bound = true;
};

GcdCombination gcd_combination(const std::vector<Int> &a);

class Subgroup;

/* one row per line, pivot column annotated; canonical for the subgroup */
std::string serialize_full_form(const Subgroup &S);

/* A finitely generated subgroup held in full form: a sequence of rows
   h_1..h_s with strictly increasing pivots, positive pivot entries that
   divide the torsion exponents, entries above each pivot reduced, and
   closure under conjugation and torsion powers.  The full form of a
   subgroup is canonical: it depends only on the subgroup, not on the
   generators it was built from.  Each row remembers a word over the
   input generators, so members can be expressed in terms of them. */
class Subgroup {
public:
  Subgroup(Presentation P, const std::vector<Coords> &gens);
  Subgroup(Presentation P, const std::vector<GroupWord> &gen_words);

  const Presentation &ambient() const { return P_; }
  int size() const { return static_cast<int>(rows_.size()); }
  const Coords &row(int k) const { return rows_[k - 1].g; }          /* 1-based */
  const GroupWord &row_expr(int k) const { return rows_[k - 1].expr; }
  bool row_expr_ok(int k) const { return rows_[k - 1].ok; }
  int pivot(int k) const { return rows_[k - 1].g.pivot(); }
  const Int &pivot_entry(int k) const;
  const std::vector<Coords> &inputs() const { return inputs_; }

  bool contains(const Coords &g) const;

  /* exponents gamma with g = h_1^{gamma_1} ... h_s^{gamma_s} */
  std::optional<std::vector<Int>> decompose(const Coords &g) const;

  /* word over the input generators (letter k = k-th input) evaluating to
     g; verified by collection before returning */
  std::optional<GroupWord> express(const Coords &g) const;

  /* number of elements, when finite */
  std::optional<Int> order() const;

  /* consistent nilpotent presentation on the rows h_1..h_s */
  Presentation presentation() const;

private:
  struct Row {
    Coords g;
    GroupWord expr;
    bool ok = true; // expr still tracks g (may be dropped if it blows up)
  };

  Row mul_row(const Row &x, const Row &y) const;
  Row pow_row(const Row &x, const Int &n) const;
  Row conj_row(const Row &x, const Row &y, int sg) const;
  Coords eval_inputs(const GroupWord &w) const;

  void insert(Row r);
  void close();
  void reduce_above();
  void verify_full() const;
  std::optional<std::vector<Int>> peel(const Coords &g) const;

  Presentation P_;
  std::vector<Row> rows_;
  std::vector<Coords> inputs_;
};

} // namespace malcev
