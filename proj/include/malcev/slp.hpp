#pragma once

#include "malcev/collection.hpp"
#include "malcev/presentation.hpp"
#include "malcev/word.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace malcev {

/* One production.  Terminals carry a single signed letter (exp +-1) or
   epsilon (gen 0); pair nodes reference strictly earlier nonterminals. */
struct SlpProduction {
  bool pair = false;
  int b = 0, c = 0; /* 1-based children, pair nodes only */
  Letter letter;    /* terminal nodes only; gen 0 means epsilon */
};

/* A straight-line program: one production per nonterminal, children
   strictly smaller, root = the greatest nonterminal. */
class Slp {
public:
  Slp(std::vector<std::string> names, std::vector<SlpProduction> prods);

  int size() const { return static_cast<int>(prods_.size()); }
  int root() const { return size(); }
  const SlpProduction &production(int k) const { return prods_[k - 1]; }
  const std::string &name(int k) const { return names_[k - 1]; }

  /* letter count of eval(root), without expanding */
  Int length() const;

  /* eval(root) as an explicit word of +-1 letters; throws if longer
     than cap */
  GroupWord expand(long cap) const;

  std::string serialize() const;

private:
  std::vector<std::string> names_;
  std::vector<SlpProduction> prods_;
};

Slp parse_slp(const std::string &text, const std::string &what = "slp");
Slp load_slp(const std::filesystem::path &path);

/* Coord(eval(A)) bottom up, one multiply per pair node; eval(A) itself
   is never written out */
Coords slp_to_coords(const Presentation &P, const Slp &A);

/* eval = w^n as a literal word (n >= 1, w not empty).  Shared terminals,
   binary subdivision of w, then square-and-multiply on the root; size
   is at most 2L + 2 ceil(log2 n) for L the letter count of w counted
   with exponent multiplicity. */
Slp power_program(const GroupWord &w, const Int &n);

/* eval = the normal form word a_1^{g_1} ... a_m^{g_m}; size is linear
   in the total bit length of g */
Slp coords_to_slp(const Presentation &P, const Coords &g);

/* A finite presentation with every relator short: each exponent beyond
   +-1 becomes a chain of doubling generators, one length-3 relator per
   chain link, and the original relator shrinks to a reference to the
   chain head.  Tietze-equivalent to the input by construction. */
struct CompressedPresentation {
  int rank = 0;  /* the original generators come first */
  int total = 0; /* rank + doubling generators */
  std::vector<std::string> names;  /* size total */
  std::vector<GroupWord> relators; /* over 1..total */
};

CompressedPresentation
compress_presentation(int rank, const std::vector<GroupWord> &relators);

/* the defining relations of P as plain relator words (lhs rhs^-1),
   each evaluating to the identity; input for compress_presentation */
std::vector<GroupWord> presentation_relators(const Presentation &P);

} // namespace malcev
