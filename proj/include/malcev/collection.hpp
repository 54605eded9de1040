#pragma once

#include "malcev/presentation.hpp"

#include <vector>

namespace malcev {

/* Mal'cev coordinate tuple: g = a_1^{c[0]} ... a_m^{c[m-1]},
   normalized so that 0 <= c[i-1] < e_i at torsion indices */
struct Coords {
  std::vector<Int> c;

  Coords() = default;
  explicit Coords(int m) : c(m) {}

  int size() const { return static_cast<int>(c.size()); }
  const Int &operator[](int i) const { return c[i - 1]; } /* 1-based */
  Int &operator[](int i) { return c[i - 1]; }

  bool is_identity() const {
    for (const auto &x : c)
      if (x != 0)
        return false;
    return true;
  }
  /* least index with nonzero entry, m+1 if identity */
  int pivot() const {
    for (int i = 0; i < size(); ++i)
      if (c[i] != 0)
        return i + 1;
    return size() + 1;
  }
  bool operator==(const Coords &o) const { return c == o.c; }
  bool operator!=(const Coords &o) const { return !(*this == o); }
  bool operator<(const Coords &o) const { return c < o.c; }
};

Coords identity(const Presentation &P);
Coords unit(const Presentation &P, int i);

BlockList to_blocks(const Coords &g);
GroupWord to_word(const Coords &g);

/* normalize an arbitrary integer tuple (torsion reduction left to right) */
Coords coords_reduce(const Presentation &P, std::vector<Int> raw);

Coords multiply(const Presentation &P, const Coords &a, const Coords &b);
Coords invert(const Presentation &P, const Coords &a);
Coords power(const Presentation &P, const Coords &a, const Int &n);
Coords conjugate(const Presentation &P, const Coords &g, const Coords &u);
Coords commutator(const Presentation &P, const Coords &a, const Coords &b);

/* collection from the left, letter batches inserted one block at a time */
Coords word_to_coords(const Presentation &P, const GroupWord &w);

/* chunked variant: splits w, collects chunks (OpenMP over chunks), then
   combines in order; result is identical to word_to_coords */
Coords word_to_coords_parallel(const Presentation &P, const GroupWord &w);

/* reference collector: single-letter swaps only, no batching; test scale */
Coords collect_reference(const Presentation &P, const GroupWord &w);

std::string format_coords(const Coords &g);
std::vector<Int> parse_coords(const std::string &text, int m);

} // namespace malcev
