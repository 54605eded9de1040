#pragma once

#include "malcev/collection.hpp"
#include "malcev/presentation.hpp"

#include <memory>
#include <optional>

namespace malcev::detail {

/* Derived rewriting data for one generator pair i < j.
   t[s][t] is the normal word of [a_j^±, a_i^±] (0:+, 1:-), support > j.
   chain[s] holds the iterated commutators y_1 = [a_j, a_i^±],
   y_{k+1} = [y_k, a_i^±]; when the y_k pairwise commute,
   conjugation by a_i^{±e} batches through binomials. */
struct PairTables {
  bool ready = false;
  bool commute = false;
  bool central = false; /* t[0][0] nonempty, supported on central gens */
  BlockList t[2][2];
  std::vector<Coords> chain[2];
  bool chain_ok[2] = {false, false};
};

struct Ctx {
  int m = 0;
  std::vector<char> central;
  std::vector<PairTables> pairs; /* (i-1)*m + (j-1), i < j */

  const PairTables &pt(int i, int j) const {
    return pairs[static_cast<size_t>(i - 1) * m + (j - 1)];
  }
  PairTables &pt(int i, int j) {
    return pairs[static_cast<size_t>(i - 1) * m + (j - 1)];
  }
};

std::shared_ptr<const Ctx>
build_ctx(const Presentation &P,
          const std::vector<std::vector<std::optional<BlockList>>> &given_inv);

} // namespace malcev::detail
