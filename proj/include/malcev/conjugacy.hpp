#pragma once

#include "malcev/morphism.hpp"
#include "malcev/subgroup.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace malcev {

/* the quotient by the subgroup of top-weight generators: drop them and
   strip every tail of their letters */
Presentation truncate_top(const Presentation &P);

/* Centralizers and conjugacy by induction on the weight filtration.
   Level 0 is the group itself, each deeper level truncates the top
   weight block; the deepest level is abelian.  Climbing back up, the
   centralizer of g refines through the kernel of u -> [g,u] into the
   (central) top block, and a conjugator is corrected level by level
   through a preimage under the same map.  The per-level machinery is
   memoized on (level, element), so batch queries against a fixed group
   reuse it. */
class ConjugacySolver {
public:
  explicit ConjugacySolver(Presentation P);

  const Presentation &group() const { return levels_.front().pres; }

  /* full form of C(g); every row is certified to commute with g */
  Subgroup centralizer(const Coords &g);

  /* u with u^{-1} g u = h, verified before returning; nullopt if g and
     h are not conjugate */
  std::optional<Coords> conjugator(const Coords &g, const Coords &h);

private:
  struct Level {
    Presentation pres;
    int m = 0;
    int mtop = 0;               /* top-weight generators dropped next */
    Presentation gamma;         /* presentation of their span */
  };

  Coords prefix(const Coords &g, int lvl) const;
  Coords pad(const Coords &g, int lvl) const;
  Coords gamma_part(const Coords &g, int lvl) const;
  const KernelImage &machinery(int lvl, const Coords &z);

  std::vector<Level> levels_;
  std::optional<Subgroup> deepest_all_; /* the whole deepest group */
  std::map<std::pair<int, Coords>, KernelImage> memo_;
};

Subgroup centralizer(const Presentation &P, const Coords &g);
std::optional<Coords> conjugacy(const Presentation &P, const Coords &g,
                                const Coords &h);

} // namespace malcev
