#pragma once

#include "malcev/collection.hpp"
#include "malcev/freenil.hpp"
#include "malcev/presentation.hpp"
#include "malcev/subgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace malcev {

/* phi(gen[i]) = img[i] on K = <gen>, gen in source, img in target.
   Nothing here certifies that phi extends to a homomorphism on K;
   that is the caller's burden (the CLI offers a diagnostic that checks
   phi on the relators of a presentation of K). */
struct Homomorphism {
  Presentation source;
  Presentation target;
  std::vector<Coords> gen;
  std::vector<Coords> img;
};

/* File format: `source <file>`, `target <file>`, then one
   `map <word in source> -> <word in target>` per generator of K.
   Paths are resolved relative to the hom file. */
Homomorphism load_homomorphism(const std::string &path);
Homomorphism parse_homomorphism(std::istream &in, const std::string &dir,
                                const std::string &what = "homomorphism");

/* target x source on the basis (b_1..b_mh, a_1..a_mg): blocks keep their
   own tails (source indices shifted by mh), cross tails are zero. The
   first block keeps its weights; second-block weights are scaled by
   max(cls first, 1), which keeps every tail at or above the weight sum
   of its pair (a plain shift by cls would not) and puts the whole first
   block before the second in the filtration. */
struct ProductGroup {
  Presentation group;
  Presentation h, g; /* the factors: h first block, g second */
  int mh = 0, mg = 0;

  Coords embed_h(const Coords &x) const;
  Coords embed_g(const Coords &x) const;
  Coords slice_h(const Coords &p) const;
  Coords slice_g(const Coords &p) const;
};

ProductGroup direct_product(const Presentation &h, const Presentation &g);

/* evaluate a word whose letters are 1-based indices into vals */
Coords eval_word(const Presentation &P, const GroupWord &w,
                 const std::vector<Coords> &vals);

/* Kernel and image of phi on K, from the full form of the graph
   subgroup <img[i]*gen[i]> of target x source. Rows split at r = the
   last row with nonzero target part: target slices of rows 1..r are the
   image full form, source slices of rows r+1..s the kernel full form. */
class KernelImage {
public:
  explicit KernelImage(Homomorphism phi);

  const Homomorphism &hom() const { return phi_; }
  const ProductGroup &product() const { return prod_; }
  const Subgroup &graph() const { return *graph_; }
  const Subgroup &kernel() const { return *kernel_; } /* in source */
  const Subgroup &image() const { return *image_; }   /* in target */
  int image_rows() const { return r_; }

  /* slices of graph row k, 1-based */
  Coords row_source(int k) const;
  Coords row_target(int k) const;

  /* some g in K with phi(g) = h; nullopt if h is not in the image */
  std::optional<Coords> preimage(const Coords &h) const;

  /* phi(g) via an expression of g over gen; nullopt if g is not in K
     (or the expression outgrew the tracking cap) */
  std::optional<Coords> apply(const Coords &g) const;

private:
  Homomorphism phi_;
  ProductGroup prod_;
  std::optional<Subgroup> graph_, kernel_, image_, domain_;
  int r_ = 0;
};

/* One factor (r_relator^sign)^conj of a trivially-valued word. */
struct WitnessTerm {
  int relator = 0; /* 1-based index into the defining relator list */
  int sign = 1;
  GroupWord conj;
};

struct WordWitness {
  bool trivial = false;
  std::vector<WitnessTerm> terms; /* set when trivial */
  Coords coords;                  /* normal form in the quotient otherwise */
};

/* Decide triviality of w in the class-c quotient of <X | R> and, when
   trivial, write w as a product of conjugates of relators: w is expressed
   over the kernel full form, each kernel row over the iterated-commutator
   generators of the normal closure, and each [r,x_1,...,x_j] is expanded
   through [u,x] = u^-1 u^x. The product is re-collected in the free
   group and checked against w. */
WordWitness word_witness(const FpGroup &gp, const GroupWord &w);

} // namespace malcev
