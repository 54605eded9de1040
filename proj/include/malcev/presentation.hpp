#pragma once

#include "malcev/bigint.hpp"
#include "malcev/word.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace malcev {

/* a_gen^exp as one factor of a tail or of a collection work list */
struct Block {
  int gen = 0;
  Int exp = 0;

  bool operator==(const Block &o) const {
    return gen == o.gen && exp == o.exp;
  }
};

using BlockList = std::vector<Block>;

struct invalid_presentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
struct Ctx; /* collection tables, built once per presentation */
}

/* Raw ingredients of a consistent nilpotent presentation

     a_i^{e_i}      = tail(power_tail[i])             i in torsion
     a_j a_i        = a_i a_j tail(conj[i][j])        i < j
     a_j^{-1} a_i   = a_i a_j^{-1} tail(conj_inv[i][j])

   Tails are words on generators of index > j (> i for power tails).
   conj_inv may be left unset; the unique inverse-compatible tail is then
   derived from conj. */
struct PresentationData {
  int m = 0;
  std::vector<int> weight;                          /* size m, nondecreasing */
  std::vector<Int> torsion;                         /* e_i, or 0 if none */
  std::vector<BlockList> power_tail;                /* size m */
  std::vector<std::vector<BlockList>> conj;         /* [i-1][j-1], i<j */
  std::vector<std::vector<std::optional<BlockList>>> conj_inv;
  std::vector<std::string> names;                   /* may be empty */

  void resize(int m_);
};

class Presentation {
public:
  Presentation() = default;
  explicit Presentation(PresentationData d);

  int size() const { return m_; }
  int cls() const { return cls_; } /* max weight, 0 when m = 0 */
  int weight(int i) const { return weight_[i - 1]; }
  bool is_torsion(int i) const { return torsion_[i - 1] != 0; }
  const Int &torsion_exponent(int i) const { return torsion_[i - 1]; }
  const BlockList &power_tail(int i) const { return power_tail_[i - 1]; }
  const BlockList &conj_tail(int i, int j) const; /* [a_j, a_i], i<j */
  const BlockList &conj_inv_tail(int i, int j) const; /* [a_j^{-1}, a_i] */
  const std::string &name(int i) const { return names_[i - 1]; }
  const std::vector<std::string> &names() const { return names_; }

  const detail::Ctx &ctx() const { return *ctx_; }

  /* number of generators of maximal weight (0 for the trivial group) */
  int top_weight_count() const;

  std::string serialize() const;

private:
  int m_ = 0;
  int cls_ = 0;
  std::vector<int> weight_;
  std::vector<Int> torsion_;
  std::vector<BlockList> power_tail_;
  std::vector<std::vector<BlockList>> conj_;
  std::vector<std::vector<BlockList>> conj_inv_;
  std::vector<std::string> names_;
  std::shared_ptr<const detail::Ctx> ctx_;
};

Presentation parse_presentation(std::istream &in,
                                const std::string &what = "presentation");
Presentation parse_presentation_text(const std::string &text,
                                     const std::string &what = "presentation");
Presentation load_presentation(const std::string &path);

struct ConsistencyReport {
  bool consistent = true;
  GroupWord witness;        /* collects to a nontrivial element */
  std::string overlap;      /* which overlap failed */
};

/* overlap checks: a_k(a_j a_i) vs (a_k a_j)a_i for i<j<k, and the
   power-relation overlaps at every torsion generator */
ConsistencyReport check_consistency(const Presentation &P);

} // namespace malcev
