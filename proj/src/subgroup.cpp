#include "malcev/subgroup.hpp"

#include "check.hpp"

#include <algorithm>
#include <utility>

namespace malcev {

namespace {

/* cap on tracked expressions, in run-length letters; rows whose expression
   would outgrow it keep collecting but lose the witness word */
constexpr std::size_t kExprCap = 200000;

/* nearest integer to x/y, any sign of y */
Int round_div(const Int &x, const Int &y) {
  Int q = fdiv_q(x, y);
  Int r = x - q * y; /* same sign as y, |r| < |y| */
  if (y > 0 ? 2 * r >= y : 2 * r <= y)
    ++q;
  return q;
}

std::vector<Coords> eval_words(const Presentation &P,
                               const std::vector<GroupWord> &ws) {
  std::vector<Coords> out;
  out.reserve(ws.size());
  for (const auto &w : ws)
    out.push_back(word_to_coords(P, w));
  return out;
}

} // namespace

GcdCombination gcd_combination(const std::vector<Int> &a) {
  if (a.empty())
    throw std::invalid_argument("gcd_combination: empty input");

  /* balanced tree of extended-Euclid calls over |a_i| */
  struct Node {
    Int g;
    int leaf = -1;
    int left = -1, right = -1;
    Int u, v; /* g = u*left.g + v*right.g */
  };
  std::vector<Node> nodes;
  auto build = [&](auto &&self, int lo, int hi) -> int {
    int idx = static_cast<int>(nodes.size());
    nodes.push_back({});
    if (hi - lo == 1) {
      nodes[idx].g = abs(a[lo]);
      nodes[idx].leaf = lo;
      return idx;
    }
    int mid = lo + (hi - lo) / 2;
    int l = self(self, lo, mid);
    int r = self(self, mid, hi);
    Int u, v;
    Int g = gcdext(nodes[l].g, nodes[r].g, u, v);
    nodes[idx].g = g;
    nodes[idx].left = l;
    nodes[idx].right = r;
    nodes[idx].u = u;
    nodes[idx].v = v;
    return idx;
  };
  int root = build(build, 0, static_cast<int>(a.size()));
  if (nodes[root].g == 0)
    throw std::invalid_argument("gcd_combination: all entries are zero");

  /* push the multiplier down, shifting along the child syzygy at each
     node so the left share stays below half the sibling ratio */
  std::vector<Int> x(a.size());
  auto distribute = [&](auto &&self, int idx, const Int &t) -> void {
    const Node &nd = nodes[idx];
    if (nd.leaf >= 0) {
      if (a[nd.leaf] > 0)
        x[nd.leaf] = t;
      else if (a[nd.leaf] < 0)
        x[nd.leaf] = -t;
      return;
    }
    Int tl = t * nd.u;
    Int tr = t * nd.v;
    const Int &dl = nodes[nd.left].g;
    const Int &dr = nodes[nd.right].g;
    if (dl != 0 && dr != 0) {
      Int s = dr / nd.g;
      Int k = round_div(tl, s);
      if (k != 0) {
        tl -= k * s;
        tr += k * (dl / nd.g);
      }
    }
    self(self, nd.left, tl);
    self(self, nd.right, tr);
  };
  distribute(distribute, root, 1);

  /* forward polish: shrink each cofactor against the cheapest later

     syzygy; the sum is untouched throughout */
  int last = -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      last = static_cast<int>(i);
  for (int i = 0; i < last; ++i) {
    if (a[i] == 0)
      continue;
    int best = -1;
    Int best_ratio;
    for (int j = i + 1; j < static_cast<int>(a.size()); ++j) {
      if (a[j] == 0)
        continue;
      Int ratio = abs(a[j]) / gcd(a[i], a[j]);
      if (best < 0 || ratio < best_ratio) {
        best = j;
        best_ratio = ratio;
      }
    }
    Int g = gcd(a[i], a[best]);
    Int z = a[best] / g;
    Int t = round_div(x[i], z);
    if (t != 0) {
      x[i] -= t * z;
      x[best] += t * (a[i] / g);
    }
  }

  GcdCombination out;
  out.d = nodes[root].g;
  out.coeff = std::move(x);

  Int sum = 0, mx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += out.coeff[i] * a[i];
    if (abs(a[i]) > mx)
      mx = abs(a[i]);
  }
  MALCEV_CHECK(sum == out.d, "gcd_combination: cofactor sum mismatch");
  for (const auto &c : out.coeff) {
    MALCEV_CHECK(abs(c) <= mx, "gcd_combination: cofactor above input bound");
    if (2 * abs(c) > mx)
      out.half_bound = false;
  }
  return out;
}

/* ---- tracked row operations ---------------------------------------- */

Subgroup::Row Subgroup::mul_row(const Row &x, const Row &y) const {
  Row r;
  r.g = multiply(P_, x.g, y.g);
  r.ok = x.ok && y.ok;
  if (r.ok) {
    GroupWord w = x.expr;
    w.insert(w.end(), y.expr.begin(), y.expr.end());
    r.expr = word_reduce(w);
    if (r.expr.size() > kExprCap) {
      r.expr.clear();
      r.ok = false;
    }
  }
  return r;
}

Subgroup::Row Subgroup::pow_row(const Row &x, const Int &n) const {
  Row r;
  r.g = power(P_, x.g, n);
  if (n == 0) {
    r.ok = true;
    return r;
  }
  r.ok = x.ok;
  if (!r.ok)
    return r;
  if (x.expr.size() == 1) {
    r.expr.push_back({x.expr[0].gen, Int(x.expr[0].exp * n)});
  } else {
    Int need = Int(static_cast<unsigned long>(x.expr.size())) * abs(n);
    if (need > static_cast<long>(kExprCap)) {
      r.ok = false;
    } else {
      r.expr = word_power(x.expr, n);
    }
  }
  return r;
}

Subgroup::Row Subgroup::conj_row(const Row &x, const Row &y, int sg) const {
  Row r;
  Coords u = sg >= 0 ? y.g : invert(P_, y.g);
  r.g = conjugate(P_, x.g, u);
  r.ok = x.ok && y.ok;
  if (r.ok) {
    GroupWord w = word_power(y.expr, -sg);
    w.insert(w.end(), x.expr.begin(), x.expr.end());
    GroupWord t = word_power(y.expr, sg);
    w.insert(w.end(), t.begin(), t.end());
    r.expr = word_reduce(w);
    if (r.expr.size() > kExprCap) {
      r.expr.clear();
      r.ok = false;
    }
  }
  return r;
}

Coords Subgroup::eval_inputs(const GroupWord &w) const {
  Coords acc = identity(P_);
  for (const auto &lt : w) {
    MALCEV_CHECK(lt.gen >= 1 && lt.gen <= static_cast<int>(inputs_.size()),
                 "subgroup: expression letter out of range");
    acc = multiply(P_, acc, power(P_, inputs_[lt.gen - 1], lt.exp));
  }
  return acc;
}

/* ---- full form construction ----------------------------------------- */

void Subgroup::insert(Row r0) {
  std::vector<Row> todo;
  todo.push_back(std::move(r0));
  int ops = 0;
  while (!todo.empty()) {
    Row cur = std::move(todo.back());
    todo.pop_back();
    for (;;) {
      MALCEV_CHECK(++ops < 200000, "subgroup: insertion did not terminate");
      if (cur.g.is_identity())
        break;
      int p = cur.g.pivot();
      auto it = std::lower_bound(
          rows_.begin(), rows_.end(), p,
          [](const Row &row, int col) { return row.g.pivot() < col; });
      if (it == rows_.end() || it->g.pivot() != p) {
        /* fresh pivot column */
        if (P_.is_torsion(p)) {
          const Int &e = P_.torsion_exponent(p);
          Int c = cur.g[p]; /* in (0, e) */
          Int g0 = gcd(c, e);
          if (g0 != c) {
            /* replace by a power whose pivot entry divides e; the
               leftover and the wrapped torsion power go back on the pile */
            Int u, v;
            gcdext(c, e, u, v);
            Row np = pow_row(cur, u);
            MALCEV_CHECK(np.g.pivot() == p && np.g[p] == g0,
                         "subgroup: torsion pivot reduction failed");
            todo.push_back(mul_row(cur, pow_row(np, -(c / g0))));
            todo.push_back(pow_row(np, e / g0));
            cur = std::move(np);
          } else {
            todo.push_back(pow_row(cur, e / c));
          }
        } else if (cur.g[p] < 0) {
          cur = pow_row(cur, -1);
        }
        rows_.insert(it, std::move(cur));
        break;
      }
      const Int &alpha = it->g[p];
      Int c = cur.g[p];
      if (fdiv_r(c, alpha) == 0) {
        cur = mul_row(pow_row(*it, -(c / alpha)), cur);
        continue;
      }
      /* mix to the gcd of the two pivot entries; both old rows then
         reduce against the new one */
      Int u, v;
      Int g0 = gcdext(c, alpha, u, v);
      Row comb = mul_row(pow_row(cur, u), pow_row(*it, v));
      MALCEV_CHECK(comb.g.pivot() == p && comb.g[p] == g0,
                   "subgroup: pivot combination failed");
      Row old = std::move(*it);
      *it = std::move(comb);
      todo.push_back(std::move(old));
      todo.push_back(std::move(cur));
      break;
    }
  }
}

void Subgroup::close() {
  int rounds = 0;
  for (;;) {
    MALCEV_CHECK(++rounds < 10000, "subgroup: closure did not terminate");
    bool changed = false;
    for (std::size_t k = 0; k < rows_.size() && !changed; ++k) {
      int p = rows_[k].g.pivot();
      if (P_.is_torsion(p)) {
        Row t = pow_row(rows_[k], P_.torsion_exponent(p) / rows_[k].g[p]);
        if (!t.g.is_identity() && !peel(t.g)) {
          insert(std::move(t));
          changed = true;
          break;
        }
      }
      for (std::size_t j = 0; j < rows_.size() && !changed; ++j) {
        if (j == k)
          continue;
        for (int sg : {1, -1}) {
          Row cnd = conj_row(rows_[j], rows_[k], sg);
          if (cnd.g == rows_[j].g)
            continue;
          if (!peel(cnd.g)) {
            insert(std::move(cnd));
            changed = true;
            break;
          }
        }
      }
    }
    if (!changed)
      return;
  }
}

void Subgroup::reduce_above() {
  for (std::size_t k = 1; k < rows_.size(); ++k) {
    int p = rows_[k].g.pivot();
    const Int alpha = rows_[k].g[p];
    for (std::size_t l = 0; l < k; ++l) {
      Int q = fdiv_q(rows_[l].g[p], alpha);
      if (q != 0)
        rows_[l] = mul_row(rows_[l], pow_row(rows_[k], -q));
    }
  }
}

void Subgroup::verify_full() const {
  int m = P_.size();
  MALCEV_CHECK(static_cast<int>(rows_.size()) <= m, "subgroup: too many rows");
  int prev = 0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Coords &g = rows_[k].g;
    int p = g.pivot();
    MALCEV_CHECK(p <= m, "subgroup: identity row");
    MALCEV_CHECK(p > prev, "subgroup: pivots not increasing");
    prev = p;
    MALCEV_CHECK(g[p] > 0, "subgroup: pivot entry not positive");
    if (P_.is_torsion(p))
      MALCEV_CHECK(fdiv_r(P_.torsion_exponent(p), g[p]) == 0,
                   "subgroup: pivot entry does not divide the torsion"
                   " exponent");
    for (std::size_t l = 0; l < k; ++l) {
      const Int &x = rows_[l].g[p];
      MALCEV_CHECK(x >= 0 && x < g[p], "subgroup: entry above pivot not"
                                       " reduced");
    }
    if (rows_[k].ok && rows_[k].expr.size() <= 2000)
      MALCEV_CHECK(eval_inputs(rows_[k].expr) == g,
                   "subgroup: row expression drifted");
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int p = rows_[k].g.pivot();
    if (P_.is_torsion(p))
      MALCEV_CHECK(
          peel(power(P_, rows_[k].g, P_.torsion_exponent(p) / rows_[k].g[p])),
          "subgroup: torsion power escapes");
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (j == k)
        continue;
      MALCEV_CHECK(peel(conjugate(P_, rows_[j].g, rows_[k].g)),
                   "subgroup: conjugate escapes");
      MALCEV_CHECK(peel(conjugate(P_, rows_[j].g, invert(P_, rows_[k].g))),
                   "subgroup: conjugate escapes");
    }
  }
}

std::optional<std::vector<Int>> Subgroup::peel(const Coords &g) const {
  std::vector<Int> gamma(rows_.size());
  Coords cur = g;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int p = cur.pivot();
    if (p > P_.size())
      break;
    int pk = rows_[k].g.pivot();
    if (p < pk)
      return std::nullopt;
    if (p > pk)
      continue;
    const Int &alpha = rows_[k].g[p];
    const Int &c = cur[p];
    if (fdiv_r(c, alpha) != 0)
      return std::nullopt;
    gamma[k] = c / alpha;
    cur = multiply(P_, power(P_, rows_[k].g, -gamma[k]), cur);
  }
  if (!cur.is_identity())
    return std::nullopt;
  return gamma;
}

/* ---- public surface -------------------------------------------------- */

Subgroup::Subgroup(Presentation P, const std::vector<Coords> &gens)
    : P_(std::move(P)) {
  inputs_.reserve(gens.size());
  for (const auto &g : gens) {
    MALCEV_CHECK(static_cast<int>(g.c.size()) == P_.size(),
                 "subgroup: generator length mismatch");
    inputs_.push_back(coords_reduce(P_, g.c));
  }
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i].is_identity())
      continue;
    Row r;
    r.g = inputs_[i];
    r.expr.push_back({static_cast<int>(i) + 1, Int(1)});
    if (peel(r.g))
      continue;
    insert(std::move(r));
  }
  close();
  reduce_above();
  verify_full();
  for (const auto &g : inputs_)
    MALCEV_CHECK(peel(g), "subgroup: input escaped the full form");
}

Subgroup::Subgroup(Presentation P, const std::vector<GroupWord> &gen_words)
    : Subgroup(P, eval_words(P, gen_words)) {}

const Int &Subgroup::pivot_entry(int k) const {
  const Coords &g = rows_[k - 1].g;
  return g[g.pivot()];
}

bool Subgroup::contains(const Coords &g) const {
  return peel(coords_reduce(P_, g.c)).has_value();
}

std::optional<std::vector<Int>> Subgroup::decompose(const Coords &g) const {
  return peel(coords_reduce(P_, g.c));
}

std::optional<GroupWord> Subgroup::express(const Coords &g) const {
  Coords gg = coords_reduce(P_, g.c);
  auto gamma = peel(gg);
  if (!gamma)
    return std::nullopt;
  GroupWord w;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Int &q = (*gamma)[k];
    if (q == 0)
      continue;
    if (!rows_[k].ok)
      return std::nullopt;
    const GroupWord &e = rows_[k].expr;
    if (e.size() == 1) {
      w.push_back({e[0].gen, Int(e[0].exp * q)});
    } else {
      Int need = Int(static_cast<unsigned long>(e.size())) * abs(q);
      if (need > static_cast<long>(kExprCap))
        return std::nullopt;
      GroupWord piece = word_power(e, q);
      w.insert(w.end(), piece.begin(), piece.end());
    }
  }
  w = word_reduce(w);
  MALCEV_CHECK(eval_inputs(w) == gg, "subgroup: witness failed verification");
  return w;
}

std::optional<Int> Subgroup::order() const {
  Int n = 1;
  for (const auto &r : rows_) {
    int p = r.g.pivot();
    if (!P_.is_torsion(p))
      return std::nullopt;
    n *= P_.torsion_exponent(p) / r.g[p];
  }
  return n;
}

Presentation Subgroup::presentation() const {
  int s = static_cast<int>(rows_.size());
  PresentationData d;
  d.resize(s);
  for (int k = 1; k <= s; ++k)
    d.weight[k - 1] = P_.weight(rows_[k - 1].g.pivot());

  auto tail_of = [&](const Coords &g, int lo, const char *what) {
    auto gamma = peel(g);
    MALCEV_CHECK(gamma, what);
    BlockList tail;
    for (int l = 1; l <= s; ++l) {
      if ((*gamma)[l - 1] == 0)
        continue;
      MALCEV_CHECK(l > lo, what);
      tail.push_back({l, (*gamma)[l - 1]});
    }
    return tail;
  };

  for (int k = 1; k <= s; ++k) {
    int p = rows_[k - 1].g.pivot();
    if (!P_.is_torsion(p))
      continue;
    Int ep = P_.torsion_exponent(p) / rows_[k - 1].g[p];
    d.torsion[k - 1] = ep;
    d.power_tail[k - 1] =
        tail_of(power(P_, rows_[k - 1].g, ep), k,
                "subgroup presentation: power tail escapes");
  }
  for (int i = 1; i <= s; ++i)
    for (int j = i + 1; j <= s; ++j) {
      d.conj[i - 1][j - 1] =
          tail_of(commutator(P_, rows_[j - 1].g, rows_[i - 1].g), j,
                  "subgroup presentation: conjugation tail escapes");
      d.conj_inv[i - 1][j - 1] =
          tail_of(commutator(P_, invert(P_, rows_[j - 1].g), rows_[i - 1].g),
                  j, "subgroup presentation: conjugation tail escapes");
    }

  Presentation H(std::move(d));
  auto rep = check_consistency(H);
  MALCEV_CHECK(rep.consistent, "subgroup presentation: inconsistent output");
  return H;
}

std::string serialize_full_form(const Subgroup &S) {
  std::string out;
  for (int k = 1; k <= S.size(); ++k) {
    out += format_coords(S.row(k));
    out += " pivot ";
    out += std::to_string(S.pivot(k));
    out += "\n";
  }
  return out;
}

} // namespace malcev
