#include "malcev/collection.hpp"

#include "check.hpp"
#include "ctx.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace malcev {

namespace {

using detail::Ctx;
using detail::PairTables;

Coords wrap(std::vector<Int> raw) {
  Coords g;
  g.c = std::move(raw);
  return g;
}

Coords mul(const Presentation &P, const Ctx &C, const Coords &a,
           const Coords &b);
Coords pw(const Presentation &P, const Ctx &C, const Coords &g, const Int &n);

/* Reduce torsion coordinates left to right.  When c_i leaves [0, e_i) the
   excess a_i^{e_i q} becomes tail^q, multiplied onto the suffix; the tail
   is supported above i, so entries <= i never change again. */
void normalize_inplace(const Presentation &P, const Ctx &C,
                       std::vector<Int> &v) {
  const int m = P.size();
  for (int i = 1; i <= m; ++i) {
    if (!P.is_torsion(i))
      continue;
    const Int &e = P.torsion_exponent(i);
    Int &ci = v[i - 1];
    if (ci >= 0 && ci < e)
      continue;
    Int q = fdiv_q(ci, e);
    ci = fdiv_r(ci, e);
    const BlockList &tail = P.power_tail(i);
    if (tail.empty())
      continue;
    std::vector<Int> raw_t(m), raw_s(m);
    for (const Block &b : tail)
      raw_t[b.gen - 1] = b.exp;
    for (int k = i; k < m; ++k) {
      raw_s[k] = std::move(v[k]);
      v[k] = 0;
    }
    Coords prod =
        mul(P, C, pw(P, C, wrap(std::move(raw_t)), q), wrap(std::move(raw_s)));
    for (int k = i; k < m; ++k)
      v[k] = std::move(prod.c[k]);
  }
}

Coords finish(const Presentation &P, const Ctx &C, std::vector<Block> &out) {
  std::vector<Int> raw(P.size());
  for (Block &b : out)
    raw[b.gen - 1] += b.exp;
  out.clear();
  normalize_inplace(P, C, raw);
  return wrap(std::move(raw));
}

Coords blocks_to_coords(const Presentation &P, const Ctx &C,
                        const BlockList &bl) {
  std::vector<Int> raw(P.size());
  for (const Block &b : bl)
    raw[b.gen - 1] += b.exp;
  normalize_inplace(P, C, raw);
  return wrap(std::move(raw));
}

Coords ident(const Presentation &P) { return Coords(P.size()); }

Coords gen_unit(const Presentation &P, int j) {
  Coords g(P.size());
  g[j] = 1;
  return g;
}

/* phi^e(a_j) where phi is conjugation by a_i, i < j.  For |e| > 1 this
   batches through the binomial formula over the commutator chain, so the
   cost is polynomial in the bit length of e. */
Coords conj_gen_power(const Presentation &P, const Ctx &C, int i, int j,
                      const Int &e) {
  const PairTables &T = C.pt(i, j);
  MALCEV_CHECK(T.ready, "conj_gen_power: tables not ready");
  if (T.commute || e == 0)
    return gen_unit(P, j);
  const int s = e > 0 ? 0 : 1;
  if (e == 1 || e == -1) {
    std::vector<Int> raw(P.size());
    raw[j - 1] = 1;
    for (const Block &b : T.t[0][s])
      raw[b.gen - 1] += b.exp;
    normalize_inplace(P, C, raw);
    return wrap(std::move(raw));
  }
  MALCEV_CHECK(T.chain_ok[s], "conj_gen_power: no commuting chain");
  Int n = abs(e);
  Coords u = gen_unit(P, j);
  for (size_t k = 0; k < T.chain[s].size(); ++k) {
    Int B = binom(n, static_cast<unsigned long>(k + 1));
    if (B == 0)
      break;
    u = mul(P, C, u, pw(P, C, T.chain[s][k], B));
  }
  return u;
}

/* u^{a_i^e} for u supported on indices > i */
Coords conj_element(const Presentation &P, const Ctx &C, const Coords &u,
                    int i, const Int &e) {
  Coords r = ident(P);
  for (int k = 1; k <= P.size(); ++k) {
    if (u[k] == 0)
      continue;
    MALCEV_CHECK(k > i, "conj_element: support not above i");
    r = mul(P, C, r, pw(P, C, conj_gen_power(P, C, i, k, e), u[k]));
  }
  return r;
}

Coords inv(const Presentation &P, const Ctx &C, const Coords &g);

/* Insert a_b.gen^{b.exp} into the normal prefix `out` (strictly increasing
   generator indices), moving it left block by block.  Swapped-over blocks
   are replaced by their conjugates and replayed. */
void push_block(const Presentation &P, const Ctx &C, std::vector<Block> &out,
                Block first) {
  std::vector<Block> agenda; /* back = next to insert */
  agenda.push_back(std::move(first));
  while (!agenda.empty()) {
    Block b = std::move(agenda.back());
    agenda.pop_back();
    if (b.exp == 0)
      continue;
    /* each entry: replacement word for one swapped block, in word order */
    std::vector<BlockList> steps;
    while (!out.empty() && b.exp != 0) {
      Block &top = out.back();
      if (top.gen < b.gen)
        break;
      if (top.gen == b.gen) {
        b.exp += top.exp;
        out.pop_back();
        continue;
      }
      const int i = b.gen, j = top.gen;
      const PairTables &T = C.pt(i, j);
      MALCEV_CHECK(T.ready, "push_block: tables not ready");
      if (T.commute) {
        steps.push_back(BlockList{std::move(top)});
        out.pop_back();
        continue;
      }
      if (T.central) {
        /* [a_j^N, a_i^M] = t^{NM} when the tail t is central */
        BlockList step;
        step.reserve(1 + T.t[0][0].size());
        Int f = top.exp * b.exp;
        step.push_back(std::move(top));
        for (const Block &z : T.t[0][0])
          step.push_back({z.gen, z.exp * f});
        out.pop_back();
        steps.push_back(std::move(step));
        continue;
      }
      const int s = b.exp > 0 ? 0 : 1;
      if (b.exp == 1 || b.exp == -1 || T.chain_ok[s]) {
        /* a_j^N a_i^M = a_i^M (phi^M(a_j))^N */
        Coords u = conj_gen_power(P, C, i, j, b.exp);
        Coords W = pw(P, C, u, top.exp);
        out.pop_back();
        steps.push_back(to_blocks(W));
        continue;
      }
      /* no batch available: peel one letter of a_i */
      Int sg = b.exp > 0 ? 1 : -1;
      Coords u = conj_gen_power(P, C, i, j, sg);
      Coords W = pw(P, C, u, top.exp);
      out.pop_back();
      BlockList step = to_blocks(W);
      step.push_back({i, b.exp - sg});
      steps.push_back(std::move(step));
      b.exp = std::move(sg);
    }
    if (b.exp != 0)
      out.push_back(std::move(b));
    /* replay: last step first, blocks of a step left to right; the agenda
       is LIFO, so push in the exact opposite order */
    for (auto &step : steps)
      for (auto it = step.rbegin(); it != step.rend(); ++it)
        agenda.push_back(std::move(*it));
  }
}

Coords mul(const Presentation &P, const Ctx &C, const Coords &a,
           const Coords &b) {
  std::vector<Block> out;
  for (int i = 1; i <= P.size(); ++i)
    if (a[i] != 0)
      out.push_back({i, a[i]});
  for (int i = 1; i <= P.size(); ++i)
    if (b[i] != 0)
      push_block(P, C, out, {i, b[i]});
  return finish(P, C, out);
}

Coords inv(const Presentation &P, const Ctx &C, const Coords &g) {
  std::vector<Block> out;
  for (int i = P.size(); i >= 1; --i)
    if (g[i] != 0)
      push_block(P, C, out, {i, -g[i]});
  return finish(P, C, out);
}

Coords pw(const Presentation &P, const Ctx &C, const Coords &g, const Int &n) {
  if (n == 0)
    return ident(P);
  Coords base = n < 0 ? inv(P, C, g) : g;
  Int e = abs(n);
  Coords r = ident(P);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t k = 0; k < bits; ++k) {
    if (mpz_tstbit(e.get_mpz_t(), k))
      r = mul(P, C, r, base);
    if (k + 1 < bits)
      base = mul(P, C, base, base);
  }
  return r;
}

Coords collect_range(const Presentation &P, const Ctx &C,
                     GroupWord::const_iterator lo,
                     GroupWord::const_iterator hi) {
  std::vector<Block> out;
  for (auto it = lo; it != hi; ++it)
    push_block(P, C, out, {it->gen, it->exp});
  return finish(P, C, out);
}

void check_word(const Presentation &P, const GroupWord &w) {
  for (const Letter &l : w)
    if (l.gen < 1 || l.gen > P.size())
      throw std::invalid_argument("word letter a" + std::to_string(l.gen) +
                                  " out of range for this presentation");
}

} // namespace

namespace detail {

std::shared_ptr<const Ctx>
build_ctx(const Presentation &P,
          const std::vector<std::vector<std::optional<BlockList>>> &given_inv) {
  auto ctx = std::make_shared<Ctx>();
  Ctx &C = *ctx;
  const int m = P.size();
  C.m = m;
  C.pairs.assign(static_cast<size_t>(m) * m, PairTables{});

  /* a generator is central (for batching purposes) iff no conjugation
     relation involving it has a nonzero tail */
  C.central.assign(m + 1, 1);
  for (int i = 1; i < m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      bool moved = !P.conj_tail(i, j).empty() ||
                   (given_inv[i - 1][j - 1] && !given_inv[i - 1][j - 1]->empty());
      if (moved)
        C.central[i] = C.central[j] = 0;
    }

  /* Pairs are completed bottom-up: row i uses rows > i and, within row i,
     pairs (i, k) with k > j.  All commutator identities below stay inside
     the subgroup generated by indices > i, whose tables are ready. */
  for (int i = m - 1; i >= 1; --i)
    for (int j = m; j > i; --j) {
      PairTables &T = C.pt(i, j);
      T.t[0][0] = P.conj_tail(i, j);
      if (given_inv[i - 1][j - 1]) {
        T.t[1][0] = *given_inv[i - 1][j - 1];
      } else {
        /* [a_j^{-1}, a_i] = (([a_j, a_i])^{a_j^{-1}})^{-1} */
        Coords t00 = blocks_to_coords(P, C, T.t[0][0]);
        Coords d = inv(P, C, conj_element(P, C, t00, j, Int(-1)));
        T.t[1][0] = to_blocks(d);
      }
      /* [a_j^s, a_i^{-1}] = (([a_j^s, a_i])^{a_i^{-1}})^{-1} */
      for (int s = 0; s < 2; ++s) {
        Coords ts0 = blocks_to_coords(P, C, T.t[s][0]);
        Coords d = inv(P, C, conj_element(P, C, ts0, i, Int(-1)));
        T.t[s][1] = to_blocks(d);
      }
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          for (const Block &b : T.t[s][t])
            MALCEV_CHECK(b.gen > j, "build_ctx: tail support not above j");

      T.commute = T.t[0][0].empty() && T.t[1][0].empty() &&
                  T.t[0][1].empty() && T.t[1][1].empty();
      T.central = !T.commute && !T.t[0][0].empty();
      for (const Block &b : T.t[0][0])
        if (!C.central[b.gen])
          T.central = false;
      /* central batching is exact only when every sign variant is the
         matching power of the same central tail; derived variants are,
         given ones might not be, so verify before trusting the flag */
      if (T.central) {
        Coords t00 = blocks_to_coords(P, C, T.t[0][0]);
        if (blocks_to_coords(P, C, T.t[1][0]) != inv(P, C, t00) ||
            blocks_to_coords(P, C, T.t[0][1]) != inv(P, C, t00) ||
            blocks_to_coords(P, C, T.t[1][1]) != t00)
          T.central = false;
      }

      T.ready = true; /* chains below conjugate only above index j */

      for (int s = 0; s < 2; ++s) {
        if (T.commute || T.central) {
          T.chain_ok[s] = false; /* never consulted on those paths */
          continue;
        }
        Int step = s == 0 ? 1 : -1;
        Coords y = blocks_to_coords(P, C, T.t[0][s]);
        auto &ch = T.chain[s];
        ch.clear();
        bool ok = false;
        for (int it = 0; it <= P.cls() + 1; ++it) {
          if (y.is_identity()) {
            ok = true;
            break;
          }
          ch.push_back(y);
          /* y <- [y, a_i^{step}] */
          Coords yc = conj_element(P, C, y, i, step);
          y = mul(P, C, inv(P, C, y), yc);
        }
        if (ok)
          for (size_t a = 0; a + 1 < ch.size() && ok; ++a)
            for (size_t b = a + 1; b < ch.size() && ok; ++b)
              if (mul(P, C, ch[a], ch[b]) != mul(P, C, ch[b], ch[a]))
                ok = false;
        T.chain_ok[s] = ok;
      }
    }
  return ctx;
}

} // namespace detail

Coords identity(const Presentation &P) { return ident(P); }

Coords unit(const Presentation &P, int i) {
  if (i < 1 || i > P.size())
    throw std::invalid_argument("unit: generator index out of range");
  return gen_unit(P, i);
}

BlockList to_blocks(const Coords &g) {
  BlockList bl;
  for (int i = 1; i <= g.size(); ++i)
    if (g[i] != 0)
      bl.push_back({i, g[i]});
  return bl;
}

GroupWord to_word(const Coords &g) {
  GroupWord w;
  for (int i = 1; i <= g.size(); ++i)
    if (g[i] != 0)
      w.push_back({i, g[i]});
  return w;
}

Coords coords_reduce(const Presentation &P, std::vector<Int> raw) {
  if (raw.size() != static_cast<size_t>(P.size()))
    throw std::invalid_argument("coords_reduce: wrong tuple length");
  normalize_inplace(P, P.ctx(), raw);
  return wrap(std::move(raw));
}

Coords multiply(const Presentation &P, const Coords &a, const Coords &b) {
  return mul(P, P.ctx(), a, b);
}

Coords invert(const Presentation &P, const Coords &a) {
  return inv(P, P.ctx(), a);
}

Coords power(const Presentation &P, const Coords &a, const Int &n) {
  return pw(P, P.ctx(), a, n);
}

Coords conjugate(const Presentation &P, const Coords &g, const Coords &u) {
  const auto &C = P.ctx();
  return mul(P, C, mul(P, C, inv(P, C, u), g), u);
}

Coords commutator(const Presentation &P, const Coords &a, const Coords &b) {
  const auto &C = P.ctx();
  return mul(P, C, mul(P, C, inv(P, C, a), inv(P, C, b)), mul(P, C, a, b));
}

Coords word_to_coords(const Presentation &P, const GroupWord &w) {
  check_word(P, w);
  return collect_range(P, P.ctx(), w.begin(), w.end());
}

Coords word_to_coords_parallel(const Presentation &P, const GroupWord &w) {
  check_word(P, w);
  const auto &C = P.ctx();
  const size_t n = w.size();
  size_t chunks = 1;
#ifdef _OPENMP
  chunks = static_cast<size_t>(std::max(1, omp_get_max_threads()));
#endif
  chunks = std::min(chunks, n / 2048);
  if (chunks <= 1)
    return collect_range(P, C, w.begin(), w.end());

  std::vector<Coords> part(chunks);
  std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long c = 0; c < static_cast<long>(chunks); ++c) {
    try {
      size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
      part[c] = collect_range(P, C, w.begin() + lo, w.begin() + hi);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      err = std::current_exception();
    }
  }
  if (err)
    std::rethrow_exception(err);
  Coords r = ident(P);
  for (const Coords &p : part)
    r = mul(P, C, r, p);
  return r;
}

Coords collect_reference(const Presentation &P, const GroupWord &w) {
  check_word(P, w);
  const auto &C = P.ctx();
  Int total = word_length(w);
  if (total > 200000)
    throw std::invalid_argument("collect_reference: word too long");

  std::vector<std::pair<int, int>> ls; /* (gen, sign) single letters */
  ls.reserve(static_cast<size_t>(total.get_ui()));
  for (const Letter &l : w) {
    long n = to_long(l.exp, "collect_reference letter exponent");
    int sg = n > 0 ? 1 : -1;
    for (long k = 0; k < std::labs(n); ++k)
      ls.emplace_back(l.gen, sg);
  }

  size_t p = 0;
  while (p + 1 < ls.size()) {
    auto [g1, s1] = ls[p];
    auto [g2, s2] = ls[p + 1];
    if (g1 == g2 && s1 == -s2) {
      ls.erase(ls.begin() + p, ls.begin() + p + 2);
      p = p ? p - 1 : 0;
      continue;
    }
    if (g1 <= g2) {
      ++p;
      continue;
    }
    /* a_{g1}^{s1} a_{g2}^{s2} = a_{g2}^{s2} a_{g1}^{s1} [a_{g1}^{s1}, a_{g2}^{s2}] */
    const PairTables &T = C.pt(g2, g1);
    std::vector<std::pair<int, int>> repl;
    repl.emplace_back(g2, s2);
    repl.emplace_back(g1, s1);
    for (const Block &b : T.t[s1 < 0 ? 1 : 0][s2 < 0 ? 1 : 0]) {
      long n = to_long(b.exp, "collect_reference tail exponent");
      int sg = n > 0 ? 1 : -1;
      for (long k = 0; k < std::labs(n); ++k)
        repl.emplace_back(b.gen, sg);
    }
    ls.erase(ls.begin() + p, ls.begin() + p + 2);
    ls.insert(ls.begin() + p, repl.begin(), repl.end());
    p = p ? p - 1 : 0;
  }

  std::vector<Int> raw(P.size());
  for (auto [g, s] : ls)
    raw[g - 1] += s;
  normalize_inplace(P, C, raw);
  return wrap(std::move(raw));
}

std::string format_coords(const Coords &g) {
  std::string s = "(";
  for (int i = 1; i <= g.size(); ++i) {
    if (i > 1)
      s += ", ";
    s += g[i].get_str();
  }
  s += ")";
  return s;
}

std::vector<Int> parse_coords(const std::string &text, int m) {
  std::string body = text;
  auto strip = [](std::string &s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    s = a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  strip(body);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw parse_error("coordinates must look like (c1, c2, ...)");
  body = body.substr(1, body.size() - 2);
  std::vector<Int> raw;
  std::string tok;
  std::istringstream in(body);
  bool any = false;
  while (std::getline(in, tok, ',')) {
    strip(tok);
    if (tok.empty())
      throw parse_error("empty coordinate entry");
    try {
      raw.emplace_back(tok);
    } catch (const std::invalid_argument &) {
      throw parse_error("bad coordinate entry '" + tok + "'");
    }
    any = true;
  }
  if (!any && !body.empty())
    throw parse_error("bad coordinate list");
  if (raw.size() != static_cast<size_t>(m))
    throw parse_error("expected " + std::to_string(m) + " coordinates, got " +
                      std::to_string(raw.size()));
  return raw;
}

} // namespace malcev
