#include "malcev/presentation.hpp"

#include "ctx.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace malcev {

void PresentationData::resize(int m_) {
  m = m_;
  weight.assign(m, 1);
  torsion.assign(m, Int(0));
  power_tail.assign(m, BlockList{});
  conj.assign(m, std::vector<BlockList>(m));
  conj_inv.assign(m, std::vector<std::optional<BlockList>>(m));
  names.assign(m, std::string{});
}

namespace {

[[noreturn]] void bad(const std::string &msg) { throw invalid_presentation(msg); }

std::string gen_ref(int i) { return "a" + std::to_string(i); }

/* Tails are stored as normal words: strictly increasing generator
   indices, nonzero exponents. Reject anything else up front so the
   collector can trust its inputs. */
void check_tail(const BlockList &t, int min_gen, int m, const std::string &where) {
  int prev = 0;
  for (const Block &b : t) {
    if (b.gen < 1 || b.gen > m)
      bad(where + ": tail letter " + gen_ref(b.gen) + " out of range");
    if (b.gen <= min_gen)
      bad(where + ": tail touches index <= " + std::to_string(min_gen));
    if (b.gen <= prev)
      bad(where + ": tail letters must have strictly increasing index");
    if (b.exp == 0)
      bad(where + ": tail letter with zero exponent");
    prev = b.gen;
  }
}

} // namespace

Presentation::Presentation(PresentationData data) {
  m_ = data.m;
  if (m_ < 0)
    bad("generator count must be nonnegative");
  auto need = [&](size_t got, const char *field) {
    if (got != static_cast<size_t>(m_))
      bad(std::string(field) + " list does not match generator count");
  };
  need(data.weight.size(), "weight");
  need(data.torsion.size(), "torsion");
  need(data.power_tail.size(), "power tail");
  need(data.conj.size(), "conjugation tail");
  need(data.conj_inv.size(), "inverse conjugation tail");
  if (data.names.empty())
    data.names.assign(m_, std::string{});
  need(data.names.size(), "name");

  for (int i = 1; i <= m_; ++i) {
    if (data.weight[i - 1] < 1)
      bad("weight of " + gen_ref(i) + " must be >= 1");
    if (i > 1 && data.weight[i - 1] < data.weight[i - 2])
      bad("weights must be nondecreasing");
    const Int &e = data.torsion[i - 1];
    if (e < 0 || e == 1)
      bad("torsion exponent of " + gen_ref(i) + " must be 0 (none) or >= 2");
    check_tail(data.power_tail[i - 1], i, m_, "power tail of " + gen_ref(i));
    if (e == 0 && !data.power_tail[i - 1].empty())
      bad("power tail of " + gen_ref(i) + " without torsion exponent");
    if (data.conj[i - 1].size() != static_cast<size_t>(m_) ||
        data.conj_inv[i - 1].size() != static_cast<size_t>(m_))
      bad("conjugation tables must be m x m");
  }
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= m_; ++j) {
      const std::string where =
          "conjugation tail (" + gen_ref(i) + ", " + gen_ref(j) + ")";
      if (j <= i) {
        if (!data.conj[i - 1][j - 1].empty() || data.conj_inv[i - 1][j - 1])
          bad(where + " needs i < j");
        continue;
      }
      check_tail(data.conj[i - 1][j - 1], j, m_, where);
      if (data.conj_inv[i - 1][j - 1])
        check_tail(*data.conj_inv[i - 1][j - 1], j, m_, "inverse " + where);
      /* tails respect weight: [a_j, a_i] lies in the subgroup generated
         by weight >= w_i + w_j */
      int wsum = data.weight[i - 1] + data.weight[j - 1];
      auto check_weight = [&](const BlockList &t, const char *kind) {
        for (const Block &b : t)
          if (data.weight[b.gen - 1] < wsum)
            bad(std::string(kind) + where + ": letter " + gen_ref(b.gen) +
                " has weight below " + std::to_string(wsum));
      };
      check_weight(data.conj[i - 1][j - 1], "");
      if (data.conj_inv[i - 1][j - 1])
        check_weight(*data.conj_inv[i - 1][j - 1], "inverse ");
    }

  weight_ = std::move(data.weight);
  torsion_ = std::move(data.torsion);
  power_tail_ = std::move(data.power_tail);
  conj_ = std::move(data.conj);
  names_ = std::move(data.names);
  cls_ = m_ ? weight_[m_ - 1] : 0;

  ctx_ = detail::build_ctx(*this, data.conj_inv);

  conj_inv_.assign(m_, std::vector<BlockList>(m_));
  for (int i = 1; i < m_; ++i)
    for (int j = i + 1; j <= m_; ++j)
      conj_inv_[i - 1][j - 1] = ctx_->pt(i, j).t[1][0];
}

const BlockList &Presentation::conj_tail(int i, int j) const {
  return conj_[i - 1][j - 1];
}

const BlockList &Presentation::conj_inv_tail(int i, int j) const {
  return conj_inv_[i - 1][j - 1];
}

int Presentation::top_weight_count() const {
  int n = 0;
  for (int i = m_; i >= 1 && weight_[i - 1] == cls_; --i)
    ++n;
  return n;
}

namespace {

struct LineReader {
  std::istream &in;
  std::string what;
  int lineno = 0;

  bool next(std::string &out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      auto hash = raw.find('#');
      if (hash != std::string::npos)
        raw.erase(hash);
      size_t a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos)
        continue;
      size_t b = raw.find_last_not_of(" \t\r");
      out = raw.substr(a, b - a + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw parse_error(what + ":" + std::to_string(lineno) + ": " + msg);
  }
};

Int parse_int(const std::string &tok, LineReader &r) {
  try {
    return Int(tok);
  } catch (const std::invalid_argument &) {
    r.fail("expected an integer, got '" + tok + "'");
  }
}

int parse_index(const std::string &tok, int m, LineReader &r) {
  Int v = parse_int(tok, r);
  if (v < 1 || v > m)
    r.fail("generator index " + tok + " out of range 1.." + std::to_string(m));
  return static_cast<int>(v.get_si());
}

/* entries t_{lo}..t_m, positional; zeros are dropped */
BlockList parse_tail(const std::vector<std::string> &toks, size_t from, int lo,
                     int m, LineReader &r) {
  if (toks.size() - from != static_cast<size_t>(m - lo + 1))
    r.fail("tail needs exactly " + std::to_string(m - lo + 1) +
           " entries (indices " + std::to_string(lo) + ".." + std::to_string(m) +
           "), got " + std::to_string(toks.size() - from));
  BlockList t;
  for (size_t k = from; k < toks.size(); ++k) {
    Int e = parse_int(toks[k], r);
    if (e != 0)
      t.push_back({lo + static_cast<int>(k - from), std::move(e)});
  }
  return t;
}

} // namespace

Presentation parse_presentation(std::istream &in, const std::string &what) {
  LineReader r{in, what};
  std::string line;
  PresentationData d;
  bool have_gens = false;
  std::set<std::pair<std::string, std::string>> seen;

  auto once = [&](const std::string &kind, const std::string &key) {
    if (!seen.insert({kind, key}).second)
      r.fail("duplicate " + kind + " line for " + key);
  };

  while (r.next(line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;)
      toks.push_back(std::move(t));
    const std::string &kw = toks[0];

    if (kw == "gens") {
      if (have_gens)
        r.fail("duplicate gens line");
      if (toks.size() != 2)
        r.fail("usage: gens <m>");
      Int m = parse_int(toks[1], r);
      if (m < 0 || m > 100000)
        r.fail("unreasonable generator count");
      d.resize(static_cast<int>(m.get_si()));
      have_gens = true;
      continue;
    }
    if (!have_gens)
      r.fail("first directive must be gens");

    if (kw == "weight") {
      if (toks.size() != 3)
        r.fail("usage: weight <i> <w>");
      int i = parse_index(toks[1], d.m, r);
      once("weight", toks[1]);
      Int w = parse_int(toks[2], r);
      if (w < 1 || w > 1000000)
        r.fail("weight must be a small positive integer");
      d.weight[i - 1] = static_cast<int>(w.get_si());
    } else if (kw == "pow") {
      /* pow <i> <e> : t_{i+1} .. t_m */
      if (toks.size() < 4 || toks[3] != ":")
        r.fail("usage: pow <i> <e> : <tail entries>");
      int i = parse_index(toks[1], d.m, r);
      once("pow", toks[1]);
      Int e = parse_int(toks[2], r);
      if (e < 2)
        r.fail("torsion exponent must be >= 2");
      d.torsion[i - 1] = std::move(e);
      d.power_tail[i - 1] = parse_tail(toks, 4, i + 1, d.m, r);
    } else if (kw == "conj" || kw == "conjinv") {
      /* conj <j> <i> : t_{j+1} .. t_m   (the tail of a_j^{±1} past a_i) */
      if (toks.size() < 4 || toks[3] != ":")
        r.fail("usage: " + kw + " <j> <i> : <tail entries>");
      int j = parse_index(toks[1], d.m, r);
      int i = parse_index(toks[2], d.m, r);
      if (i >= j)
        r.fail(kw + " needs i < j (got j=" + toks[1] + ", i=" + toks[2] + ")");
      once(kw, toks[1] + "," + toks[2]);
      BlockList t = parse_tail(toks, 4, j + 1, d.m, r);
      if (kw == "conj")
        d.conj[i - 1][j - 1] = std::move(t);
      else
        d.conj_inv[i - 1][j - 1] = std::move(t);
    } else if (kw == "name") {
      if (toks.size() != 3)
        r.fail("usage: name <i> <identifier>");
      int i = parse_index(toks[1], d.m, r);
      once("name", toks[1]);
      const std::string &nm = toks[2];
      if (!std::isalpha(static_cast<unsigned char>(nm[0])) && nm[0] != '_')
        r.fail("name must start with a letter");
      for (char c : nm)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
          r.fail("name contains invalid character '" + std::string(1, c) + "'");
      d.names[i - 1] = nm;
    } else {
      r.fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_gens)
    r.fail("empty presentation (missing gens line)");

  std::set<std::string> used;
  for (int i = 0; i < d.m; ++i)
    if (!d.names[i].empty() && !used.insert(d.names[i]).second)
      throw parse_error(what + ": duplicate generator name '" + d.names[i] + "'");

  try {
    return Presentation(std::move(d));
  } catch (const invalid_presentation &e) {
    throw parse_error(what + ": " + e.what());
  }
}

Presentation parse_presentation_text(const std::string &text,
                                     const std::string &what) {
  std::istringstream in(text);
  return parse_presentation(in, what);
}

Presentation load_presentation(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw parse_error(path + ": cannot open file");
  return parse_presentation(in, path);
}

std::string Presentation::serialize() const {
  std::ostringstream out;
  out << "gens " << m_ << "\n";
  for (int i = 1; i <= m_; ++i)
    out << "weight " << i << " " << weight_[i - 1] << "\n";
  auto tail_entries = [&](const BlockList &t, int lo) {
    std::string s;
    size_t k = 0;
    for (int g = lo; g <= m_; ++g) {
      s += " ";
      if (k < t.size() && t[k].gen == g)
        s += t[k++].exp.get_str();
      else
        s += "0";
    }
    return s;
  };
  for (int i = 1; i <= m_; ++i)
    if (torsion_[i - 1] != 0)
      out << "pow " << i << " " << torsion_[i - 1].get_str() << " :"
          << tail_entries(power_tail_[i - 1], i + 1) << "\n";
  for (int i = 1; i < m_; ++i)
    for (int j = i + 1; j <= m_; ++j) {
      if (!conj_[i - 1][j - 1].empty())
        out << "conj " << j << " " << i << " :"
            << tail_entries(conj_[i - 1][j - 1], j + 1) << "\n";
      if (!conj_inv_[i - 1][j - 1].empty())
        out << "conjinv " << j << " " << i << " :"
            << tail_entries(conj_inv_[i - 1][j - 1], j + 1) << "\n";
    }
  for (int i = 1; i <= m_; ++i)
    if (!names_[i - 1].empty())
      out << "name " << i << " " << names_[i - 1] << "\n";
  return out.str();
}

} // namespace malcev
