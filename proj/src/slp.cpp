#include "malcev/slp.hpp"

#include "check.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace malcev {

Slp::Slp(std::vector<std::string> names, std::vector<SlpProduction> prods)
    : names_(std::move(names)), prods_(std::move(prods)) {
  if (prods_.empty())
    throw std::invalid_argument("slp: empty program");
  if (names_.size() != prods_.size())
    throw std::invalid_argument("slp: one name per nonterminal");
  for (int k = 1; k <= size(); ++k) {
    const SlpProduction &p = prods_[k - 1];
    if (p.pair) {
      if (p.b < 1 || p.b >= k || p.c < 1 || p.c >= k)
        throw std::invalid_argument("slp: children must be strictly smaller");
    } else if (p.letter.gen == 0) {
      if (p.letter.exp != 0)
        throw std::invalid_argument("slp: epsilon carries no exponent");
    } else {
      if (p.letter.gen < 0 || (p.letter.exp != 1 && p.letter.exp != -1))
        throw std::invalid_argument("slp: terminal must be a signed letter");
    }
  }
}

Int Slp::length() const {
  std::vector<Int> len;
  len.reserve(prods_.size());
  for (const SlpProduction &p : prods_)
    len.push_back(p.pair ? Int(len[p.b - 1] + len[p.c - 1])
                         : Int(p.letter.gen ? 1 : 0));
  return len.back();
}

GroupWord Slp::expand(long cap) const {
  if (length() > cap)
    throw std::length_error("slp: output longer than the expansion cap");
  /* only nodes under the root; an unused branch may be huge */
  std::vector<bool> need(prods_.size(), false);
  need.back() = true;
  for (int k = size(); k >= 1; --k)
    if (need[k - 1] && prods_[k - 1].pair) {
      need[prods_[k - 1].b - 1] = true;
      need[prods_[k - 1].c - 1] = true;
    }
  std::vector<GroupWord> val(prods_.size());
  for (int k = 1; k <= size(); ++k) {
    if (!need[k - 1])
      continue;
    const SlpProduction &p = prods_[k - 1];
    if (p.pair) {
      val[k - 1] = val[p.b - 1];
      val[k - 1].insert(val[k - 1].end(), val[p.c - 1].begin(),
                        val[p.c - 1].end());
    } else if (p.letter.gen) {
      val[k - 1].push_back(p.letter);
    }
  }
  return val.back();
}

std::string Slp::serialize() const {
  std::ostringstream out;
  for (int k = 1; k <= size(); ++k) {
    const SlpProduction &p = prods_[k - 1];
    if (p.pair)
      out << "prod " << names_[k - 1] << ' ' << names_[p.b - 1] << ' '
          << names_[p.c - 1] << '\n';
    else if (p.letter.gen == 0)
      out << "term " << names_[k - 1] << " eps\n";
    else
      out << "term " << names_[k - 1] << " a" << p.letter.gen
          << (p.letter.exp == 1 ? "" : "^-1") << '\n';
  }
  out << "root " << names_.back() << '\n';
  return out.str();
}

namespace {

Letter parse_slp_letter(const std::string &tok, const std::string &where) {
  if (tok == "eps")
    return Letter{0, 0};
  auto bad = [&]() -> Letter {
    throw parse_error(where + ": bad terminal '" + tok +
                      "' (want a<k>, a<k>^-1, or eps)");
  };
  if (tok.size() < 2 || tok[0] != 'a')
    return bad();
  size_t caret = tok.find('^');
  std::string num = tok.substr(1, caret == std::string::npos
                                      ? std::string::npos
                                      : caret - 1);
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    return bad();
  long gen = 0;
  try {
    gen = std::stol(num);
  } catch (const std::exception &) {
    return bad();
  }
  if (gen < 1)
    return bad();
  int exp = 1;
  if (caret != std::string::npos) {
    std::string e = tok.substr(caret + 1);
    if (e == "-1")
      exp = -1;
    else if (e != "1")
      return bad();
  }
  return Letter{static_cast<int>(gen), exp};
}

} // namespace

Slp parse_slp(const std::string &text, const std::string &what) {
  std::vector<std::string> names;
  std::vector<SlpProduction> prods;
  std::map<std::string, int> index;
  std::string root_name;
  int lineno = 0;

  auto where = [&]() { return what + ":" + std::to_string(lineno); };
  auto lookup = [&](const std::string &n) {
    auto it = index.find(n);
    if (it == index.end())
      throw parse_error(where() + ": unknown nonterminal '" + n +
                        "' (children must be defined earlier)");
    return it->second;
  };
  auto declare = [&](const std::string &n) {
    if (index.count(n))
      throw parse_error(where() + ": second production for '" + n + "'");
    names.push_back(n);
    index[n] = static_cast<int>(names.size());
  };

  std::istringstream in(text);
  std::string phys;
  while (std::getline(in, phys)) {
    ++lineno;
    if (auto hash = phys.find('#'); hash != std::string::npos)
      phys.erase(hash);
    /* semicolons separate statements within a line */
    std::replace(phys.begin(), phys.end(), ';', '\n');
    std::istringstream stmts(phys);
    std::string stmt;
    while (std::getline(stmts, stmt)) {
      std::istringstream t(stmt);
      std::vector<std::string> tok;
      for (std::string s; t >> s;)
        tok.push_back(s);
      if (tok.empty())
        continue;
      if (tok[0] == "term") {
        if (tok.size() != 3)
          throw parse_error(where() + ": want 'term <name> <letter|eps>'");
        SlpProduction p;
        p.letter = parse_slp_letter(tok[2], where());
        declare(tok[1]);
        prods.push_back(p);
      } else if (tok[0] == "prod") {
        if (tok.size() != 4)
          throw parse_error(where() + ": want 'prod <name> <b> <c>'");
        SlpProduction p;
        p.pair = true;
        p.b = lookup(tok[2]);
        p.c = lookup(tok[3]);
        declare(tok[1]);
        prods.push_back(p);
      } else if (tok[0] == "root") {
        if (tok.size() != 2)
          throw parse_error(where() + ": want 'root <name>'");
        if (!root_name.empty())
          throw parse_error(where() + ": second root");
        lookup(tok[1]);
        root_name = tok[1];
      } else {
        throw parse_error(where() + ": unknown directive '" + tok[0] + "'");
      }
    }
  }
  if (root_name.empty())
    throw parse_error(what + ": missing root");
  if (index[root_name] != static_cast<int>(prods.size()))
    throw parse_error(what + ": root must be the greatest nonterminal");
  return Slp(std::move(names), std::move(prods));
}

Slp load_slp(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw parse_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_slp(buf.str(), path.filename().string());
}

Coords slp_to_coords(const Presentation &P, const Slp &A) {
  std::vector<Coords> val;
  val.reserve(A.size());
  for (int k = 1; k <= A.size(); ++k) {
    const SlpProduction &p = A.production(k);
    if (p.pair) {
      val.push_back(multiply(P, val[p.b - 1], val[p.c - 1]));
    } else if (p.letter.gen == 0) {
      val.push_back(identity(P));
    } else {
      if (p.letter.gen > P.size())
        throw parse_error("slp: letter a" + std::to_string(p.letter.gen) +
                          " is out of range for this group");
      Coords u = unit(P, p.letter.gen);
      val.push_back(p.letter.exp == 1 ? u : invert(P, u));
    }
  }
  return val.back();
}

namespace {

/* shared builder for the program constructors: terminals are pooled,
   power chains are memoized per signed generator */
struct Builder {
  std::vector<SlpProduction> prods;
  std::map<std::pair<int, int>, int> terms;
  std::map<std::pair<int, Int>, int> powers;

  int add(const SlpProduction &p) {
    prods.push_back(p);
    return static_cast<int>(prods.size());
  }
  int terminal(int gen, int sign) {
    auto key = std::make_pair(gen, sign);
    if (auto it = terms.find(key); it != terms.end())
      return it->second;
    SlpProduction p;
    p.letter = Letter{gen, gen ? Int(sign) : Int(0)};
    return terms[key] = add(p);
  }
  int pair_node(int b, int c) {
    SlpProduction p;
    p.pair = true;
    p.b = b;
    p.c = c;
    return add(p);
  }
  /* base^n by square and multiply, MSB first; memo on (tag, value) */
  int power_of(int base, const Int &n, int tag) {
    MALCEV_CHECK(n >= 1, "slp: power chain needs n >= 1");
    auto probe = [&](const Int &v) -> int {
      if (!tag)
        return 0;
      auto it = powers.find({tag, v});
      return it == powers.end() ? 0 : it->second;
    };
    auto note = [&](const Int &v, int node) {
      if (tag)
        powers.emplace(std::make_pair(tag, v), node);
    };
    note(1, base);
    int acc = base;
    Int v = 1;
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
      v *= 2;
      if (int hit = probe(v))
        acc = hit;
      else
        note(v, acc = pair_node(acc, acc));
      if (mpz_tstbit(n.get_mpz_t(), i)) {
        v += 1;
        if (int hit = probe(v))
          acc = hit;
        else
          note(v, acc = pair_node(acc, base));
      }
    }
    return acc;
  }
  int letter_node(const Letter &l) {
    int s = l.exp < 0 ? -1 : 1;
    int base = terminal(l.gen, s);
    Int e = s < 0 ? Int(-l.exp) : l.exp;
    return e == 1 ? base : power_of(base, e, s * l.gen);
  }
  /* balanced subdivision over the letter nodes */
  int word_node(const GroupWord &w) {
    std::vector<int> seq;
    for (const Letter &l : w)
      if (l.exp != 0)
        seq.push_back(letter_node(l));
    if (seq.empty())
      return terminal(0, 0);
    while (seq.size() > 1) {
      std::vector<int> up;
      for (size_t i = 0; i + 1 < seq.size(); i += 2)
        up.push_back(pair_node(seq[i], seq[i + 1]));
      if (seq.size() % 2)
        up.push_back(seq.back());
      seq.swap(up);
    }
    return seq[0];
  }
  Slp finish(int root) {
    MALCEV_CHECK(root == static_cast<int>(prods.size()),
                 "slp: root must be the last node built");
    std::vector<std::string> names;
    for (size_t k = 1; k <= prods.size(); ++k)
      names.push_back("B" + std::to_string(k));
    return Slp(std::move(names), std::move(prods));
  }
};

} // namespace

Slp power_program(const GroupWord &w, const Int &n) {
  if (n < 1)
    throw std::invalid_argument("power_program: n must be at least 1");
  Int L = word_length(w);
  if (L == 0)
    throw std::invalid_argument("power_program: empty word");
  Builder b;
  int root = b.power_of(b.word_node(w), n, 0);
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  MALCEV_CHECK(Int(static_cast<long>(b.prods.size())) <=
                   2 * L + 2 * static_cast<long>(bits - 1),
               "power_program: size bound violated");
  return b.finish(root);
}

Slp coords_to_slp(const Presentation &P, const Coords &g) {
  MALCEV_CHECK(g.size() == P.size(), "coords_to_slp: wrong tuple size");
  Builder b;
  int node = 0;
  for (int i = 1; i <= P.size(); ++i) {
    if (g[i] == 0)
      continue;
    int part = b.letter_node(Letter{i, g[i]});
    node = node ? b.pair_node(node, part) : part;
  }
  if (!node)
    node = b.terminal(0, 0);
  return b.finish(node);
}

CompressedPresentation
compress_presentation(int rank, const std::vector<GroupWord> &relators) {
  for (const GroupWord &r : relators)
    for (const Letter &l : r)
      if (l.gen < 1 || l.gen > rank)
        throw std::invalid_argument("compress_presentation: letter out of range");

  CompressedPresentation out;
  out.rank = out.total = rank;
  for (int i = 1; i <= rank; ++i)
    out.names.push_back("a" + std::to_string(i));

  std::map<std::pair<int, Int>, Letter> chain;
  auto fresh = [&](const Letter &x, const Letter &y) {
    ++out.total;
    out.names.push_back("B" + std::to_string(out.total - rank));
    out.relators.push_back(GroupWord{Letter{out.total, -1}, x, y});
    return Letter{out.total, 1};
  };
  /* letter equal to a_gen^exp, growing the doubling chain as needed */
  auto chain_letter = [&](const Letter &l) {
    int s = l.exp < 0 ? -1 : 1;
    int tag = s * l.gen;
    Letter base{l.gen, s};
    Int e = s < 0 ? Int(-l.exp) : l.exp;
    chain.emplace(std::make_pair(tag, Int(1)), base);
    Letter acc = base;
    Int v = 1;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
      v *= 2;
      if (auto it = chain.find({tag, v}); it != chain.end())
        acc = it->second;
      else
        chain.emplace(std::make_pair(tag, Int(v)), acc = fresh(acc, acc));
      if (mpz_tstbit(e.get_mpz_t(), i)) {
        v += 1;
        if (auto it = chain.find({tag, v}); it != chain.end())
          acc = it->second;
        else
          chain.emplace(std::make_pair(tag, Int(v)), acc = fresh(acc, base));
      }
    }
    return acc;
  };

  for (const GroupWord &r : relators) {
    GroupWord nw;
    for (const Letter &l : r) {
      if (l.exp == 0)
        continue;
      if (l.exp == 1 || l.exp == -1)
        nw.push_back(l);
      else
        nw.push_back(chain_letter(l));
    }
    out.relators.push_back(nw);
  }
  return out;
}

std::vector<GroupWord> presentation_relators(const Presentation &P) {
  auto tail_word = [](const BlockList &t) {
    GroupWord w;
    for (const Block &b : t)
      w.push_back(Letter{b.gen, b.exp});
    return w;
  };
  std::vector<GroupWord> rels;
  for (int i = 1; i <= P.size(); ++i) {
    if (!P.is_torsion(i))
      continue;
    GroupWord r{Letter{i, P.torsion_exponent(i)}};
    GroupWord t = word_inverse(tail_word(P.power_tail(i)));
    r.insert(r.end(), t.begin(), t.end());
    rels.push_back(word_reduce(r));
  }
  for (int i = 1; i < P.size(); ++i)
    for (int j = i + 1; j <= P.size(); ++j) {
      /* a_j a_i (a_i a_j t)^-1 */
      GroupWord rhs{Letter{i, 1}, Letter{j, 1}};
      GroupWord t = tail_word(P.conj_tail(i, j));
      rhs.insert(rhs.end(), t.begin(), t.end());
      GroupWord r{Letter{j, 1}, Letter{i, 1}};
      GroupWord inv = word_inverse(rhs);
      r.insert(r.end(), inv.begin(), inv.end());
      rels.push_back(word_reduce(r));
    }
  return rels;
}

} // namespace malcev
