#include "malcev/word.hpp"

#include <cctype>
#include <sstream>

namespace malcev {

namespace {

int resolve_gen(const std::string &tok, int ngens,
                const std::vector<std::string> &names) {
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (!names[i].empty() && names[i] == tok)
      return i + 1;
  if (tok.size() >= 2 && tok[0] == 'a') {
    bool digits = true;
    for (size_t p = 1; p < tok.size(); ++p)
      if (!std::isdigit(static_cast<unsigned char>(tok[p])))
        digits = false;
    if (digits) {
      long k = std::stol(tok.substr(1));
      if (k >= 1 && k <= ngens)
        return static_cast<int>(k);
      throw parse_error("word: generator index out of range: " + tok);
    }
  }
  throw parse_error("word: unknown generator: " + tok);
}

bool valid_exponent(const std::string &s) {
  if (s.empty())
    return false;
  size_t p = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (p == s.size())
    return false;
  for (; p < s.size(); ++p)
    if (!std::isdigit(static_cast<unsigned char>(s[p])))
      return false;
  return true;
}

} // namespace

GroupWord parse_word(const std::string &text, int ngens,
                     const std::vector<std::string> &names) {
  GroupWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::string base = tok;
    Int e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      if (!valid_exponent(es))
        throw parse_error("word: bad exponent in: " + tok);
      e = Int(es);
    }
    if (base.empty())
      throw parse_error("word: bad token: " + tok);
    if (base == "1") { /* identity, as printed by format_word */
      bool named = false;
      for (const auto &n : names)
        if (n == "1")
          named = true;
      if (!named)
        continue;
    }
    w.push_back({resolve_gen(base, ngens, names), e});
  }
  return word_reduce(w);
}

std::string format_word(const GroupWord &w,
                        const std::vector<std::string> &names) {
  if (w.empty())
    return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto &l : w) {
    if (!first)
      out << ' ';
    first = false;
    if (l.gen - 1 < static_cast<int>(names.size()) &&
        !names[l.gen - 1].empty())
      out << names[l.gen - 1];
    else
      out << 'a' << l.gen;
    if (l.exp != 1)
      out << '^' << l.exp.get_str();
  }
  return out.str();
}

GroupWord word_reduce(const GroupWord &w) {
  GroupWord r;
  for (const auto &l : w) {
    if (l.exp == 0)
      continue;
    if (!r.empty() && r.back().gen == l.gen) {
      r.back().exp += l.exp;
      if (r.back().exp == 0)
        r.pop_back();
    } else {
      r.push_back(l);
    }
  }
  return r;
}

GroupWord word_inverse(const GroupWord &w) {
  GroupWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back({it->gen, -it->exp});
  return r;
}

GroupWord word_power(const GroupWord &w, const Int &n) {
  if (n == 0 || w.empty())
    return {};
  if (w.size() == 1)
    return {{w[0].gen, w[0].exp * n}};
  GroupWord base = n < 0 ? word_inverse(w) : w;
  long k = to_long(abs(n), "word_power");
  GroupWord r;
  r.reserve(base.size() * k);
  for (long t = 0; t < k; ++t)
    r.insert(r.end(), base.begin(), base.end());
  return word_reduce(r);
}

Int word_length(const GroupWord &w) {
  Int n = 0;
  for (const auto &l : w)
    n += abs(l.exp);
  return n;
}

} // namespace malcev
