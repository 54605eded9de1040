#pragma once

#include "malcev/bigint.hpp"

#include <string>
#include <vector>

namespace malcev {

/* one letter a_gen^exp of a word; gen is 1-based */
struct Letter {
  int gen = 0;
  Int exp = 0;

  bool operator==(const Letter &o) const {
    return gen == o.gen && exp == o.exp;
  }
};

using GroupWord = std::vector<Letter>;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Words are whitespace-separated tokens "a3", "a3^-2", or a declared
   generator name with an optional ^exponent.  names may be empty. */
GroupWord parse_word(const std::string &text, int ngens,
                     const std::vector<std::string> &names = {});

std::string format_word(const GroupWord &w,
                        const std::vector<std::string> &names = {});

/* merge adjacent letters with equal generator, drop zero exponents */
GroupWord word_reduce(const GroupWord &w);

GroupWord word_inverse(const GroupWord &w);

GroupWord word_power(const GroupWord &w, const Int &n);

/* sum of |exp| */
Int word_length(const GroupWord &w);

} // namespace malcev
