#pragma once

#include <stdexcept>
#include <string>

/* internal invariants; these are cheap and stay on in release builds */
#define MALCEV_CHECK(cond, msg)                                                \
  do {                                                                         \
    if (!(cond))                                                               \
      throw std::logic_error(std::string("internal check failed: ") + (msg)); \
  } while (0)
