#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace malcev {

/* args excludes the program name.  Exit code: 0 computed, 1 negative
   decision (not a member / not conjugate / inconsistent / nontrivial /
   not well-defined), 2 malformed input. */
int run_cli(std::vector<std::string> args, std::ostream &out,
            std::ostream &err);

} // namespace malcev
