/* Collection benchmark: serial vs chunked-parallel word_to_coords on long
   words, plus the naive pushdown collector on short ones.  The naive
   collector materializes every intermediate letter, and a weight-w
   coordinate holds ~n^w of them, so it only gets the warm-up table.
   Outputs are cross-checked; any mismatch fails the run. */

#include "malcev/collection.hpp"
#include "malcev/freenil.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace malcev;

static GroupWord random_word(std::mt19937_64 &rng, int ngens, long nletters) {
  GroupWord w;
  w.reserve(nletters);
  for (long k = 0; k < nletters; ++k)
    w.push_back(Letter{1 + static_cast<int>(rng() % ngens),
                       rng() % 2 ? 1 : -1});
  return w;
}

template <typename F> static double ms(F f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char **argv) {
  int max_exp = 19;
  unsigned long seed = 42;
  if (argc > 1) {
    if (std::string(argv[1]) == "-h" || std::string(argv[1]) == "--help") {
      std::printf("usage: bench_collect [max-length-exponent] [seed]\n"
                  "long words run at lengths 2^12 .. 2^max (default 19)\n");
      return 0;
    }
    max_exp = std::atoi(argv[1]);
  }
  if (argc > 2)
    seed = std::strtoul(argv[2], nullptr, 10);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled\n");
#endif

  struct Case {
    const char *name;
    Presentation pres;
    int naive_max;
  };
  std::vector<Case> cases;
  cases.push_back({"free(c2,r2)", free_nilpotent(2, 2), 256});
  cases.push_back({"free(c3,r2)", free_nilpotent(3, 2), 64});
  cases.push_back({"free(c2,r3)", free_nilpotent(2, 3), 256});

  std::printf("\nnaive pushdown vs collection, short words\n");
  std::printf("%-12s %8s %12s %12s %7s\n", "group", "length", "naive ms",
              "serial ms", "match");
  for (const Case &c : cases) {
    std::mt19937_64 rng(seed);
    for (long n = 16; n <= c.naive_max; n *= 4) {
      GroupWord w = random_word(rng, c.pres.size(), n);
      Coords serial, naive;
      double tn = ms([&] { naive = collect_reference(c.pres, w); });
      double ts = ms([&] { serial = word_to_coords(c.pres, w); });
      bool match = serial == naive;
      std::printf("%-12s %8ld %12.2f %12.3f %7s\n", c.name, n, tn, ts,
                  match ? "yes" : "NO");
      if (!match)
        return 1;
    }
  }

  std::printf("\nserial vs chunked parallel, long words\n");
  std::printf("%-12s %10s %12s %12s %9s %7s\n", "group", "length",
              "serial ms", "parallel ms", "speedup", "match");
  for (const Case &c : cases) {
    std::mt19937_64 rng(seed + 1);
    for (int e = 12; e <= max_exp; ++e) {
      long n = 1L << e;
      GroupWord w = random_word(rng, c.pres.size(), n);
      Coords serial, parallel;
      double ts = ms([&] { serial = word_to_coords(c.pres, w); });
      double tp = ms([&] { parallel = word_to_coords_parallel(c.pres, w); });
      bool match = serial == parallel;
      std::printf("%-12s %10ld %12.2f %12.2f %8.2fx %7s\n", c.name, n, ts, tp,
                  tp > 0 ? ts / tp : 0.0, match ? "yes" : "NO");
      if (!match)
        return 1;
    }
  }
  return 0;
}
