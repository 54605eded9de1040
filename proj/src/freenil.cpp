#include "malcev/freenil.hpp"

#include "malcev/collection.hpp"

#include "check.hpp"

#include <map>
#include <numeric>

namespace malcev {

namespace {

/* free associative Z-algebra on r symbols, truncated beyond degree c;
   basis monomials are words over 1..r of length <= c */
struct Alg {
  int r, c;
  std::vector<size_t> start; /* start[l] = index of first length-l monomial */
  std::vector<size_t> rpow;
  size_t dim;

  Alg(int r_, int c_) : r(r_), c(c_) {
    start.resize(c + 2);
    rpow.resize(c + 1);
    size_t p = 1, s = 0;
    for (int l = 0; l <= c; ++l) {
      rpow[l] = p;
      start[l] = s;
      s += p;
      if (s > 300000)
        throw std::invalid_argument(
            "free_nilpotent: truncated algebra would be too large");
      p *= r;
    }
    start[c + 1] = s;
    dim = s;
  }

  int len_of(size_t idx) const {
    int l = 0;
    while (start[l + 1] <= idx)
      ++l;
    return l;
  }

  using Elem = std::vector<Int>;

  Elem zero() const { return Elem(dim); }
  Elem one() const {
    Elem e(dim);
    e[0] = 1;
    return e;
  }
  Elem gen_unit(int i) const { /* 1 + X_i */
    Elem e = one();
    e[start[1] + (i - 1)] = 1;
    return e;
  }

  Elem mul(const Elem &x, const Elem &y) const {
    Elem z(dim);
    for (size_t iu = 0; iu < dim; ++iu) {
      if (x[iu] == 0)
        continue;
      int lu = len_of(iu);
      size_t ou = iu - start[lu];
      for (size_t iv = 0; iv < dim; ++iv) {
        if (y[iv] == 0)
          continue;
        int lv = len_of(iv);
        if (lu + lv > c)
          continue;
        size_t ov = iv - start[lv];
        z[start[lu + lv] + ou * rpow[lv] + ov] += x[iu] * y[iv];
      }
    }
    return z;
  }

  /* inverse of a unit 1 + n with n of positive degree */
  Elem inv(const Elem &u) const {
    MALCEV_CHECK(u[0] == 1, "magnus: not a group unit");
    Elem n = u;
    n[0] = 0;
    Elem acc = one(), term = one();
    for (int k = 1; k <= c; ++k) {
      term = mul(term, n);
      if (k % 2)
        for (size_t i = 0; i < dim; ++i)
          acc[i] -= term[i];
      else
        for (size_t i = 0; i < dim; ++i)
          acc[i] += term[i];
    }
    return acc;
  }

  Elem pow(const Elem &u, const Int &e) const {
    Elem base = e < 0 ? inv(u) : u;
    Int n = abs(e);
    Elem r_ = one();
    size_t bits = n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t k = 0; k < bits; ++k) {
      if (mpz_tstbit(n.get_mpz_t(), k))
        r_ = mul(r_, base);
      if (k + 1 < bits)
        base = mul(base, base);
    }
    return r_;
  }

  Elem comm(const Elem &x, const Elem &y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  Elem lie(const Elem &x, const Elem &y) const {
    Elem a = mul(x, y), b = mul(y, x);
    for (size_t i = 0; i < dim; ++i)
      a[i] -= b[i];
    return a;
  }
};

struct HallElem {
  int wt;
  int left = 0, right = 0; /* 1-based indices into the basis, 0 for gens */
  int gen = 0;             /* free generator number for weight 1 */
};

/* classical Hall family: [u,v] is basic iff u > v and, when u = [u1,u2],
   u2 <= v; ordered by weight, then by construction order */
std::vector<HallElem> hall_basis(int cls, int rank) {
  std::vector<HallElem> basis;
  for (int i = 1; i <= rank; ++i)
    basis.push_back({1, 0, 0, i});
  for (int w = 2; w <= cls; ++w) {
    size_t upto = basis.size();
    for (size_t b = 0; b < upto; ++b)
      for (size_t a = b + 1; a < upto; ++a) {
        if (basis[a].wt + basis[b].wt != w)
          continue;
        if (basis[a].left != 0 &&
            static_cast<size_t>(basis[a].right) > b + 1)
          continue;
        basis.push_back({w, static_cast<int>(a + 1), static_cast<int>(b + 1),
                         0});
      }
  }
  return basis;
}

struct Magnus {
  Alg A;
  std::vector<HallElem> basis;
  std::vector<Alg::Elem> mu;     /* group units of the basic commutators */
  std::vector<Alg::Elem> lambda; /* Lie elements, homogeneous */
  int m;

  Magnus(int cls, int rank) : A(rank, cls), basis(hall_basis(cls, rank)) {
    m = static_cast<int>(basis.size());
    mu.reserve(m);
    lambda.reserve(m);
    for (const HallElem &h : basis) {
      if (h.left == 0) {
        mu.push_back(A.gen_unit(h.gen));
        Alg::Elem l = A.zero();
        l[A.start[1] + (h.gen - 1)] = 1;
        lambda.push_back(std::move(l));
      } else {
        mu.push_back(A.comm(mu[h.left - 1], mu[h.right - 1]));
        lambda.push_back(A.lie(lambda[h.left - 1], lambda[h.right - 1]));
      }
    }
  }

  /* solve sum alpha_k lambda_k = y at one homogeneous degree, over Q,
     then demand integrality; the lambda_k are independent over Z */
  void solve_weight(int w, const Alg::Elem &U, std::vector<Int> &alpha) const {
    std::vector<int> ks;
    for (int k = 0; k < m; ++k)
      if (basis[k].wt == w)
        ks.push_back(k);
    const size_t rows = A.rpow[w], off = A.start[w];
    const size_t cols = ks.size();
    std::vector<std::vector<mpq_class>> M(rows,
                                          std::vector<mpq_class>(cols + 1));
    for (size_t r_ = 0; r_ < rows; ++r_) {
      for (size_t c_ = 0; c_ < cols; ++c_)
        M[r_][c_] = lambda[ks[c_]][off + r_];
      M[r_][cols] = U[off + r_];
    }
    /* rational elimination */
    size_t lead = 0;
    std::vector<long> pivot_of_col(cols, -1);
    for (size_t c_ = 0; c_ < cols && lead < rows; ++c_) {
      size_t p = lead;
      while (p < rows && M[p][c_] == 0)
        ++p;
      if (p == rows)
        continue;
      std::swap(M[p], M[lead]);
      mpq_class d = M[lead][c_];
      for (auto &x : M[lead])
        x /= d;
      for (size_t r_ = 0; r_ < rows; ++r_) {
        if (r_ == lead || M[r_][c_] == 0)
          continue;
        mpq_class f = M[r_][c_];
        for (size_t j = 0; j <= cols; ++j)
          M[r_][j] -= f * M[lead][j];
      }
      pivot_of_col[c_] = static_cast<long>(lead);
      ++lead;
    }
    for (size_t r_ = lead; r_ < rows; ++r_)
      MALCEV_CHECK(M[r_][cols] == 0,
                   "magnus: element outside the group image");
    for (size_t c_ = 0; c_ < cols; ++c_) {
      MALCEV_CHECK(pivot_of_col[c_] >= 0, "magnus: dependent basis column");
      mpq_class v = M[pivot_of_col[c_]][cols];
      MALCEV_CHECK(v.get_den() == 1, "magnus: non-integral coordinate");
      alpha[ks[c_]] = v.get_num();
    }
  }

  /* peel a unit into Hall-basis normal form coordinates */
  std::vector<Int> readout(Alg::Elem U) const {
    std::vector<Int> alpha(m);
    for (int w = 1; w <= A.c; ++w) {
      solve_weight(w, U, alpha);
      Alg::Elem head = A.one();
      bool any = false;
      for (int k = 0; k < m; ++k)
        if (basis[k].wt == w && alpha[k] != 0) {
          head = A.mul(head, A.pow(mu[k], alpha[k]));
          any = true;
        }
      if (any)
        U = A.mul(A.inv(head), U);
    }
    MALCEV_CHECK(U == A.one(), "magnus: residue after readout");
    return alpha;
  }
};

} // namespace

Presentation free_nilpotent(int cls, int rank) {
  if (cls < 1 || rank < 1)
    throw std::invalid_argument("free_nilpotent: class and rank must be >= 1");
  Magnus M(cls, rank);
  const int m = M.m;

  PresentationData d;
  d.resize(m);
  for (int k = 0; k < m; ++k) {
    d.weight[k] = M.basis[k].wt;
    if (M.basis[k].left == 0)
      d.names[k] = "x" + std::to_string(M.basis[k].gen);
  }
  for (int i = 1; i < m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      if (M.basis[i - 1].wt + M.basis[j - 1].wt > cls)
        continue; /* the commutator is trivial by class */
      std::vector<Int> alpha = M.readout(M.A.comm(M.mu[j - 1], M.mu[i - 1]));
      BlockList t;
      for (int k = 0; k < m; ++k)
        if (alpha[k] != 0) {
          MALCEV_CHECK(k + 1 > j, "free_nilpotent: tail not above j");
          t.push_back({k + 1, alpha[k]});
        }
      d.conj[i - 1][j - 1] = std::move(t);
    }
  return Presentation(std::move(d));
}

std::vector<Int> magnus_coords(int cls, int rank, const GroupWord &w) {
  Magnus M(cls, rank);
  Alg::Elem u = M.A.one();
  for (const Letter &l : w) {
    if (l.gen < 1 || l.gen > M.m)
      throw std::invalid_argument("magnus_coords: letter out of range");
    u = M.A.mul(u, M.A.pow(M.mu[l.gen - 1], l.exp));
  }
  return M.readout(std::move(u));
}

Coords FpGroup::rep(const Coords &f) const {
  Coords cur = f;
  for (int k = 1; k <= closure.size(); ++k) {
    int p = closure.pivot(k);
    Int q = fdiv_q(cur[p], closure.pivot_entry(k));
    if (q != 0)
      cur = multiply(free, power(free, closure.row(k), -q), cur);
  }
  return cur;
}

Coords FpGroup::project(const Coords &f) const {
  Coords r = rep(f);
  Coords out(static_cast<int>(keep.size()));
  int at = 0;
  for (int i = 1; i <= free.size(); ++i) {
    if (at < static_cast<int>(keep.size()) && keep[at] == i)
      out[++at] = r[i];
    else
      MALCEV_CHECK(r[i] == 0, "fp: representative touches a dropped index");
  }
  return out;
}

Coords FpGroup::eval(const GroupWord &w) const {
  for (const Letter &l : w)
    MALCEV_CHECK(l.gen >= 1 && l.gen <= rank, "fp: word letter outside X");
  return project(word_to_coords(free, w));
}

FpGroup from_finite_presentation(int rank, const std::vector<GroupWord> &relators,
                                 int cls) {
  Presentation F = free_nilpotent(cls, rank);
  const int m = F.size();
  for (const GroupWord &r : relators)
    for (const Letter &l : r)
      if (l.gen < 1 || l.gen > rank)
        throw std::invalid_argument("from_finite_presentation: relator letter "
                                    "outside the generator list");

  /* iterated commutators [r, y_1, ..., y_j]: brackets beyond j = cls-1
     vanish by class */
  std::vector<Coords> gens;
  std::vector<int> comm_rel;
  std::vector<GroupWord> comm_xs;
  std::map<Coords, bool> seen;
  std::vector<std::pair<Coords, GroupWord>> level;
  for (int t = 1; t <= static_cast<int>(relators.size()); ++t) {
    level.assign(1, {word_to_coords(F, relators[t - 1]), GroupWord{}});
    for (int depth = 0; depth < cls; ++depth) {
      std::vector<std::pair<Coords, GroupWord>> next;
      for (auto &[val, xs] : level) {
        if (val.is_identity())
          continue;
        if (!seen[val]) {
          seen[val] = true;
          gens.push_back(val);
          comm_rel.push_back(t);
          comm_xs.push_back(xs);
        }
        if (depth + 1 == cls)
          continue;
        for (int x = 1; x <= rank; ++x)
          for (int sg : {1, -1}) {
            Coords c = commutator(F, val, power(F, unit(F, x), sg));
            if (c.is_identity())
              continue;
            GroupWord nxs = xs;
            nxs.push_back({x, sg});
            next.emplace_back(std::move(c), std::move(nxs));
          }
      }
      level = std::move(next);
    }
  }

  Subgroup N(F, gens);

  std::vector<int> keep;
  std::vector<Int> pivot_of(m + 1, Int(0)); /* pivot entry at free index, 0 if none */
  for (int k = 1; k <= N.size(); ++k)
    pivot_of[N.pivot(k)] = N.pivot_entry(k);
  for (int i = 1; i <= m; ++i)
    if (pivot_of[i] != 1)
      keep.push_back(i);
  std::vector<int> pos(m + 1, 0); /* free index -> 1-based kept position */
  for (size_t k = 0; k < keep.size(); ++k)
    pos[keep[k]] = static_cast<int>(k) + 1;

  FpGroup gp{rank,  cls,          relators,
             F,     Presentation{}, keep,
             {},    std::move(N), std::move(comm_rel),
             std::move(comm_xs)};

  auto tail_of = [&](const Coords &f, int lo_free) {
    Coords r = gp.rep(f);
    BlockList t;
    for (int i = 1; i <= m; ++i) {
      if (r[i] == 0)
        continue;
      MALCEV_CHECK(i > lo_free && pos[i] > 0, "fp: tail below its relation");
      t.push_back({pos[i], r[i]});
    }
    return t;
  };

  const int mq = static_cast<int>(keep.size());
  PresentationData d;
  d.resize(mq);
  for (int k = 1; k <= mq; ++k) {
    int i = keep[k - 1];
    d.weight[k - 1] = F.weight(i);
    d.names[k - 1] = F.name(i);
    if (pivot_of[i] != 0) {
      d.torsion[k - 1] = pivot_of[i];
      d.power_tail[k - 1] = tail_of(power(F, unit(F, i), pivot_of[i]), i);
    }
  }
  for (int k = 1; k < mq; ++k)
    for (int l = k + 1; l <= mq; ++l) {
      int i = keep[k - 1], j = keep[l - 1];
      d.conj[k - 1][l - 1] = tail_of(commutator(F, unit(F, j), unit(F, i)), j);
      d.conj_inv[k - 1][l - 1] =
          tail_of(commutator(F, invert(F, unit(F, j)), unit(F, i)), j);
    }
  gp.quotient = Presentation(std::move(d));
  MALCEV_CHECK(check_consistency(gp.quotient).consistent,
               "fp: derived presentation is inconsistent");

  gp.gen_image.reserve(rank);
  for (int t = 1; t <= rank; ++t)
    gp.gen_image.push_back(gp.project(unit(F, t)));
  return gp;
}

} // namespace malcev
