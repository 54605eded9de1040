#include "malcev/conjugacy.hpp"

#include "check.hpp"

namespace malcev {

Presentation truncate_top(const Presentation &P) {
  const int m = P.size(), mq = m - P.top_weight_count();
  auto strip = [&](const BlockList &t) {
    BlockList s;
    for (const Block &b : t)
      if (b.gen <= mq)
        s.push_back(b);
    return s;
  };
  PresentationData d;
  d.resize(mq);
  for (int i = 1; i <= mq; ++i) {
    d.weight[i - 1] = P.weight(i);
    d.torsion[i - 1] = P.torsion_exponent(i);
    d.power_tail[i - 1] = strip(P.power_tail(i));
    d.names[i - 1] = P.name(i);
  }
  for (int i = 1; i < mq; ++i)
    for (int j = i + 1; j <= mq; ++j) {
      d.conj[i - 1][j - 1] = strip(P.conj_tail(i, j));
      d.conj_inv[i - 1][j - 1] = strip(P.conj_inv_tail(i, j));
    }
  return Presentation(std::move(d));
}

namespace {

/* all conj tails empty: conjugation is trivial, so conjugacy is equality */
bool abelian_presentation(const Presentation &P) {
  for (int i = 1; i < P.size(); ++i)
    for (int j = i + 1; j <= P.size(); ++j)
      if (!P.conj_tail(i, j).empty())
        return false;
  return true;
}

} // namespace

ConjugacySolver::ConjugacySolver(Presentation P) {
  levels_.push_back({std::move(P), 0, 0, Presentation{}});
  for (;;) {
    Level &cur = levels_.back();
    cur.m = cur.pres.size();
    if (abelian_presentation(cur.pres))
      break;
    cur.mtop = cur.pres.top_weight_count();
    std::vector<Coords> tops;
    for (int i = cur.m - cur.mtop + 1; i <= cur.m; ++i)
      tops.push_back(unit(cur.pres, i));
    cur.gamma = Subgroup(cur.pres, tops).presentation();
    Presentation next = truncate_top(cur.pres);
    MALCEV_CHECK(check_consistency(next).consistent,
                 "conjugacy: inconsistent truncation");
    levels_.push_back({std::move(next), 0, 0, Presentation{}});
  }
  const Level &deep = levels_.back();
  std::vector<Coords> all;
  for (int i = 1; i <= deep.m; ++i)
    all.push_back(unit(deep.pres, i));
  deepest_all_.emplace(deep.pres, all);
}

Coords ConjugacySolver::prefix(const Coords &g, int lvl) const {
  Coords out(levels_[lvl].m);
  for (int i = 1; i <= out.size(); ++i)
    out[i] = g[i];
  return out;
}

Coords ConjugacySolver::pad(const Coords &g, int lvl) const {
  Coords out(levels_[lvl].m);
  for (int i = 1; i <= g.size(); ++i)
    out[i] = g[i];
  return out;
}

/* coordinates of a top-block element in the gamma presentation */
Coords ConjugacySolver::gamma_part(const Coords &g, int lvl) const {
  const Level &L = levels_[lvl];
  Coords out(L.mtop);
  for (int i = 1; i <= L.m; ++i) {
    if (i <= L.m - L.mtop)
      MALCEV_CHECK(g[i] == 0, "conjugacy: element not in the top block");
    else
      out[i - (L.m - L.mtop)] = g[i];
  }
  return out;
}

const KernelImage &ConjugacySolver::machinery(int lvl, const Coords &z) {
  const int t = static_cast<int>(levels_.size()) - 1;
  for (int k = t - 1; k >= lvl; --k) {
    Coords zk = prefix(z, k);
    auto key = std::make_pair(k, zk);
    if (memo_.count(key))
      continue;
    const Level &L = levels_[k];
    std::vector<Coords> below;
    if (k + 1 == t) {
      for (int r = 1; r <= deepest_all_->size(); ++r)
        below.push_back(deepest_all_->row(r));
    } else {
      const Subgroup &kr = memo_.at({k + 1, prefix(z, k + 1)}).kernel();
      for (int r = 1; r <= kr.size(); ++r)
        below.push_back(kr.row(r));
    }
    std::vector<Coords> gens;
    for (const Coords &b : below)
      gens.push_back(pad(b, k));
    for (int i = L.m - L.mtop + 1; i <= L.m; ++i)
      gens.push_back(unit(L.pres, i));
    Subgroup J(L.pres, gens);
    std::vector<Coords> dom, img;
    for (int r = 1; r <= J.size(); ++r) {
      dom.push_back(J.row(r));
      img.push_back(gamma_part(commutator(L.pres, zk, J.row(r)), k));
    }
    memo_.emplace(std::move(key),
                  KernelImage(Homomorphism{L.pres, L.gamma, std::move(dom),
                                           std::move(img)}));
  }
  return memo_.at({lvl, prefix(z, lvl)});
}

Subgroup ConjugacySolver::centralizer(const Coords &g) {
  MALCEV_CHECK(g.size() == levels_[0].m, "centralizer: bad element size");
  if (levels_.size() == 1)
    return *deepest_all_;
  Subgroup C = machinery(0, g).kernel();
  for (int r = 1; r <= C.size(); ++r)
    MALCEV_CHECK(commutator(levels_[0].pres, g, C.row(r)).is_identity(),
                 "centralizer: row does not commute");
  return C;
}

std::optional<Coords> ConjugacySolver::conjugator(const Coords &g,
                                                  const Coords &h) {
  const Presentation &P = levels_[0].pres;
  MALCEV_CHECK(g.size() == levels_[0].m && h.size() == levels_[0].m,
               "conjugacy: bad element size");
  const int t = static_cast<int>(levels_.size()) - 1;
  if (prefix(g, t) != prefix(h, t))
    return std::nullopt;
  Coords u = identity(levels_[t].pres);
  for (int l = t - 1; l >= 0; --l) {
    const Level &L = levels_[l];
    Coords v = pad(u, l);
    Coords gl = prefix(g, l), hl = prefix(h, l);
    Coords g1 = conjugate(L.pres, gl, v);
    if (g1 == hl) {
      u = std::move(v);
      continue;
    }
    const KernelImage &ki = machinery(l, g1);
    Coords d = multiply(L.pres, invert(L.pres, g1), hl);
    auto w = ki.preimage(gamma_part(d, l));
    if (!w)
      return std::nullopt;
    u = multiply(L.pres, v, *w);
    MALCEV_CHECK(conjugate(L.pres, gl, u) == hl, "conjugacy: bad lift");
  }
  MALCEV_CHECK(conjugate(P, g, u) == h, "conjugacy: unverified conjugator");
  return u;
}

Subgroup centralizer(const Presentation &P, const Coords &g) {
  ConjugacySolver s(P);
  return s.centralizer(g);
}

std::optional<Coords> conjugacy(const Presentation &P, const Coords &g,
                                const Coords &h) {
  ConjugacySolver s(P);
  return s.conjugator(g, h);
}

} // namespace malcev
