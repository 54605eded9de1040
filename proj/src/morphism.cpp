#include "malcev/morphism.hpp"

#include "check.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace malcev {

Coords eval_word(const Presentation &P, const GroupWord &w,
                 const std::vector<Coords> &vals) {
  Coords acc = identity(P);
  for (const Letter &l : w) {
    MALCEV_CHECK(l.gen >= 1 && l.gen <= static_cast<int>(vals.size()),
                 "eval_word: letter outside the value list");
    acc = multiply(P, acc, power(P, vals[l.gen - 1], l.exp));
  }
  return acc;
}

Coords ProductGroup::embed_h(const Coords &x) const {
  MALCEV_CHECK(x.size() == mh, "product: bad h-factor size");
  Coords p(mh + mg);
  for (int i = 1; i <= mh; ++i)
    p[i] = x[i];
  return p;
}

Coords ProductGroup::embed_g(const Coords &x) const {
  MALCEV_CHECK(x.size() == mg, "product: bad g-factor size");
  Coords p(mh + mg);
  for (int i = 1; i <= mg; ++i)
    p[mh + i] = x[i];
  return p;
}

Coords ProductGroup::slice_h(const Coords &p) const {
  MALCEV_CHECK(p.size() == mh + mg, "product: bad product size");
  Coords x(mh);
  for (int i = 1; i <= mh; ++i)
    x[i] = p[i];
  return x;
}

Coords ProductGroup::slice_g(const Coords &p) const {
  MALCEV_CHECK(p.size() == mh + mg, "product: bad product size");
  Coords x(mg);
  for (int i = 1; i <= mg; ++i)
    x[i] = p[mh + i];
  return x;
}

ProductGroup direct_product(const Presentation &h, const Presentation &g) {
  const int mh = h.size(), mg = g.size();
  const int scale = std::max(h.cls(), 1);

  PresentationData d;
  d.resize(mh + mg);
  auto shift = [&](const BlockList &t) {
    BlockList s = t;
    for (Block &b : s)
      b.gen += mh;
    return s;
  };
  for (int i = 1; i <= mh; ++i) {
    d.weight[i - 1] = h.weight(i);
    d.torsion[i - 1] = h.torsion_exponent(i);
    d.power_tail[i - 1] = h.power_tail(i);
  }
  for (int i = 1; i <= mg; ++i) {
    d.weight[mh + i - 1] = scale * g.weight(i);
    d.torsion[mh + i - 1] = g.torsion_exponent(i);
    d.power_tail[mh + i - 1] = shift(g.power_tail(i));
  }
  for (int i = 1; i < mh; ++i)
    for (int j = i + 1; j <= mh; ++j) {
      d.conj[i - 1][j - 1] = h.conj_tail(i, j);
      d.conj_inv[i - 1][j - 1] = h.conj_inv_tail(i, j);
    }
  for (int i = 1; i < mg; ++i)
    for (int j = i + 1; j <= mg; ++j) {
      d.conj[mh + i - 1][mh + j - 1] = shift(g.conj_tail(i, j));
      d.conj_inv[mh + i - 1][mh + j - 1] = shift(g.conj_inv_tail(i, j));
    }

  ProductGroup prod{Presentation(std::move(d)), h, g, mh, mg};
  MALCEV_CHECK(check_consistency(prod.group).consistent,
               "product: inconsistent result");
  return prod;
}

KernelImage::KernelImage(Homomorphism phi)
    : phi_(std::move(phi)),
      prod_(direct_product(phi_.target, phi_.source)) {
  MALCEV_CHECK(phi_.gen.size() == phi_.img.size(),
               "homomorphism: generator/image count mismatch");
  std::vector<Coords> pts;
  pts.reserve(phi_.gen.size());
  for (size_t i = 0; i < phi_.gen.size(); ++i)
    pts.push_back(multiply(prod_.group, prod_.embed_h(phi_.img[i]),
                           prod_.embed_g(phi_.gen[i])));
  graph_.emplace(prod_.group, pts);

  const int s = graph_->size();
  r_ = 0;
  for (int k = 1; k <= s; ++k)
    if (graph_->pivot(k) <= prod_.mh)
      r_ = k;

  std::vector<Coords> xs, ys;
  for (int k = 1; k <= r_; ++k)
    ys.push_back(row_target(k));
  for (int k = r_ + 1; k <= s; ++k) {
    MALCEV_CHECK(row_target(k).is_identity(), "kernel: nonzero target slice");
    xs.push_back(row_source(k));
  }
  kernel_.emplace(phi_.source, xs);
  image_.emplace(phi_.target, ys);
  /* the slices are already full forms; rebuilding must reproduce them */
  MALCEV_CHECK(kernel_->size() == s - r_, "kernel: slice is not a full form");
  for (int k = 1; k <= kernel_->size(); ++k)
    MALCEV_CHECK(kernel_->row(k) == row_source(r_ + k),
                 "kernel: slice is not a full form");
  MALCEV_CHECK(image_->size() == r_, "image: slice is not a full form");
  for (int k = 1; k <= image_->size(); ++k)
    MALCEV_CHECK(image_->row(k) == row_target(k),
                 "image: slice is not a full form");

  domain_.emplace(phi_.source, phi_.gen);
}

Coords KernelImage::row_source(int k) const {
  return prod_.slice_g(graph_->row(k));
}

Coords KernelImage::row_target(int k) const {
  return prod_.slice_h(graph_->row(k));
}

std::optional<Coords> KernelImage::preimage(const Coords &h) const {
  MALCEV_CHECK(h.size() == phi_.target.size(), "preimage: bad element size");
  auto beta = image_->decompose(h);
  if (!beta)
    return std::nullopt;
  Coords p = identity(prod_.group);
  Coords g = identity(phi_.source);
  for (int k = 1; k <= r_; ++k) {
    p = multiply(prod_.group, p,
                 power(prod_.group, graph_->row(k), (*beta)[k - 1]));
    g = multiply(phi_.source, g,
                 power(phi_.source, row_source(k), (*beta)[k - 1]));
  }
  MALCEV_CHECK(prod_.slice_h(p) == h, "preimage: target slice mismatch");
  MALCEV_CHECK(prod_.slice_g(p) == g, "preimage: source slice mismatch");
  if (auto back = apply(g))
    MALCEV_CHECK(*back == h, "preimage: phi(g) != h");
  return g;
}

std::optional<Coords> KernelImage::apply(const Coords &g) const {
  auto w = domain_->express(g);
  if (!w)
    return std::nullopt;
  return eval_word(phi_.target, *w, phi_.img);
}

namespace {

/* [r, x_1, ..., x_j] as a product of conjugates of r^{+-1}, through
   [u, x] = u^{-1} u^x */
std::vector<WitnessTerm> expand_comm(const FpGroup &gp, int k) {
  std::vector<WitnessTerm> E{{gp.comm_rel[k - 1], 1, {}}};
  for (const Letter &x : gp.comm_xs[k - 1]) {
    std::vector<WitnessTerm> out;
    out.reserve(E.size() * 2);
    for (auto it = E.rbegin(); it != E.rend(); ++it)
      out.push_back({it->relator, -it->sign, it->conj});
    for (const WitnessTerm &t : E) {
      WitnessTerm c = t;
      c.conj.push_back(x);
      c.conj = word_reduce(c.conj);
      out.push_back(std::move(c));
    }
    E = std::move(out);
  }
  return E;
}

} // namespace

WordWitness word_witness(const FpGroup &gp, const GroupWord &w) {
  Coords f = word_to_coords(gp.free, w);
  WordWitness out;
  out.coords = gp.project(f);
  if (!out.coords.is_identity())
    return out;
  out.trivial = true;

  auto expr = gp.closure.express(f);
  MALCEV_CHECK(expr.has_value(), "word_witness: expression tracking lost");
  for (const Letter &l : *expr) {
    std::vector<WitnessTerm> base = expand_comm(gp, l.gen);
    long e = to_long(l.exp, "word_witness exponent");
    if (e < 0) {
      std::reverse(base.begin(), base.end());
      for (WitnessTerm &t : base)
        t.sign = -t.sign;
      e = -e;
    }
    for (long i = 0; i < e; ++i)
      out.terms.insert(out.terms.end(), base.begin(), base.end());
  }

  Coords acc = identity(gp.free);
  for (const WitnessTerm &t : out.terms) {
    Coords rel = word_to_coords(gp.free, gp.relators[t.relator - 1]);
    if (t.sign < 0)
      rel = invert(gp.free, rel);
    acc = multiply(gp.free, acc,
                   conjugate(gp.free, rel, word_to_coords(gp.free, t.conj)));
  }
  MALCEV_CHECK(acc == f, "word_witness: conjugate product mismatch");
  return out;
}

namespace {

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos)
    return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

Homomorphism parse_homomorphism(std::istream &in, const std::string &dir,
                                const std::string &what) {
  auto fail = [&](int line, const std::string &msg) -> void {
    throw parse_error(what + ":" + std::to_string(line) + ": " + msg);
  };
  auto resolve = [&](const std::string &p) {
    std::filesystem::path q(p);
    if (q.is_relative() && !dir.empty())
      q = std::filesystem::path(dir) / q;
    return q.string();
  };

  std::optional<Presentation> src, tgt;
  std::vector<Coords> gen, img;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (kw == "source" || kw == "target") {
      if (rest.empty())
        fail(ln, kw + " needs a file path");
      auto &slot = (kw == "source") ? src : tgt;
      if (slot)
        fail(ln, "duplicate " + kw + " line");
      slot = load_presentation(resolve(rest));
    } else if (kw == "map") {
      if (!src || !tgt)
        fail(ln, "map before source/target");
      auto arrow = rest.find("->");
      if (arrow == std::string::npos)
        fail(ln, "map needs `->`");
      std::string lhs = trim(rest.substr(0, arrow));
      std::string rhs = trim(rest.substr(arrow + 2));
      try {
        gen.push_back(word_to_coords(
            *src, parse_word(lhs, src->size(), src->names())));
        img.push_back(word_to_coords(
            *tgt, parse_word(rhs, tgt->size(), tgt->names())));
      } catch (const parse_error &e) {
        fail(ln, e.what());
      }
    } else {
      fail(ln, "unknown directive: " + kw);
    }
  }
  if (!src || !tgt)
    throw parse_error(what + ": missing source or target line");
  return Homomorphism{std::move(*src), std::move(*tgt), std::move(gen),
                      std::move(img)};
}

Homomorphism load_homomorphism(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw parse_error("cannot open " + path);
  return parse_homomorphism(f, std::filesystem::path(path).parent_path().string(),
                            path);
}

} // namespace malcev
