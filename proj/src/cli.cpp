#include "malcev/cli.hpp"

#include "malcev/collection.hpp"
#include "malcev/conjugacy.hpp"
#include "malcev/freenil.hpp"
#include "malcev/morphism.hpp"
#include "malcev/presentation.hpp"
#include "malcev/slp.hpp"
#include "malcev/subgroup.hpp"
#include "malcev/word.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace malcev {

namespace {

std::string trimmed(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos)
    return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Int parse_big(const std::string &tok) {
  std::string s = trimmed(tok);
  size_t p = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.empty() || p == s.size())
    throw parse_error("bad integer '" + tok + "'");
  for (; p < s.size(); ++p)
    if (!std::isdigit(static_cast<unsigned char>(s[p])))
      throw parse_error("bad integer '" + tok + "'");
  return Int(s);
}

/* a word over the group's generators, or a coordinate tuple when the
   argument starts with '(' */
Coords read_element(const Presentation &P, const std::string &tok) {
  std::string t = trimmed(tok);
  if (!t.empty() && t[0] == '(')
    return coords_reduce(P, parse_coords(t, P.size()));
  return word_to_coords(P, parse_word(t, P.size(), P.names()));
}

std::vector<Coords> read_elements(const Presentation &P,
                                  const std::vector<std::string> &toks) {
  std::vector<Coords> v;
  v.reserve(toks.size());
  for (const auto &t : toks)
    v.push_back(read_element(P, t));
  return v;
}

void print_element(std::ostream &out, const Presentation &P,
                   const Coords &g) {
  out << format_coords(g) << "\n"
      << format_word(to_word(g), P.names()) << "\n";
}

/* finite presentation file: `rank <r>`, optional `name <k> <s>` lines,
   then `rel <word>` lines; default names x1..xr */
struct FpFile {
  int rank = 0;
  std::vector<std::string> names;
  std::vector<GroupWord> relators;
};

FpFile load_fp_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw parse_error("cannot open " + path);
  FpFile fp;
  bool have_rank = false;
  std::vector<std::pair<int, std::string>> rel_lines;
  std::string line;
  int ln = 0;
  auto fail = [&](const std::string &msg) -> void {
    throw parse_error(path + ":" + std::to_string(ln) + ": " + msg);
  };
  while (std::getline(f, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trimmed(line);
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "rank") {
      if (have_rank)
        fail("duplicate rank line");
      std::string r;
      if (!(ls >> r))
        fail("usage: rank <n>");
      Int n = parse_big(r);
      if (n < 0 || n > 10000)
        fail("unreasonable rank");
      fp.rank = static_cast<int>(n.get_si());
      fp.names.assign(fp.rank, {});
      for (int k = 1; k <= fp.rank; ++k)
        fp.names[k - 1] = "x" + std::to_string(k);
      have_rank = true;
    } else if (kw == "name") {
      if (!have_rank)
        fail("name before rank");
      std::string ks, nm;
      if (!(ls >> ks >> nm))
        fail("usage: name <k> <identifier>");
      Int k = parse_big(ks);
      if (k < 1 || k > fp.rank)
        fail("generator index out of range");
      fp.names[k.get_si() - 1] = nm;
    } else if (kw == "rel") {
      if (!have_rank)
        fail("rel before rank");
      std::string rest;
      std::getline(ls, rest);
      rel_lines.emplace_back(ln, trimmed(rest));
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_rank)
    throw parse_error(path + ": missing rank line");
  for (const auto &rl : rel_lines) {
    ln = rl.first;
    try {
      fp.relators.push_back(parse_word(rl.second, fp.rank, fp.names));
    } catch (const parse_error &e) {
      fail(e.what());
    }
  }
  return fp;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream &out,
            std::ostream &err) {
  /* `--coords "(c1, ...)"` is accepted anywhere a word is; fold the flag
     into a bare tuple token, which read_element recognizes by the '(' */
  std::vector<std::string> argv;
  argv.reserve(args.size());
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--coords") {
      if (i + 1 == args.size()) {
        err << "error: --coords needs a value like \"(c1, c2, ...)\"\n";
        return 2;
      }
      std::string v = args[++i];
      if (trimmed(v).empty() || trimmed(v)[0] != '(') {
        err << "error: --coords value must look like (c1, c2, ...)\n";
        return 2;
      }
      argv.push_back(std::move(v));
    } else {
      argv.push_back(args[i]);
    }
  }

  CLI::App app{"exact computation in finitely generated nilpotent groups "
               "given by consistent nilpotent presentations"};
  app.name("malcev");
  app.require_subcommand(1);

  int rc = 0;

  std::string nf_group, nf_slp, nf_elem;
  auto *nf = app.add_subcommand(
      "nf", "normal form (coordinates and word) of a word or SLP");
  nf->add_option("-g,--group", nf_group, "presentation file")->required();
  nf->add_option("--slp", nf_slp, "read the element from an SLP file");
  nf->add_option("element", nf_elem, "word or coordinate tuple");
  nf->callback([&] {
    Presentation P = load_presentation(nf_group);
    bool have_word = nf->count("element") > 0;
    bool have_slp = nf->count("--slp") > 0;
    if (have_word == have_slp)
      throw parse_error(
          "nf needs exactly one element: a word/coords argument or --slp");
    Coords g = have_slp ? slp_to_coords(P, load_slp(nf_slp))
                        : read_element(P, nf_elem);
    print_element(out, P, g);
  });

  std::string mul_group;
  std::vector<std::string> mul_elems;
  auto *mul = app.add_subcommand("mul", "product of two or more elements");
  mul->add_option("-g,--group", mul_group, "presentation file")->required();
  mul->add_option("elements", mul_elems, "factors, left to right");
  mul->callback([&] {
    if (mul_elems.size() < 2)
      throw parse_error("mul needs at least two elements");
    Presentation P = load_presentation(mul_group);
    Coords g = read_element(P, mul_elems[0]);
    for (size_t k = 1; k < mul_elems.size(); ++k)
      g = multiply(P, g, read_element(P, mul_elems[k]));
    print_element(out, P, g);
  });

  std::string pow_group, pow_elem, pow_exp;
  auto *pw = app.add_subcommand("pow", "integer power of an element");
  pw->add_option("-g,--group", pow_group, "presentation file")->required();
  pw->add_option("element", pow_elem, "base element")->required();
  pw->add_option("exponent", pow_exp,
                 "signed decimal exponent (negative values go after --)")
      ->required();
  pw->callback([&] {
    Presentation P = load_presentation(pow_group);
    print_element(out, P,
                  power(P, read_element(P, pow_elem), parse_big(pow_exp)));
  });

  std::string cons_group;
  auto *cons =
      app.add_subcommand("consistency", "check the collection overlaps");
  cons->add_option("-g,--group", cons_group, "presentation file")->required();
  cons->callback([&] {
    Presentation P = load_presentation(cons_group);
    auto rep = check_consistency(P);
    if (rep.consistent) {
      out << "consistent\n";
    } else {
      out << "inconsistent at " << rep.overlap << ": witness "
          << format_word(rep.witness, P.names()) << "\n";
      rc = 1;
    }
  });

  int fn_c = 0, fn_r = 0;
  auto *fn = app.add_subcommand(
      "free-nilpotent", "free nilpotent presentation on Hall generators");
  fn->add_option("-c,--class", fn_c, "nilpotency class")->required();
  fn->add_option("-r,--rank", fn_r, "number of weight-1 generators")
      ->required();
  fn->callback([&] { out << free_nilpotent(fn_c, fn_r).serialize(); });

  int fq_c = 0;
  std::string fq_file;
  auto *fq = app.add_subcommand(
      "from-presentation",
      "class-c quotient of a finite presentation (rank/name/rel file)");
  fq->add_option("-c,--class", fq_c, "nilpotency class")->required();
  fq->add_option("file", fq_file, "finite presentation file")->required();
  fq->callback([&] {
    FpFile fp = load_fp_file(fq_file);
    FpGroup gp = from_finite_presentation(fp.rank, fp.relators, fq_c);
    for (int t = 1; t <= fp.rank; ++t)
      out << "# " << fp.names[t - 1] << " -> "
          << format_coords(gp.gen_image[t - 1]) << "\n";
    out << gp.quotient.serialize();
  });

  std::string ff_group;
  std::vector<std::string> ff_gens;
  auto *ff =
      app.add_subcommand("fullform", "canonical full form of a subgroup");
  ff->add_option("-g,--group", ff_group, "presentation file")->required();
  ff->add_option("generators", ff_gens, "subgroup generators");
  ff->callback([&] {
    Presentation P = load_presentation(ff_group);
    Subgroup S(P, read_elements(P, ff_gens));
    out << serialize_full_form(S);
  });

  std::string mem_group, mem_elem;
  std::vector<std::string> mem_sub;
  bool mem_express = false;
  auto *mem = app.add_subcommand(
      "member", "membership in a finitely generated subgroup");
  mem->add_option("-g,--group", mem_group, "presentation file")->required();
  mem->add_option("--sub", mem_sub, "subgroup generators");
  mem->add_flag("--express", mem_express,
                "also express the element over the input generators");
  mem->add_option("element", mem_elem, "element to test (goes after --)")
      ->required();
  mem->callback([&] {
    Presentation P = load_presentation(mem_group);
    Subgroup S(P, read_elements(P, mem_sub));
    Coords g = read_element(P, mem_elem);
    auto gamma = S.decompose(g);
    if (!gamma) {
      out << "NO\n";
      rc = 1;
      return;
    }
    Coords chk = identity(P);
    for (int k = 1; k <= S.size(); ++k)
      chk = multiply(P, chk, power(P, S.row(k), (*gamma)[k - 1]));
    if (chk != g)
      throw std::runtime_error("internal: membership witness failed to verify");
    Coords t;
    t.c = *gamma;
    out << "YES gamma = " << format_coords(t) << "\n";
    if (mem_express) {
      auto wexpr = S.express(g);
      if (wexpr) {
        std::vector<std::string> gnames;
        for (size_t k = 1; k <= mem_sub.size(); ++k)
          gnames.push_back("g" + std::to_string(k));
        out << "expr = " << format_word(*wexpr, gnames) << "\n";
      } else {
        out << "expr unavailable (expression tracking overflowed)\n";
      }
    }
  });

  std::string sp_group;
  std::vector<std::string> sp_gens;
  auto *sp = app.add_subcommand(
      "subpres", "consistent presentation of a subgroup on its full-form rows");
  sp->add_option("-g,--group", sp_group, "presentation file")->required();
  sp->add_option("generators", sp_gens, "subgroup generators");
  sp->callback([&] {
    Presentation P = load_presentation(sp_group);
    Subgroup S(P, read_elements(P, sp_gens));
    for (int k = 1; k <= S.size(); ++k)
      out << "# h" << k << " = " << format_coords(S.row(k)) << "\n";
    out << S.presentation().serialize();
  });

  std::string cg_group;
  auto *cg = app.add_subcommand(
      "compress-pres",
      "finite presentation with short relators via doubling generators");
  cg->add_option("-g,--group", cg_group, "presentation file")->required();
  cg->callback([&] {
    Presentation P = load_presentation(cg_group);
    auto cp = compress_presentation(P.size(), presentation_relators(P));
    out << "rank " << cp.total << "\n";
    out << "# " << cp.rank << " original generators, " << (cp.total - cp.rank)
        << " auxiliary\n";
    for (int k = 1; k <= cp.total; ++k)
      out << "name " << k << " " << cp.names[k - 1] << "\n";
    for (const auto &rel : cp.relators)
      out << "rel " << format_word(rel, cp.names) << "\n";
  });

  std::string ker_file;
  auto *ker =
      app.add_subcommand("kernel", "kernel full form of a homomorphism");
  ker->add_option("hom", ker_file, "homomorphism file")->required();
  ker->callback([&] {
    KernelImage ki(load_homomorphism(ker_file));
    out << serialize_full_form(ki.kernel());
  });

  std::string im_file, im_elem;
  auto *im = app.add_subcommand(
      "image", "image full form, or the image of one domain element");
  im->add_option("hom", im_file, "homomorphism file")->required();
  im->add_option("element", im_elem, "element of the domain subgroup");
  im->callback([&] {
    KernelImage ki(load_homomorphism(im_file));
    if (im->count("element") == 0) {
      out << serialize_full_form(ki.image());
      return;
    }
    const Presentation &src = ki.hom().source;
    Coords g = read_element(src, im_elem);
    Subgroup dom(src, ki.hom().gen);
    if (!dom.contains(g)) {
      out << "NO\n";
      rc = 1;
      return;
    }
    auto h = ki.apply(g);
    if (!h)
      throw std::runtime_error(
          "expression tracking unavailable for this element");
    print_element(out, ki.hom().target, *h);
  });

  std::string pre_file, pre_elem;
  auto *pre = app.add_subcommand(
      "preimage", "some domain element mapping to a given target element");
  pre->add_option("hom", pre_file, "homomorphism file")->required();
  pre->add_option("element", pre_elem, "element of the target")->required();
  pre->callback([&] {
    KernelImage ki(load_homomorphism(pre_file));
    Coords h = read_element(ki.hom().target, pre_elem);
    auto g = ki.preimage(h);
    if (!g) {
      out << "NO\n";
      rc = 1;
      return;
    }
    auto back = ki.apply(*g);
    if (back && *back != h)
      throw std::runtime_error("internal: preimage witness failed to verify");
    out << "YES g = " << format_word(to_word(*g), ki.hom().source.names())
        << "\n";
  });

  std::string ce_group, ce_elem;
  auto *ce =
      app.add_subcommand("centralizer", "centralizer full form of an element");
  ce->add_option("-g,--group", ce_group, "presentation file")->required();
  ce->add_option("element", ce_elem, "element")->required();
  ce->callback([&] {
    Presentation P = load_presentation(ce_group);
    out << serialize_full_form(centralizer(P, read_element(P, ce_elem)));
  });

  std::string cj_group, cj_g, cj_h;
  auto *cj = app.add_subcommand("conjugate", "find u with u^-1 g u = h");
  cj->add_option("-g,--group", cj_group, "presentation file")->required();
  cj->add_option("gelem", cj_g, "g")->required();
  cj->add_option("helem", cj_h, "h")->required();
  cj->callback([&] {
    Presentation P = load_presentation(cj_group);
    Coords g = read_element(P, cj_g), h = read_element(P, cj_h);
    auto u = conjugacy(P, g, h);
    if (!u) {
      out << "NO\n";
      rc = 1;
      return;
    }
    if (conjugate(P, g, *u) != h)
      throw std::runtime_error("internal: conjugator failed to verify");
    out << "YES u = " << format_word(to_word(*u), P.names()) << "\n";
  });

  int ww_c = 0;
  std::string ww_file, ww_word;
  auto *ww = app.add_subcommand(
      "witness-word",
      "triviality in the class-c quotient, with a relator-product witness");
  ww->add_option("-c,--class", ww_c, "nilpotency class")->required();
  ww->add_option("file", ww_file, "finite presentation file")->required();
  ww->add_option("word", ww_word, "word over the presentation's generators")
      ->required();
  ww->callback([&] {
    FpFile fp = load_fp_file(ww_file);
    FpGroup gp = from_finite_presentation(fp.rank, fp.relators, ww_c);
    GroupWord w = parse_word(ww_word, fp.rank, fp.names);
    WordWitness res = word_witness(gp, w);
    if (!res.trivial) {
      out << "NONTRIVIAL " << format_coords(res.coords) << "\n";
      rc = 1;
      return;
    }
    out << "TRIVIAL\n";
    for (const auto &t : res.terms)
      out << "(r" << t.relator << (t.sign < 0 ? "^-1" : "") << ")^("
          << format_word(t.conj, fp.names) << ")\n";
  });

  std::string hc_file;
  auto *hc = app.add_subcommand(
      "hom-check",
      "check the generator map on the relators of the domain subgroup");
  hc->add_option("hom", hc_file, "homomorphism file")->required();
  hc->callback([&] {
    Homomorphism phi = load_homomorphism(hc_file);
    Subgroup K(phi.source, phi.gen);
    std::vector<Coords> rimg;
    for (int k = 1; k <= K.size(); ++k) {
      if (!K.row_expr_ok(k))
        throw std::runtime_error("expression tracking unavailable for row " +
                                 std::to_string(k));
      rimg.push_back(eval_word(phi.target, K.row_expr(k), phi.img));
    }
    Presentation Q = K.presentation();
    auto rels = presentation_relators(Q);
    for (size_t r = 0; r < rels.size(); ++r) {
      Coords val = eval_word(phi.target, rels[r], rimg);
      if (!val.is_identity()) {
        out << "NOT WELL-DEFINED relator " << (r + 1) << ": "
            << format_word(rels[r], Q.names()) << " -> " << format_coords(val)
            << "\n";
        rc = 1;
        return;
      }
    }
    /* h_k -> rimg[k] respects the relators; the map extends the given
       generator images iff it reproduces them */
    for (size_t i = 0; i < phi.gen.size(); ++i) {
      auto gamma = K.decompose(phi.gen[i]);
      if (!gamma)
        throw std::runtime_error("internal: generator escaped its subgroup");
      Coords val = identity(phi.target);
      for (int k = 1; k <= K.size(); ++k)
        val = multiply(phi.target, val,
                       power(phi.target, rimg[k - 1], (*gamma)[k - 1]));
      if (val != phi.img[i]) {
        out << "NOT WELL-DEFINED generator " << (i + 1) << ": maps to "
            << format_coords(phi.img[i]) << " but the relations force "
            << format_coords(val) << "\n";
        rc = 1;
        return;
      }
    }
    out << "well-defined\n";
  });

  try {
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

} // namespace malcev
