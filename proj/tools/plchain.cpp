// plchain: exact homology, intersection homology, and chain-level
// intersection products for PL stratified pseudomanifolds.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include "plchain/intersection.hpp"
#include "plchain/spacefile.hpp"

using namespace plchain;

namespace {

struct Options {
  std::string space_file, corpus_name;
  std::vector<std::string> perversities;
  std::vector<std::string> chains;
  bool machine = false;
  unsigned seed = 1;
  int threads = 1;
};

Space load_space(const Options& opt) {
  if (!opt.space_file.empty() && !opt.corpus_name.empty())
    throw std::runtime_error("give either --space or --corpus, not both");
  if (!opt.space_file.empty()) return parse_space_file(opt.space_file);
  if (!opt.corpus_name.empty()) return corpus_generate(opt.corpus_name);
  throw std::runtime_error("a space is required (--space FILE or --corpus NAME)");
}

std::string group_str(const PairGroupPtr& g) {
  std::string s;
  if (g->free_rank() > 0) s = g->free_rank() == 1 ? "Z" : "Z^" + std::to_string(g->free_rank());
  for (const auto& t : g->torsion()) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  return s.empty() ? "0" : s;
}

void emit(std::ostream& out, bool machine, const std::string& key, const std::string& val) {
  if (machine)
    out << key << "\t" << val << "\n";
  else
    out << std::left << std::setw(26) << key << val << "\n";
}

std::string chain_str(const Chain& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : c.coeffs) {
    if (!first) os << " ";
    first = false;
    os << v << "*[";
    const auto& vs = c.complex->simplices(c.degree)[i];
    for (size_t r = 0; r < vs.size(); ++r) os << (r ? " " : "") << c.complex->label(vs[r]);
    os << "]";
  }
  return first ? "0" : os.str();
}

int cmd_homology(const Options& opt) {
  Space sp = load_space(opt);
  const auto& k = sp.x->complex();
  emit(std::cout, opt.machine, "command", "homology");
  emit(std::cout, opt.machine, "space", sp.name);
  for (int d = 0; d <= k->dim(); ++d) {
    auto h = PairGroup::homology(k, Subcomplex::full(k), Subcomplex::empty(k), d);
    emit(std::cout, opt.machine, "H_" + std::to_string(d), group_str(h));
  }
  return 0;
}

int cmd_ih(const Options& opt) {
  Space sp = load_space(opt);
  emit(std::cout, opt.machine, "command", "ih");
  emit(std::cout, opt.machine, "space", sp.name);
  auto rep = sp.x->validate();
  if (!rep.ok) {
    for (auto& v : rep.violations) emit(std::cerr, opt.machine, "violation", v);
    return 1;
  }
  std::vector<std::string> names = opt.perversities;
  if (names.empty()) names = {"0", "t"};
  for (auto& name : names) {
    auto it = sp.perversities.find(name);
    if (it == sp.perversities.end()) {
      std::cerr << "unknown perversity: " << name << "\n";
      return 1;
    }
    for (int d = 0; d <= sp.x->n(); ++d) {
      auto g = intersection_homology(*sp.x, it->second, d);
      emit(std::cout, opt.machine, "I^" + name + "H_" + std::to_string(d), group_str(g));
    }
  }
  return 0;
}

int cmd_intersect(const Options& opt, bool gm) {
  Space sp = load_space(opt);
  if (opt.chains.size() != 2) throw std::runtime_error("--chains needs exactly two names");
  const Chain& a = sp.chain(opt.chains[0]);
  const Chain& b = sp.chain(opt.chains[1]);
  DiagonalContext ctx(sp.x);
  emit(std::cout, opt.machine, "command", gm ? "gm-intersect" : "intersect");
  emit(std::cout, opt.machine, "space", sp.name);
  emit(std::cout, opt.machine, "chains", opt.chains[0] + " " + opt.chains[1]);
  Chain out;
  if (gm) {
    out = gm_cycle_product(ctx, a, b);
  } else {
    auto e = DomainElement::make(ctx, {{a, b}});
    if (!e.in_frak_g) {
      emit(std::cerr, opt.machine, "error", "general position fails: " + e.rejection);
      return 1;
    }
    out = mu(ctx, e);
  }
  emit(std::cout, opt.machine, "degree", std::to_string(out.degree));
  emit(std::cout, opt.machine, "terms", std::to_string(out.coeffs.size()));
  emit(std::cout, opt.machine, "chain", chain_str(out));
  return 0;
}

int cmd_duality(const Options& opt) {
  Space sp = load_space(opt);
  DualitySpace xs = DualitySpace::make(sp.x->complex(), sp.x->sigma(), sp.x->n(),
                                       sp.x->oriented() ? std::optional<Chain>(sp.x->fundamental_chain())
                                                        : std::nullopt);
  emit(std::cout, opt.machine, "command", "duality");
  emit(std::cout, opt.machine, "space", sp.name);
  Subcomplex k = Subcomplex::full(xs.amb);
  Subcomplex l = xs.s_amb;
  for (int i = 0; i <= sp.x->n(); ++i) {
    auto d = gm_duality(xs, k, l, i);
    std::ostringstream os;
    os << "H^" << i << "(X-Sigma) = " << group_str(d.map.source) << "  ->  H_" << (sp.x->n() - i)
       << "(X,Sigma) = " << group_str(d.map.target) << "  [iso, sign " << (d.sign > 0 ? "+" : "-")
       << "]";
    emit(std::cout, opt.machine, "D_" + std::to_string(i), os.str());
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  Space sp = load_space(opt);
  std::mt19937 rng(opt.seed);
  int failures = 0;
  auto check = [&](const std::string& what, bool ok) {
    emit(std::cout, opt.machine, what, ok ? "pass" : "FAIL");
    if (!ok) ++failures;
  };
  const auto& k = sp.x->complex();
  check("validate", sp.x->validate().ok);
  {
    bool ok = true;
    for (int d = 1; d < k->dim(); ++d)
      ok = ok && boundary_matrix(k, d).multiply(boundary_matrix(k, d + 1)).is_zero();
    check("dd-zero", ok);
  }
  {
    bool ok = true;
    std::uniform_int_distribution<int> val(-2, 2);
    auto rnd = [&](int deg) {
      Chain c(k, deg);
      for (int i = 0; i < k->size(deg); ++i) {
        int v = val(rng);
        if (v) c.coeffs[i] = v;
      }
      return c;
    };
    for (int t = 0; t < 10; ++t) {
      int p = (int)(rng() % (k->dim() + 1));
      int q = (int)(rng() % (k->dim() + 1 - p));
      Cochain a = rnd(p), b = rnd(q);
      Chain x = rnd(p + q);
      ok = ok && evaluate(cup(a, b), x) == evaluate(a, cap(b, x));
    }
    check("cup-cap-adjunction", ok);
  }
  {
    bool ok = true;
    auto p0 = Perversity::zero(*sp.x), pt2 = Perversity::top(*sp.x);
    if (p0.leq(pt2))
      for (int d = 0; d <= sp.x->n() && ok; ++d) {
        auto a = intersection_homology(*sp.x, p0, d);
        auto b = intersection_homology(*sp.x, pt2, d);
        for (int t = 0; t < a->rank() && ok; ++t) {
          try {
            b->express(a->basis_chain(t));
          } catch (...) {
            ok = false;
          }
        }
      }
    check("ih-monotone", ok);
  }
  if (sp.x->oriented()) {
    DualitySpace xs = DualitySpace::make(k, sp.x->sigma(), sp.x->n(), sp.x->fundamental_chain());
    Vertex v = 0;
    while (sp.x->sigma().contains_vertex(v)) ++v;
    Subcomplex kk = Subcomplex::empty(xs.amb);
    kk.insert_closed(xs.amb->require({v}));
    Subcomplex kk2 = neighborhood_complex(kk);
    Subcomplex l = Subcomplex::empty(xs.amb);
    bool ok = true;
    for (int i = 0; i <= sp.x->n() && ok; ++i) {
      auto d_small = dold_duality(xs, kk, l, i, false);
      auto d_big = dold_duality(xs, kk2, l, i, false);
      GroupMap restr = induced_inclusion(d_big.map.source, d_small.map.source);
      GroupMap incl = induced_inclusion(d_big.map.target, d_small.map.target);
      ok = ok && d_small.map.compose_after(restr).equal(incl.compose_after(d_big.map));
    }
    check("dold-naturality", ok);
  }
  if (sp.x->oriented() && sp.chains.count("meridian") && sp.chains.count("fundamental")) {
    DiagonalContext ctx(sp.x);
    bool ok = true;
    try {
      auto e = DomainElement::make(ctx, {{sp.chain("fundamental"), sp.chain("meridian")}});
      if (e.in_frak_g) {
        Chain lhs = boundary(umkehr(ctx, e));
        Subcomplex sig2 = subdivide_subcomplex(
            ctx.duality().t2, subdivide_subcomplex(ctx.duality().amb, sp.x->sigma()));
        ok = reduce_mod(lhs, sig2).zero();
      }
    } catch (const std::exception&) {
      ok = false;
    }
    check("umkehr-cycle", ok);
  }
  return failures == 0 ? 0 : 1;
}

int cmd_corpus(const std::string& name, const std::string& outfile) {
  Space sp = corpus_generate(name);
  if (outfile.empty()) {
    print_space(std::cout, sp);
  } else {
    std::ofstream out(outfile);
    print_space(out, sp);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact intersection products on PL stratified pseudomanifolds"};
  app.require_subcommand(1);
  Options opt;
  if (const char* t = std::getenv("PLCHAIN_THREADS")) opt.threads = std::max(1, std::atoi(t));

  auto add_common = [&](CLI::App* c) {
    c->add_option("--space", opt.space_file, "space description file");
    c->add_option("--corpus", opt.corpus_name, "generated corpus space name");
    c->add_flag("--machine", opt.machine, "line-oriented machine readable output");
    c->add_option("--seed", opt.seed, "randomized-suite seed");
  };

  auto* homology = app.add_subcommand("homology", "simplicial homology table");
  add_common(homology);
  auto* ih = app.add_subcommand("ih", "intersection homology table");
  add_common(ih);
  ih->add_option("--perversity", opt.perversities, "perversity names (repeatable)");
  auto* intersect = app.add_subcommand("intersect", "chain-level intersection product");
  add_common(intersect);
  intersect->add_option("--chains", opt.chains, "two chain names")->expected(2);
  auto* gmi = app.add_subcommand("gm-intersect", "cycles-only duality composition product");
  add_common(gmi);
  gmi->add_option("--chains", opt.chains, "two chain names")->expected(2);
  auto* duality = app.add_subcommand("duality", "duality isomorphisms of the space");
  add_common(duality);
  auto* verify = app.add_subcommand("verify", "invariant suites for the space");
  add_common(verify);
  std::string corpus_name, corpus_out;
  auto* corpus = app.add_subcommand("corpus", "emit a generated corpus space file");
  corpus->add_option("name", corpus_name, "corpus space name")->required();
  corpus->add_option("-o,--output", corpus_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (homology->parsed()) return cmd_homology(opt);
    if (ih->parsed()) return cmd_ih(opt);
    if (intersect->parsed()) return cmd_intersect(opt, false);
    if (gmi->parsed()) return cmd_intersect(opt, true);
    if (duality->parsed()) return cmd_duality(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (corpus->parsed()) return cmd_corpus(corpus_name, corpus_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
