#include "plchain/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace plchain {

const Chain& Space::chain(const std::string& s) const {
  auto it = chains.find(s);
  if (it == chains.end()) throw std::invalid_argument("unknown chain: " + s);
  return it->second;
}

namespace {

void add_default_perversities(Space& sp) {
  sp.perversities["0"] = Perversity::zero(*sp.x);
  sp.perversities["t"] = Perversity::top(*sp.x);
}

Chain cycle_from_vertices(const ComplexPtr& k, const std::vector<Vertex>& loop) {
  Chain c(k, 1);
  for (size_t r = 0; r < loop.size(); ++r) {
    Vertex a = loop[r], b = loop[(r + 1) % loop.size()];
    VertexList e{std::min(a, b), std::max(a, b)};
    c.add(k->require(e).idx, a < b ? 1 : -1);
  }
  return c;
}

Space simplex_space(int n) {
  VertexList top(n + 1);
  for (int i = 0; i <= n; ++i) top[i] = i;
  Space sp;
  sp.name = "simplex " + std::to_string(n);
  sp.x = std::make_shared<FilteredPseudomanifold>(FilteredPseudomanifold::manifold(Complex::build({top})));
  add_default_perversities(sp);
  return sp;
}

Space sphere_space(int n) {
  std::vector<VertexList> facets;
  for (int skip = 0; skip <= n + 1; ++skip) {
    VertexList f;
    for (int i = 0; i <= n + 1; ++i)
      if (i != skip) f.push_back(i);
    facets.push_back(f);
  }
  Space sp;
  sp.name = "sphere " + std::to_string(n);
  sp.x = std::make_shared<FilteredPseudomanifold>(FilteredPseudomanifold::manifold(Complex::build(facets)));
  sp.chains["fundamental"] = sp.x->fundamental_chain();
  add_default_perversities(sp);
  return sp;
}

Space torus_space() {
  std::vector<VertexList> f;
  for (int i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({(i + 1) % 7, (i + 3) % 7, (i + 4) % 7});
  }
  Space sp;
  sp.name = "torus2";
  sp.x = std::make_shared<FilteredPseudomanifold>(FilteredPseudomanifold::manifold(Complex::build(f)));
  const auto& k = sp.x->complex();
  sp.chains["fundamental"] = sp.x->fundamental_chain();
  // two embedded cycles meeting exactly in the vertex 0
  sp.chains["meridian"] = cycle_from_vertices(k, {0, 1, 2});
  sp.chains["longitude"] = cycle_from_vertices(k, {0, 3, 5});
  add_default_perversities(sp);
  return sp;
}

Space projplane_space() {
  Space sp;
  sp.name = "projplane";
  sp.x = std::make_shared<FilteredPseudomanifold>(FilteredPseudomanifold::manifold(
      Complex::build({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4},
                      {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}})));
  add_default_perversities(sp);
  return sp;
}

Space pinched_torus_space() {
  // hexagonal tube with both boundary circles coned to a single apex 12
  std::vector<VertexList> f;
  auto h1 = [](int i) { return i % 6; };
  auto h2 = [](int i) { return 6 + i % 6; };
  for (int i = 0; i < 6; ++i) {
    f.push_back({h1(i), h1(i + 1), h2(i)});
    f.push_back({h1(i + 1), h2(i), h2(i + 1)});
    f.push_back({h1(i), h1(i + 1), 12});
    f.push_back({h2(i), h2(i + 1), 12});
  }
  auto k = Complex::build(f);
  Subcomplex apex = Subcomplex::empty(k);
  apex.insert_closed(k->require({12}));
  std::vector<Subcomplex> sk{apex, apex, Subcomplex::full(k)};
  Space sp;
  sp.name = "pinched-torus";
  sp.x = std::make_shared<FilteredPseudomanifold>(k, sk);
  if (sp.x->oriented()) sp.chains["fundamental"] = sp.x->fundamental_chain();
  sp.chains["meridian"] = cycle_from_vertices(k, {0, 1, 2, 3, 4, 5});
  add_default_perversities(sp);
  return sp;
}

}  // namespace

Chain cone_chain(const ComplexPtr& target, const Chain& c, Vertex apex) {
  Chain out(target, c.degree + 1);
  Int s = (c.degree % 2) ? Int(1) : Int(-1);  // (-1)^{deg+1}
  for (const auto& [i, v] : c.coeffs) {
    VertexList vs = c.complex->vertices_of({c.degree, i});
    vs.push_back(apex);
    if (vs.back() < vs[vs.size() - 2]) throw std::logic_error("cone apex must order last");
    out.add(target->require(vs).idx, s * v);
  }
  return out;
}

Space suspension_space(const Space& base, const std::string& name) {
  const auto& bk = base.x->complex();
  const int nb = bk->num_vertices();
  const Vertex north = nb, south = nb + 1;
  std::vector<VertexList> facets;
  std::vector<std::string> labels;
  for (Vertex v = 0; v < nb; ++v) labels.push_back(bk->label(v));
  labels.push_back("N");
  labels.push_back("S");
  for (int d = 0; d <= bk->dim(); ++d)
    for (int i = 0; i < bk->size(d); ++i)
      if (bk->cofacets_of({d, i}).empty()) {
        VertexList f = bk->vertices_of({d, i});
        VertexList fn = f, fs = f;
        fn.push_back(north);
        fs.push_back(south);
        facets.push_back(fn);
        facets.push_back(fs);
      }
  auto k = Complex::build(facets, labels);
  // skeleta: apexes at every level below the top (filtered cone convention)
  Subcomplex apexes = Subcomplex::empty(k);
  apexes.insert_closed(k->require({north}));
  apexes.insert_closed(k->require({south}));
  const int n = bk->dim() + 1;
  std::vector<Subcomplex> sk;
  // suspended skeleta of the base filtration: (SX)^{i} = S(X^{i-1}) + apexes
  for (int i = 0; i < n; ++i) {
    Subcomplex s = apexes;
    if (i >= 1) {
      const Subcomplex& bs = base.x->skeleton(i - 1);
      for (int d = 0; d <= bs.complex()->dim(); ++d)
        for (auto sid : bs.members(d)) {
          VertexList f = bs.complex()->vertices_of(sid);
          s.insert_closed(k->require(f));
          VertexList fn = f, fs = f;
          fn.push_back(north);
          fs.push_back(south);
          s.insert_closed(k->require(fn));
          s.insert_closed(k->require(fs));
        }
    }
    sk.push_back(s);
  }
  sk.push_back(Subcomplex::full(k));
  Space sp;
  sp.name = name;
  sp.x = std::make_shared<FilteredPseudomanifold>(k, sk);
  if (sp.x->oriented()) sp.chains["fundamental"] = sp.x->fundamental_chain();
  for (const auto& [cn, ch] : base.chains) {
    Chain lifted(k, ch.degree);
    for (const auto& [i, v] : ch.coeffs) lifted.add(k->require(bk->vertices_of({ch.degree, i})).idx, v);
    sp.chains[cn] = lifted;
    if (!boundary(lifted).zero()) continue;
    Chain susp = cone_chain(k, lifted, north) - cone_chain(k, lifted, south);
    sp.chains["susp-" + cn] = susp;
  }
  add_default_perversities(sp);
  return sp;
}

Space cone_space(const Space& base, const std::string& name) {
  const auto& bk = base.x->complex();
  const int nb = bk->num_vertices();
  const Vertex apex = nb;
  std::vector<VertexList> facets;
  std::vector<std::string> labels;
  for (Vertex v = 0; v < nb; ++v) labels.push_back(bk->label(v));
  labels.push_back("apex");
  for (int d = 0; d <= bk->dim(); ++d)
    for (int i = 0; i < bk->size(d); ++i)
      if (bk->cofacets_of({d, i}).empty()) {
        VertexList f = bk->vertices_of({d, i});
        f.push_back(apex);
        facets.push_back(f);
      }
  auto k = Complex::build(facets, labels);
  Subcomplex ap = Subcomplex::empty(k);
  ap.insert_closed(k->require({apex}));
  const int n = bk->dim() + 1;
  std::vector<Subcomplex> sk;
  for (int i = 0; i < n; ++i) {
    Subcomplex s = ap;
    if (i >= 1) {
      const Subcomplex& bs = base.x->skeleton(i - 1);
      for (int d = 0; d <= bs.complex()->dim(); ++d)
        for (auto sid : bs.members(d)) {
          VertexList f = bs.complex()->vertices_of(sid);
          s.insert_closed(k->require(f));
          f.push_back(apex);
          s.insert_closed(k->require(f));
        }
    }
    sk.push_back(s);
  }
  sk.push_back(Subcomplex::full(k));
  Space sp;
  sp.name = name;
  sp.x = std::make_shared<FilteredPseudomanifold>(k, sk);
  for (const auto& [cn, ch] : base.chains) {
    Chain lifted(k, ch.degree);
    for (const auto& [i, v] : ch.coeffs) lifted.add(k->require(bk->vertices_of({ch.degree, i})).idx, v);
    sp.chains[cn] = lifted;
  }
  add_default_perversities(sp);
  return sp;
}

Space product_space(const Space& a, const Space& b, const std::string& name) {
  auto pc = product_triangulation(a.x->complex(), b.x->complex());
  Space sp;
  sp.name = name;
  // manifold factors only: trivial stratification
  if (!a.x->singular_strata().empty() || !b.x->singular_strata().empty())
    throw std::invalid_argument("product corpus entries need manifold factors");
  sp.x = std::make_shared<FilteredPseudomanifold>(FilteredPseudomanifold::manifold(pc.total));
  if (sp.x->oriented()) sp.chains["fundamental"] = sp.x->fundamental_chain();
  add_default_perversities(sp);
  return sp;
}

Space corpus_generate(const std::string& name) {
  auto strip = [](std::string s) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  std::string n = strip(name);
  if (n.rfind("simplex ", 0) == 0) return simplex_space(std::stoi(n.substr(8)));
  if (n.rfind("sphere ", 0) == 0) return sphere_space(std::stoi(n.substr(7)));
  if (n == "torus2") return torus_space();
  if (n == "projplane") return projplane_space();
  if (n == "pinched-torus") return pinched_torus_space();
  if (n.rfind("suspension(", 0) == 0 && n.back() == ')')
    return suspension_space(corpus_generate(n.substr(11, n.size() - 12)), n);
  if (n.rfind("cone(", 0) == 0 && n.back() == ')')
    return cone_space(corpus_generate(n.substr(5, n.size() - 6)), n);
  if (n.rfind("product(", 0) == 0 && n.back() == ')') {
    std::string inner = n.substr(8, n.size() - 9);
    // split at the top-level comma
    int depth = 0;
    size_t cut = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        cut = i;
        break;
      }
    }
    if (cut == std::string::npos) throw std::invalid_argument("product needs two factors");
    return product_space(corpus_generate(strip(inner.substr(0, cut))),
                         corpus_generate(strip(inner.substr(cut + 1))), n);
  }
  throw std::invalid_argument("unknown corpus name: " + name);
}

}  // namespace plchain
