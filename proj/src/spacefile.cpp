#include "plchain/spacefile.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace plchain {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::string clean = line.substr(0, line.find('#'));
  std::istringstream is(clean);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct RawChain {
  int degree;
  std::vector<std::pair<Int, std::vector<std::string>>> terms;
};

struct RawPerversity {
  std::vector<std::tuple<std::string, int, int, Int>> rules;  // kind, a, b, value
};

}  // namespace

Space parse_space(std::istream& in) {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::string>> facets;
  std::map<int, std::vector<std::vector<std::string>>> skeleta;
  std::vector<std::pair<int, std::vector<std::string>>> orientation;  // sign, simplex
  std::map<std::string, RawChain> chains;
  std::vector<std::string> chain_order;
  std::map<std::string, RawPerversity> perversities;
  std::vector<std::string> perv_order;

  enum class Sect { none, facets, skeleton, orientation, chain, perversity };
  Sect sect = Sect::none;
  int sect_skel = -1;
  std::string sect_name;
  int lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (head == "vertices") {
      vertices.assign(tok.begin() + 1, tok.end());
      sect = Sect::none;
    } else if (head == "facets") {
      sect = Sect::facets;
    } else if (head == "skeleton") {
      if (tok.size() != 2) throw ParseError(lineno, "skeleton needs a dimension");
      sect = Sect::skeleton;
      sect_skel = std::stoi(tok[1]);
    } else if (head == "orientation") {
      sect = Sect::orientation;
    } else if (head == "chain") {
      if (tok.size() != 3) throw ParseError(lineno, "chain needs a name and a degree");
      sect = Sect::chain;
      sect_name = tok[1];
      if (!chains.count(sect_name)) chain_order.push_back(sect_name);
      chains[sect_name].degree = std::stoi(tok[2]);
    } else if (head == "perversity") {
      if (tok.size() != 2) throw ParseError(lineno, "perversity needs a name");
      sect = Sect::perversity;
      sect_name = tok[1];
      if (!perversities.count(sect_name)) perv_order.push_back(sect_name);
      perversities[sect_name];
    } else {
      switch (sect) {
        case Sect::facets:
          facets.push_back(tok);
          break;
        case Sect::skeleton:
          skeleta[sect_skel].push_back(tok);
          break;
        case Sect::orientation: {
          if (tok.size() < 2 || (tok[0] != "+" && tok[0] != "-"))
            throw ParseError(lineno, "orientation lines are '+|- v0 v1 ...'");
          orientation.push_back({tok[0] == "+" ? 1 : -1, {tok.begin() + 1, tok.end()}});
          break;
        }
        case Sect::chain: {
          if (tok.size() < 2) throw ParseError(lineno, "chain lines are '<coeff> v0 v1 ...'");
          Int c;
          try {
            c = Int(tok[0]);
          } catch (...) {
            throw ParseError(lineno, "bad chain coefficient: " + tok[0]);
          }
          chains[sect_name].terms.push_back({c, {tok.begin() + 1, tok.end()}});
          break;
        }
        case Sect::perversity: {
          if (tok[0] == "codim" && tok.size() == 3)
            perversities[sect_name].rules.push_back({"codim", std::stoi(tok[1]), 0, Int(tok[2])});
          else if (tok[0] == "stratum" && tok.size() == 4)
            perversities[sect_name].rules.push_back(
                {"stratum", std::stoi(tok[1]), std::stoi(tok[2]), Int(tok[3])});
          else
            throw ParseError(lineno, "perversity lines are 'codim <c> <v>' or 'stratum <dim> <idx> <v>'");
          break;
        }
        default:
          throw ParseError(lineno, "content outside any section: " + head);
      }
    }
  }
  if (facets.empty()) throw ParseError(lineno, "no facets");

  // vertex order: the vertices line if present, else sorted labels
  std::map<std::string, Vertex> vid;
  if (vertices.empty()) {
    std::set<std::string> labels;
    for (auto& f : facets)
      for (auto& v : f) labels.insert(v);
    vertices.assign(labels.begin(), labels.end());
  }
  for (int i = 0; i < (int)vertices.size(); ++i) {
    if (vid.count(vertices[i])) throw ParseError(0, "duplicate vertex label: " + vertices[i]);
    vid[vertices[i]] = i;
  }
  auto to_ids = [&](const std::vector<std::string>& names, bool sorted) {
    VertexList out;
    for (auto& s : names) {
      auto it = vid.find(s);
      if (it == vid.end()) throw ParseError(0, "unknown vertex label: " + s);
      out.push_back(it->second);
    }
    if (sorted) std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<VertexList> facet_ids;
  for (auto& f : facets) facet_ids.push_back(to_ids(f, true));
  auto k = Complex::build(facet_ids, vertices);
  const int n = k->dim();

  std::vector<Subcomplex> sk;
  for (int i = 0; i < n; ++i) {
    Subcomplex s = i > 0 ? sk[i - 1] : Subcomplex::empty(k);
    if (skeleta.count(i))
      for (auto& f : skeleta.at(i)) {
        auto sid = k->find(to_ids(f, true));
        if (!sid) throw ParseError(0, "skeleton simplex is not in the complex");
        s.insert_closed(*sid);
      }
    if (i > 0 && !sk[i - 1].subset_of(s)) throw ParseError(0, "skeleta are not nested");
    sk.push_back(s);
  }
  sk.push_back(Subcomplex::full(k));

  Space sp;
  sp.x = std::make_shared<FilteredPseudomanifold>(k, sk);
  if (!orientation.empty()) {
    std::vector<int> signs(k->size(n), 0);
    for (auto& [sg, names] : orientation) {
      auto raw = to_ids(names, false);
      VertexList sorted = raw;
      std::sort(sorted.begin(), sorted.end());
      auto sid = k->find(sorted);
      if (!sid || sid->dim != n) throw ParseError(0, "orientation line is not a top simplex");
      int inv = 0;
      for (size_t a = 0; a < raw.size(); ++a)
        for (size_t b = a + 1; b < raw.size(); ++b)
          if (raw[a] > raw[b]) ++inv;
      signs[sid->idx] = (inv % 2 ? -sg : sg);
    }
    sp.x->set_orientation(signs);
  }
  for (auto& name : chain_order) {
    const auto& rc = chains.at(name);
    Chain c(k, rc.degree);
    for (auto& [coef, names] : rc.terms) {
      auto raw = to_ids(names, false);
      VertexList sorted = raw;
      std::sort(sorted.begin(), sorted.end());
      if ((int)sorted.size() != rc.degree + 1) throw ParseError(0, "chain term of wrong dimension");
      auto sid = k->find(sorted);
      if (!sid) throw ParseError(0, "chain term is not a simplex of the complex");
      int inv = 0;
      for (size_t a = 0; a < raw.size(); ++a)
        for (size_t b = a + 1; b < raw.size(); ++b)
          if (raw[a] > raw[b]) ++inv;
      c.add(sid->idx, inv % 2 ? -coef : coef);
    }
    sp.chains[name] = c;
  }
  for (auto& name : perv_order) {
    Perversity p;
    p.name = name;
    for (int st : sp.x->singular_strata()) p.values[st] = 0;
    for (auto& [kind, a, b, v] : perversities.at(name).rules) {
      for (int st : sp.x->singular_strata()) {
        const auto& strat = sp.x->strata()[st];
        if (kind == "codim" && strat.codim(n) == a) p.values[st] = v;
        if (kind == "stratum" && strat.dim == a && strat.index == b) p.values[st] = v;
      }
    }
    sp.perversities[name] = p;
  }
  if (!sp.perversities.count("0")) sp.perversities["0"] = Perversity::zero(*sp.x);
  if (!sp.perversities.count("t")) sp.perversities["t"] = Perversity::top(*sp.x);
  return sp;
}

Space parse_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Space sp = parse_space(in);
  sp.name = path;
  return sp;
}

void print_space(std::ostream& out, const Space& sp) {
  const auto& k = sp.x->complex();
  const int n = sp.x->n();
  out << "# " << (sp.name.empty() ? std::string("space") : sp.name) << "\n";
  out << "vertices";
  for (Vertex v = 0; v < k->num_vertices(); ++v) out << " " << k->label(v);
  out << "\n\nfacets\n";
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i)
      if (k->cofacets_of({d, i}).empty()) {
        const auto& vs = k->simplices(d)[i];
        for (size_t r = 0; r < vs.size(); ++r) out << (r ? " " : "") << k->label(vs[r]);
        out << "\n";
      }
  for (int i = 0; i < n; ++i) {
    const auto& s = sp.x->skeleton(i);
    bool prev_same = i > 0 && s == sp.x->skeleton(i - 1);
    if (s.empty_set() || prev_same) continue;
    out << "\nskeleton " << i << "\n";
    for (int d = 0; d <= s.dim(); ++d)
      for (auto sid : s.members(d)) {
        bool maximal = true;
        for (auto cf : k->cofacets_of(sid))
          if (s.contains(cf)) maximal = false;
        if (!maximal) continue;
        const auto& vs = k->vertices_of(sid);
        for (size_t r = 0; r < vs.size(); ++r) out << (r ? " " : "") << k->label(vs[r]);
        out << "\n";
      }
  }
  if (sp.x->oriented()) {
    out << "\norientation\n";
    for (int i = 0; i < k->size(n); ++i) {
      int s = sp.x->orientation()[i];
      if (!s) continue;
      out << (s > 0 ? "+" : "-");
      for (Vertex v : k->simplices(n)[i]) out << " " << k->label(v);
      out << "\n";
    }
  }
  for (const auto& [name, c] : sp.chains) {
    out << "\nchain " << name << " " << c.degree << "\n";
    for (const auto& [i, v] : c.coeffs) {
      out << v;
      for (Vertex w : k->simplices(c.degree)[i]) out << " " << k->label(w);
      out << "\n";
    }
  }
  for (const auto& [name, p] : sp.perversities) {
    out << "\nperversity " << name << "\n";
    for (const auto& [st, v] : p.values)
      out << "stratum " << sp.x->strata()[st].dim << " " << sp.x->strata()[st].index << " " << v
          << "\n";
  }
}

std::string print_space(const Space& sp) {
  std::ostringstream os;
  print_space(os, sp);
  return os.str();
}

}  // namespace plchain
