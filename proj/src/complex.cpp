#include "plchain/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace plchain {

namespace {

void check_facet(const VertexList& f) {
  for (size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i] == f[i + 1]) throw std::invalid_argument("duplicate vertex within a facet");
}

}  // namespace

ComplexPtr Complex::build(const std::vector<VertexList>& facets, std::vector<std::string> labels) {
  if (facets.empty()) throw std::invalid_argument("empty facet list");
  auto c = std::shared_ptr<Complex>(new Complex());
  int maxd = 0;
  std::set<VertexList> closed;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    check_facet(f);
    maxd = std::max(maxd, (int)f.size() - 1);
    // face closure by subset enumeration
    const int n = (int)f.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      VertexList face;
      for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) face.push_back(f[b]);
      closed.insert(std::move(face));
    }
  }
  int maxv = -1;
  for (const auto& s : closed) maxv = std::max(maxv, s.back());
  if (labels.empty()) {
    for (int v = 0; v <= maxv; ++v) labels.push_back(std::to_string(v));
  }
  if ((int)labels.size() <= maxv) throw std::invalid_argument("vertex index outside label table");
  c->labels_ = std::move(labels);
  c->simplices_.assign(maxd + 1, {});
  for (const auto& s : closed) c->simplices_[s.size() - 1].push_back(s);
  c->index_faces();
  return c;
}

int Complex::total_size() const {
  int n = 0;
  for (const auto& d : simplices_) n += (int)d.size();
  return n;
}

void Complex::index_faces() {
  index_.assign(simplices_.size(), {});
  for (int d = 0; d <= dim(); ++d) {
    // tables are sorted already when built from std::set; enforce anyway
    std::sort(simplices_[d].begin(), simplices_[d].end());
    for (int i = 0; i < (int)simplices_[d].size(); ++i) index_[d][simplices_[d][i]] = i;
  }
  cofacets_.assign(simplices_.size(), {});
  for (int d = 0; d <= dim(); ++d) cofacets_[d].resize(simplices_[d].size());
  for (int d = 1; d <= dim(); ++d) {
    for (int i = 0; i < (int)simplices_[d].size(); ++i) {
      const auto& vs = simplices_[d][i];
      VertexList face(vs.size() - 1);
      for (size_t m = 0; m < vs.size(); ++m) {
        face.clear();
        for (size_t r = 0; r < vs.size(); ++r)
          if (r != m) face.push_back(vs[r]);
        auto it = index_[d - 1].find(face);
        if (it == index_[d - 1].end()) throw std::logic_error("complex not face-closed");
        cofacets_[d - 1][it->second].push_back({d, i});
      }
    }
  }
}

std::optional<SimplexId> Complex::find(const VertexList& v) const {
  int d = (int)v.size() - 1;
  if (d < 0 || d > dim()) return std::nullopt;
  auto it = index_[d].find(v);
  if (it == index_[d].end()) return std::nullopt;
  return SimplexId{d, it->second};
}

SimplexId Complex::require(const VertexList& v) const {
  auto s = find(v);
  if (!s) throw std::invalid_argument("simplex not in complex");
  return *s;
}

std::optional<Vertex> Complex::vertex_by_label(const std::string& s) const {
  for (int v = 0; v < (int)labels_.size(); ++v)
    if (labels_[v] == s) return v;
  return std::nullopt;
}

std::vector<SimplexId> Complex::facets_of(SimplexId s) const {
  std::vector<SimplexId> out;
  if (s.dim == 0) return out;
  const auto& vs = simplices_[s.dim][s.idx];
  VertexList face;
  for (size_t m = 0; m < vs.size(); ++m) {
    face.clear();
    for (size_t r = 0; r < vs.size(); ++r)
      if (r != m) face.push_back(vs[r]);
    out.push_back({s.dim - 1, index_[s.dim - 1].at(face)});
  }
  return out;
}

const std::vector<SimplexId>& Complex::cofacets_of(SimplexId s) const {
  return cofacets_[s.dim][s.idx];
}

bool Complex::has_face(SimplexId big, SimplexId small) const {
  const auto& b = vertices_of(big);
  const auto& s = vertices_of(small);
  return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

// ---------------------------------------------------------------------------
// Subcomplex

Subcomplex::Subcomplex(ComplexPtr c) : complex_(std::move(c)) {
  member_.resize(complex_->dim() + 1);
  for (int d = 0; d <= complex_->dim(); ++d) member_[d].assign(complex_->size(d), 0);
  vertex_member_.assign(complex_->num_vertices(), 0);
}

Subcomplex Subcomplex::full(ComplexPtr c) {
  Subcomplex s(std::move(c));
  for (auto& dm : s.member_) std::fill(dm.begin(), dm.end(), 1);
  std::fill(s.vertex_member_.begin(), s.vertex_member_.end(), 1);
  return s;
}

bool Subcomplex::contains(SimplexId s) const {
  return s.dim >= 0 && s.dim < (int)member_.size() && member_[s.dim][s.idx];
}

void Subcomplex::insert_closed(SimplexId s) {
  if (contains(s)) return;
  member_[s.dim][s.idx] = 1;
  const auto& vs = complex_->vertices_of(s);
  for (Vertex v : vs) vertex_member_[v] = 1;
  for (auto f : complex_->facets_of(s)) insert_closed(f);
}

int Subcomplex::dim() const {
  for (int d = (int)member_.size() - 1; d >= 0; --d)
    for (char m : member_[d])
      if (m) return d;
  return -1;
}

bool Subcomplex::empty_set() const { return dim() < 0; }

int Subcomplex::count() const {
  int n = 0;
  for (const auto& dm : member_) n += (int)std::count(dm.begin(), dm.end(), 1);
  return n;
}

std::vector<SimplexId> Subcomplex::members(int d) const {
  std::vector<SimplexId> out;
  if (d < 0 || d >= (int)member_.size()) return out;
  for (int i = 0; i < (int)member_[d].size(); ++i)
    if (member_[d][i]) out.push_back({d, i});
  return out;
}

bool Subcomplex::subset_of(const Subcomplex& o) const {
  for (int d = 0; d < (int)member_.size(); ++d)
    for (int i = 0; i < (int)member_[d].size(); ++i)
      if (member_[d][i] && !o.member_[d][i]) return false;
  return true;
}

Subcomplex set_union(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = a;
  for (int d = 0; d < (int)out.member_.size(); ++d)
    for (int i = 0; i < (int)out.member_[d].size(); ++i)
      if (b.member_[d][i]) out.member_[d][i] = 1;
  for (int v = 0; v < (int)out.vertex_member_.size(); ++v)
    if (b.vertex_member_[v]) out.vertex_member_[v] = 1;
  return out;
}

Subcomplex set_intersection(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = Subcomplex::empty(a.complex());
  for (int d = 0; d < (int)out.member_.size(); ++d)
    for (int i = 0; i < (int)out.member_[d].size(); ++i)
      if (a.member_[d][i] && b.member_[d][i]) {
        out.member_[d][i] = 1;
        for (Vertex v : a.complex()->vertices_of({d, i})) out.vertex_member_[v] = 1;
      }
  return out;
}

Subcomplex complement_complex(const Subcomplex& z) {
  const auto& k = z.complex();
  Subcomplex out = Subcomplex::empty(k);
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i) {
      bool meets = false;
      for (Vertex v : k->simplices(d)[i])
        if (z.contains_vertex(v)) {
          meets = true;
          break;
        }
      if (!meets) out.insert_closed({d, i});
    }
  return out;
}

Subcomplex neighborhood_complex(const Subcomplex& z) {
  const auto& k = z.complex();
  Subcomplex out = Subcomplex::empty(k);
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i)
      for (Vertex v : k->simplices(d)[i])
        if (z.contains_vertex(v)) {
          out.insert_closed({d, i});
          break;
        }
  return out;
}

std::vector<SimplexId> fullness_violations(const Subcomplex& z) {
  const auto& k = z.complex();
  std::vector<SimplexId> out;
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i) {
      SimplexId s{d, i};
      if (z.contains(s)) continue;
      bool all = true;
      for (Vertex v : k->simplices(d)[i])
        if (!z.contains_vertex(v)) {
          all = false;
          break;
        }
      if (all) out.push_back(s);
    }
  return out;
}

bool is_full(const Subcomplex& z) { return fullness_violations(z).empty(); }

// ---------------------------------------------------------------------------
// Barycentric subdivision

ComplexPtr barycentric_subdivision(const ComplexPtr& k) {
  auto c = std::shared_ptr<Complex>(new Complex());
  // Vertex order: barycenters by (carrier dim, carrier index). Dim-0
  // barycenters are the original vertices, in their original order.
  std::vector<std::vector<int>> bary_vertex(k->dim() + 1);
  int nv = 0;
  for (int d = 0; d <= k->dim(); ++d) {
    bary_vertex[d].resize(k->size(d));
    for (int i = 0; i < k->size(d); ++i) {
      bary_vertex[d][i] = nv++;
      if (d == 0) {
        c->labels_.push_back(k->label(k->simplices(0)[i][0]));
      } else {
        std::string lab = "b(";
        const auto& vs = k->simplices(d)[i];
        for (size_t r = 0; r < vs.size(); ++r) lab += (r ? " " : "") + k->label(vs[r]);
        lab += ")";
        c->labels_.push_back(lab);
      }
    }
  }
  // Simplices: flags s_0 < s_1 < ... < s_m (chains of proper faces). Each
  // flag is generated exactly once by descending from its largest element.
  std::vector<std::set<VertexList>> closed(k->dim() + 1);
  std::vector<std::pair<VertexList, SimplexId>> stack;  // (flag, minimum elt)
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i) stack.push_back({{bary_vertex[d][i]}, SimplexId{d, i}});
  while (!stack.empty()) {
    auto [flag, min_elt] = stack.back();
    stack.pop_back();
    closed[(int)flag.size() - 1].insert(flag);
    const auto& vs = k->vertices_of(min_elt);
    const int n = (int)vs.size();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {  // nonempty proper subsets
      VertexList face;
      for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) face.push_back(vs[b]);
      SimplexId fid = k->require(face);
      VertexList nf = flag;
      nf.insert(nf.begin(), bary_vertex[fid.dim][fid.idx]);
      stack.push_back({nf, fid});
    }
  }
  c->simplices_.assign(k->dim() + 1, {});
  for (int d = 0; d <= k->dim(); ++d)
    c->simplices_[d].assign(closed[d].begin(), closed[d].end());
  c->index_faces();

  // Lineage: carrier of a flag is its largest element.
  Lineage lin;
  lin.parent = k;
  lin.bary_vertex.resize(k->dim() + 1);
  for (int d = 0; d <= k->dim(); ++d) {
    lin.bary_vertex[d].resize(k->size(d));
    for (int i = 0; i < k->size(d); ++i) lin.bary_vertex[d][i] = bary_vertex[d][i];
  }
  // invert bary_vertex: total vertex -> carrier SimplexId
  std::vector<SimplexId> vert_carrier(nv);
  for (int d = 0; d <= k->dim(); ++d)
    for (int i = 0; i < k->size(d); ++i) vert_carrier[bary_vertex[d][i]] = {d, i};
  lin.carrier.resize(c->dim() + 1);
  for (int d = 0; d <= c->dim(); ++d) {
    lin.carrier[d].resize(c->size(d));
    for (int i = 0; i < c->size(d); ++i) {
      const auto& vs = c->simplices_[d][i];
      // carrier = carrier of the largest barycenter in the flag; vertex order
      // is (dim, idx)-graded so the last vertex has the largest carrier
      lin.carrier[d][i] = vert_carrier[vs.back()];
    }
  }
  c->lineage_ = std::move(lin);
  return c;
}

SimplexId carrier_in(const ComplexPtr& ancestor, const ComplexPtr& c, SimplexId s) {
  ComplexPtr cur = c;
  while (cur != ancestor) {
    if (!cur->lineage()) throw std::invalid_argument("carrier_in: ancestor not in the lineage");
    s = cur->lineage()->carrier[s.dim][s.idx];
    cur = cur->lineage()->parent;
  }
  return s;
}

Subcomplex subdivide_subcomplex(const ComplexPtr& derived, const Subcomplex& z) {
  const auto& lin = derived->lineage();
  if (!lin || lin->parent != z.complex())
    throw std::invalid_argument("subdivide_subcomplex: not a subdivision of the subcomplex's complex");
  Subcomplex out = Subcomplex::empty(derived);
  for (int d = 0; d <= derived->dim(); ++d)
    for (int i = 0; i < derived->size(d); ++i)
      if (z.contains(lin->carrier[d][i])) out.insert_closed({d, i});
  return out;
}

std::pair<ComplexPtr, Subcomplex> make_full(const ComplexPtr& k, const Subcomplex& z) {
  if (is_full(z)) return {k, z};
  auto k1 = barycentric_subdivision(k);
  auto z1 = subdivide_subcomplex(k1, z);
  if (!is_full(z1)) throw std::logic_error("make_full: still not full after one subdivision");
  return {k1, z1};
}

SimplexId RestrictedComplex::to_parent_simplex(const ComplexPtr& parent, SimplexId s) const {
  VertexList vs;
  for (Vertex v : complex->vertices_of(s)) vs.push_back(to_parent[v]);
  std::sort(vs.begin(), vs.end());
  return parent->require(vs);
}

std::optional<SimplexId> RestrictedComplex::from_parent_simplex(const ComplexPtr& parent, SimplexId s) const {
  VertexList vs;
  for (Vertex v : parent->vertices_of(s)) {
    if (from_parent[v] < 0) return std::nullopt;
    vs.push_back(from_parent[v]);
  }
  std::sort(vs.begin(), vs.end());
  return complex->find(vs);
}

RestrictedComplex restrict_complex(const Subcomplex& z) {
  const auto& k = z.complex();
  RestrictedComplex out;
  out.from_parent.assign(k->num_vertices(), -1);
  auto c = std::shared_ptr<Complex>(new Complex());
  for (Vertex v = 0; v < k->num_vertices(); ++v)
    if (z.contains_vertex(v)) {
      out.from_parent[v] = (int)out.to_parent.size();
      out.to_parent.push_back(v);
      c->labels_.push_back(k->label(v));
    }
  int maxd = std::max(0, z.dim());
  c->simplices_.assign(maxd + 1, {});
  for (int d = 0; d <= z.dim(); ++d)
    for (auto s : z.members(d)) {
      VertexList vs;
      for (Vertex v : k->vertices_of(s)) vs.push_back(out.from_parent[v]);
      std::sort(vs.begin(), vs.end());
      c->simplices_[d].push_back(vs);
    }
  c->index_faces();
  out.complex = c;
  return out;
}

// ---------------------------------------------------------------------------
// Products

ProductComplex product_triangulation(const ComplexPtr& k, const ComplexPtr& l) {
  ProductComplex p;
  p.left = k;
  p.right = l;
  auto c = std::shared_ptr<Complex>(new Complex());

  p.pair_index.assign(k->num_vertices(), std::vector<int>(l->num_vertices(), -1));
  // vertex order: lexicographic in (u, w); only pairs spanned by some
  // simplex pair are needed, but taking all pairs keeps indexing simple
  for (Vertex u = 0; u < k->num_vertices(); ++u)
    for (Vertex w = 0; w < l->num_vertices(); ++w) {
      p.pair_index[u][w] = (int)p.vertex_pairs.size();
      p.vertex_pairs.push_back({u, w});
      c->labels_.push_back("(" + k->label(u) + "," + l->label(w) + ")");
    }

  // Top simplices are the monotone lattice paths through sigma x tau grids.
  // Every staircase simplex extends to a path inside some facet pair, so
  // facet pairs plus face closure give the whole product.
  std::set<VertexList> closed;
  auto facets = [](const ComplexPtr& c) {
    std::vector<SimplexId> out;
    for (int d = 0; d <= c->dim(); ++d)
      for (int i = 0; i < c->size(d); ++i)
        if (c->cofacets_of({d, i}).empty()) out.push_back({d, i});
    return out;
  };
  for (auto sfid : facets(k))
    for (auto tfid : facets(l)) {
      const auto& sv = k->vertices_of(sfid);
      const auto& tv = l->vertices_of(tfid);
      const int dk = sfid.dim, dl = tfid.dim;
      const int total = dk + dl;
      auto emit = [&](const std::vector<int>& wpos) {
            VertexList path;
            int iu = 0, iw = 0;
            path.push_back(p.pair_index[sv[0]][tv[0]]);
            size_t wp = 0;
            for (int step = 0; step < total; ++step) {
              bool adv_w = wp < wpos.size() && wpos[wp] == step;
              if (adv_w) {
                ++iw;
                ++wp;
              } else {
                ++iu;
              }
              path.push_back(p.pair_index[sv[iu]][tv[iw]]);
            }
            std::sort(path.begin(), path.end());
            closed.insert(path);
            // store all faces: subsets
            const int n = (int)path.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
              VertexList face;
              for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) face.push_back(path[b]);
              closed.insert(std::move(face));
            }
          };
      if (dl == 0) {
        emit({});
      } else {
        // all combinations of dl step-positions among total
        std::vector<int> wpos(dl);
        std::iota(wpos.begin(), wpos.end(), 0);
        for (;;) {
          emit(wpos);
          int i = dl - 1;
          while (i >= 0 && wpos[i] == total - dl + i) --i;
          if (i < 0) break;
          ++wpos[i];
          for (int r = i + 1; r < dl; ++r) wpos[r] = wpos[r - 1] + 1;
        }
      }
    }
  int maxd = 0;
  for (const auto& s : closed) maxd = std::max(maxd, (int)s.size() - 1);
  c->simplices_.assign(maxd + 1, {});
  for (const auto& s : closed) c->simplices_[s.size() - 1].push_back(s);
  c->index_faces();
  p.total = c;

  if (k == l) {
    p.diagonal = Subcomplex::empty(p.total);
    for (int d = 0; d <= k->dim(); ++d)
      for (const auto& sv : k->simplices(d)) {
        VertexList dv;
        for (Vertex v : sv) dv.push_back(p.pair_index[v][v]);
        std::sort(dv.begin(), dv.end());
        p.diagonal.insert_closed(c->require(dv));
      }
  }
  return p;
}

SimplexId ProductComplex::diagonal_image(SimplexId s) const {
  VertexList dv;
  for (Vertex v : left->vertices_of(s)) dv.push_back(pair_index[v][v]);
  std::sort(dv.begin(), dv.end());
  return total->require(dv);
}

Subcomplex product_subcomplex(const ProductComplex& p, const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = Subcomplex::empty(p.total);
  const auto& t = p.total;
  for (int d = 0; d <= t->dim(); ++d)
    for (int i = 0; i < t->size(d); ++i) {
      VertexList pu, pw;
      for (Vertex v : t->simplices(d)[i]) {
        pu.push_back(p.proj_left(v));
        pw.push_back(p.proj_right(v));
      }
      std::sort(pu.begin(), pu.end());
      pu.erase(std::unique(pu.begin(), pu.end()), pu.end());
      std::sort(pw.begin(), pw.end());
      pw.erase(std::unique(pw.begin(), pw.end()), pw.end());
      auto su = p.left->find(pu);
      auto sw = p.right->find(pw);
      if (su && sw && a.contains(*su) && b.contains(*sw)) out.insert_closed({d, i});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Orientation

OrientationResult orient(const ComplexPtr& k, int n, const Subcomplex* avoid) {
  OrientationResult res;
  res.sign.assign(k->size(n), 0);
  if (n < 0 || n > k->dim()) {
    res.orientable = true;
    return res;
  }
  // incidence sign of tau in boundary of sigma (sorted convention)
  auto incidence = [&](SimplexId sigma, SimplexId tau) -> int {
    const auto& sv = k->vertices_of(sigma);
    const auto& tv = k->vertices_of(tau);
    int m = 0;
    while (m < (int)sv.size() && m < (int)tv.size() && sv[m] == tv[m]) ++m;
    return m % 2 == 0 ? 1 : -1;
  };
  std::vector<int> parent(k->size(n), -1);
  for (int start = 0; start < k->size(n); ++start) {
    if (res.sign[start]) continue;
    res.sign[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      SimplexId sc{n, cur};
      for (auto f : k->facets_of(sc)) {
        if (avoid && avoid->contains(f)) continue;
        const auto& cof = k->cofacets_of(f);
        if (cof.size() != 2) continue;
        SimplexId other = cof[0].idx == cur ? cof[1] : cof[0];
        int needed = -res.sign[cur] * incidence(sc, f) * incidence(other, f);
        if (res.sign[other.idx] == 0) {
          res.sign[other.idx] = needed;
          parent[other.idx] = cur;
          queue.push_back(other.idx);
        } else if (res.sign[other.idx] != needed) {
          // odd cycle witness: path start..cur plus the conflicting edge
          res.orientable = false;
          for (int w = cur; w != -1; w = parent[w]) res.witness.push_back({n, w});
          res.witness.push_back(other);
          return res;
        }
      }
    }
  }
  res.orientable = true;
  return res;
}

}  // namespace plchain
