#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plchain/exact.hpp"

namespace plchain {

// Vertices are dense indices into a per-complex label table; the index order
// is the total vertex order used by ordered-simplex products.
using Vertex = int;

// Sorted list of distinct vertices.
using VertexList = std::vector<Vertex>;

class Complex;
using ComplexPtr = std::shared_ptr<const Complex>;
class Subcomplex;
struct ProductComplex;
struct RestrictedComplex;
ProductComplex product_triangulation(const ComplexPtr& k, const ComplexPtr& l);
RestrictedComplex restrict_complex(const Subcomplex& z);

// Address of a simplex inside its complex: dimension and index within that
// dimension's lexicographically sorted table.
struct SimplexId {
  int dim = -1;
  int idx = -1;
  auto operator<=>(const SimplexId&) const = default;
};

// Lineage record for a subdivision: maps back to the parent complex.
struct Lineage {
  ComplexPtr parent;
  // carrier[dim][idx] = SimplexId in parent whose interior contains the
  // barycentric coordinates of this simplex (the smallest parent simplex
  // containing it).
  std::vector<std::vector<SimplexId>> carrier;
  // bary_vertex[dim][idx] = vertex of this complex at the barycenter of the
  // parent simplex (dim, idx).
  std::vector<std::vector<Vertex>> bary_vertex;
};

class Complex : public std::enable_shared_from_this<Complex> {
 public:
  // Face closure of the given facets. Vertex labels name vertices in I/O;
  // vertex order is label-table order.
  static ComplexPtr build(const std::vector<VertexList>& facets, std::vector<std::string> labels = {});

  int dim() const { return (int)simplices_.size() - 1; }
  int num_vertices() const { return (int)labels_.size(); }
  int size(int d) const { return d < 0 || d > dim() ? 0 : (int)simplices_[d].size(); }
  int total_size() const;

  const VertexList& vertices_of(SimplexId s) const { return simplices_[s.dim][s.idx]; }
  const std::vector<VertexList>& simplices(int d) const { return simplices_[d]; }
  std::optional<SimplexId> find(const VertexList& v) const;
  SimplexId require(const VertexList& v) const;

  const std::string& label(Vertex v) const { return labels_[v]; }
  std::optional<Vertex> vertex_by_label(const std::string& s) const;

  // Faces of codimension one, in boundary order (drop m-th vertex).
  std::vector<SimplexId> facets_of(SimplexId s) const;
  // Cofaces of codimension one.
  const std::vector<SimplexId>& cofacets_of(SimplexId s) const;

  const std::optional<Lineage>& lineage() const { return lineage_; }

  bool has_face(SimplexId big, SimplexId small) const;

 private:
  friend ComplexPtr barycentric_subdivision(const ComplexPtr&);
  friend ProductComplex product_triangulation(const ComplexPtr&, const ComplexPtr&);
  friend struct RestrictedComplex;
  friend RestrictedComplex restrict_complex(const Subcomplex&);
  Complex() = default;
  void index_faces();

  std::vector<std::string> labels_;
  std::vector<std::vector<VertexList>> simplices_;       // per dim, lex sorted
  std::vector<std::map<VertexList, int>> index_;         // per dim
  std::vector<std::vector<std::vector<SimplexId>>> cofacets_;  // per dim, per simplex
  std::optional<Lineage> lineage_;
};

// Face-closed set of simplices of a fixed complex.
class Subcomplex {
 public:
  Subcomplex() = default;
  explicit Subcomplex(ComplexPtr c);
  static Subcomplex full(ComplexPtr c);
  static Subcomplex empty(ComplexPtr c) { return Subcomplex(std::move(c)); }

  const ComplexPtr& complex() const { return complex_; }
  bool contains(SimplexId s) const;
  bool contains_vertex(Vertex v) const { return vertex_member_.size() > (size_t)v && vertex_member_[v]; }
  void insert_closed(SimplexId s);  // insert s and all faces
  int dim() const;
  bool empty_set() const;
  int count() const;

  // All member simplices of dimension d, ascending index.
  std::vector<SimplexId> members(int d) const;
  const std::vector<char>& mask(int d) const { return member_[d]; }

  bool operator==(const Subcomplex& o) const { return complex_ == o.complex_ && member_ == o.member_; }
  bool subset_of(const Subcomplex& o) const;

  friend Subcomplex set_union(const Subcomplex& a, const Subcomplex& b);
  friend Subcomplex set_intersection(const Subcomplex& a, const Subcomplex& b);

 private:
  ComplexPtr complex_;
  std::vector<std::vector<char>> member_;  // per dim bitmask
  std::vector<char> vertex_member_;
};

// Simplices of K disjoint from |Z| (no shared vertex, as both are face-closed).
Subcomplex complement_complex(const Subcomplex& z);
// Closure of the simplices of K meeting |Z|.
Subcomplex neighborhood_complex(const Subcomplex& z);
// Simplices not in Z all of whose vertices lie in Z (fullness violations).
std::vector<SimplexId> fullness_violations(const Subcomplex& z);
bool is_full(const Subcomplex& z);

ComplexPtr barycentric_subdivision(const ComplexPtr& k);

// Carrier of a simplex in an ancestor complex of the lineage.
SimplexId carrier_in(const ComplexPtr& ancestor, const ComplexPtr& c, SimplexId s);

// Transport a subcomplex of the parent to the subdivision (its subdivided image).
Subcomplex subdivide_subcomplex(const ComplexPtr& derived, const Subcomplex& z);

// One barycentric subdivision if Z fails to be full, else identity.
std::pair<ComplexPtr, Subcomplex> make_full(const ComplexPtr& k, const Subcomplex& z);

// Standalone complex carrying exactly the simplices of Z. vertex_map sends
// new indices to the original vertices; the original vertex order is kept.
struct RestrictedComplex {
  ComplexPtr complex;
  std::vector<Vertex> to_parent;    // new vertex -> old vertex
  std::vector<int> from_parent;     // old vertex -> new vertex or -1
  SimplexId to_parent_simplex(const ComplexPtr& parent, SimplexId s) const;
  std::optional<SimplexId> from_parent_simplex(const ComplexPtr& parent, SimplexId s) const;
};
RestrictedComplex restrict_complex(const Subcomplex& z);

struct ProductComplex {
  ComplexPtr left, right;
  ComplexPtr total;
  // product vertex (u, w) <-> total vertex index
  std::vector<std::pair<Vertex, Vertex>> vertex_pairs;
  std::vector<std::vector<int>> pair_index;  // [u][w] -> vertex or -1
  // diagonal subcomplex (populated when left == right)
  Subcomplex diagonal;

  Vertex pair_vertex(Vertex u, Vertex w) const { return pair_index[u][w]; }
  Vertex proj_left(Vertex p) const { return vertex_pairs[p].first; }
  Vertex proj_right(Vertex p) const { return vertex_pairs[p].second; }
  // image of a simplex of `left` under the diagonal vertex map
  SimplexId diagonal_image(SimplexId s) const;
};

// Staircase (ordered) triangulation of |K| x |L|: simplices are the strictly
// increasing chains in the product vertex order whose projections are
// simplices of the factors. Contains every product of subcomplexes and, when
// K == L, the diagonal as subcomplexes.
ProductComplex product_triangulation(const ComplexPtr& k, const ComplexPtr& l);

// Staircase product of two subcomplexes inside a ProductComplex.
Subcomplex product_subcomplex(const ProductComplex& p, const Subcomplex& a, const Subcomplex& b);

struct OrientationResult {
  bool orientable = false;
  // sign per top-dimensional simplex (index into simplices(n)); 0 where unset
  std::vector<int> sign;
  // on failure: a cycle of top simplices witnessing the parity obstruction
  std::vector<SimplexId> witness;
};

// Coherent orientation of the n-simplices reachable through interior
// (n-1)-faces with exactly two cofaces, skipping faces inside `avoid`.
OrientationResult orient(const ComplexPtr& k, int n, const Subcomplex* avoid = nullptr);

}  // namespace plchain
