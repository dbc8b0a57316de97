#pragma once

// Shared checkers for the duality identity suites: naturality squares,
// boundary squares with the (-1)^n sign, independence of the singular set,
// and expansion of the singularity. Used by the unit tests and the
// acceptance runner.

#include "plchain/corpus.hpp"
#include "plchain/duality.hpp"
#include "plchain/intersection.hpp"

namespace plchain::suite {

// (K, L) c (K2, L2): restriction-then-duality equals duality-then-inclusion.
inline bool dold_naturality(const DualitySpace& xs, const Subcomplex& k, const Subcomplex& l,
                            const Subcomplex& k2, const Subcomplex& l2, int i) {
  auto d_small = dold_duality(xs, k, l, i, false);
  auto d_big = dold_duality(xs, k2, l2, i, false);
  GroupMap restr = induced_inclusion(d_big.map.source, d_small.map.source);
  GroupMap incl = induced_inclusion(d_big.map.target, d_small.map.target);
  return d_small.map.compose_after(restr).equal(incl.compose_after(d_big.map));
}

inline bool gm_naturality(const DualitySpace& xs, const Subcomplex& k, const Subcomplex& l,
                          const Subcomplex& k2, const Subcomplex& l2, int i) {
  auto d_small = gm_duality(xs, k, l, i, false);
  auto d_big = gm_duality(xs, k2, l2, i, false);
  // cohomology of open pairs restricts from the smaller subcomplex pair to
  // the bigger one; homology includes
  GroupMap restr = induced_inclusion(d_small.map.source, d_big.map.source);
  GroupMap incl = induced_inclusion(d_small.map.target, d_big.map.target);
  return d_big.map.compose_after(restr).equal(incl.compose_after(d_small.map));
}

// L c K c J: the Dold square with d* and the boundary map commutes up to (-1)^n.
inline bool dold_boundary_square(const DualitySpace& xs, const Subcomplex& j, const Subcomplex& k,
                                 const Subcomplex& l, int i) {
  auto d_kl = dold_duality(xs, k, l, i, false);
  auto d_jk = dold_duality(xs, j, k, i + 1, false);
  GroupMap dstar = connecting_map_cohomology(d_kl.map.source, d_jk.map.source);
  GroupMap bd = connecting_map(d_kl.map.target, d_jk.map.target);
  GroupMap lhs = d_jk.map.compose_after(dstar);
  GroupMap rhs = bd.compose_after(d_kl.map);
  if (xs.n % 2) rhs = rhs.negated();
  return lhs.equal(rhs);
}

// S c J c L c K: the corrected duality square with the connecting maps.
inline bool gm_boundary_square(const DualitySpace& xs, const Subcomplex& k, const Subcomplex& l,
                               const Subcomplex& j, int i) {
  auto d_kl = gm_duality(xs, k, l, i, false);
  auto d_lj = gm_duality(xs, l, j, i + 1, false);
  GroupMap dstar = connecting_map_cohomology(d_kl.map.source, d_lj.map.source);
  GroupMap bd = connecting_map(d_kl.map.target, d_lj.map.target);
  GroupMap lhs = d_lj.map.compose_after(dstar);
  GroupMap rhs = bd.compose_after(d_kl.map);
  if (xs.n % 2) rhs = rhs.negated();
  return lhs.equal(rhs);
}

// The duality map does not depend on the choice of S inside L (with the
// orientation fixed once on the base).
inline bool gm_s_independence(const ComplexPtr& base, const Chain& orientation, int n,
                              const Subcomplex& s1, const Subcomplex& s2, const Subcomplex& k,
                              const Subcomplex& l, int i) {
  DualitySpace xa = DualitySpace::make(base, s1, n, orientation);
  DualitySpace xb = DualitySpace::make(base, s2, n, orientation);
  auto da = gm_duality(xa, xa.lift(k), xa.lift(l), i, false);
  auto db = gm_duality(xb, xb.lift(k), xb.lift(l), i, false);
  return da.map.matrix == db.map.matrix;
}

// Expansion of the singularity: attach T with X /\ T inside S and compare the
// two duality maps through the vertex-inclusion transports.
struct ExpansionData {
  ComplexPtr big;                      // X u T, with X's vertices unchanged
  std::vector<VertexList> t_facets;    // facets of T in big-vertex labels
};

inline bool gm_expansion(const ComplexPtr& base, const Chain& orientation, int n,
                         const Subcomplex& s, const Subcomplex& k, const Subcomplex& l,
                         const std::vector<VertexList>& t_facets, int i) {
  // build X u T
  std::vector<VertexList> facets = t_facets;
  for (int d = 0; d <= base->dim(); ++d)
    for (int idx = 0; idx < base->size(d); ++idx)
      if (base->cofacets_of({d, idx}).empty()) facets.push_back(base->vertices_of({d, idx}));
  int maxv = base->num_vertices() - 1;
  for (auto& f : t_facets)
    for (Vertex v : f) maxv = std::max(maxv, v);
  std::vector<std::string> labels;
  for (int v = 0; v <= maxv; ++v)
    labels.push_back(v < base->num_vertices() ? base->label(v) : "t" + std::to_string(v));
  auto big = Complex::build(facets, labels);

  auto lift_sub = [&](const Subcomplex& z) {
    Subcomplex out = Subcomplex::empty(big);
    for (int d = 0; d <= z.dim(); ++d)
      for (auto sid : z.members(d)) out.insert_closed(big->require(base->vertices_of(sid)));
    return out;
  };
  Subcomplex tpart = Subcomplex::empty(big);
  for (auto& f : t_facets) tpart.insert_closed(big->require(f));
  Subcomplex s_big = set_union(lift_sub(s), tpart);
  Subcomplex k_big = set_union(lift_sub(k), tpart);
  Subcomplex l_big = set_union(lift_sub(l), tpart);
  // X /\ T c S required
  if (!set_intersection(lift_sub(Subcomplex::full(base)), tpart).subset_of(s_big)) return false;

  Chain gamma_big(big, n);
  for (const auto& [idx, v] : orientation.coeffs)
    gamma_big.coeffs[big->require(base->vertices_of({n, idx})).idx] = v;

  DualitySpace xa = DualitySpace::make(base, s, n, orientation);
  DualitySpace xb = DualitySpace::make(big, s_big, n, gamma_big);
  auto da = gm_duality(xa, xa.lift(k), xa.lift(l), i, false);
  auto db = gm_duality(xb, xb.lift(k_big), xb.lift(l_big), i, false);

  // vertex inclusion X -> X u T extended through both subdivision levels
  std::vector<Vertex> v0(base->num_vertices());
  for (Vertex v = 0; v < base->num_vertices(); ++v) v0[v] = big->require({v}).idx >= 0 ? v : v;
  std::vector<Vertex> v1 = extend_to_bary(base, xa.amb, big, xb.amb, v0);
  std::vector<Vertex> v2 = extend_to_bary(xa.amb, xa.t2, xb.amb, xb.t2, v1);

  // domain identification: the complement carriers agree as simplex sets, so
  // pulling the big-side cocycles back along the inclusion is an isomorphism
  std::vector<Chain> dom_images;
  for (int t = 0; t < db.map.source->rank(); ++t)
    dom_images.push_back(pullback_cochain(db.map.source->basis_chain(t), xa.t2, v2));
  GroupMap p = GroupMap::from_images(db.map.source, da.map.source, dom_images);
  // target inclusion
  std::vector<Chain> tgt_images;
  for (int t = 0; t < da.map.target->rank(); ++t)
    tgt_images.push_back(push_vertex_map(da.map.target->basis_chain(t), xb.t2, v2));
  GroupMap jmap = GroupMap::from_images(da.map.target, db.map.target, tgt_images);

  return jmap.compose_after(da.map.compose_after(p)).equal(db.map);
}

}  // namespace plchain::suite
