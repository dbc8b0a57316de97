#pragma once

#include "plchain/complex.hpp"
#include "plchain/exact.hpp"

namespace plchain {

// Simplicial chain with integer coefficients, relative to the sorted-vertex
// orientation of each simplex. Cochains share the representation.
struct Chain {
  ComplexPtr complex;
  int degree = 0;
  SparseVec coeffs;  // simplex index within degree -> coefficient

  Chain() = default;
  Chain(ComplexPtr c, int deg) : complex(std::move(c)), degree(deg) {}

  bool zero() const { return coeffs.empty(); }
  Int coeff(int idx) const {
    auto it = coeffs.find(idx);
    return it == coeffs.end() ? Int(0) : it->second;
  }
  void add(int idx, const Int& v) {
    if (v == 0) return;
    auto it = coeffs.find(idx);
    if (it == coeffs.end())
      coeffs[idx] = v;
    else {
      it->second += v;
      if (it->second == 0) coeffs.erase(it);
    }
  }
  Chain& operator+=(const Chain& o);
  Chain& operator*=(const Int& c);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b);
  bool operator==(const Chain& o) const {
    return complex == o.complex && degree == o.degree && coeffs == o.coeffs;
  }
};

using Cochain = Chain;  // same data; degree counts up, evaluation is pairing

// Matrix of the boundary map from k-chains to (k-1)-chains, alternating-sign
// convention on sorted vertices.
SparseMat boundary_matrix(const ComplexPtr& k, int deg);

Chain boundary(const Chain& c);
// Coboundary of a cochain: (d a)(t) = a(boundary t); the matrix of d on
// degree-k cochains is boundary_matrix(k+1) transposed, with no extra sign.
Cochain coboundary(const Cochain& a);

Int evaluate(const Cochain& a, const Chain& c);

// Support of a chain: the closure of its simplices with nonzero coefficient,
// optionally discarding simplices inside `rel` first (minimal representative
// of the class mod rel).
Subcomplex support(const Chain& c, const Subcomplex* rel = nullptr);
// Drop coefficients on simplices inside rel.
Chain reduce_mod(const Chain& c, const Subcomplex& rel);
// Restrict coefficients to simplices inside `sub`.
Chain restrict_to(const Chain& c, const Subcomplex& sub);

// Front-face / back-face cup product on the ordered complex:
//   (a ⌣ b)(v0..v_{p+q}) = a(v0..v_p) * b(v_p..v_{p+q}).
Cochain cup(const Cochain& a, const Cochain& b);

// Cap product with the cochain evaluated on the back face:
//   a ⌢ (v0..v_n) = a(v_{n-p}..v_n) * (v0..v_{n-p}),
// so that <a ⌣ b, x> = <a, b ⌢ x> holds on the nose and
//   d(a ⌢ x) = a ⌢ dx + (-1)^{n-p} (da) ⌢ x  per n-simplex.
Chain cap(const Cochain& a, const Chain& x);

// Eilenberg-Zilber shuffle product of chains into the staircase product:
// boundary rule d(z x w) = dz x w + (-1)^{|z|} z x dw.
Chain cross_chain(const ProductComplex& p, const Chain& z, const Chain& w);

// Alexander-Whitney dual cross product of cochains on the staircase product:
// (a x b)(s) = a(front projection) * b(back projection), zero when either
// projection is degenerate. Satisfies (a x b)(diag s) = (a ⌣ b)(s).
Cochain cross_cochain(const ProductComplex& p, const Cochain& a, const Cochain& b);

// Push a chain through the subdivision map of `derived` (sum of compatibly
// oriented simplices inside each carrier).
Chain subdivide_chain_once(const ComplexPtr& derived, const Chain& c);

// Pull a cochain back along the subdivision chain map: (sd* a)(s) = a(sd s).
Cochain cochain_pullback_sd(const ComplexPtr& derived, const Cochain& a_on_derived);

// Chain map induced by a vertex map between complexes (degenerate images die).
Chain push_vertex_map(const Chain& c, const ComplexPtr& target, const std::vector<Vertex>& vmap);

// Pullback of a cochain along an injective vertex map, with the sorting sign.
Cochain pullback_cochain(const Cochain& a, const ComplexPtr& source, const std::vector<Vertex>& vmap);

// Extend a simplicial injection source -> target to their barycentric
// subdivisions: the barycenter of tau goes to the barycenter of its image.
std::vector<Vertex> extend_to_bary(const ComplexPtr& src, const ComplexPtr& src1,
                                   const ComplexPtr& tgt, const ComplexPtr& tgt1,
                                   const std::vector<Vertex>& vmap);

}  // namespace plchain
