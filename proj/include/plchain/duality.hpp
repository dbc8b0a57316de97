#pragma once

#include <optional>
#include <string>

#include "plchain/plchains.hpp"
#include "plchain/stratified.hpp"

namespace plchain {

// Ambient data for duality computations over a compact pair (X, S) whose
// complement X - S is an oriented n-manifold. `amb` is one barycentric
// subdivision of `base` (so that unions of base subcomplexes are full), and
// `t2` one more (so that simplicial neighborhoods are regular). Open sets are
// always presented by compact complement complexes; the homotopy-equivalence
// inclusions they stand for are inverted as matrices.
struct DualitySpace {
  ComplexPtr base, amb, t2;
  int n = 0;
  Subcomplex s_amb;    // the singular-ish set at amb level
  Chain gamma_amb;     // coherent orientation n-chain off S, at amb level
  Chain gamma_t2;

  // transports
  Subcomplex lift(const Subcomplex& on_base) const;   // base -> amb
  Subcomplex lift2(const Subcomplex& on_amb) const;   // amb -> t2
  Chain lift_chain(const Chain& on_base) const;
  Chain lift_chain2(const Chain& on_amb) const;

  // s and orientation given at base level; orientation solved when absent
  static DualitySpace make(ComplexPtr base, const Subcomplex& s_base, int n,
                           const std::optional<Chain>& orientation_base = std::nullopt);
};

struct DualityMap {
  GroupMap map;       // the realized isomorphism
  std::string kind;   // which composition: "dold" (cap with j_* Gamma_K over
                      // regular neighborhoods) or "gm" (complement-complex
                      // composition through the Dold map)
  int degree = 0;     // cohomological input degree i
  int n = 0;
  int sign = 1;       // the applied (-1)^{in}
};

// Dold duality D: H^i(K~, L~) -> H_{n-i}(M - L~, M - K~), M = X - S, with the
// target presented on the complement pair (C_{L~}, C_{K~}) at t2 level.
// K~, L~ are full subcomplexes at amb level with K~ disjoint from S.
DualityMap dold_duality(const DualitySpace& xs, const Subcomplex& ktilde_amb,
                        const Subcomplex& ltilde_amb, int i, bool require_iso = true);

// Corrected Goresky-MacPherson duality D: H^i(X - L, X - K) -> H_{n-i}(K, L)
// for S c L c K, domain presented on (sd C_L, sd C_K) at t2 level and target
// on (sd K, sd L).
DualityMap gm_duality(const DualitySpace& xs, const Subcomplex& k_amb, const Subcomplex& l_amb,
                      int i, bool require_iso = true);

struct FundamentalClassOver {
  Subcomplex nbhd, frontier;   // N(K) and its frontier, at t2 level
  Chain representative;        // coherent n-chain over N(K)
  PairGroupPtr group;          // H_n(N(K), frontier)
  std::vector<Int> cls;
};

// Fundamental class of M = X - S over the compact K (disjoint from S).
FundamentalClassOver fundamental_class_over(const DualitySpace& xs, const Subcomplex& k_amb);

// Regular-neighborhood package of the complex_core interface: complement in
// K itself, neighborhood and frontier in the second derived subdivision.
struct NeighborhoodData {
  ComplexPtr ambient2;
  Subcomplex c_z;       // in the input complex
  Subcomplex n_z, frontier;  // in ambient2
};
NeighborhoodData neighborhoods(const ComplexPtr& k, const Subcomplex& z);

}  // namespace plchain
