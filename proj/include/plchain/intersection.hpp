#pragma once

#include "plchain/corpus.hpp"
#include "plchain/duality.hpp"

namespace plchain {

// Shared state for intersection products over one pseudomanifold: the duality
// ambient (one barycentric level for fullness, a second for neighborhoods)
// plus the diagonal bookkeeping. Products of chains are materialized on
// support products only; the ambient X x X is never triangulated whole.
class DiagonalContext {
 public:
  explicit DiagonalContext(std::shared_ptr<FilteredPseudomanifold> x);

  const FilteredPseudomanifold& space() const { return *x_; }
  const DualitySpace& duality() const { return xs_; }
  int n() const { return x_->n(); }
  const Subcomplex& sigma_amb() const { return sigma_amb_; }

  // chains at base level pushed to the working (amb) level, reduced mod Sigma
  Chain to_amb(const Chain& c) const;

  // the filtered space refined to the duality t2 level (cached)
  std::shared_ptr<FilteredPseudomanifold> refined_space() const;

 private:
  std::shared_ptr<FilteredPseudomanifold> x_;
  DualitySpace xs_;
  Subcomplex sigma_amb_;
  mutable std::shared_ptr<FilteredPseudomanifold> xt2_;
};

// Formal sum of tensor pairs with its materialized cross-product image on the
// product of the support complexes. Membership in the product domains is
// recomputed from the supports, never trusted from the caller.
struct DomainElement {
  std::vector<std::pair<Chain, Chain>> tensors;  // base-level chains on X
  int degree = -1;

  // materialization (built by analyze)
  RestrictedComplex left, right;
  ProductComplex prod;
  Chain eps;       // cross product of the element on prod.total
  Chain eps_bd;    // its boundary
  bool in_frak_g = false;      // Def 5.1 membership of eps (and its boundary)
  bool in_g_p = false;         // stratified general position of eps and d(eps)
  std::string rejection;       // first failed condition, for error reports

  static DomainElement make(const DiagonalContext& ctx, std::vector<std::pair<Chain, Chain>> tensors);
};

struct GeneralPositionReport {
  enum class Mode { diagonal, stratified, pair };
  Mode mode = Mode::diagonal;
  bool ok = true;
  struct Line {
    std::string what;
    int stratum = -1;  // -1: the regular-part condition of the diagonal mode
    long actual = -1, budget = 0;
    bool ok = true;
  };
  std::vector<Line> lines;
};

// Cross product of two base-level chains, materialized on the product of
// their support complexes.
PLChain cross_product(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta);

// Def 5.1 conditions (chain and boundary) for the element's cross image.
GeneralPositionReport general_position_diagonal(const DiagonalContext& ctx, const DomainElement& e);
// Stratified general position of |eps(e)| (or of |eps(de)| when boundary).
GeneralPositionReport general_position_stratified(const DiagonalContext& ctx, const DomainElement& e,
                                                  bool boundary);
// Pair form for two chains on X.
GeneralPositionReport general_position_pair(const DiagonalContext& ctx, const Chain& a,
                                            const Chain& b);

// The umkehr image of one tensor term, as a chain on the duality t2 complex
// of the local ambient. Z (a union of n-simplices at base level, containing
// the relevant simplices' stars) selects the compact neighborhood; nullptr
// means Z = X.
Chain umkehr_tensor(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta,
                    const Subcomplex* z_base = nullptr);

// Variant computing through enlarged support pairs (A, B): the factor
// supports are unioned with the given subcomplexes before the pairs are
// formed. Legal enlargements leave the result unchanged.
Chain umkehr_tensor_enlarged(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta,
                             const Subcomplex& extra_left, const Subcomplex& extra_right,
                             const Subcomplex& extra_bd_left, const Subcomplex& extra_bd_right);

// Delta_! of a domain element (sum over tensor terms; Prop 5.9 additivity).
Chain umkehr(const DiagonalContext& ctx, const DomainElement& e);

// mu = Delta_! . epsilon on the domain \frak G; throws when membership fails,
// reporting the violated condition.
Chain mu(const DiagonalContext& ctx, const DomainElement& e);

// Intersection coefficient I_sigma for a base-level (i-n)-simplex sigma not
// inside Sigma, optionally with a local neighborhood Z.
Int intersection_coefficient(const DiagonalContext& ctx, const DomainElement& e, SimplexId sigma_base,
                             const Subcomplex* z_base = nullptr);

struct IhProductResult {
  Chain out;                       // at the duality t2 level
  AllowabilityReport allowability; // for p1 + p2, of the output
  AllowabilityReport boundary_allowability;
};

// mu restricted to intersection chains: factors must be allowable, the
// element must be in stratified general position; the output allowability
// for p1 + p2 is certified.
IhProductResult ih_product(const DiagonalContext& ctx, const DomainElement& e, const Perversity& p1,
                           const Perversity& p2);

// Cycles-only Goresky-MacPherson composition through cup products; output at
// the duality t2 level.
Chain gm_cycle_product(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta);

struct CupDualityReport {
  bool holds = false;
  int degree_i = 0, degree_j = 0;
};

// Verifies the cup-vs-intersection duality diagram on a closed oriented
// manifold entry for cycle classes of the given supports (matrix identity).
CupDualityReport cup_duality_check(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta);

// Direct realization of the umkehr composition on a fully materialized
// product (small ambients only): used to cross-validate the tensor route.
Chain umkehr_reference(const DiagonalContext& ctx, const DomainElement& e);

}  // namespace plchain
