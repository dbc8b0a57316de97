#pragma once

#include <optional>

#include "plchain/homology.hpp"

namespace plchain {

// A PL chain: a simplicial chain tagged with its triangulation, compared up
// to pushing into a common refinement inside one barycentric lineage tree.
struct PLChain {
  Chain rep;
  int degree() const { return rep.degree; }
  bool zero() const { return rep.zero(); }
};

// Chain of subdivisions from ancestor to descendant, empty if unrelated.
std::vector<ComplexPtr> lineage_path(const ComplexPtr& ancestor, const ComplexPtr& descendant);

// Push a chain through the subdivision maps down to `target` (a descendant of
// the chain's complex). Throws when target is not in the lineage.
Chain push_to(const ComplexPtr& target, const Chain& c);

// Equality up to common refinement (deeper of the two complexes).
bool plchain_equal(const PLChain& a, const PLChain& b);

// Support is triangulation independent: the subdivided support of the parent
// support equals the support of the subdivided chain (checked in tests).

// Unique chain realizing a class in H_p(A, B) when dim(A - B) = p and
// (for the supplied C, when watching boundaries) dim(B - C) < p: the basis
// representatives themselves, with coefficients on B dropped. Throws when the
// dimension preconditions fail.
Chain chain_from_class(const PairGroupPtr& h, const std::vector<Int>& coords,
                       const std::optional<Subcomplex>& c_lower = std::nullopt);

// Coefficient recovery: image of the class in H_p(A, A - int sigma) = Z via
// the orientation of sigma.
Int coefficient_at(const PairGroupPtr& h, const std::vector<Int>& coords, SimplexId sigma);

}  // namespace plchain
