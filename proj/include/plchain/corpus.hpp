#pragma once

#include <memory>
#include <string>

#include "plchain/stratified.hpp"

namespace plchain {

// A named space: filtered complex, distinguished chains, named perversities.
struct Space {
  std::string name;
  std::shared_ptr<FilteredPseudomanifold> x;
  std::map<std::string, Chain> chains;
  std::map<std::string, Perversity> perversities;

  const Chain& chain(const std::string& s) const;
};

// Builders for the generated corpus:
//   simplex <n> | sphere <n> | torus2 | projplane | pinched-torus
//   suspension(<name>) | cone(<name>) | product(<a>,<b>)
Space corpus_generate(const std::string& name);

// Suspension/cone of an existing space, with apex strata appended and named
// chains suspended ("susp-<name>").
Space suspension_space(const Space& base, const std::string& name);
Space cone_space(const Space& base, const std::string& name);
Space product_space(const Space& a, const Space& b, const std::string& name);

// Cone operator on chains: cone_v(c) = (-1)^{deg+1} (c * v) so that
// boundary(cone(c)) = c for cycles. The apex must order after all vertices.
Chain cone_chain(const ComplexPtr& target, const Chain& c, Vertex apex);

}  // namespace plchain
