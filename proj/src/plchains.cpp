#include "plchain/plchains.hpp"

#include <stdexcept>

namespace plchain {

std::vector<ComplexPtr> lineage_path(const ComplexPtr& ancestor, const ComplexPtr& descendant) {
  std::vector<ComplexPtr> chain;
  ComplexPtr cur = descendant;
  while (cur) {
    chain.push_back(cur);
    if (cur == ancestor) {
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    cur = cur->lineage() ? cur->lineage()->parent : nullptr;
  }
  return {};
}

Chain push_to(const ComplexPtr& target, const Chain& c) {
  auto path = lineage_path(c.complex, target);
  if (path.empty()) throw std::invalid_argument("push_to: target is not a refinement in the lineage");
  Chain out = c;
  for (size_t i = 1; i < path.size(); ++i) out = subdivide_chain_once(path[i], out);
  return out;
}

bool plchain_equal(const PLChain& a, const PLChain& b) {
  if (a.rep.complex == b.rep.complex) return a.rep == b.rep;
  if (!lineage_path(a.rep.complex, b.rep.complex).empty())
    return push_to(b.rep.complex, a.rep) == b.rep;
  if (!lineage_path(b.rep.complex, a.rep.complex).empty())
    return a.rep == push_to(a.rep.complex, b.rep);
  throw std::invalid_argument("plchain_equal: chains live on unrelated triangulations");
}

Chain chain_from_class(const PairGroupPtr& h, const std::vector<Int>& coords,
                       const std::optional<Subcomplex>& c_lower) {
  if (h->is_cohomology()) throw std::invalid_argument("chain_from_class: homology only");
  const int p = h->degree();
  // dim(cl(A - B)) must be p: no generator above degree p
  for (int d = p + 1; d <= h->complex()->dim(); ++d)
    for (auto s : h->a().members(d))
      if (!h->b().contains(s))
        throw std::invalid_argument("chain_from_class: dim(A - B) exceeds the degree");
  if (c_lower) {
    // dim(B - C) < p
    for (int d = p; d <= h->complex()->dim(); ++d)
      for (auto s : h->b().members(d))
        if (!c_lower->contains(s))
          throw std::invalid_argument("chain_from_class: dim(B - C) is not below the degree");
  }
  return h->chain_of(coords);
}

Int coefficient_at(const PairGroupPtr& h, const std::vector<Int>& coords, SimplexId sigma) {
  if (sigma.dim != h->degree()) throw std::invalid_argument("coefficient_at: wrong dimension");
  if (!h->a().contains(sigma)) throw std::invalid_argument("coefficient_at: simplex outside A");
  if (h->b().contains(sigma)) throw std::invalid_argument("coefficient_at: simplex inside B");
  // A - int(sigma): all simplices of A except those having sigma as a face
  Subcomplex rest = Subcomplex::empty(h->complex());
  for (int d = 0; d <= h->complex()->dim(); ++d)
    for (auto s : h->a().members(d))
      if (!h->complex()->has_face(s, sigma)) rest.insert_closed(s);
  auto target = PairGroup::homology(h->complex(), h->a(), rest, h->degree());
  Chain z = h->chain_of(coords);
  auto c2 = target->express(z);
  // the target is generated by the class of sigma itself; read the
  // sigma-coefficient of the corresponding representative
  Chain rep = target->chain_of(c2);
  return rep.coeff(sigma.idx);
}

}  // namespace plchain
