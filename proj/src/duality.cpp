#include "plchain/duality.hpp"

#include <stdexcept>

namespace plchain {

Subcomplex DualitySpace::lift(const Subcomplex& z) const { return subdivide_subcomplex(amb, z); }
Subcomplex DualitySpace::lift2(const Subcomplex& z) const { return subdivide_subcomplex(t2, z); }
Chain DualitySpace::lift_chain(const Chain& c) const { return subdivide_chain_once(amb, c); }
Chain DualitySpace::lift_chain2(const Chain& c) const { return subdivide_chain_once(t2, c); }

DualitySpace DualitySpace::make(ComplexPtr base, const Subcomplex& s_base, int n,
                                const std::optional<Chain>& orientation_base) {
  DualitySpace xs;
  xs.base = base;
  xs.amb = barycentric_subdivision(base);
  xs.t2 = barycentric_subdivision(xs.amb);
  xs.n = n;
  xs.s_amb = subdivide_subcomplex(xs.amb, s_base);
  if (orientation_base) {
    xs.gamma_amb = subdivide_chain_once(xs.amb, *orientation_base);
  } else {
    auto o = orient(xs.amb, n, &xs.s_amb);
    if (!o.orientable) throw std::invalid_argument("duality needs an orientable regular part");
    Chain g(xs.amb, n);
    for (int i = 0; i < xs.amb->size(n); ++i)
      if (o.sign[i]) g.coeffs[i] = o.sign[i];
    xs.gamma_amb = g;
  }
  xs.gamma_t2 = subdivide_chain_once(xs.t2, xs.gamma_amb);
  return xs;
}

namespace {

// Fundamental chain over K~ away from L~: the n-simplices of t2 meeting K~
// and disjoint from L~, with their inherited orientations. This realizes the
// restricted class j_* Gamma_{K~} at chain level; the certificate in the
// caller pins where its boundary may live.
Chain restricted_gamma(const DualitySpace& xs, const Subcomplex& ktilde2, const Subcomplex& ltilde2) {
  Chain g(xs.t2, xs.n);
  for (const auto& [i, v] : xs.gamma_t2.coeffs) {
    bool meets_k = false, meets_l = false;
    for (Vertex w : xs.t2->simplices(xs.n)[i]) {
      if (ktilde2.contains_vertex(w)) meets_k = true;
      if (ltilde2.contains_vertex(w)) meets_l = true;
    }
    if (meets_k && !meets_l) g.coeffs[i] = v;
  }
  return g;
}

}  // namespace

DualityMap dold_duality(const DualitySpace& xs, const Subcomplex& ktilde_amb,
                        const Subcomplex& ltilde_amb, int i, bool require_iso) {
  if (!ltilde_amb.subset_of(ktilde_amb)) throw std::invalid_argument("dold: L must sit inside K");
  if (!set_intersection(ktilde_amb, xs.s_amb).empty_set())
    throw std::invalid_argument("dold: K must avoid S");
  if (!is_full(ktilde_amb) || !is_full(ltilde_amb))
    throw std::invalid_argument("dold: subcomplexes must be full (apply make_full)");
  const int n = xs.n;

  Subcomplex k2 = xs.lift2(ktilde_amb), l2 = xs.lift2(ltilde_amb);
  Subcomplex nk = neighborhood_complex(k2), nl = neighborhood_complex(l2);
  Subcomplex ck = complement_complex(k2), cl = complement_complex(l2);

  auto h_dom = PairGroup::cohomology(xs.t2, k2, l2, i);
  auto h_nbhd = PairGroup::cohomology(xs.t2, nk, nl, i);
  auto h_exc = PairGroup::cohomology(xs.t2, set_intersection(nk, cl), set_intersection(nl, cl), i);
  auto h_cap = PairGroup::homology(xs.t2, set_intersection(nk, cl), set_intersection(nk, ck), n - i);
  auto h_out = PairGroup::homology(xs.t2, cl, ck, n - i);

  // restriction to the core, inverted
  GroupMap rinv = induced_inclusion(h_nbhd, h_dom).inverse();
  // excision of L~ (cochain restriction; an isomorphism by simplicial excision)
  GroupMap exc = induced_inclusion(h_nbhd, h_exc);
  // cap with the restricted fundamental chain
  Chain gamma = restricted_gamma(xs, k2, l2);
  {
    Chain bg = boundary(gamma);
    Subcomplex allowed = set_union(set_intersection(nk, ck), set_intersection(nl, cl));
    for (const auto& [idx, v] : bg.coeffs)
      if (!allowed.contains({n - 1, idx}))
        throw std::logic_error("dold: restricted fundamental chain has a stray boundary face");
  }
  std::vector<Chain> images;
  for (int t = 0; t < h_exc->rank(); ++t) images.push_back(cap(h_exc->basis_chain(t), gamma));
  GroupMap capmap = GroupMap::from_images(h_exc, h_cap, images);
  GroupMap inc = induced_inclusion(h_cap, h_out);

  GroupMap total = inc.compose_after(capmap).compose_after(exc).compose_after(rinv);
  int sign = (i * n) % 2 ? -1 : 1;
  if (sign < 0) total = total.negated();
  if (require_iso && !total.is_isomorphism())
    throw std::logic_error("dold duality did not produce an isomorphism");
  return DualityMap{std::move(total), "dold", i, n, sign};
}

DualityMap gm_duality(const DualitySpace& xs, const Subcomplex& k_amb, const Subcomplex& l_amb,
                      int i, bool require_iso) {
  if (!xs.s_amb.subset_of(l_amb)) throw std::invalid_argument("gm: S must sit inside L");
  if (!l_amb.subset_of(k_amb)) throw std::invalid_argument("gm: L must sit inside K");
  if (!is_full(k_amb) || !is_full(l_amb))
    throw std::invalid_argument("gm: subcomplexes must be full (apply make_full)");
  const int n = xs.n;

  Subcomplex ktilde = complement_complex(l_amb);  // compact carrier of X - L
  Subcomplex ltilde = complement_complex(k_amb);
  DualityMap dold = dold_duality(xs, ktilde, ltilde, i, require_iso);

  // The Dold target presents H_{n-i}((X-S) - C_K, (X-S) - C_L); the star
  // retractions and the excision of S identify it with H_{n-i}(K, L).
  auto h_final = PairGroup::homology(xs.t2, xs.lift2(k_amb), xs.lift2(l_amb), n - i);
  GroupMap j = induced_inclusion(h_final, dold.map.target);
  GroupMap total = j.inverse().compose_after(dold.map);
  return DualityMap{std::move(total), "gm", i, n, dold.sign};
}

FundamentalClassOver fundamental_class_over(const DualitySpace& xs, const Subcomplex& k_amb) {
  if (!set_intersection(k_amb, xs.s_amb).empty_set())
    throw std::invalid_argument("fundamental class: K meets S");
  if (xs.gamma_amb.zero()) throw std::invalid_argument("fundamental class: no orientation");
  FundamentalClassOver out;
  Subcomplex k2 = xs.lift2(k_amb);
  out.nbhd = neighborhood_complex(k2);
  out.frontier = set_intersection(out.nbhd, complement_complex(k2));
  out.representative = restricted_gamma(xs, k2, Subcomplex::empty(xs.t2));
  {
    Chain bg = boundary(out.representative);
    for (const auto& [idx, v] : bg.coeffs)
      if (!out.frontier.contains({xs.n - 1, idx}))
        throw std::logic_error("fundamental class representative is not a relative cycle");
  }
  out.group = PairGroup::homology(xs.t2, out.nbhd, out.frontier, xs.n);
  out.cls = out.group->express(out.representative);
  return out;
}

NeighborhoodData neighborhoods(const ComplexPtr& k, const Subcomplex& z) {
  auto viols = fullness_violations(z);
  if (!viols.empty()) {
    const auto& vs = k->vertices_of(viols.front());
    std::string which;
    for (auto v : vs) which += (which.empty() ? "" : " ") + k->label(v);
    throw std::invalid_argument("neighborhoods: Z is not full (violating simplex: " + which + ")");
  }
  NeighborhoodData out;
  out.c_z = complement_complex(z);
  auto k1 = barycentric_subdivision(k);
  out.ambient2 = barycentric_subdivision(k1);
  Subcomplex z2 = subdivide_subcomplex(out.ambient2, subdivide_subcomplex(k1, z));
  out.n_z = neighborhood_complex(z2);
  out.frontier = set_intersection(out.n_z, complement_complex(z2));
  return out;
}

}  // namespace plchain
