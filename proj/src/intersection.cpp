#include "plchain/intersection.hpp"

#include <algorithm>
#include <stdexcept>

namespace plchain {

namespace {

Chain to_restricted(const RestrictedComplex& rc, const Chain& c) {
  Chain out(rc.complex, c.degree);
  for (const auto& [i, v] : c.coeffs) {
    auto s = rc.from_parent_simplex(c.complex, {c.degree, i});
    if (!s) throw std::invalid_argument("chain leaves the restricted complex");
    out.coeffs[s->idx] = v;
  }
  return out;
}

}  // namespace

DiagonalContext::DiagonalContext(std::shared_ptr<FilteredPseudomanifold> x) : x_(std::move(x)) {
  if (!x_->oriented()) throw std::invalid_argument("intersection products need an oriented space");
  xs_ = DualitySpace::make(x_->complex(), x_->sigma(), x_->n(), x_->fundamental_chain());
  sigma_amb_ = xs_.lift(x_->sigma());
}

Chain DiagonalContext::to_amb(const Chain& c) const {
  return reduce_mod(xs_.lift_chain(c), sigma_amb_);
}

std::shared_ptr<FilteredPseudomanifold> DiagonalContext::refined_space() const {
  if (!xt2_) {
    std::vector<Subcomplex> sk;
    for (int i = 0; i <= x_->n(); ++i) sk.push_back(xs_.lift2(xs_.lift(x_->skeleton(i))));
    xt2_ = std::make_shared<FilteredPseudomanifold>(xs_.t2, sk);
  }
  return xt2_;
}

// ---------------------------------------------------------------------------
// Domain elements

DomainElement DomainElement::make(const DiagonalContext& ctx, std::vector<std::pair<Chain, Chain>> tensors) {
  DomainElement e;
  e.tensors = std::move(tensors);
  if (e.tensors.empty()) throw std::invalid_argument("empty domain element");
  const auto& base = ctx.space().complex();
  e.degree = e.tensors[0].first.degree + e.tensors[0].second.degree;
  Subcomplex uleft = Subcomplex::empty(base), uright = Subcomplex::empty(base);
  for (auto& [z, w] : e.tensors) {
    if (z.complex != base || w.complex != base)
      throw std::invalid_argument("domain element factors must live on the base triangulation");
    if (z.degree + w.degree != e.degree)
      throw std::invalid_argument("domain element terms of mixed degree");
    uleft = set_union(uleft, support(z));
    uright = set_union(uright, support(w));
  }
  if (uleft.empty_set() || uright.empty_set()) throw std::invalid_argument("zero domain element");
  e.left = restrict_complex(uleft);
  e.right = restrict_complex(uright);
  e.prod = product_triangulation(e.left.complex, e.right.complex);
  e.eps = Chain(e.prod.total, e.degree);
  for (auto& [z, w] : e.tensors)
    e.eps += cross_chain(e.prod, to_restricted(e.left, z), to_restricted(e.right, w));
  e.eps_bd = boundary(e.eps);

  auto gd = general_position_diagonal(ctx, e);
  e.in_frak_g = gd.ok;
  for (auto& l : gd.lines)
    if (!l.ok && e.rejection.empty()) e.rejection = l.what;
  auto gs = general_position_stratified(ctx, e, false);
  auto gsb = general_position_stratified(ctx, e, true);
  e.in_g_p = gs.ok && gsb.ok;
  return e;
}

namespace {

// base-level projections of a product simplex; nullopt when degenerate in X
std::optional<SimplexId> proj_base(const DiagonalContext& ctx, const DomainElement& e, bool leftside,
                                   SimplexId s) {
  const auto& rc = leftside ? e.left : e.right;
  VertexList pv;
  for (Vertex v : e.prod.total->vertices_of(s))
    pv.push_back(leftside ? e.prod.proj_left(v) : e.prod.proj_right(v));
  std::sort(pv.begin(), pv.end());
  pv.erase(std::unique(pv.begin(), pv.end()), pv.end());
  auto local = rc.complex->find(pv);
  if (!local) return std::nullopt;
  return rc.to_parent_simplex(ctx.space().complex(), *local);
}

// diagonal pullback of a product simplex: the base simplex it spans on the
// diagonal, or nullopt when the simplex leaves the diagonal
std::optional<SimplexId> diag_pullback(const DiagonalContext& ctx, const DomainElement& e, SimplexId s) {
  VertexList xv;
  for (Vertex v : e.prod.total->vertices_of(s)) {
    Vertex a = e.left.to_parent[e.prod.proj_left(v)];
    Vertex b = e.right.to_parent[e.prod.proj_right(v)];
    if (a != b) return std::nullopt;
    xv.push_back(a);
  }
  std::sort(xv.begin(), xv.end());
  xv.erase(std::unique(xv.begin(), xv.end()), xv.end());
  return ctx.space().complex()->require(xv);
}

bool in_sigma2(const DiagonalContext& ctx, const DomainElement& e, SimplexId s) {
  auto pl = proj_base(ctx, e, true, s);
  auto pr = proj_base(ctx, e, false, s);
  // face-closed projections always exist as base simplices
  return (pl && ctx.space().sigma().contains(*pl)) || (pr && ctx.space().sigma().contains(*pr));
}

}  // namespace

PLChain cross_product(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta) {
  auto e = DomainElement::make(ctx, {{zeta, eta}});
  return PLChain{e.eps};
}

GeneralPositionReport general_position_diagonal(const DiagonalContext& ctx, const DomainElement& e) {
  GeneralPositionReport rep;
  rep.mode = GeneralPositionReport::Mode::diagonal;
  const int n = ctx.n(), i = e.degree;
  auto pullback_dim = [&](const Chain& c) {
    int best = -1;
    Subcomplex sup = support(c);
    for (int d = 0; d <= sup.dim(); ++d)
      for (auto s : sup.members(d)) {
        if (in_sigma2(ctx, e, s)) continue;
        auto pb = diag_pullback(ctx, e, s);
        if (!pb) continue;
        if (!ctx.space().sigma().contains(*pb)) best = std::max(best, pb->dim);
      }
    return best;
  };
  {
    GeneralPositionReport::Line l;
    l.what = "dim(|xi|' - Sigma) <= i - n";
    l.actual = pullback_dim(e.eps);
    l.budget = i - n;
    l.ok = l.actual <= l.budget;
    rep.lines.push_back(l);
  }
  {
    GeneralPositionReport::Line l;
    l.what = "dim(|d xi|' - Sigma) <= i - n - 1";
    l.actual = pullback_dim(e.eps_bd);
    l.budget = i - n - 1;
    l.ok = l.actual <= l.budget;
    rep.lines.push_back(l);
  }
  for (auto& l : rep.lines) rep.ok = rep.ok && l.ok;
  return rep;
}

GeneralPositionReport general_position_stratified(const DiagonalContext& ctx, const DomainElement& e,
                                                  bool bd) {
  GeneralPositionReport rep;
  rep.mode = GeneralPositionReport::Mode::stratified;
  const Chain& c = bd ? e.eps_bd : e.eps;
  Subcomplex sup = support(c);
  const auto& strata = ctx.space().strata();
  for (int st = 0; st < (int)strata.size(); ++st) {
    int diag_dim = -1, prod_dim = -1;
    for (int d = 0; d <= sup.dim(); ++d)
      for (auto s : sup.members(d)) {
        auto pl = proj_base(ctx, e, true, s);
        auto pr = proj_base(ctx, e, false, s);
        if (pl && pr && ctx.space().stratum_of(*pl) == st && ctx.space().stratum_of(*pr) == st)
          prod_dim = std::max(prod_dim, d);
        auto pb = diag_pullback(ctx, e, s);
        if (pb && ctx.space().stratum_of(*pb) == st) diag_dim = std::max(diag_dim, pb->dim);
      }
    GeneralPositionReport::Line l;
    l.stratum = st;
    l.what = std::string("dim(A /\\ diag Z) <= dim(A /\\ Z x Z) - dim Z") + (bd ? " (boundary)" : "");
    l.actual = diag_dim;
    l.budget = prod_dim - strata[st].dim;
    l.ok = diag_dim == -1 || l.actual <= l.budget;
    if (!l.ok) rep.ok = false;
    rep.lines.push_back(l);
  }
  return rep;
}

GeneralPositionReport general_position_pair(const DiagonalContext& ctx, const Chain& a, const Chain& b) {
  GeneralPositionReport rep;
  rep.mode = GeneralPositionReport::Mode::pair;
  Subcomplex sa = support(a), sb = support(b);
  Subcomplex meet = set_intersection(sa, sb);
  const auto& strata = ctx.space().strata();
  for (int st = 0; st < (int)strata.size(); ++st) {
    int dmeet = dim_meet_stratum(ctx.space(), meet, st);
    int da = dim_meet_stratum(ctx.space(), sa, st);
    int db = dim_meet_stratum(ctx.space(), sb, st);
    GeneralPositionReport::Line l;
    l.stratum = st;
    l.what = "dim(|a| /\\ |b| /\\ Z) <= dim(|a| /\\ Z) + dim(|b| /\\ Z) - dim Z";
    l.actual = dmeet;
    l.budget = (long)da + db - strata[st].dim;
    l.ok = dmeet == -1 || l.actual <= l.budget;
    if (!l.ok) rep.ok = false;
    rep.lines.push_back(l);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The tensor-term umkehr pipeline
//
// For xi = zeta x eta the product-side duality inverse of Def 5.3 factors
// through the two X-side dualities by the cross compatibility of the cap
// product with the Koszul identity (D (x) D)^{-1} = (-1)^n (D^{-1} (x) D^{-1});
// the remaining arrows (restriction along the diagonal, the transports
// between complement models, the forward duality, the coefficient reading)
// are realized exactly as matrices. A direct realization on the materialized
// product is kept alongside (umkehr_reference) and the two are cross-checked
// in the test suite.

namespace {

struct PipelineSpace {
  // base-level data of the ambient the pipeline runs in (X itself or a
  // compact neighborhood Z with its frontier absorbed into the relative set)
  ComplexPtr base;
  const DualitySpace* xs;
  Subcomplex sigma_base;  // Sigma, or J_Z = (Sigma /\ Z) u S_Z
};

struct Enlargement {
  const Subcomplex *left = nullptr, *right = nullptr, *bd_left = nullptr, *bd_right = nullptr;
};

Chain umkehr_pipeline(const PipelineSpace& ps, const Chain& zeta_base, const Chain& eta_base,
                      const Enlargement* enl = nullptr) {
  const DualitySpace& xs = *ps.xs;
  const int n = xs.n, j = zeta_base.degree, k = eta_base.degree, i = j + k;
  Chain zero(xs.t2, i - n);
  if (i < n) return zero;
  Subcomplex sig = xs.lift(ps.sigma_base);
  Chain zeta = reduce_mod(xs.lift_chain(zeta_base), sig);
  Chain eta = reduce_mod(xs.lift_chain(eta_base), sig);
  if (zeta.zero() || eta.zero()) return zero;

  Subcomplex sz = support(zeta), se = support(eta);
  Subcomplex bz = support(reduce_mod(boundary(zeta), sig));
  Subcomplex be = support(reduce_mod(boundary(eta), sig));
  if (enl) {
    if (enl->left) sz = set_union(sz, xs.lift(*enl->left));
    if (enl->right) se = set_union(se, xs.lift(*enl->right));
    if (enl->bd_left) bz = set_union(bz, xs.lift(*enl->bd_left));
    if (enl->bd_right) be = set_union(be, xs.lift(*enl->bd_right));
  }
  Subcomplex kz = set_union(sz, sig), lz = set_union(bz, sig);
  Subcomplex ke = set_union(se, sig), le = set_union(be, sig);
  Subcomplex k1 = set_union(set_intersection(sz, se), sig);
  Subcomplex lx = set_union(set_union(bz, be), sig);
  Subcomplex klx = set_union(k1, lx);

  // termwise general position bounds needed for the coefficient reading
  auto dim_off = [&](const Subcomplex& a) {
    int best = -1;
    for (int d = 0; d <= a.dim(); ++d)
      for (auto s : a.members(d))
        if (!sig.contains(s)) best = std::max(best, d);
    return best;
  };
  if (dim_off(set_intersection(sz, se)) > i - n)
    throw std::invalid_argument("umkehr: factors are not in general position (support pullback too large)");
  if (dim_off(set_union(set_intersection(bz, se), set_intersection(sz, be))) > i - n - 1)
    throw std::invalid_argument(
        "umkehr: boundary cross terms are not in general position (term-wise bound violated)");

  // u = D^{-1}[zeta], v = D^{-1}[eta]
  auto dz = gm_duality(xs, kz, lz, n - j, false);
  auto uco = dz.map.inverse().apply(dz.map.target->express(xs.lift_chain2(reduce_mod(zeta, lz))));
  Cochain u = dz.map.source->chain_of(uco);
  auto de = gm_duality(xs, ke, le, n - k, false);
  auto vco = de.map.inverse().apply(de.map.target->express(xs.lift_chain2(reduce_mod(eta, le))));
  Cochain v = de.map.source->chain_of(vco);

  // w = (u cup v) restricted to the common complement carrier
  Subcomplex clx2 = xs.lift2(complement_complex(lx));
  Cochain w = restrict_to(cup(u, v), clx2);

  // its natural relative pair, and the transport into the duality domain
  Subcomplex u2 = set_intersection(
      set_union(complement_complex(kz), complement_complex(ke)), complement_complex(lx));
  auto hw = PairGroup::cohomology(xs.t2, clx2, xs.lift2(u2), 2 * n - i);
  auto dfwd = gm_duality(xs, klx, lx, 2 * n - i, false);
  GroupMap jmap = induced_inclusion(dfwd.map.source, hw);
  auto c1 = jmap.inverse().apply(hw->express(w));
  auto h1 = dfwd.map.apply(c1);
  Chain out = chain_from_class(dfwd.map.target, h1);
  // Sign from the cross compatibility of the inverted duality in this
  // artifact's cup/cap conventions, calibrated against the direct product
  // realization (umkehr_reference) and pinned by the cross-check suite.
  if (((n - k) * n) % 2) out *= Int(-1);
  return out;
}

// Z-local ambient: the subcomplex Z (a union of n-simplices), its frontier
// S_Z, and J_Z = (Sigma /\ Z) u S_Z as the relative set.
struct LocalAmbient {
  RestrictedComplex rc;
  DualitySpace xs;
  Subcomplex jz_local;
  Subcomplex z_base, sz_base;
};

LocalAmbient make_local(const DiagonalContext& ctx, const Subcomplex& z_base) {
  const auto& x = ctx.space();
  const auto& c = x.complex();
  const int n = x.n();
  // Z must be a union of n-simplices (with faces)
  {
    Subcomplex regen = Subcomplex::empty(c);
    for (auto s : z_base.members(n)) regen.insert_closed(s);
    if (!(regen == z_base))
      throw std::invalid_argument("Z must be a union of n-simplices of the triangulation");
  }
  LocalAmbient la;
  la.z_base = z_base;
  Subcomplex dz = Subcomplex::empty(c);
  for (int idx = 0; idx < c->size(n); ++idx)
    if (!z_base.contains({n, idx})) dz.insert_closed({n, idx});
  la.sz_base = set_intersection(z_base, dz);
  Subcomplex jz = set_union(set_intersection(x.sigma(), z_base), la.sz_base);
  la.rc = restrict_complex(z_base);
  Subcomplex jz_local = Subcomplex::empty(la.rc.complex);
  for (int d = 0; d <= jz.dim(); ++d)
    for (auto s : jz.members(d)) jz_local.insert_closed(*la.rc.from_parent_simplex(c, s));
  la.jz_local = jz_local;
  Chain gamma_local(la.rc.complex, n);
  Chain gamma = x.fundamental_chain();
  for (const auto& [idx, v] : gamma.coeffs)
    if (z_base.contains({n, idx}))
      gamma_local.coeffs[la.rc.from_parent_simplex(c, {n, idx})->idx] = v;
  la.xs = DualitySpace::make(la.rc.complex, jz_local, n, gamma_local);
  return la;
}

}  // namespace

Chain umkehr_tensor(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta,
                    const Subcomplex* z_base) {
  if (!z_base) {
    PipelineSpace ps{ctx.space().complex(), &ctx.duality(), ctx.space().sigma()};
    return umkehr_pipeline(ps, zeta, eta);
  }
  LocalAmbient la = make_local(ctx, *z_base);
  Chain zl = to_restricted(la.rc, restrict_to(zeta, *z_base));
  Chain el = to_restricted(la.rc, restrict_to(eta, *z_base));
  PipelineSpace ps{la.rc.complex, &la.xs, la.jz_local};
  return umkehr_pipeline(ps, zl, el);
}

Chain umkehr_tensor_enlarged(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta,
                             const Subcomplex& extra_left, const Subcomplex& extra_right,
                             const Subcomplex& extra_bd_left, const Subcomplex& extra_bd_right) {
  PipelineSpace ps{ctx.space().complex(), &ctx.duality(), ctx.space().sigma()};
  Enlargement enl{&extra_left, &extra_right, &extra_bd_left, &extra_bd_right};
  return umkehr_pipeline(ps, zeta, eta, &enl);
}

Chain umkehr(const DiagonalContext& ctx, const DomainElement& e) {
  if (!e.in_frak_g)
    throw std::invalid_argument("umkehr: element violates general position: " + e.rejection);
  Chain out(ctx.duality().t2, e.degree - ctx.n());
  for (const auto& [z, w] : e.tensors) out += umkehr_tensor(ctx, z, w);
  return out;
}

Chain mu(const DiagonalContext& ctx, const DomainElement& e) { return umkehr(ctx, e); }

Int intersection_coefficient(const DiagonalContext& ctx, const DomainElement& e, SimplexId sigma_base,
                             const Subcomplex* z_base) {
  const auto& x = ctx.space();
  if (x.sigma().contains(sigma_base))
    throw std::invalid_argument("intersection coefficient: sigma lies in Sigma");
  if (sigma_base.dim != e.degree - ctx.n())
    throw std::invalid_argument("intersection coefficient: sigma has the wrong dimension");
  if (!e.in_frak_g)
    throw std::invalid_argument("intersection coefficient: general position fails: " + e.rejection);

  const DualitySpace* xs = &ctx.duality();
  std::optional<LocalAmbient> la;
  Chain sigma_chain(x.complex(), sigma_base.dim);
  sigma_chain.coeffs[sigma_base.idx] = 1;
  if (z_base) {
    // interior of sigma must lie in the interior of Z
    la.emplace(make_local(ctx, *z_base));
    if (!z_base->contains(sigma_base) || la->sz_base.contains(sigma_base))
      throw std::invalid_argument("intersection coefficient: sigma is not interior to Z");
    xs = &la->xs;
    sigma_chain = to_restricted(la->rc, sigma_chain);
  }
  Chain total(xs->t2, sigma_base.dim);
  for (const auto& [z, w] : e.tensors) {
    if (z_base) {
      Chain zl = to_restricted(la->rc, restrict_to(z, *z_base));
      Chain el = to_restricted(la->rc, restrict_to(w, *z_base));
      PipelineSpace ps{la->rc.complex, xs, la->jz_local};
      total += umkehr_pipeline(ps, zl, el);
    } else {
      total += umkehr_tensor(ctx, z, w);
    }
  }
  // read the coefficient through the subdivision: every descendant carries
  // the same value against its inherited orientation
  Chain sd2 = xs->lift_chain2(xs->lift_chain(sigma_chain));
  std::optional<Int> val;
  for (const auto& [idx, sgn] : sd2.coeffs) {
    Int c = total.coeff(idx) * sgn;  // sgn is +-1
    if (!val)
      val = c;
    else if (*val != c)
      throw std::logic_error("intersection coefficient: value varies across the subdivision");
  }
  return val ? *val : Int(0);
}

IhProductResult ih_product(const DiagonalContext& ctx, const DomainElement& e, const Perversity& p1,
                           const Perversity& p2) {
  for (const auto& [z, w] : e.tensors) {
    if (!allowability_check(ctx.space(), z, p1).allowable)
      throw std::invalid_argument("ih_product: left factor is not allowable for the first perversity");
    if (!allowability_check(ctx.space(), w, p2).allowable)
      throw std::invalid_argument("ih_product: right factor is not allowable for the second perversity");
  }
  if (!e.in_g_p) throw std::invalid_argument("ih_product: stratified general position fails");
  IhProductResult res;
  res.out = umkehr(ctx, e);
  // certify allowability of the output for p1 + p2 at the refined level
  auto xt2 = ctx.refined_space();
  Perversity q = transport_perversity(ctx.space(), *xt2, p1.plus(p2));
  res.allowability = allowability_check(*xt2, res.out, q);
  res.boundary_allowability = allowability_check(*xt2, boundary(res.out), q);
  return res;
}

Chain gm_cycle_product(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta) {
  const DualitySpace& xs = ctx.duality();
  const int n = ctx.n(), j = zeta.degree, k = eta.degree, i = j + k;
  Chain zero(xs.t2, i - n);
  Subcomplex sig = ctx.sigma_amb();
  Chain za = reduce_mod(xs.lift_chain(zeta), sig), ea = reduce_mod(xs.lift_chain(eta), sig);
  if (!reduce_mod(boundary(za), sig).zero() || !reduce_mod(boundary(ea), sig).zero())
    throw std::invalid_argument("gm_cycle_product: inputs must be cycles mod Sigma");
  auto gp = general_position_pair(ctx, zeta, eta);
  if (!gp.ok) throw std::invalid_argument("gm_cycle_product: pair general position fails");
  if (i < n) return zero;
  if (za.zero() || ea.zero()) return zero;

  Subcomplex kz = set_union(support(za), sig), ke = set_union(support(ea), sig);
  Subcomplex kint = set_union(set_intersection(support(za), support(ea)), sig);

  auto dz = gm_duality(xs, kz, sig, n - j, false);
  auto uco = dz.map.inverse().apply(dz.map.target->express(xs.lift_chain2(za)));
  Cochain u = dz.map.source->chain_of(uco);
  auto de = gm_duality(xs, ke, sig, n - k, false);
  auto vco = de.map.inverse().apply(de.map.target->express(xs.lift_chain2(ea)));
  Cochain v = de.map.source->chain_of(vco);

  Subcomplex csig2 = xs.lift2(complement_complex(sig));
  Cochain w = restrict_to(cup(u, v), csig2);
  Subcomplex u2 = set_intersection(set_union(complement_complex(kz), complement_complex(ke)),
                                   complement_complex(sig));
  auto hw = PairGroup::cohomology(xs.t2, csig2, xs.lift2(u2), 2 * n - i);
  auto dfwd = gm_duality(xs, kint, sig, 2 * n - i, false);
  GroupMap jmap = induced_inclusion(dfwd.map.source, hw);
  auto c1 = jmap.inverse().apply(hw->express(w));
  auto h1 = dfwd.map.apply(c1);
  Chain out = chain_from_class(dfwd.map.target, h1);
  // Koszul bookkeeping: (D (x) D)^{-1} = (-1)^n (D^{-1} (x) D^{-1}) applied to
  // a class of degree j contributes (-1)^{n + n j}
  if ((n + n * j) % 2) out *= Int(-1);
  return out;
}

CupDualityReport cup_duality_check(const DiagonalContext& ctx, const Chain& zeta, const Chain& eta) {
  const DualitySpace& xs = ctx.duality();
  const int n = ctx.n(), i = zeta.degree, j = eta.degree;
  if (!ctx.space().singular_strata().empty())
    throw std::invalid_argument("cup_duality_check: manifold entries only");
  auto gp = general_position_pair(ctx, zeta, eta);
  if (!gp.ok) throw std::invalid_argument("cup_duality_check: general position fails");
  if (!reduce_mod(boundary(zeta), ctx.space().sigma()).zero() ||
      !reduce_mod(boundary(eta), ctx.space().sigma()).zero())
    throw std::invalid_argument("cup_duality_check: inputs must be cycles");
  CupDualityReport rep;
  rep.degree_i = i;
  rep.degree_j = j;

  Subcomplex empty = Subcomplex::empty(xs.amb);
  Subcomplex full = Subcomplex::full(xs.amb);
  auto hm = PairGroup::homology(xs.t2, xs.lift2(full), xs.lift2(empty), i + j - n);
  auto hmi = PairGroup::homology(xs.t2, xs.lift2(full), xs.lift2(empty), i);
  auto hmj = PairGroup::homology(xs.t2, xs.lift2(full), xs.lift2(empty), j);
  auto dmi = gm_duality(xs, full, empty, n - i, false);
  auto dmj = gm_duality(xs, full, empty, n - j, false);
  auto dm_out = gm_duality(xs, full, empty, 2 * n - i - j, false);

  Chain z2 = xs.lift_chain2(xs.lift_chain(zeta));
  Chain e2 = xs.lift_chain2(xs.lift_chain(eta));

  // left route: classes in M through the cup product, with the Koszul sign
  // (D (x) D)^{-1} = (-1)^n (D^{-1} (x) D^{-1}) and the tensor application
  // sign (-1)^{n i} on the degree-i factor
  auto ui = dmi.map.inverse().apply(hmi->express(z2));
  auto vi = dmj.map.inverse().apply(hmj->express(e2));
  Cochain uc(xs.t2, n - i), vc(xs.t2, n - j);
  for (int t = 0; t < dmi.map.source->rank(); ++t) {
    Chain bc = dmi.map.source->basis_chain(t);
    bc *= ui[t];
    uc += bc;
  }
  for (int t = 0; t < dmj.map.source->rank(); ++t) {
    Chain bc = dmj.map.source->basis_chain(t);
    bc *= vi[t];
    vc += bc;
  }
  auto lhs = dm_out.map.apply(dm_out.map.source->express(cup(uc, vc)));
  if ((n + n * i) % 2)
    for (auto& cc : lhs) cc = -cc;
  lhs = hm->reduce(std::move(lhs));

  // right route: the support-level intersection product included into M
  Chain prod = gm_cycle_product(ctx, zeta, eta);
  auto rhs = hm->express(prod);

  rep.holds = hm->coords_equal(lhs, rhs);
  return rep;
}

Chain umkehr_reference(const DiagonalContext& ctx, const DomainElement& e) {
  const auto& x = ctx.space();
  const auto& c = x.complex();
  const int n = x.n(), i = e.degree;
  if (c->total_size() > 400)
    throw std::invalid_argument("umkehr_reference: ambient too large to materialize the product");
  auto pc = product_triangulation(c, c);
  Subcomplex sigma2 = set_union(product_subcomplex(pc, Subcomplex::full(c), x.sigma()),
                                product_subcomplex(pc, x.sigma(), Subcomplex::full(c)));
  Chain gamma = x.fundamental_chain();
  Chain gamma_p = cross_chain(pc, gamma, gamma);
  DualitySpace ps = DualitySpace::make(pc.total, sigma2, 2 * n, gamma_p);

  // assemble eps on the full product
  Chain xi(pc.total, i);
  for (const auto& [z, w] : e.tensors) xi += cross_chain(pc, z, w);
  Chain xired = reduce_mod(xi, sigma2);
  Chain bxired = reduce_mod(boundary(xired), sigma2);
  Subcomplex k2 = ps.lift(set_union(support(xired), sigma2));
  Subcomplex l2 = ps.lift(set_union(support(bxired), sigma2));

  auto dp = gm_duality(ps, k2, l2, 2 * n - i, false);
  auto cco = dp.map.inverse().apply(
      dp.map.target->express(ps.lift_chain2(ps.lift_chain(xired))));
  Cochain cp = dp.map.source->chain_of(cco);

  // diagonal vertex maps through both subdivision levels
  std::vector<Vertex> d0(c->num_vertices());
  for (Vertex v = 0; v < c->num_vertices(); ++v) d0[v] = pc.pair_vertex(v, v);
  const DualitySpace& xs = ctx.duality();
  auto d1 = extend_to_bary(c, xs.amb, pc.total, ps.amb, d0);
  auto d2 = extend_to_bary(xs.amb, xs.t2, ps.amb, ps.t2, d1);
  Cochain cx = pullback_cochain(cp, xs.t2, d2);

  // pullback pairs on X
  auto pullback_sub = [&](const Subcomplex& a_base) {
    Subcomplex out = Subcomplex::empty(c);
    for (int d = 0; d <= c->dim(); ++d)
      for (int idx = 0; idx < c->size(d); ++idx) {
        VertexList dv;
        for (Vertex v : c->vertices_of({d, idx})) dv.push_back(pc.pair_vertex(v, v));
        std::sort(dv.begin(), dv.end());
        if (a_base.contains(pc.total->require(dv))) out.insert_closed({d, idx});
      }
    return out;
  };
  Subcomplex k1 = pullback_sub(set_union(support(xired), sigma2));
  Subcomplex l1 = pullback_sub(set_union(support(bxired), sigma2));
  auto dfwd = gm_duality(xs, xs.lift(k1), xs.lift(l1), 2 * n - i, false);
  auto h1 = dfwd.map.apply(dfwd.map.source->express(cx));
  return chain_from_class(dfwd.map.target, h1);
}

}  // namespace plchain
