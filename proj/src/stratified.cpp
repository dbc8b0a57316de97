#include "plchain/stratified.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace plchain {

FilteredPseudomanifold::FilteredPseudomanifold(ComplexPtr complex, std::vector<Subcomplex> skeleta)
    : complex_(std::move(complex)), skeleta_(std::move(skeleta)) {
  n_ = (int)skeleta_.size() - 1;
  if (n_ != complex_->dim()) throw std::invalid_argument("filtration length does not match dimension");
  for (int i = 0; i + 1 <= n_; ++i)
    if (!skeleta_[i].subset_of(skeleta_[i + 1])) throw std::invalid_argument("skeleta out of order");
  if (!(skeleta_[n_] == Subcomplex::full(complex_)))
    throw std::invalid_argument("top skeleton must be the whole complex");
  sigma_ = n_ > 0 ? skeleta_[n_ - 1] : Subcomplex::empty(complex_);
  if (sigma_.dim() >= n_) throw std::invalid_argument("singular set has full dimension");
  build_strata();
  auto o = orient(complex_, n_, &sigma_);
  if (o.orientable) orientation_ = o.sign;
}

FilteredPseudomanifold FilteredPseudomanifold::manifold(ComplexPtr complex) {
  std::vector<Subcomplex> sk;
  for (int i = 0; i < complex->dim(); ++i) sk.push_back(Subcomplex::empty(complex));
  sk.push_back(Subcomplex::full(complex));
  return FilteredPseudomanifold(std::move(complex), std::move(sk));
}

const Subcomplex& FilteredPseudomanifold::skeleton(int i) const {
  if (i < 0 || i > n_) throw std::out_of_range("skeleton index");
  return skeleta_[i];
}

Chain FilteredPseudomanifold::fundamental_chain() const {
  if (!oriented()) throw std::logic_error("space is not oriented");
  Chain g(complex_, n_);
  for (int i = 0; i < complex_->size(n_); ++i)
    if (orientation_[i]) g.coeffs[i] = orientation_[i];
  return g;
}

void FilteredPseudomanifold::build_strata() {
  stratum_of_simplex_.assign(n_ + 1, {});
  for (int d = 0; d <= n_; ++d) stratum_of_simplex_[d].assign(complex_->size(d), -1);

  for (int i = n_; i >= 0; --i) {
    // open simplices of X_i = X^i - X^{i-1}
    std::vector<SimplexId> open;
    for (int d = 0; d <= i; ++d)
      for (auto s : skeleta_[i].members(d))
        if (i == 0 || !skeleta_[i - 1].contains(s)) open.push_back(s);
    // connected components: two open simplices are adjacent when one is a
    // face of the other (their interiors touch inside X_i)
    std::map<std::pair<int, int>, int> pos;
    for (int t = 0; t < (int)open.size(); ++t) pos[{open[t].dim, open[t].idx}] = t;
    std::vector<int> comp(open.size(), -1);
    int ncomp = 0;
    for (int t = 0; t < (int)open.size(); ++t) {
      if (comp[t] >= 0) continue;
      int c = ncomp++;
      std::deque<int> queue{t};
      comp[t] = c;
      while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        SimplexId s = open[cur];
        auto visit = [&](SimplexId other) {
          auto it = pos.find({other.dim, other.idx});
          if (it != pos.end() && comp[it->second] < 0) {
            comp[it->second] = c;
            queue.push_back(it->second);
          }
        };
        for (auto f : complex_->facets_of(s)) visit(f);
        for (auto cf : complex_->cofacets_of(s)) visit(cf);
      }
    }
    std::vector<int> stratum_index(ncomp, -1);
    for (int t = 0; t < (int)open.size(); ++t) {
      int& si = stratum_index[comp[t]];
      if (si < 0) {
        si = (int)strata_.size();
        Stratum st;
        st.dim = i;
        st.index = comp[t];
        st.regular = (i == n_);
        strata_.push_back(st);
        if (i < n_) singular_.push_back(si);
      }
      strata_[si].open_simplices.push_back(open[t]);
      stratum_of_simplex_[open[t].dim][open[t].idx] = si;
    }
  }
}

int FilteredPseudomanifold::stratum_of(SimplexId s) const {
  return stratum_of_simplex_[s.dim][s.idx];
}

ValidationReport FilteredPseudomanifold::validate() const {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  for (int d = 0; d < n_; ++d)
    for (int i = 0; i < complex_->size(d); ++i) {
      SimplexId s{d, i};
      std::vector<SimplexId> stack{s};
      bool reached = false;
      std::set<std::pair<int, int>> seen;
      while (!stack.empty() && !reached) {
        auto cur = stack.back();
        stack.pop_back();
        if (cur.dim == n_) {
          reached = true;
          break;
        }
        for (auto cf : complex_->cofacets_of(cur))
          if (seen.insert({cf.dim, cf.idx}).second) stack.push_back(cf);
      }
      if (!reached) fail("simplex of dim " + std::to_string(d) + " is not a face of an n-simplex");
    }
  for (int i = 0; n_ >= 1 && i < complex_->size(n_ - 1); ++i) {
    SimplexId s{n_ - 1, i};
    if (sigma_.contains(s)) continue;
    size_t c = complex_->cofacets_of(s).size();
    if (c != 2)
      fail("regular (n-1)-simplex lies in " + std::to_string(c) + " n-simplices");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Perversities

Perversity Perversity::zero(const FilteredPseudomanifold& x, std::string name) {
  return constant(x, 0, std::move(name));
}

Perversity Perversity::top(const FilteredPseudomanifold& x, std::string name) {
  Perversity p;
  p.name = std::move(name);
  for (int s : x.singular_strata()) p.values[s] = Int(x.strata()[s].codim(x.n()) - 2);
  return p;
}

Perversity Perversity::constant(const FilteredPseudomanifold& x, const Int& v, std::string name) {
  Perversity p;
  p.name = std::move(name);
  for (int s : x.singular_strata()) p.values[s] = v;
  return p;
}

Perversity Perversity::plus(const Perversity& o) const {
  Perversity p;
  p.name = name + "+" + o.name;
  for (const auto& [s, v] : values) p.values[s] = v + o.values.at(s);
  return p;
}

bool Perversity::leq(const Perversity& o) const {
  for (const auto& [s, v] : values)
    if (v > o.values.at(s)) return false;
  return true;
}

Perversity transport_perversity(const FilteredPseudomanifold& src, const FilteredPseudomanifold& dst,
                                const Perversity& p) {
  Perversity out;
  out.name = p.name;
  for (int st : dst.singular_strata()) {
    SimplexId probe = dst.strata()[st].open_simplices.front();
    SimplexId base = carrier_in(src.complex(), dst.complex(), probe);
    int bst = src.stratum_of(base);
    out.values[st] = p.at(bst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Allowability

int dim_meet_stratum(const FilteredPseudomanifold& x, SimplexId s, int stratum) {
  const auto& vs = x.complex()->vertices_of(s);
  const int n = (int)vs.size();
  int best = -1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    VertexList face;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) face.push_back(vs[b]);
    auto f = x.complex()->require(face);
    if (x.stratum_of(f) == stratum) best = std::max(best, f.dim);
  }
  return best;
}

int dim_meet_stratum(const FilteredPseudomanifold& x, const Subcomplex& a, int stratum) {
  int best = -1;
  for (auto s : x.strata()[stratum].open_simplices)
    if (a.contains(s)) best = std::max(best, s.dim);
  return best;
}

AllowabilityReport allowability_check(const FilteredPseudomanifold& x, const Chain& xi,
                                      const Perversity& p) {
  AllowabilityReport rep;
  const int i = xi.degree;
  Subcomplex sup = support(xi, &x.sigma());
  Subcomplex bsup = support(reduce_mod(boundary(reduce_mod(xi, x.sigma())), x.sigma()));
  for (int st : x.singular_strata()) {
    AllowabilityLine line;
    line.stratum = st;
    const Int& pv = p.at(st);
    int codim = x.strata()[st].codim(x.n());
    line.actual_chain = dim_meet_stratum(x, sup, st);
    line.budget_chain = Int(i - codim) + pv;
    line.ok_chain = line.actual_chain == -1 || line.actual_chain <= line.budget_chain;
    line.actual_boundary = dim_meet_stratum(x, bsup, st);
    line.budget_boundary = Int(i - 1 - codim) + pv;
    line.ok_boundary = line.actual_boundary == -1 || line.actual_boundary <= line.budget_boundary;
    if (!line.ok_chain || !line.ok_boundary) rep.allowable = false;
    rep.lines.push_back(line);
  }
  return rep;
}

bool simplex_allowable(const FilteredPseudomanifold& x, SimplexId s, int i, const Perversity& p) {
  if (x.sigma().contains(s)) return false;
  for (int st : x.singular_strata()) {
    int meet = dim_meet_stratum(x, s, st);
    if (meet < 0) continue;
    if (Int(meet) > Int(i - x.strata()[st].codim(x.n())) + p.at(st)) return false;
  }
  return true;
}

PairGroupPtr intersection_homology(const FilteredPseudomanifold& x, const Perversity& p, int k) {
  const auto& c = x.complex();
  auto allow = [&](int deg) {
    std::vector<int> gen;
    std::map<int, int> idx;
    if (deg < 0 || deg > c->dim()) return std::pair(gen, idx);
    for (int i = 0; i < c->size(deg); ++i)
      if (simplex_allowable(x, {deg, i}, deg, p)) {
        idx[i] = (int)gen.size();
        gen.push_back(i);
      }
    return std::pair(gen, idx);
  };
  auto [gk, ik] = allow(k);
  auto [gk1, ik1] = allow(k - 1);
  auto [gk2, ik2] = allow(k + 1);

  // boundary mod Sigma of allowable columns, split into the allowable rows
  // (kept) and the forbidden rows (which must vanish on lattice members)
  auto split_boundary = [&](const std::vector<int>& cols, const std::map<int, int>& allowed_rows,
                            int deg) {
    std::map<int, int> forb;
    SparseMat ok((int)allowed_rows.size(), (int)cols.size());
    std::vector<std::map<int, Int>> bad_cols(cols.size());
    for (int j = 0; j < (int)cols.size(); ++j) {
      SimplexId s{deg, cols[j]};
      int sign = 1;
      for (auto f : c->facets_of(s)) {
        if (!x.sigma().contains(f)) {
          auto it = allowed_rows.find(f.idx);
          if (it != allowed_rows.end())
            ok.add(it->second, j, sign);
          else
            bad_cols[j][f.idx] += sign;
        }
        sign = -sign;
      }
    }
    int nb = 0;
    for (auto& bc : bad_cols)
      for (auto& [r, v] : bc)
        if (v != 0 && !forb.count(r)) forb[r] = nb++;
    SparseMat bad(nb, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
      for (auto& [r, v] : bad_cols[j])
        if (v != 0) bad.add(forb.at(r), j, v);
    return std::pair(ok, bad);
  };

  auto [dk_ok, dk_bad] = split_boundary(gk, ik1, k);
  SparseMat bk = columns_to_matrix(kernel_basis(dk_bad), (int)gk.size());
  auto [dk2_ok, dk2_bad] = split_boundary(gk2, ik, k + 1);
  SparseMat bk2 = columns_to_matrix(kernel_basis(dk2_bad), (int)gk2.size());

  // out: lattice-k coords -> allowable (k-1) chain coords
  SparseMat out_map = dk_ok.multiply(bk);
  SparseMat in_map_chains = dk2_ok.multiply(bk2);
  SNF bk_snf = smith_normal_form(bk, false, false);
  SparseMat in_map(bk.ncols(), in_map_chains.ncols());
  for (int j = 0; j < in_map_chains.ncols(); ++j) {
    auto sol = solve(bk, bk_snf, in_map_chains.col(j));
    if (!sol) throw std::logic_error("intersection chain boundary escapes the lattice");
    for (const auto& [i, v] : *sol) in_map.set(i, j, v);
  }
  Presentation pres(out_map, in_map);
  return PairGroup::from_lattice(c, Subcomplex::full(c), x.sigma(), k, gk, bk, std::move(pres));
}

}  // namespace plchain
