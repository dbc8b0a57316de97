#include "plchain/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace plchain {

namespace {

// generator table: k-simplices of A \ B
std::pair<std::vector<int>, std::map<int, int>> generators_of(const Subcomplex& a, const Subcomplex& b, int k) {
  std::vector<int> gen;
  std::map<int, int> idx;
  for (auto s : a.members(k))
    if (!b.contains(s)) {
      idx[s.idx] = (int)gen.size();
      gen.push_back(s.idx);
    }
  return {gen, idx};
}

// relative boundary matrix from degree k to k-1 in generator coordinates
SparseMat relative_boundary(const ComplexPtr& c, const Subcomplex& a, const Subcomplex& b,
                            const std::vector<int>& gen_k, const std::map<int, int>& idx_k1, int k) {
  SparseMat m((int)idx_k1.size(), (int)gen_k.size());
  for (int j = 0; j < (int)gen_k.size(); ++j) {
    SimplexId s{k, gen_k[j]};
    int sign = 1;
    for (auto f : c->facets_of(s)) {
      auto it = idx_k1.find(f.idx);
      if (it != idx_k1.end()) m.add(it->second, j, sign);
      sign = -sign;
    }
  }
  return m;
}

}  // namespace

Presentation::Presentation(const SparseMat& out_map, const SparseMat& in_map) {
  const int m = out_map.ncols();
  SNF s_out = smith_normal_form(out_map, false, false);
  auto kb = kernel_basis(out_map, s_out);
  kernel_mat_ = columns_to_matrix(kb, m);
  kernel_snf_ = smith_normal_form(kernel_mat_, false, false);
  const int kn = kernel_mat_.ncols();

  // image of in_map expressed in kernel coordinates
  SparseMat y(kn, in_map.ncols());
  for (int j = 0; j < in_map.ncols(); ++j) {
    SparseVec col = in_map.col(j);
    auto sol = solve(kernel_mat_, kernel_snf_, col);
    if (!sol) throw std::logic_error("presentation: image escapes the cycle lattice");
    for (const auto& [i, v] : *sol) y.set(i, j, v);
  }
  SNF s_y = smith_normal_form(y, true, false);
  quot_u_ = s_y.U;
  quot_rank_ = s_y.rank;
  quot_diag_ = s_y.diag;

  // surviving coordinates: torsion rows (d_i > 1) then free rows
  coord_of_row_.assign(kn, -1);
  int pos = 0;
  for (int i = 0; i < quot_rank_; ++i)
    if (quot_diag_[i] > 1) {
      torsion_.push_back(quot_diag_[i]);
      coord_of_row_[i] = pos++;
    }
  free_rank_ = kn - quot_rank_;
  for (int i = quot_rank_; i < kn; ++i) coord_of_row_[i] = pos++;

  // basis vectors: columns of K * Uinv_Y at surviving rows
  SparseMat ku = kernel_mat_.multiply(s_y.Uinv);
  basis_.assign(rank(), {});
  for (int i = 0; i < kn; ++i)
    if (coord_of_row_[i] >= 0) basis_[coord_of_row_[i]] = ku.col(i);
}

std::vector<Int> Presentation::express(const SparseVec& z) const {
  auto y = solve(kernel_mat_, kernel_snf_, z);
  if (!y) throw std::invalid_argument("express: not a cycle of the complex spot");
  SparseVec w = quot_u_.apply(*y);
  std::vector<Int> coords(rank(), 0);
  for (const auto& [i, v] : w) {
    if (coord_of_row_[i] >= 0)
      coords[coord_of_row_[i]] = v;
    else if (v % quot_diag_[i] != 0)
      throw std::logic_error("express: inconsistent quotient coordinates");
  }
  return reduce(std::move(coords));
}

std::vector<Int> Presentation::reduce(std::vector<Int> coords) const {
  for (size_t t = 0; t < torsion_.size(); ++t) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), coords[t].get_mpz_t(), torsion_[t].get_mpz_t());
    coords[t] = r;
  }
  return coords;
}

namespace {

Presentation pair_presentation(const ComplexPtr& k, const Subcomplex& a, const Subcomplex& b,
                               int degree, bool co, std::vector<int>& gen, std::map<int, int>& gen_index) {
  if (degree < 0 || degree > k->dim()) return Presentation(SparseMat(0, 0), SparseMat(0, 0));
  auto [genk, idxk] = generators_of(a, b, degree);
  gen = genk;
  gen_index = idxk;
  auto [genk1, idxk1] = generators_of(a, b, degree - 1);
  auto [genk2, idxk2] = generators_of(a, b, degree + 1);
  if (!co) {
    SparseMat out_map = relative_boundary(k, a, b, genk, idxk1, degree);
    SparseMat in_map = relative_boundary(k, a, b, genk2, idxk, degree + 1);
    return Presentation(out_map, in_map);
  }
  SparseMat out_map = relative_boundary(k, a, b, genk2, idxk, degree + 1).transpose();
  SparseMat in_map = relative_boundary(k, a, b, genk, idxk1, degree).transpose();
  return Presentation(out_map, in_map);
}

}  // namespace

std::shared_ptr<PairGroup> PairGroup::homology(ComplexPtr k, Subcomplex a, Subcomplex b, int degree) {
  auto g = std::shared_ptr<PairGroup>(new PairGroup());
  g->complex_ = k;
  g->a_ = std::move(a);
  g->b_ = std::move(b);
  g->degree_ = degree;
  g->co_ = false;
  g->pres_ = pair_presentation(k, g->a_, g->b_, degree, false, g->gen_, g->gen_index_);
  return g;
}

std::shared_ptr<PairGroup> PairGroup::cohomology(ComplexPtr k, Subcomplex a, Subcomplex b, int degree) {
  auto g = std::shared_ptr<PairGroup>(new PairGroup());
  g->complex_ = k;
  g->a_ = std::move(a);
  g->b_ = std::move(b);
  g->degree_ = degree;
  g->co_ = true;
  g->pres_ = pair_presentation(k, g->a_, g->b_, degree, true, g->gen_, g->gen_index_);
  return g;
}

std::shared_ptr<PairGroup> PairGroup::from_lattice(ComplexPtr k, Subcomplex a, Subcomplex b,
                                                   int degree, std::vector<int> gen,
                                                   SparseMat lattice, Presentation pres) {
  auto g = std::shared_ptr<PairGroup>(new PairGroup());
  g->complex_ = std::move(k);
  g->a_ = std::move(a);
  g->b_ = std::move(b);
  g->degree_ = degree;
  g->co_ = false;
  g->gen_ = std::move(gen);
  for (int i = 0; i < (int)g->gen_.size(); ++i) g->gen_index_[g->gen_[i]] = i;
  g->pres_ = std::move(pres);
  g->latticed_ = true;
  g->lattice_ = std::move(lattice);
  g->lattice_snf_ = smith_normal_form(g->lattice_);
  return g;
}

Chain PairGroup::basis_chain(int t) const {
  if (latticed_) return gen_to_chain(lattice_.apply(pres_.basis_vec(t)));
  return gen_to_chain(pres_.basis_vec(t));
}

SparseVec PairGroup::chain_to_gen(const Chain& z) const {
  if (z.complex != complex_ || z.degree != degree_)
    throw std::invalid_argument("chain/group mismatch");
  SparseVec g;
  for (const auto& [i, v] : z.coeffs) {
    auto it = gen_index_.find(i);
    if (it != gen_index_.end()) {
      g[it->second] = v;
    } else if (!b_.contains({degree_, i})) {
      throw std::invalid_argument("chain supported outside the pair");
    }
  }
  return g;
}

Chain PairGroup::gen_to_chain(const SparseVec& g) const {
  Chain z(complex_, degree_);
  for (const auto& [i, v] : g) z.coeffs[gen_[i]] = v;
  return z;
}

std::vector<Int> PairGroup::express(const Chain& z) const {
  SparseVec g = chain_to_gen(z);
  if (latticed_) {
    auto y = solve(lattice_, lattice_snf_, g);
    if (!y) throw std::invalid_argument("express: chain is not in the allowable lattice");
    return pres_.express(*y);
  }
  return pres_.express(g);
}

Chain PairGroup::chain_of(const std::vector<Int>& coords) const {
  SparseVec g;
  for (int t = 0; t < rank(); ++t) add_scaled(g, pres_.basis_vec(t), coords[t]);
  if (latticed_) g = lattice_.apply(g);
  return gen_to_chain(g);
}

std::vector<Int> PairGroup::reduce(std::vector<Int> coords) const { return pres_.reduce(std::move(coords)); }

bool PairGroup::coords_equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
  auto a = reduce(x), b = reduce(y);
  return a == b;
}

// ---------------------------------------------------------------------------
// GroupMap

GroupMap GroupMap::zero(PairGroupPtr s, PairGroupPtr t) {
  GroupMap m;
  m.matrix = SparseMat(t->rank(), s->rank());
  m.source = std::move(s);
  m.target = std::move(t);
  return m;
}

GroupMap GroupMap::identity(PairGroupPtr g) {
  GroupMap m;
  m.matrix = SparseMat::identity(g->rank());
  m.source = g;
  m.target = std::move(g);
  return m;
}

GroupMap GroupMap::from_images(PairGroupPtr s, PairGroupPtr t, const std::vector<Chain>& images) {
  if ((int)images.size() != s->rank()) throw std::invalid_argument("from_images: arity mismatch");
  GroupMap m;
  m.matrix = SparseMat(t->rank(), s->rank());
  for (int j = 0; j < (int)images.size(); ++j) {
    auto coords = t->express(images[j]);
    for (int i = 0; i < t->rank(); ++i) m.matrix.set(i, j, coords[i]);
  }
  m.source = std::move(s);
  m.target = std::move(t);
  return m;
}

std::vector<Int> GroupMap::apply(const std::vector<Int>& coords) const {
  SparseVec x;
  for (int i = 0; i < (int)coords.size(); ++i)
    if (coords[i] != 0) x[i] = coords[i];
  SparseVec y = matrix.apply(x);
  std::vector<Int> out(target->rank(), 0);
  for (const auto& [i, v] : y) out[i] = v;
  return target->reduce(std::move(out));
}

GroupMap GroupMap::compose_after(const GroupMap& first) const {
  if (first.target != source) throw std::invalid_argument("compose: middle group mismatch");
  GroupMap m;
  m.source = first.source;
  m.target = target;
  m.matrix = matrix.multiply(first.matrix);
  // normalize torsion rows
  for (size_t t = 0; t < target->torsion().size(); ++t)
    for (const auto& [j, v] : SparseVec(m.matrix.row((int)t))) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), target->torsion()[t].get_mpz_t());
      m.matrix.set((int)t, j, r);
    }
  return m;
}

bool GroupMap::is_identity() const {
  if (source != target) return false;
  return equal(GroupMap::identity(source));
}

bool GroupMap::equal(const GroupMap& o) const {
  if (source != o.source || target != o.target) return false;
  const int nt = (int)target->torsion().size();
  for (int i = 0; i < target->rank(); ++i)
    for (int j = 0; j < source->rank(); ++j) {
      Int d = matrix.get(i, j) - o.matrix.get(i, j);
      if (i < nt) {
        if (d % target->torsion()[i] != 0) return false;
      } else if (d != 0) {
        return false;
      }
    }
  return true;
}

GroupMap GroupMap::negated() const { return scaled(Int(-1)); }

GroupMap GroupMap::scaled(const Int& c) const {
  GroupMap m = *this;
  SparseMat mm(matrix.nrows(), matrix.ncols());
  for (int i = 0; i < matrix.nrows(); ++i)
    for (const auto& [j, v] : matrix.row(i)) mm.set(i, j, c * v);
  m.matrix = mm;
  return m;
}

GroupMap GroupMap::inverse() const {
  // Solve M x + R y = e_t for each target basis vector, with R the target
  // relation matrix (torsion orders on the torsion coordinates).
  const int tr = target->rank(), sr = source->rank();
  const int nt = (int)target->torsion().size();
  SparseMat aug(tr, sr + nt);
  for (int i = 0; i < tr; ++i)
    for (const auto& [j, v] : matrix.row(i)) aug.set(i, j, v);
  for (int t = 0; t < nt; ++t) aug.set(t, sr + t, target->torsion()[t]);
  SNF s = smith_normal_form(aug);
  GroupMap inv;
  inv.source = target;
  inv.target = source;
  inv.matrix = SparseMat(sr, tr);
  for (int t = 0; t < tr; ++t) {
    SparseVec e{{t, Int(1)}};
    auto sol = solve(aug, s, e);
    if (!sol) throw std::logic_error("GroupMap::inverse: not surjective (SNF witness: no preimage)");
    for (const auto& [i, v] : *sol)
      if (i < sr) inv.matrix.set(i, t, v);
  }
  // normalize torsion rows of the inverse
  for (size_t t = 0; t < source->torsion().size(); ++t)
    for (const auto& [j, v] : SparseVec(inv.matrix.row((int)t))) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), source->torsion()[t].get_mpz_t());
      inv.matrix.set((int)t, j, r);
    }
  if (!inv.compose_after(*this).is_identity() || !compose_after(inv).is_identity())
    throw std::logic_error("GroupMap::inverse: not an isomorphism (one-sided inverse only)");
  return inv;
}

bool GroupMap::is_isomorphism() const {
  try {
    (void)inverse();
    return true;
  } catch (const std::logic_error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Induced maps

GroupMap induced_inclusion(const PairGroupPtr& s, const PairGroupPtr& t) {
  if (s->complex() != t->complex()) throw std::invalid_argument("induced_inclusion: different complexes");
  if (s->degree() != t->degree() || s->is_cohomology() != t->is_cohomology())
    throw std::invalid_argument("induced_inclusion: degree/variance mismatch");
  std::vector<Chain> images;
  for (int j = 0; j < s->rank(); ++j) {
    Chain z = s->basis_chain(j);
    if (s->is_cohomology()) {
      // restriction: keep coefficients on the (smaller) target pair
      if (!t->a().subset_of(s->a())) throw std::invalid_argument("cochain restriction needs target inside source");
      Chain r(z.complex, z.degree);
      for (const auto& [i, v] : z.coeffs)
        if (t->a().contains({z.degree, i})) r.coeffs[i] = v;
      images.push_back(std::move(r));
    } else {
      if (!s->a().subset_of(t->a())) throw std::invalid_argument("chain inclusion needs source inside target");
      images.push_back(std::move(z));
    }
  }
  return GroupMap::from_images(s, t, images);
}

GroupMap induced_vertex_map(const PairGroupPtr& s, const PairGroupPtr& t, const std::vector<Vertex>& vmap) {
  std::vector<Chain> images;
  for (int j = 0; j < s->rank(); ++j)
    images.push_back(push_vertex_map(s->basis_chain(j), t->complex(), vmap));
  return GroupMap::from_images(s, t, images);
}

GroupMap induced_subdivision(const PairGroupPtr& s, const PairGroupPtr& t) {
  std::vector<Chain> images;
  for (int j = 0; j < s->rank(); ++j)
    images.push_back(subdivide_chain_once(t->complex(), s->basis_chain(j)));
  return GroupMap::from_images(s, t, images);
}

GroupMap connecting_map(const PairGroupPtr& s, const PairGroupPtr& t) {
  if (s->is_cohomology() || t->is_cohomology()) throw std::invalid_argument("connecting_map: homology only");
  if (t->degree() != s->degree() - 1) throw std::invalid_argument("connecting_map: degree mismatch");
  std::vector<Chain> images;
  for (int j = 0; j < s->rank(); ++j) images.push_back(boundary(s->basis_chain(j)));
  return GroupMap::from_images(s, t, images);
}

GroupMap connecting_map_cohomology(const PairGroupPtr& s, const PairGroupPtr& t) {
  if (!s->is_cohomology() || !t->is_cohomology())
    throw std::invalid_argument("connecting_map_cohomology: cohomology only");
  if (t->degree() != s->degree() + 1) throw std::invalid_argument("connecting_map_cohomology: degree mismatch");
  // extend by zero off A, take the coboundary; it vanishes on A and represents
  // d* in H^{k+1}(A', A)
  std::vector<Chain> images;
  for (int j = 0; j < s->rank(); ++j) {
    Cochain alpha = s->basis_chain(j);
    Cochain d = restrict_to(coboundary(alpha), t->a());
    images.push_back(std::move(d));
  }
  return GroupMap::from_images(s, t, images);
}

}  // namespace plchain
