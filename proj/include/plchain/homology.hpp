#pragma once

#include <memory>

#include "plchain/chains.hpp"
#include "plchain/complex.hpp"
#include "plchain/exact.hpp"

namespace plchain {

// Homology ker(out_map)/im(in_map) of one spot of an integer chain complex,
// with explicit basis vectors in ambient coordinates and exact coordinate
// solving. Torsion generators come first (orders form a divisibility chain),
// then free generators.
class Presentation {
 public:
  Presentation() = default;
  Presentation(const SparseMat& out_map, const SparseMat& in_map);

  int rank() const { return (int)torsion_.size() + free_rank_; }
  int free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  const SparseVec& basis_vec(int t) const { return basis_[t]; }

  std::vector<Int> express(const SparseVec& z) const;  // throws if not a cycle
  std::vector<Int> reduce(std::vector<Int> coords) const;

 private:
  int free_rank_ = 0;
  std::vector<Int> torsion_;
  std::vector<SparseVec> basis_;
  SparseMat kernel_mat_;
  SNF kernel_snf_;
  SparseMat quot_u_;
  std::vector<Int> quot_diag_;
  int quot_rank_ = 0;
  std::vector<int> coord_of_row_;
};

// Smith-normal-form presentation of H_k(A, B; Z) (or H^k(A, B; Z)) for a
// subcomplex pair B c A. Basis elements: torsion generators first (orders in
// `torsion`, a divisibility chain), then free generators. Each basis element
// carries an explicit relative (co)cycle representative.
class PairGroup {
 public:
  static std::shared_ptr<PairGroup> homology(ComplexPtr k, Subcomplex a, Subcomplex b, int degree);
  static std::shared_ptr<PairGroup> cohomology(ComplexPtr k, Subcomplex a, Subcomplex b, int degree);
  // Homology of a sublattice chain complex (e.g. intersection chains):
  // `lattice` columns give the degree-k lattice basis in generator
  // coordinates, `pres` the homology presentation in lattice coordinates.
  static std::shared_ptr<PairGroup> from_lattice(ComplexPtr k, Subcomplex a, Subcomplex b, int degree,
                                                 std::vector<int> gen, SparseMat lattice,
                                                 Presentation pres);

  const ComplexPtr& complex() const { return complex_; }
  const Subcomplex& a() const { return a_; }
  const Subcomplex& b() const { return b_; }
  int degree() const { return degree_; }
  bool is_cohomology() const { return co_; }

  int rank() const { return pres_.rank(); }
  int free_rank() const { return pres_.free_rank(); }
  const std::vector<Int>& torsion() const { return pres_.torsion(); }
  bool is_zero() const { return rank() == 0; }
  bool is_free() const { return torsion().empty(); }

  // Representative of basis element t as a chain/cochain on the complex.
  Chain basis_chain(int t) const;

  // Coordinates of a relative (co)cycle in this presentation. Coefficients on
  // B die; throws if the input is not a relative (co)cycle or unsupported.
  std::vector<Int> express(const Chain& z) const;
  // Chain with prescribed coordinates.
  Chain chain_of(const std::vector<Int>& coords) const;

  std::vector<Int> reduce(std::vector<Int> coords) const;  // mod torsion orders
  bool coords_equal(const std::vector<Int>& x, const std::vector<Int>& y) const;

  // generator table: positions <-> k-simplex indices of A \ B
  const std::vector<int>& generators() const { return gen_; }
  SparseVec chain_to_gen(const Chain& z) const;
  Chain gen_to_chain(const SparseVec& g) const;

 private:
  ComplexPtr complex_;
  Subcomplex a_, b_;
  int degree_ = 0;
  bool co_ = false;
  std::vector<int> gen_;
  std::map<int, int> gen_index_;
  Presentation pres_;
  // lattice-backed groups: presentation coordinates live in lattice coords
  bool latticed_ = false;
  SparseMat lattice_;
  SNF lattice_snf_;
};

using PairGroupPtr = std::shared_ptr<PairGroup>;

// Homomorphism between presented groups, stored as an integer matrix in the
// presentations' bases (columns = images of source basis elements).
struct GroupMap {
  PairGroupPtr source, target;
  SparseMat matrix;

  static GroupMap zero(PairGroupPtr s, PairGroupPtr t);
  static GroupMap identity(PairGroupPtr g);
  // from images of the source basis elements, given as chains
  static GroupMap from_images(PairGroupPtr s, PairGroupPtr t, const std::vector<Chain>& images);

  std::vector<Int> apply(const std::vector<Int>& coords) const;
  GroupMap compose_after(const GroupMap& first) const;  // this . first
  bool is_identity() const;
  bool equal(const GroupMap& o) const;
  GroupMap negated() const;
  GroupMap scaled(const Int& c) const;

  // Two-sided inverse; throws when the map is not an isomorphism, carrying an
  // SNF witness description.
  GroupMap inverse() const;
  bool is_isomorphism() const;
};

// f_* for the inclusion of pairs (A,B) -> (A',B') inside one complex (or f^*
// on cohomology, which runs the other way: source must be the larger pair).
GroupMap induced_inclusion(const PairGroupPtr& s, const PairGroupPtr& t);

// f_* for a simplicial vertex map between complexes.
GroupMap induced_vertex_map(const PairGroupPtr& s, const PairGroupPtr& t, const std::vector<Vertex>& vmap);

// f_* for the subdivision chain map (source on the parent, target on the child).
GroupMap induced_subdivision(const PairGroupPtr& s, const PairGroupPtr& t);

// Connecting map d_*: H_k(A, B) -> H_{k-1}(B, C) of a triple C c B c A.
GroupMap connecting_map(const PairGroupPtr& s, const PairGroupPtr& t);

// Cohomology connecting map d*: H^k(A, B) -> H^{k+1}(A', A) for A c A' (the
// triple (A', A, B) with B c A): source must be H^k(A, B), target H^{k+1}(A', A).
GroupMap connecting_map_cohomology(const PairGroupPtr& s, const PairGroupPtr& t);

}  // namespace plchain
