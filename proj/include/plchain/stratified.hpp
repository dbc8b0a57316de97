#pragma once

#include <string>

#include "plchain/homology.hpp"

namespace plchain {

// Connected piece of X^i - X^{i-1}, as a set of open simplices.
struct Stratum {
  int dim = -1;          // i
  int index = 0;         // position among the strata of this dimension
  std::vector<SimplexId> open_simplices;
  bool regular = false;  // dim == n
  int codim(int n) const { return n - dim; }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Compact PL filtered space X = X^n > X^{n-1} > ... with orientation data on
// the regular part. Skeleta are stored as subcomplexes of one base complex.
class FilteredPseudomanifold {
 public:
  FilteredPseudomanifold(ComplexPtr complex, std::vector<Subcomplex> skeleta);
  // Trivial filtration (empty singular set) of a closed n-manifold complex.
  static FilteredPseudomanifold manifold(ComplexPtr complex);

  const ComplexPtr& complex() const { return complex_; }
  int n() const { return n_; }
  const Subcomplex& skeleton(int i) const;  // X^i, with X^n the whole complex
  const Subcomplex& sigma() const { return sigma_; }

  // orientation sign of the regular n-simplices (sorted-vertex convention)
  const std::vector<int>& orientation() const { return orientation_; }
  void set_orientation(std::vector<int> signs) { orientation_ = std::move(signs); }
  bool oriented() const { return !orientation_.empty(); }
  // fundamental n-chain: all n-simplices with their orientation signs
  Chain fundamental_chain() const;

  const std::vector<Stratum>& strata() const { return strata_; }
  const std::vector<int>& singular_strata() const { return singular_; }
  // stratum containing the open simplex s (its interior), or -1
  int stratum_of(SimplexId s) const;

  ValidationReport validate() const;

 private:
  void build_strata();

  ComplexPtr complex_;
  std::vector<Subcomplex> skeleta_;  // index i = X^i, 0..n
  Subcomplex sigma_;
  int n_ = 0;
  std::vector<int> orientation_;
  std::vector<Stratum> strata_;
  std::vector<int> singular_;                       // indices into strata_
  std::vector<std::vector<int>> stratum_of_simplex_;  // per dim, per idx
};

// Integer perversity on the singular strata, keyed by stratum index.
struct Perversity {
  std::map<int, Int> values;  // stratum index -> value
  std::string name;

  static Perversity zero(const FilteredPseudomanifold& x, std::string name = "0");
  // top perversity t(Z) = codim(Z) - 2
  static Perversity top(const FilteredPseudomanifold& x, std::string name = "t");
  static Perversity constant(const FilteredPseudomanifold& x, const Int& v, std::string name);
  Perversity plus(const Perversity& o) const;
  bool leq(const Perversity& o) const;
  const Int& at(int stratum) const { return values.at(stratum); }
};

struct AllowabilityLine {
  int stratum;
  Int budget_chain, actual_chain;      // dim(|xi| /\ Z) <= i - codim + p
  Int budget_boundary, actual_boundary;
  bool ok_chain, ok_boundary;
};

struct AllowabilityReport {
  bool allowable = true;
  std::vector<AllowabilityLine> lines;
};

// Allowability of a degree-i chain (supports taken mod Sigma).
AllowabilityReport allowability_check(const FilteredPseudomanifold& x, const Chain& xi,
                                      const Perversity& p);

// Is a single open simplex allowable as part of a degree-i chain?
bool simplex_allowable(const FilteredPseudomanifold& x, SimplexId s, int i, const Perversity& p);

// Intersection homology I^p H_k(X) of the allowable-chain lattice inside
// C_*(X, Sigma).
PairGroupPtr intersection_homology(const FilteredPseudomanifold& x, const Perversity& p, int k);

// Transport a perversity to a subdivided copy of the space (strata matched
// through the lineage carriers).
Perversity transport_perversity(const FilteredPseudomanifold& src, const FilteredPseudomanifold& dst,
                                const Perversity& p);

// dim of |s| /\ |Z| for a closed simplex and a stratum (max dim of open faces
// of s inside the stratum), -1 when empty.
int dim_meet_stratum(const FilteredPseudomanifold& x, SimplexId s, int stratum);

// dim of |A| /\ stratum for a subcomplex A.
int dim_meet_stratum(const FilteredPseudomanifold& x, const Subcomplex& a, int stratum);

}  // namespace plchain
