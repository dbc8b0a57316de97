#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plchain {

using Int = mpz_class;

// Sparse integer vector: index -> nonzero coefficient.
using SparseVec = std::map<int, Int>;

void add_scaled(SparseVec& dst, const SparseVec& src, const Int& c);
Int dot(const SparseVec& a, const SparseVec& b);

// Sparse integer matrix with synchronized row and column maps, so both row
// and column operations stay cheap during elimination.
class SparseMat {
 public:
  SparseMat() : nrows_(0), ncols_(0) {}
  SparseMat(int nrows, int ncols) : nrows_(nrows), ncols_(ncols), rows_(nrows), cols_(ncols) {}

  static SparseMat identity(int n);

  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }

  const SparseVec& row(int i) const { return rows_[i]; }
  const SparseVec& col(int j) const { return cols_[j]; }

  Int get(int i, int j) const;
  void set(int i, int j, const Int& v);
  void add(int i, int j, const Int& v);

  bool is_zero() const;
  int nnz() const;

  // Elementary operations, applied in place.
  void swap_rows(int i, int k);
  void swap_cols(int j, int k);
  void axpy_row(int i, int k, const Int& c);  // row_i += c * row_k
  void axpy_col(int j, int k, const Int& c);  // col_j += c * col_k
  void scale_row(int i, const Int& c);        // c must be a unit
  void scale_col(int j, const Int& c);

  SparseVec apply(const SparseVec& x) const;            // A x
  SparseVec apply_transpose(const SparseVec& x) const;  // A^T x
  SparseMat multiply(const SparseMat& other) const;     // A * other
  SparseMat transpose() const;

  bool operator==(const SparseMat& o) const;

 private:
  int nrows_, ncols_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> cols_;
};

// Smith normal form D = U * A * V with U, V unimodular, D diagonal and
// d1 | d2 | ... . Inverses are accumulated alongside so callers can move
// between coordinate systems without re-solving.
struct SNF {
  SparseMat U, Uinv, V, Vinv, D;
  int rank = 0;
  std::vector<Int> diag;  // the nonzero diagonal entries d1 | d2 | ...
};

// Deterministic fill-aware SNF (sparsest active row, then smallest |value|,
// then column fill, then index order). Asserts the certificate U*A*V == D
// exactly. The inverse transforms are tracked only when requested.
SNF smith_normal_form(const SparseMat& A);
SNF smith_normal_form(const SparseMat& A, bool track_uinv, bool track_vinv);

// Basis of the integer kernel lattice {x : A x = 0}.
std::vector<SparseVec> kernel_basis(const SparseMat& A, const SNF& snf);
std::vector<SparseVec> kernel_basis(const SparseMat& A);

// One integral solution of A x = b, if any.
std::optional<SparseVec> solve(const SparseMat& A, const SNF& snf, const SparseVec& b);
std::optional<SparseVec> solve(const SparseMat& A, const SparseVec& b);

SparseMat columns_to_matrix(const std::vector<SparseVec>& cols, int nrows);

}  // namespace plchain
