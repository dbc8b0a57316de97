#include "plchain/exact.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace plchain {

void add_scaled(SparseVec& dst, const SparseVec& src, const Int& c) {
  if (c == 0) return;
  for (const auto& [i, v] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      Int nv = c * v;
      if (nv != 0) dst.emplace(i, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

Int dot(const SparseVec& a, const SparseVec& b) {
  const SparseVec *s = &a, *l = &b;
  if (s->size() > l->size()) std::swap(s, l);
  Int acc = 0;
  for (const auto& [i, v] : *s) {
    auto it = l->find(i);
    if (it != l->end()) acc += v * it->second;
  }
  return acc;
}

SparseMat SparseMat::identity(int n) {
  SparseMat m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Int SparseMat::get(int i, int j) const {
  auto it = rows_[i].find(j);
  return it == rows_[i].end() ? Int(0) : it->second;
}

void SparseMat::set(int i, int j, const Int& v) {
  if (v == 0) {
    rows_[i].erase(j);
    cols_[j].erase(i);
  } else {
    rows_[i][j] = v;
    cols_[j][i] = v;
  }
}

void SparseMat::add(int i, int j, const Int& v) {
  if (v == 0) return;
  auto it = rows_[i].find(j);
  if (it == rows_[i].end()) {
    rows_[i][j] = v;
    cols_[j][i] = v;
  } else {
    it->second += v;
    if (it->second == 0) {
      rows_[i].erase(it);
      cols_[j].erase(i);
    } else {
      cols_[j][i] = it->second;
    }
  }
}

bool SparseMat::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

int SparseMat::nnz() const {
  int n = 0;
  for (const auto& r : rows_) n += (int)r.size();
  return n;
}

void SparseMat::swap_rows(int i, int k) {
  if (i == k) return;
  for (const auto& [j, v] : rows_[i]) cols_[j].erase(i);
  for (const auto& [j, v] : rows_[k]) cols_[j].erase(k);
  std::swap(rows_[i], rows_[k]);
  for (const auto& [j, v] : rows_[i]) cols_[j][i] = v;
  for (const auto& [j, v] : rows_[k]) cols_[j][k] = v;
}

void SparseMat::swap_cols(int j, int k) {
  if (j == k) return;
  for (const auto& [i, v] : cols_[j]) rows_[i].erase(j);
  for (const auto& [i, v] : cols_[k]) rows_[i].erase(k);
  std::swap(cols_[j], cols_[k]);
  for (const auto& [i, v] : cols_[j]) rows_[i][j] = v;
  for (const auto& [i, v] : cols_[k]) rows_[i][k] = v;
}

void SparseMat::axpy_row(int i, int k, const Int& c) {
  if (c == 0) return;
  SparseVec src = rows_[k];
  for (const auto& [j, v] : src) add(i, j, c * v);
}

void SparseMat::axpy_col(int j, int k, const Int& c) {
  if (c == 0) return;
  SparseVec src = cols_[k];
  for (const auto& [i, v] : src) add(i, j, c * v);
}

void SparseMat::scale_row(int i, const Int& c) {
  assert(c == 1 || c == -1);
  if (c == 1) return;
  for (auto& [j, v] : rows_[i]) {
    v = -v;
    cols_[j][i] = v;
  }
}

void SparseMat::scale_col(int j, const Int& c) {
  assert(c == 1 || c == -1);
  if (c == 1) return;
  for (auto& [i, v] : cols_[j]) {
    v = -v;
    rows_[i][j] = v;
  }
}

SparseVec SparseMat::apply(const SparseVec& x) const {
  SparseVec y;
  for (const auto& [j, v] : x) add_scaled(y, cols_[j], v);
  return y;
}

SparseVec SparseMat::apply_transpose(const SparseVec& x) const {
  SparseVec y;
  for (const auto& [i, v] : x) add_scaled(y, rows_[i], v);
  return y;
}

SparseMat SparseMat::multiply(const SparseMat& other) const {
  assert(ncols_ == other.nrows());
  SparseMat out(nrows_, other.ncols());
  for (int i = 0; i < nrows_; ++i) {
    SparseVec acc;
    for (const auto& [k, v] : rows_[i]) add_scaled(acc, other.rows_[k], v);
    for (auto& [j, v] : acc) out.set(i, j, v);
  }
  return out;
}

SparseMat SparseMat::transpose() const {
  SparseMat out(ncols_, nrows_);
  for (int i = 0; i < nrows_; ++i)
    for (const auto& [j, v] : rows_[i]) out.set(j, i, v);
  return out;
}

bool SparseMat::operator==(const SparseMat& o) const {
  return nrows_ == o.nrows_ && ncols_ == o.ncols_ && rows_ == o.rows_;
}

namespace {

// Elimination state: the working matrix and the accumulated transforms.
// U and V are always tracked (the certificate needs them); the inverses only
// when requested.
struct Elim {
  SparseMat B, U, Uinv, V, Vinv;
  bool track_uinv, track_vinv;
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      std::greater<std::pair<int, int>>>
      row_heap;  // (row nnz, row): lazy entries

  explicit Elim(const SparseMat& A, bool uinv, bool vinv)
      : B(A),
        U(SparseMat::identity(A.nrows())),
        Uinv(uinv ? SparseMat::identity(A.nrows()) : SparseMat(0, 0)),
        V(SparseMat::identity(A.ncols())),
        Vinv(vinv ? SparseMat::identity(A.ncols()) : SparseMat(0, 0)),
        track_uinv(uinv),
        track_vinv(vinv) {
    for (int i = 0; i < B.nrows(); ++i)
      if (!B.row(i).empty()) row_heap.push({(int)B.row(i).size(), i});
  }

  void touch_row(int i) {
    if (!B.row(i).empty()) row_heap.push({(int)B.row(i).size(), i});
  }

  // B <- E B with E = I + c e_i e_k^T, so Uinv <- Uinv E^{-1}.
  void row_axpy(int i, int k, const Int& c) {
    B.axpy_row(i, k, c);
    U.axpy_row(i, k, c);
    if (track_uinv) Uinv.axpy_col(k, i, -c);
    touch_row(i);
  }
  // B <- B F with F = I + c e_k e_j^T, so Vinv <- F^{-1} Vinv.
  void col_axpy(int j, int k, const Int& c) {
    B.axpy_col(j, k, c);
    V.axpy_col(j, k, c);
    if (track_vinv) Vinv.axpy_row(k, j, -c);
    for (const auto& [i, v] : B.col(j)) touch_row(i);
  }
  void row_swap(int i, int k) {
    B.swap_rows(i, k);
    U.swap_rows(i, k);
    if (track_uinv) Uinv.swap_cols(i, k);
    touch_row(i);
    touch_row(k);
  }
  void col_swap(int j, int k) {
    B.swap_cols(j, k);
    V.swap_cols(j, k);
    if (track_vinv) Vinv.swap_rows(j, k);
  }
  void row_negate(int i) {
    B.scale_row(i, -1);
    U.scale_row(i, -1);
    if (track_uinv) Uinv.scale_col(i, -1);
  }

  // Deterministic fill-aware pivot: pop active rows in (nnz, row) order and
  // examine a bounded batch of candidates; among their entries prefer
  // smallest |value|, then least column fill, then index order. Bounding the
  // batch keeps pivot search linear while the heap order keeps it
  // deterministic.
  bool find_pivot(int t, int& pi, int& pj) {
    std::vector<std::pair<int, int>> popped;
    std::vector<int> rows;
    int best_nz = -1;
    while (!row_heap.empty() && (int)rows.size() < 12) {
      auto [sz, i] = row_heap.top();
      row_heap.pop();
      if (i < t) continue;
      if ((int)B.row(i).size() != sz) continue;  // stale
      popped.push_back({sz, i});
      rows.push_back(i);
      if (best_nz < 0) best_nz = sz;
      if (sz == 1) break;            // singleton row: no fill is possible
      if (sz > best_nz + 2) break;   // later rows only get denser
    }
    for (auto& e : popped) row_heap.push(e);
    if (rows.empty()) return false;
    bool found = false;
    Int besta;
    long bestc = 0, bestr = 0;
    for (int r : rows)
      for (const auto& [j, v] : B.row(r)) {
        if (j < t) continue;
        Int a = abs(v);
        long cn = (long)B.col(j).size();
        long rn = (long)B.row(r).size();
        auto cand = std::make_tuple(a, cn + rn, (long)r, (long)j);
        auto best = std::make_tuple(besta, bestc + bestr, (long)pi, (long)pj);
        if (!found || cand < best) {
          found = true;
          besta = a;
          bestc = cn;
          bestr = rn;
          pi = r;
          pj = j;
        }
      }
    return found;
  }

  // With a nonzero pivot at (t, t), clear row t and column t. The classical
  // remainder-swap loop also turns the pivot into the gcd of the block's
  // row/column entries it touches. Terminates because |pivot| strictly drops
  // on every swap.
  void clear_cross(int t) {
    for (;;) {
      bool swapped = false;
      // column below pivot
      for (;;) {
        int i = -1;
        for (const auto& [r, v] : B.col(t))
          if (r > t) {
            i = r;
            break;
          }
        if (i < 0) break;
        Int v = B.get(i, t), p = B.get(t, t);
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        row_axpy(i, t, -q);
        if (r != 0) {
          row_swap(t, i);
          swapped = true;
        }
      }
      // row right of pivot
      for (;;) {
        int j = -1;
        for (const auto& [c, v] : B.row(t))
          if (c > t) {
            j = c;
            break;
          }
        if (j < 0) break;
        Int v = B.get(t, j), p = B.get(t, t);
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        col_axpy(j, t, -q);
        if (r != 0) {
          col_swap(t, j);
          swapped = true;
        }
      }
      if (!swapped) {
        bool clear = true;
        for (const auto& [r, v] : B.col(t))
          if (r > t) clear = false;
        if (clear) break;
      }
    }
    if (B.get(t, t) < 0) row_negate(t);
  }
};

}  // namespace

SNF smith_normal_form(const SparseMat& A) { return smith_normal_form(A, true, true); }

SNF smith_normal_form(const SparseMat& A, bool track_uinv, bool track_vinv) {
  Elim e(A, track_uinv, track_vinv);
  const int tmax = std::min(A.nrows(), A.ncols());

  int t = 0;
  while (t < tmax) {
    int pi, pj;
    if (!e.find_pivot(t, pi, pj)) break;
    e.row_swap(t, pi);
    e.col_swap(t, pj);
    e.clear_cross(t);
    ++t;
  }
  const int rank = t;

  // Divisibility chain: whenever d_k does not divide d_{k+1}, fold the two
  // diagonal entries together and re-eliminate; the gcd surfaces at k.
  int k = 0;
  while (k + 1 < rank) {
    Int a = e.B.get(k, k), b = e.B.get(k + 1, k + 1);
    if (b % a == 0) {
      ++k;
      continue;
    }
    e.col_axpy(k, k + 1, 1);  // block is now [[a, 0], [b, b]]
    e.clear_cross(k);
    e.clear_cross(k + 1);
    if (k > 0) --k;
  }

  SNF s;
  s.U = std::move(e.U);
  s.Uinv = std::move(e.Uinv);
  s.V = std::move(e.V);
  s.Vinv = std::move(e.Vinv);
  s.D = std::move(e.B);
  s.rank = rank;
  for (int i = 0; i < rank; ++i) s.diag.push_back(s.D.get(i, i));

  // Certificate: U*A*V == D exactly, positive diagonal, divisibility chain.
  // Unimodularity holds by construction (elementary operations only).
  SparseMat check = s.U.multiply(A).multiply(s.V);
  if (!(check == s.D)) throw std::logic_error("SNF certificate failed: U*A*V != D");
  for (size_t i = 0; i + 1 < s.diag.size(); ++i)
    if (s.diag[i + 1] % s.diag[i] != 0)
      throw std::logic_error("SNF certificate failed: divisibility chain");
  for (const auto& d : s.diag)
    if (d <= 0) throw std::logic_error("SNF certificate failed: nonpositive diagonal");
  return s;
}

std::vector<SparseVec> kernel_basis(const SparseMat& A, const SNF& s) {
  std::vector<SparseVec> out;
  for (int j = s.rank; j < A.ncols(); ++j) out.push_back(s.V.col(j));
  return out;
}

std::vector<SparseVec> kernel_basis(const SparseMat& A) {
  return kernel_basis(A, smith_normal_form(A));
}

std::optional<SparseVec> solve(const SparseMat& A, const SNF& s, const SparseVec& b) {
  // A = Uinv D Vinv, so x = V y with D y = U b.
  SparseVec ub = s.U.apply(b);
  SparseVec y;
  for (const auto& [i, v] : ub) {
    if (i >= s.rank) return std::nullopt;
    if (v % s.diag[i] != 0) return std::nullopt;
    y[i] = v / s.diag[i];
  }
  return s.V.apply(y);
}

std::optional<SparseVec> solve(const SparseMat& A, const SparseVec& b) {
  return solve(A, smith_normal_form(A), b);
}

SparseMat columns_to_matrix(const std::vector<SparseVec>& cols, int nrows) {
  SparseMat m(nrows, (int)cols.size());
  for (int j = 0; j < (int)cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) m.set(i, j, v);
  return m;
}

}  // namespace plchain
