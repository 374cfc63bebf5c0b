#include "gmtforms/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "gmtforms/errors.hpp"
#include "gmtforms/operators.hpp"

namespace gmtforms {

namespace {

std::atomic<long> g_dimension_cap{20000};

}  // namespace

long dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(long cap) {
  if (cap < 1) throw InvalidDescriptor("dimension cap must be positive, got " + std::to_string(cap));
  g_dimension_cap.store(cap);
}

void check_dimension_cap(long dim) {
  long cap = g_dimension_cap.load();
  if (dim > cap)
    throw CapExceeded("space dimension " + std::to_string(dim) + " exceeds the cap of " + std::to_string(cap));
}

SparseRow dense_to_sparse(const std::vector<Rat>& v) {
  SparseRow out;
  for (long i = 0; i < static_cast<long>(v.size()); ++i)
    if (v[i] != 0) out.emplace_back(i, v[i]);
  return out;
}

std::vector<Rat> sparse_to_dense(const SparseRow& row, long width) {
  std::vector<Rat> out(width, Rat(0));
  for (const auto& [i, c] : row) {
    if (i < 0 || i >= width) throw IndexOutOfRange("sparse row index " + std::to_string(i) + " outside width " + std::to_string(width));
    out[i] = c;
  }
  return out;
}

SparseMatrix::SparseMatrix(long rows, long cols) : nrows_(rows), ncols_(cols), rows_(rows) {
  if (rows < 0 || cols < 0) throw ShapeMismatch("matrix dimensions must be nonnegative");
}

long SparseMatrix::nnz() const {
  long total = 0;
  for (const auto& r : rows_) total += static_cast<long>(r.size());
  return total;
}

void SparseMatrix::add(long r, long c, const Rat& v) {
  if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
    throw IndexOutOfRange("entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                          std::to_string(nrows_) + "x" + std::to_string(ncols_));
  if (v == 0) return;
  auto it = rows_[r].find(c);
  if (it == rows_[r].end()) {
    rows_[r].emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) rows_[r].erase(it);
  }
}

Rat SparseMatrix::at(long r, long c) const {
  if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
    throw IndexOutOfRange("entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                          std::to_string(nrows_) + "x" + std::to_string(ncols_));
  auto it = rows_[r].find(c);
  return it == rows_[r].end() ? Rat(0) : it->second;
}

const std::map<long, Rat>& SparseMatrix::row(long r) const {
  if (r < 0 || r >= nrows_) throw IndexOutOfRange("row " + std::to_string(r) + " outside " + std::to_string(nrows_));
  return rows_[r];
}

std::vector<Rat> SparseMatrix::apply(const std::vector<Rat>& x) const {
  if (static_cast<long>(x.size()) != ncols_)
    throw ShapeMismatch("vector length " + std::to_string(x.size()) + " does not match column count " + std::to_string(ncols_));
  std::vector<Rat> out(nrows_, Rat(0));
  for (long r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) out[r] += v * x[c];
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix out(ncols_, nrows_);
  for (long r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) out.add(c, r, v);
  return out;
}

std::vector<std::tuple<long, long, Rat>> SparseMatrix::triplets() const {
  std::vector<std::tuple<long, long, Rat>> out;
  out.reserve(nnz());
  for (long r = 0; r < nrows_; ++r)
    for (const auto& [c, v] : rows_[r]) out.emplace_back(r, c, v);
  return out;
}

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("cannot compose " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " with " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  SparseMatrix out(a.rows(), b.cols());
  for (long r = 0; r < a.rows(); ++r)
    for (const auto& [mid, v] : a.row(r))
      for (const auto& [c, w] : b.row(mid)) out.add(r, c, v * w);
  return out;
}

SparseMatrix matrix_sum(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("cannot add matrices of different shapes");
  SparseMatrix out(a.rows(), a.cols());
  for (long r = 0; r < a.rows(); ++r) {
    for (const auto& [c, v] : a.row(r)) out.add(r, c, v);
    for (const auto& [c, v] : b.row(r)) out.add(r, c, v);
  }
  return out;
}

namespace {

// Connected components of the column set, two columns joined when some row is
// nonzero in both. Every elimination below runs inside one component, which
// keeps the dense workspaces small.
struct Split {
  std::vector<std::vector<long>> comp_cols;
  std::vector<std::vector<long>> comp_rows;
  std::vector<long> untouched_cols;
  std::vector<long> empty_rows;
};

class UnionFind {
 public:
  explicit UnionFind(long n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  long find(long x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(long x, long y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<long> parent_;
};

Split split_columns(long ncols, const std::vector<SparseRow>& rows) {
  UnionFind uf(ncols);
  std::vector<bool> touched(ncols, false);
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) touched[c] = true;
    for (size_t t = 1; t < row.size(); ++t) uf.unite(row[0].first, row[t].first);
  }
  Split split;
  std::map<long, long> root_to_comp;
  for (long c = 0; c < ncols; ++c) {
    if (!touched[c]) {
      split.untouched_cols.push_back(c);
      continue;
    }
    long root = uf.find(c);
    auto it = root_to_comp.find(root);
    if (it == root_to_comp.end()) {
      it = root_to_comp.emplace(root, static_cast<long>(split.comp_cols.size())).first;
      split.comp_cols.emplace_back();
      split.comp_rows.emplace_back();
    }
    split.comp_cols[it->second].push_back(c);
  }
  for (long r = 0; r < static_cast<long>(rows.size()); ++r) {
    if (rows[r].empty()) {
      split.empty_rows.push_back(r);
      continue;
    }
    split.comp_rows[root_to_comp.at(uf.find(rows[r][0].first))].push_back(r);
  }
  return split;
}

struct IntRow {
  std::vector<Int> a;
  std::vector<Int> e;
};

void content_reduce(IntRow& row) {
  Int g = 0;
  for (const Int& x : row.a) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (const Int& x : row.e) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (Int& x : row.a)
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  for (Int& x : row.e)
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Reduced echelon form of the given rows by fraction-free elimination: rows
// are scaled to integers, pivots clear their column in every other row by
// cross-multiplication, each update is divided by its integer content, and
// pivot rows are normalized to a leading 1 at the end. With a transform, the
// returned rows E satisfy row_i = E_i * input for the echelon rows and
// 0 = E_i * input for the discarded rows, which yields particular solutions
// and consistency checks for linear systems.
struct EchelonForm {
  long ncols = 0;
  std::vector<std::vector<Rat>> rows;  // rank rows, reduced echelon, leading 1s
  std::vector<long> pivots;            // ascending, one per row
  std::vector<std::vector<Rat>> transform;  // size nrows_in; rows [rank..) certify zero rows
};

EchelonForm reduce_rows(long ncols, const std::vector<std::vector<Rat>>& input, bool with_transform) {
  const long n = static_cast<long>(input.size());
  std::vector<IntRow> rows(n);
  for (long i = 0; i < n; ++i) {
    Int scale = 1;
    for (const Rat& q : input[i])
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
    rows[i].a.resize(ncols);
    for (long j = 0; j < ncols; ++j) {
      const Rat& q = input[i][j];
      Int factor;
      mpz_divexact(factor.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
      rows[i].a[j] = q.get_num() * factor;
    }
    if (with_transform) {
      rows[i].e.assign(n, 0);
      rows[i].e[i] = scale;
    }
    content_reduce(rows[i]);
  }

  std::vector<long> pivot_rows;
  std::vector<long> pivots;
  std::vector<bool> used(n, false);
  for (long c = 0; c < ncols; ++c) {
    long best = -1;
    long best_nnz = 0;
    for (long i = 0; i < n; ++i) {
      if (used[i] || sgn(rows[i].a[c]) == 0) continue;
      long nnz = 0;
      for (const Int& x : rows[i].a)
        if (sgn(x) != 0) ++nnz;
      if (best < 0 || nnz < best_nnz) {
        best = i;
        best_nnz = nnz;
      }
    }
    if (best < 0) continue;
    used[best] = true;
    pivot_rows.push_back(best);
    pivots.push_back(c);
    const IntRow& prow = rows[best];
    const Int p = prow.a[c];
    for (long i = 0; i < n; ++i) {
      if (i == best || sgn(rows[i].a[c]) == 0) continue;
      const Int v = rows[i].a[c];
      for (long j = 0; j < ncols; ++j) rows[i].a[j] = p * rows[i].a[j] - v * prow.a[j];
      for (size_t j = 0; j < rows[i].e.size(); ++j) rows[i].e[j] = p * rows[i].e[j] - v * prow.e[j];
      content_reduce(rows[i]);
    }
  }

  EchelonForm out;
  out.ncols = ncols;
  for (size_t t = 0; t < pivot_rows.size(); ++t) {
    const IntRow& row = rows[pivot_rows[t]];
    Rat p(row.a[pivots[t]]);
    std::vector<Rat> r(ncols);
    for (long j = 0; j < ncols; ++j) {
      r[j] = Rat(row.a[j]) / p;
      r[j].canonicalize();
    }
    out.rows.push_back(std::move(r));
    if (with_transform) {
      std::vector<Rat> e(row.e.size());
      for (size_t j = 0; j < row.e.size(); ++j) {
        e[j] = Rat(row.e[j]) / p;
        e[j].canonicalize();
      }
      out.transform.push_back(std::move(e));
    }
  }
  out.pivots = std::move(pivots);
  if (with_transform) {
    for (long i = 0; i < n; ++i) {
      if (used[i]) continue;
      std::vector<Rat> e(rows[i].e.size());
      for (size_t j = 0; j < rows[i].e.size(); ++j) e[j] = Rat(rows[i].e[j]);
      out.transform.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<std::vector<Rat>> kernel_from_echelon(const EchelonForm& ech) {
  std::vector<bool> is_pivot(ech.ncols, false);
  for (long p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> out;
  for (long c = 0; c < ech.ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(ech.ncols, Rat(0));
    v[c] = 1;
    for (size_t t = 0; t < ech.pivots.size(); ++t)
      if (ech.rows[t][c] != 0) v[ech.pivots[t]] = -ech.rows[t][c];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Rat>> local_dense_rows(const std::vector<SparseRow>& rows,
                                               const std::vector<long>& row_ids,
                                               const std::vector<long>& col_ids,
                                               const std::vector<long>& col_local) {
  std::vector<std::vector<Rat>> out;
  out.reserve(row_ids.size());
  for (long r : row_ids) {
    std::vector<Rat> dense(col_ids.size(), Rat(0));
    for (const auto& [c, v] : rows[r]) dense[col_local[c]] = v;
    out.push_back(std::move(dense));
  }
  return out;
}

std::vector<SparseRow> matrix_rows(const SparseMatrix& A) {
  std::vector<SparseRow> rows(A.rows());
  for (long r = 0; r < A.rows(); ++r) {
    rows[r].reserve(A.row(r).size());
    for (const auto& [c, v] : A.row(r)) rows[r].emplace_back(c, v);
  }
  return rows;
}

// Canonical reduced-echelon rows spanning the same space as the input
// vectors, produced componentwise and merged by leading position. Components
// have disjoint column supports, so the merge is the global canonical form.
std::vector<SparseRow> canonical_rows(long ambient, const std::vector<SparseRow>& vectors) {
  Split split = split_columns(ambient, vectors);
  std::vector<long> col_local(ambient, -1);
  std::vector<SparseRow> out;
  for (size_t comp = 0; comp < split.comp_cols.size(); ++comp) {
    const auto& cols = split.comp_cols[comp];
    for (size_t t = 0; t < cols.size(); ++t) col_local[cols[t]] = static_cast<long>(t);
    auto dense = local_dense_rows(vectors, split.comp_rows[comp], cols, col_local);
    EchelonForm ech = reduce_rows(static_cast<long>(cols.size()), dense, false);
    for (const auto& row : ech.rows) {
      SparseRow global;
      for (size_t t = 0; t < row.size(); ++t)
        if (row[t] != 0) global.emplace_back(cols[t], row[t]);
      out.push_back(std::move(global));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SparseRow& x, const SparseRow& y) { return x[0].first < y[0].first; });
  return out;
}

// Canonical basis rows of the null space of A.
std::vector<SparseRow> kernel_rows(const SparseMatrix& A) {
  auto rows = matrix_rows(A);
  Split split = split_columns(A.cols(), rows);
  std::vector<long> col_local(A.cols(), -1);
  std::vector<SparseRow> out;
  for (long c : split.untouched_cols) out.push_back({{c, Rat(1)}});
  for (size_t comp = 0; comp < split.comp_cols.size(); ++comp) {
    const auto& cols = split.comp_cols[comp];
    for (size_t t = 0; t < cols.size(); ++t) col_local[cols[t]] = static_cast<long>(t);
    auto dense = local_dense_rows(rows, split.comp_rows[comp], cols, col_local);
    EchelonForm ech = reduce_rows(static_cast<long>(cols.size()), dense, false);
    auto kern = kernel_from_echelon(ech);
    EchelonForm canon = reduce_rows(static_cast<long>(cols.size()), kern, false);
    for (const auto& row : canon.rows) {
      SparseRow global;
      for (size_t t = 0; t < row.size(); ++t)
        if (row[t] != 0) global.emplace_back(cols[t], row[t]);
      out.push_back(std::move(global));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SparseRow& x, const SparseRow& y) { return x[0].first < y[0].first; });
  return out;
}

long rank_of(const SparseMatrix& A) {
  auto rows = matrix_rows(A);
  Split split = split_columns(A.cols(), rows);
  std::vector<long> col_local(A.cols(), -1);
  long total = 0;
  for (size_t comp = 0; comp < split.comp_cols.size(); ++comp) {
    const auto& cols = split.comp_cols[comp];
    for (size_t t = 0; t < cols.size(); ++t) col_local[cols[t]] = static_cast<long>(t);
    auto dense = local_dense_rows(rows, split.comp_rows[comp], cols, col_local);
    EchelonForm ech = reduce_rows(static_cast<long>(cols.size()), dense, false);
    total += static_cast<long>(ech.pivots.size());
  }
  return total;
}

}  // namespace

Subspace::Subspace(FormSpaceDescriptor ambient)
    : ambient_(std::move(ambient)), ambient_dim_(ambient_.dim()) {
  check_dimension_cap(ambient_dim_);
}

Subspace Subspace::span(FormSpaceDescriptor ambient, const std::vector<SparseRow>& vectors) {
  Subspace out(std::move(ambient));
  std::vector<SparseRow> nonzero;
  nonzero.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.empty()) continue;
    long prev = -1;
    for (const auto& [i, c] : v) {
      if (i <= prev || i >= out.ambient_dim_)
        throw IndexOutOfRange("vector index " + std::to_string(i) + " invalid for ambient dimension " +
                              std::to_string(out.ambient_dim_));
      if (c == 0) throw InvalidDescriptor("sparse vectors must not store zero entries");
      prev = i;
    }
    nonzero.push_back(v);
  }
  out.basis_ = canonical_rows(out.ambient_dim_, nonzero);
  return out;
}

Subspace Subspace::full(FormSpaceDescriptor ambient) {
  Subspace out(std::move(ambient));
  out.basis_.reserve(out.ambient_dim_);
  for (long i = 0; i < out.ambient_dim_; ++i) out.basis_.push_back({{i, Rat(1)}});
  return out;
}

std::vector<Rat> Subspace::basis_vector(long i) const {
  if (i < 0 || i >= dim()) throw IndexOutOfRange("basis vector " + std::to_string(i) + " outside 0.." + std::to_string(dim() - 1));
  return sparse_to_dense(basis_[i], ambient_dim_);
}

long matrix_rank(const SparseMatrix& A) {
  check_dimension_cap(A.cols());
  check_dimension_cap(A.rows());
  return rank_of(A);
}

std::vector<SparseRow> null_space_rows(const SparseMatrix& A) {
  check_dimension_cap(A.cols());
  check_dimension_cap(A.rows());
  return kernel_rows(A);
}

long rank(const OperatorMatrix& op) {
  check_dimension_cap(op.mat.cols());
  check_dimension_cap(op.mat.rows());
  return rank_of(op.mat);
}

Subspace kernel(const OperatorMatrix& op) {
  if (op.mat.cols() != op.source.dim())
    throw ShapeMismatch("matrix columns do not index the source space basis");
  check_dimension_cap(op.mat.cols());
  check_dimension_cap(op.mat.rows());
  return Subspace::span(op.source, kernel_rows(op.mat));
}

Subspace image(const OperatorMatrix& op) {
  if (op.mat.rows() != op.target.dim())
    throw ShapeMismatch("matrix rows do not index the target space basis");
  check_dimension_cap(op.mat.cols());
  check_dimension_cap(op.mat.rows());
  auto cols = matrix_rows(op.mat.transpose());
  return Subspace::span(op.target, cols);
}

namespace {

void check_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ShapeMismatch("subspaces live in different ambient spaces");
}

}  // namespace

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  const long da = a.dim();
  SparseMatrix M(a.ambient_dim(), da + b.dim());
  for (long j = 0; j < da; ++j)
    for (const auto& [i, c] : a.basis()[j]) M.add(i, j, c);
  for (long j = 0; j < b.dim(); ++j)
    for (const auto& [i, c] : b.basis()[j]) M.add(i, da + j, -c);
  std::vector<SparseRow> vectors;
  for (const auto& coeffs : kernel_rows(M)) {
    std::vector<Rat> v(a.ambient_dim(), Rat(0));
    for (const auto& [j, c] : coeffs) {
      if (j >= da) break;
      for (const auto& [i, w] : a.basis()[j]) v[i] += c * w;
    }
    auto sparse = dense_to_sparse(v);
    if (!sparse.empty()) vectors.push_back(std::move(sparse));
  }
  return Subspace::span(a.ambient(), vectors);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  std::vector<SparseRow> vectors = a.basis();
  vectors.insert(vectors.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vectors);
}

bool contains(const Subspace& space, const std::vector<Rat>& v) {
  if (static_cast<long>(v.size()) != space.ambient_dim())
    throw ShapeMismatch("vector length " + std::to_string(v.size()) + " does not match ambient dimension " +
                        std::to_string(space.ambient_dim()));
  std::vector<Rat> rem = v;
  for (const auto& row : space.basis()) {
    const Rat c = rem[row[0].first];
    if (c == 0) continue;
    for (const auto& [i, w] : row) rem[i] -= c * w;
  }
  for (const Rat& x : rem)
    if (x != 0) return false;
  return true;
}

bool contains(const Subspace& outer, const Subspace& inner) {
  check_same_ambient(outer, inner);
  for (const auto& row : inner.basis())
    if (!contains(outer, sparse_to_dense(row, inner.ambient_dim()))) return false;
  return true;
}

Subspace ortho_complement_within(const Subspace& sub, const Subspace& whole) {
  check_same_ambient(sub, whole);
  if (!contains(whole, sub))
    throw ShapeMismatch("subspace is not contained in the enclosing space");
  if (sub.dim() == 0) return whole;
  const auto gram = BasisIndex(whole.ambient()).fischer_gram_diagonal();
  SparseMatrix N(sub.dim(), whole.dim());
  for (long j = 0; j < sub.dim(); ++j) {
    std::map<long, Rat> weighted;
    for (const auto& [i, c] : sub.basis()[j]) weighted.emplace(i, c * gram[i]);
    for (long i = 0; i < whole.dim(); ++i) {
      Rat dot = 0;
      for (const auto& [t, w] : whole.basis()[i]) {
        auto it = weighted.find(t);
        if (it != weighted.end()) dot += w * it->second;
      }
      N.add(j, i, dot);
    }
  }
  std::vector<SparseRow> vectors;
  for (const auto& coeffs : kernel_rows(N)) {
    std::vector<Rat> v(whole.ambient_dim(), Rat(0));
    for (const auto& [j, c] : coeffs)
      for (const auto& [i, w] : whole.basis()[j]) v[i] += c * w;
    vectors.push_back(dense_to_sparse(v));
  }
  return Subspace::span(whole.ambient(), vectors);
}

struct MinNormSolver::Impl {
  FormSpaceDescriptor source;
  FormSpaceDescriptor target;
  long nrows = 0;
  long ncols = 0;
  std::vector<long> empty_rows;
  struct Comp {
    std::vector<long> cols;
    std::vector<long> rows;
    long rank = 0;
    std::vector<long> pivot_cols;             // local, one per echelon row
    std::vector<std::vector<Rat>> transform;  // all local rows; [rank..) certify consistency
    std::vector<std::vector<Rat>> K;          // kernel vectors, local width
    std::vector<std::vector<Rat>> KtG;        // kernel^T * Gram
    std::vector<std::vector<Rat>> Minv;       // inverse of kernel Gram matrix
  };
  std::vector<Comp> comps;
};

MinNormSolver::MinNormSolver(const OperatorMatrix& op) {
  check_dimension_cap(op.mat.cols());
  check_dimension_cap(op.mat.rows());
  auto impl = std::make_shared<Impl>();
  impl->source = op.source;
  impl->target = op.target;
  impl->nrows = op.mat.rows();
  impl->ncols = op.mat.cols();
  const auto gram = BasisIndex(op.source).fischer_gram_diagonal();

  auto rows = matrix_rows(op.mat);
  Split split = split_columns(impl->ncols, rows);
  impl->empty_rows = split.empty_rows;
  std::vector<long> col_local(impl->ncols, -1);
  for (size_t comp = 0; comp < split.comp_cols.size(); ++comp) {
    Impl::Comp c;
    c.cols = split.comp_cols[comp];
    c.rows = split.comp_rows[comp];
    for (size_t t = 0; t < c.cols.size(); ++t) col_local[c.cols[t]] = static_cast<long>(t);
    auto dense = local_dense_rows(rows, c.rows, c.cols, col_local);
    EchelonForm ech = reduce_rows(static_cast<long>(c.cols.size()), dense, true);
    c.rank = static_cast<long>(ech.pivots.size());
    c.pivot_cols = ech.pivots;
    c.transform = std::move(ech.transform);
    c.K = kernel_from_echelon(ech);
    const long d = static_cast<long>(c.K.size());
    if (d > 0) {
      c.KtG.assign(d, std::vector<Rat>(c.cols.size()));
      for (long j = 0; j < d; ++j)
        for (size_t t = 0; t < c.cols.size(); ++t) c.KtG[j][t] = c.K[j][t] * gram[c.cols[t]];
      std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d));
      for (long j = 0; j < d; ++j)
        for (long l = 0; l < d; ++l) {
          Rat dot = 0;
          for (size_t t = 0; t < c.cols.size(); ++t) dot += c.KtG[j][t] * c.K[l][t];
          M[j][l] = dot;
        }
      EchelonForm inv = reduce_rows(d, M, true);
      if (static_cast<long>(inv.pivots.size()) != d)
        throw InternalError("kernel Gram matrix is singular");
      c.Minv = std::move(inv.transform);
    }
    impl->comps.push_back(std::move(c));
  }
  impl_ = std::move(impl);
}

const FormSpaceDescriptor& MinNormSolver::source() const { return impl_->source; }
const FormSpaceDescriptor& MinNormSolver::target() const { return impl_->target; }

std::optional<std::vector<Rat>> MinNormSolver::solve(const std::vector<Rat>& b) const {
  const Impl& impl = *impl_;
  if (static_cast<long>(b.size()) != impl.nrows)
    throw ShapeMismatch("target length " + std::to_string(b.size()) + " does not match row count " +
                        std::to_string(impl.nrows));
  for (long r : impl.empty_rows)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rat> x(impl.ncols, Rat(0));
  for (const auto& comp : impl.comps) {
    const long nloc = static_cast<long>(comp.rows.size());
    const long wloc = static_cast<long>(comp.cols.size());
    std::vector<Rat> z(nloc, Rat(0));
    for (long i = 0; i < nloc; ++i) {
      for (long j = 0; j < nloc; ++j) {
        const Rat& e = comp.transform[i][j];
        if (e != 0) z[i] += e * b[comp.rows[j]];
      }
    }
    for (long i = comp.rank; i < nloc; ++i)
      if (z[i] != 0) return std::nullopt;
    std::vector<Rat> xloc(wloc, Rat(0));
    for (long t = 0; t < comp.rank; ++t) xloc[comp.pivot_cols[t]] = z[t];
    const long d = static_cast<long>(comp.K.size());
    if (d > 0) {
      std::vector<Rat> w(d, Rat(0));
      for (long j = 0; j < d; ++j)
        for (long t = 0; t < comp.rank; ++t) w[j] += comp.KtG[j][comp.pivot_cols[t]] * z[t];
      std::vector<Rat> coeff(d, Rat(0));
      for (long j = 0; j < d; ++j)
        for (long l = 0; l < d; ++l) coeff[j] += comp.Minv[j][l] * w[l];
      for (long j = 0; j < d; ++j) {
        if (coeff[j] == 0) continue;
        for (long t = 0; t < wloc; ++t) xloc[t] -= coeff[j] * comp.K[j][t];
      }
    }
    for (long t = 0; t < wloc; ++t)
      if (xloc[t] != 0) x[comp.cols[t]] = xloc[t];
  }
  return x;
}

std::optional<std::vector<Rat>> solve(const OperatorMatrix& op, const std::vector<Rat>& target) {
  return MinNormSolver(op).solve(target);
}

}  // namespace gmtforms
