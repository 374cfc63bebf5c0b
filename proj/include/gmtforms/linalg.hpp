#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "gmtforms/forms.hpp"
#include "gmtforms/rational.hpp"

namespace gmtforms {

struct OperatorMatrix;

// Sparse index/value row, indices strictly increasing, values nonzero.
using SparseRow = std::vector<std::pair<long, Rat>>;

SparseRow dense_to_sparse(const std::vector<Rat>& v);
std::vector<Rat> sparse_to_dense(const SparseRow& row, long width);

// Plain sparse rational matrix. Row count and column count are fixed at
// construction; entries accumulate and exact zeros are dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(long rows, long cols);

  long rows() const { return nrows_; }
  long cols() const { return ncols_; }
  long nnz() const;
  bool is_zero() const { return nnz() == 0; }

  void add(long r, long c, const Rat& v);
  Rat at(long r, long c) const;
  const std::map<long, Rat>& row(long r) const;

  std::vector<Rat> apply(const std::vector<Rat>& x) const;
  SparseMatrix transpose() const;
  // Row-major (row, col, value) with nonzero values only.
  std::vector<std::tuple<long, long, Rat>> triplets() const;

  friend SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix matrix_sum(const SparseMatrix& a, const SparseMatrix& b);
  bool operator==(const SparseMatrix& other) const = default;

 private:
  long nrows_ = 0, ncols_ = 0;
  std::vector<std::map<long, Rat>> rows_;
};

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix matrix_sum(const SparseMatrix& a, const SparseMatrix& b);

// Ambient-dimension guard. Operations refuse spaces above the cap so a miskeyed
// request fails fast instead of grinding.
long dimension_cap();
void set_dimension_cap(long cap);
void check_dimension_cap(long dim);

// A linear subspace of a form space, held by its canonical basis: the unique
// reduced echelon basis (each vector's leading entry is 1, leading positions
// strictly increase, and a leading position is zero in every other vector).
// Two Subspace values are equal iff they are the same subspace.
class Subspace {
 public:
  explicit Subspace(FormSpaceDescriptor ambient);  // zero subspace

  static Subspace span(FormSpaceDescriptor ambient, const std::vector<SparseRow>& vectors);
  static Subspace full(FormSpaceDescriptor ambient);

  const FormSpaceDescriptor& ambient() const { return ambient_; }
  long ambient_dim() const { return ambient_dim_; }
  long dim() const { return static_cast<long>(basis_.size()); }
  const std::vector<SparseRow>& basis() const { return basis_; }
  std::vector<Rat> basis_vector(long i) const;

  bool operator==(const Subspace& other) const = default;

 private:
  FormSpaceDescriptor ambient_;
  long ambient_dim_ = 0;
  std::vector<SparseRow> basis_;
};

// Raw-matrix forms, for maps whose source is not a form space (for example a
// map defined on a subspace basis).
long matrix_rank(const SparseMatrix& A);
std::vector<SparseRow> null_space_rows(const SparseMatrix& A);

long rank(const OperatorMatrix& op);
Subspace kernel(const OperatorMatrix& op);
Subspace image(const OperatorMatrix& op);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
bool contains(const Subspace& space, const std::vector<Rat>& v);
bool contains(const Subspace& outer, const Subspace& inner);

// Fischer-orthogonal complement of sub inside whole: sub + result = whole,
// result perpendicular to sub, sub must be contained in whole.
Subspace ortho_complement_within(const Subspace& sub, const Subspace& whole);

// Factors an operator once, then produces Fischer-minimal-norm solutions of
// op x = b for many right-hand sides. The minimal-norm solution is orthogonal
// to the kernel, unique, and linear in b.
class MinNormSolver {
 public:
  explicit MinNormSolver(const OperatorMatrix& op);

  const FormSpaceDescriptor& source() const;
  const FormSpaceDescriptor& target() const;

  // Empty when b is not in the image.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

std::optional<std::vector<Rat>> solve(const OperatorMatrix& op, const std::vector<Rat>& target);

}  // namespace gmtforms
