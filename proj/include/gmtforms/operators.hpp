#pragma once

#include "gmtforms/forms.hpp"
#include "gmtforms/linalg.hpp"

namespace gmtforms {

// An exact linear map between form spaces in their canonical bases. Columns
// index the source basis, rows the target basis.
struct OperatorMatrix {
  FormSpaceDescriptor source;
  FormSpaceDescriptor target;
  SparseMatrix mat;

  bool operator==(const OperatorMatrix& other) const = default;
};

// Termwise actions on forms; all accept multi-grade input and act gradewise.
PolyForm apply_d(const PolyForm& f);                  // homogeneity k-1, grades +1
PolyForm apply_dstar(const PolyForm& f);              // homogeneity k-1, grades -1
PolyForm apply_laplacian(const PolyForm& f);          // scalar Laplacian per blade
PolyForm apply_euler_contraction(const PolyForm& f);  // homogeneity k+1, grades -1

OperatorMatrix d_matrix(int m, int k, int s);
OperatorMatrix dstar_matrix(int m, int k, int s);
OperatorMatrix ddstar_matrix(int m, int k, int s);
OperatorMatrix dstard_matrix(int m, int k, int s);
OperatorMatrix laplacian_matrix(int m, int k, int s);
OperatorMatrix star_matrix(int m, int k, int s);
OperatorMatrix euler_contraction_matrix(int m, int k, int s);
OperatorMatrix r2_matrix(const FormSpaceDescriptor& source);

// The restricted first-order system on a grade block: f goes to df + d*f,
// target grades r+2p-1, r+2p+1, ..., r+2q+1 (out-of-range grades dropped).
OperatorMatrix dirac_block_matrix(int m, int k, const GradeRange& range);

// The block map of the splitting theorem: columns indexed by the given basis
// of the solution space, action is d on all components except the top grade,
// target grades r+2p+1, ..., r+2q-1.
OperatorMatrix phi_matrix(int m, int k, const GradeRange& range, const Subspace& mt);

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator_sum(const OperatorMatrix& a, const OperatorMatrix& b);

PolyForm apply(const OperatorMatrix& op, const PolyForm& f);

}  // namespace gmtforms
