#pragma once

#include <vector>

#include "gmtforms/forms.hpp"
#include "gmtforms/spaces.hpp"

namespace gmtforms {

// A tuple of closed-coclosed forms of homogeneity k-1 at the odd grades
// r+2j+1, j = p..q-1, in that order. Components may be zero.
struct HodgeTuple {
  int m = 1;
  int k = 0;
  GradeRange range;
  std::vector<PolyForm> components;
};

// Checks shapes and that every component is closed and coclosed.
void validate_hodge_tuple(const HodgeTuple& tuple);

// Canonical basis of the solutions of the first-order system on the grade
// block, computed as the kernel of the stacked operator.
const Subspace& mt_space(Context& ctx, int m, int k, const GradeRange& range);

// Closed-form dimension of the solution space.
long mt_dim_formula(long k, int m, const GradeRange& range);

// Closed-form dimension of the full even-grade solution space, which matches
// the monogenic polynomial count 2^{m-1} binom(k+m-2, m-2).
long c_formula(long k, int m);

// Minimal-norm primitive of a closed form: the unique Q with dQ = f, d*Q = 0
// orthogonal to the closed-coclosed space one homogeneity up.
PolyForm poincare_primitive_d(Context& ctx, const PolyForm& f);

// Minimal-norm coprimitive of a coclosed form: d*Q = f, dQ = 0.
PolyForm poincare_primitive_dstar(Context& ctx, const PolyForm& f);

// Minimal-norm solution of the contraction system dP_j = t_j, d*P_j = -t_{j-1}
// gradewise; the tuple boundary terms are taken as zero.
PolyForm lift_hodge_tuple(Context& ctx, const HodgeTuple& tuple);

struct PhiSplit {
  std::vector<PolyForm> kernel_part;  // grades r+2j, j = p..q, closed and coclosed
  HodgeTuple image_part;
};

// Splits a solution of the first-order system into a lifted tuple plus a sum
// of closed-coclosed components, with f = lift(image_part) + sum(kernel_part).
PhiSplit phi_split(Context& ctx, const PolyForm& f, const GradeRange& range);

// Cached block map whose columns are the canonical solution basis.
const OperatorMatrix& phi_operator(Context& ctx, int m, int k, const GradeRange& range);

}  // namespace gmtforms
