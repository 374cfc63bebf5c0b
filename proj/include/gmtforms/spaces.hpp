#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gmtforms/forms.hpp"
#include "gmtforms/linalg.hpp"
#include "gmtforms/operators.hpp"

namespace gmtforms {

// Keyed store of immutable computed values. Entries are built once and then
// shared by reference; references stay valid for the lifetime of the store.
template <typename T>
class Memo {
 public:
  const T& get(const std::string& key, const std::function<T()>& build) {
    auto it = map_.find(key);
    if (it == map_.end()) {
      auto value = std::make_shared<const T>(build());
      it = map_.emplace(key, std::move(value)).first;
    }
    return *it->second;
  }

 private:
  std::unordered_map<std::string, std::shared_ptr<const T>> map_;
};

struct UVWDecomposition {
  Subspace h;
  Subspace u;
  Subspace v;
  Subspace w;
};

// Caches for operator matrices, solution spaces, and factored solvers. Not
// synchronized: use one Context per thread.
struct Context {
  Memo<OperatorMatrix> operators;
  Memo<Subspace> spaces;
  Memo<MinNormSolver> solvers;
  Memo<UVWDecomposition> uvw;
  Memo<std::vector<Subspace>> strata;
};

// Cached building blocks shared across modules.
const OperatorMatrix& dirac_block(Context& ctx, int m, int k, const GradeRange& range);
const MinNormSolver& dirac_solver(Context& ctx, int m, int k, const GradeRange& range);
const Subspace& d_kernel(Context& ctx, int m, int k, int s);
const Subspace& dstar_kernel(Context& ctx, int m, int k, int s);
const Subspace& ddstar_kernel(Context& ctx, int m, int k, int s);
const Subspace& dstard_kernel(Context& ctx, int m, int k, int s);

// Closed-form dimension of the space of homogeneous polynomial forms that are
// simultaneously closed and coclosed. Zero for k < 0 or s outside 0..m.
long hodge_dim_formula(long k, int m, int s);

// Dimension of the degree-k harmonic polynomials in m variables.
long harmonic_scalar_dim(long k, int m);

// Highest weight of the closed-coclosed space as an so(m) module, with the
// sign label distinguishing mirror modules for even m.
struct HodgeLabel {
  std::vector<int> weight;
  int epsilon = 1;

  bool operator==(const HodgeLabel& other) const = default;
};

HodgeLabel highest_weight_label(int m, int k, int s);

// Canonical basis of the closed-coclosed forms, computed as the kernel of the
// stacked first-order system. Zero space for k < 0 or s outside 0..m.
const Subspace& hodge_space(Context& ctx, int m, int k, int s);

// Kernel of the componentwise Laplacian.
const Subspace& harmonic_kernel(Context& ctx, int m, int k, int s);

// Splits the harmonic forms into the closed-coclosed part and its three
// canonical complements: u spans the rest of Ker dd* within the closed forms,
// v the rest of Ker d*d within the coclosed forms, w the remainder.
const UVWDecomposition& uvw_decomposition(Context& ctx, int m, int k, int s);

// Strata r^{2j} times the harmonic forms of homogeneity k-2j, j = 0..k/2.
// Their direct sum is the full form space.
const std::vector<Subspace>& fisher_strata(Context& ctx, int m, int k, int s);

// Stratified decompositions of Ker d and Ker d*. For each j = 0..k/2 the
// stratum z[j] splits as x[j] + y[j] with x[j] closed and y[j] coclosed, and
// Ker d = h + sum ru[j] + sum x[j], Ker d* = h + sum rv[j] + sum y[j],
// all sums direct.
struct Stratification {
  Subspace h;
  std::vector<Subspace> ru;
  std::vector<Subspace> rv;
  std::vector<Subspace> z;
  std::vector<Subspace> x;
  std::vector<Subspace> y;
};

// Computes the stratification and checks every defining equality exactly,
// raising InternalError naming the first equality that fails.
Stratification kernel_stratification(Context& ctx, int m, int k, int s);

}  // namespace gmtforms
