#include "gmtforms/spaces.hpp"

#include <initializer_list>
#include <utility>

#include "gmtforms/errors.hpp"
#include "gmtforms/rational.hpp"

namespace gmtforms {

namespace {

std::string cell_key(const char* tag, std::initializer_list<long> parts) {
  std::string key(tag);
  for (long p : parts) {
    key += ':';
    key += std::to_string(p);
  }
  return key;
}

void check_variables(int m) {
  if (m < 1) throw InvalidDescriptor("at least one variable is required, got m=" + std::to_string(m));
}

bool in_grade_range(int m, int s) { return s >= 0 && s <= m; }

// Image of a single-grade subspace under `times` applications of
// multiplication by the squared radius.
Subspace r2_power_image(Context& ctx, const Subspace& base, int times) {
  FormSpaceDescriptor desc = base.ambient();
  if (desc.grades.size() != 1) throw InternalError("radial shifts expect a single-grade ambient space");
  std::vector<SparseRow> vecs = base.basis();
  for (int step = 0; step < times; ++step) {
    const OperatorMatrix& op = ctx.operators.get(
        cell_key("r2", {desc.m, desc.k, desc.grades[0]}), [&] { return r2_matrix(desc); });
    std::vector<SparseRow> next;
    next.reserve(vecs.size());
    for (const auto& v : vecs)
      next.push_back(dense_to_sparse(op.mat.apply(sparse_to_dense(v, op.mat.cols()))));
    vecs = std::move(next);
    desc = op.target;
  }
  return Subspace::span(desc, vecs);
}

}  // namespace

const OperatorMatrix& dirac_block(Context& ctx, int m, int k, const GradeRange& range) {
  return ctx.operators.get(cell_key("dirac", {m, k, range.r, range.p, range.q}),
                           [&] { return dirac_block_matrix(m, k, range); });
}

const MinNormSolver& dirac_solver(Context& ctx, int m, int k, const GradeRange& range) {
  return ctx.solvers.get(cell_key("dirac", {m, k, range.r, range.p, range.q}),
                         [&] { return MinNormSolver(dirac_block(ctx, m, k, range)); });
}

const Subspace& d_kernel(Context& ctx, int m, int k, int s) {
  return ctx.spaces.get(cell_key("ker_d", {m, k, s}), [&] { return kernel(d_matrix(m, k, s)); });
}

const Subspace& dstar_kernel(Context& ctx, int m, int k, int s) {
  return ctx.spaces.get(cell_key("ker_dstar", {m, k, s}), [&] { return kernel(dstar_matrix(m, k, s)); });
}

const Subspace& ddstar_kernel(Context& ctx, int m, int k, int s) {
  return ctx.spaces.get(cell_key("ker_ddstar", {m, k, s}), [&] { return kernel(ddstar_matrix(m, k, s)); });
}

const Subspace& dstard_kernel(Context& ctx, int m, int k, int s) {
  return ctx.spaces.get(cell_key("ker_dstard", {m, k, s}), [&] { return kernel(dstard_matrix(m, k, s)); });
}

long hodge_dim_formula(long k, int m, int s) {
  check_variables(m);
  if (k < 0 || !in_grade_range(m, s)) return 0;
  if (s == 0 || s == m) return k == 0 ? 1 : 0;
  Int num = binomial(m - 2, s - 1) * binomial(k + m - 2, m - 2) * Int(2 * k + m) * Int(k + m - 1);
  Rat value = Rat(num) / Rat(Int(k + s) * Int(k + m - s));
  if (value.get_den() != 1) throw InternalError("dimension formula did not produce an integer");
  return value.get_num().get_si();
}

long harmonic_scalar_dim(long k, int m) {
  check_variables(m);
  if (k < 0) return 0;
  return Int(binomial(k + m - 1, m - 1) - binomial(k + m - 3, m - 1)).get_si();
}

HodgeLabel highest_weight_label(int m, int k, int s) {
  check_variables(m);
  if (hodge_dim_formula(k, m, s) == 0)
    throw InvalidDescriptor("the zero space has no highest weight label");
  const int n = m / 2;
  HodgeLabel label;
  label.weight.assign(n, 0);
  if (s == 0 || s == m) {
    label.epsilon = s == 0 ? 1 : -1;
    return label;
  }
  const int t = s <= n ? s : m - s;
  label.weight[0] = k + 1;
  for (int i = 1; i < t; ++i) label.weight[i] = 1;
  if (s > n)
    label.epsilon = -1;
  else if (m % 2 == 0 && s == n)
    label.epsilon = 0;
  else
    label.epsilon = 1;
  return label;
}

const Subspace& hodge_space(Context& ctx, int m, int k, int s) {
  check_variables(m);
  return ctx.spaces.get(cell_key("hodge", {m, k, s}), [&]() -> Subspace {
    if (k < 0 || !in_grade_range(m, s)) return Subspace(FormSpaceDescriptor::multi(m, k, {s}));
    return kernel(dirac_block(ctx, m, k, GradeRange{s, 0, 0}));
  });
}

const Subspace& harmonic_kernel(Context& ctx, int m, int k, int s) {
  check_variables(m);
  return ctx.spaces.get(cell_key("ker_delta", {m, k, s}), [&]() -> Subspace {
    if (k < 0 || !in_grade_range(m, s)) return Subspace(FormSpaceDescriptor::multi(m, k, {s}));
    const OperatorMatrix& op = ctx.operators.get(cell_key("laplacian", {m, k, s}),
                                                 [&] { return laplacian_matrix(m, k, s); });
    return kernel(op);
  });
}

const UVWDecomposition& uvw_decomposition(Context& ctx, int m, int k, int s) {
  check_variables(m);
  return ctx.uvw.get(cell_key("uvw", {m, k, s}), [&]() -> UVWDecomposition {
    if (k < 0 || !in_grade_range(m, s)) {
      Subspace zero(FormSpaceDescriptor::multi(m, k, {s}));
      return {zero, zero, zero, zero};
    }
    const Subspace& h = hodge_space(ctx, m, k, s);
    Subspace u = ortho_complement_within(h, intersect(ddstar_kernel(ctx, m, k, s), d_kernel(ctx, m, k, s)));
    Subspace v = ortho_complement_within(h, intersect(dstard_kernel(ctx, m, k, s), dstar_kernel(ctx, m, k, s)));
    Subspace w = ortho_complement_within(subspace_sum(h, subspace_sum(u, v)), harmonic_kernel(ctx, m, k, s));
    return {h, u, v, w};
  });
}

const std::vector<Subspace>& fisher_strata(Context& ctx, int m, int k, int s) {
  check_variables(m);
  return ctx.strata.get(cell_key("fisher", {m, k, s}), [&]() -> std::vector<Subspace> {
    std::vector<Subspace> out;
    if (k < 0 || !in_grade_range(m, s)) return out;
    for (int j = 0; j <= k / 2; ++j)
      out.push_back(r2_power_image(ctx, harmonic_kernel(ctx, m, k - 2 * j, s), j));
    return out;
  });
}

Stratification kernel_stratification(Context& ctx, int m, int k, int s) {
  check_variables(m);
  if (k < 0 || !in_grade_range(m, s)) {
    Stratification empty{Subspace(FormSpaceDescriptor::multi(m, k, {s})), {}, {}, {}, {}, {}};
    return empty;
  }
  Stratification out{hodge_space(ctx, m, k, s), {}, {}, {}, {}, {}};
  const Subspace& kd = d_kernel(ctx, m, k, s);
  const Subspace& kdstar = dstar_kernel(ctx, m, k, s);
  for (int j = 0; j <= k / 2; ++j) {
    const int t = k - 2 * j;
    const UVWDecomposition& parts = uvw_decomposition(ctx, m, t, s);
    out.ru.push_back(r2_power_image(ctx, parts.u, j));
    out.rv.push_back(r2_power_image(ctx, parts.v, j));
    Subspace rh = r2_power_image(ctx, hodge_space(ctx, m, t - 2, s), 1);
    Subspace zt = subspace_sum(rh, parts.w);
    out.z.push_back(r2_power_image(ctx, zt, j));
    out.x.push_back(intersect(out.z[j], kd));
    out.y.push_back(intersect(out.z[j], kdstar));
    if (out.x[j].dim() + out.y[j].dim() != out.z[j].dim() ||
        subspace_sum(out.x[j], out.y[j]) != out.z[j])
      throw InternalError("radial stratum " + std::to_string(j) +
                          " is not the direct sum of its closed and coclosed parts");
  }
  Subspace closed = out.h;
  Subspace coclosed = out.h;
  long closed_dim = out.h.dim();
  long coclosed_dim = out.h.dim();
  for (int j = 0; j <= k / 2; ++j) {
    closed = subspace_sum(closed, subspace_sum(out.ru[j], out.x[j]));
    closed_dim += out.ru[j].dim() + out.x[j].dim();
    coclosed = subspace_sum(coclosed, subspace_sum(out.rv[j], out.y[j]));
    coclosed_dim += out.rv[j].dim() + out.y[j].dim();
  }
  if (closed != kd || closed_dim != kd.dim())
    throw InternalError("reassembly of the closed forms from the strata failed");
  if (coclosed != kdstar || coclosed_dim != kdstar.dim())
    throw InternalError("reassembly of the coclosed forms from the strata failed");
  return out;
}

}  // namespace gmtforms
