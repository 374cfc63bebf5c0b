#include "gmtforms/operators.hpp"

#include <functional>

#include "gmtforms/errors.hpp"

namespace gmtforms {

namespace {

void check_cell(int m, int k, int s) {
  if (m < 1) throw InvalidDescriptor("number of variables must be >= 1, got " + std::to_string(m));
  if (k < 0) throw InvalidDescriptor("homogeneity must be >= 0, got " + std::to_string(k));
  if (s < 0 || s > m)
    throw InvalidDescriptor("grade " + std::to_string(s) + " outside 0.." + std::to_string(m));
}

// Builds the matrix of a termwise action column by column over the canonical
// source basis. Every term the action produces must land inside the target
// space; a stray grade is a construction bug, not a user error.
OperatorMatrix build_termwise(const FormSpaceDescriptor& source, const FormSpaceDescriptor& target,
                              const std::function<PolyForm(const PolyForm&)>& action) {
  BasisIndex src(source);
  BasisIndex tgt(target);
  OperatorMatrix op{source, target, SparseMatrix(tgt.dim(), src.dim())};
  for (long col = 0; col < src.dim(); ++col) {
    PolyForm out = action(src.element(col));
    for (const auto& [key, c] : out.terms()) op.mat.add(tgt.index_of(key.blade, key.exps), col, c);
  }
  return op;
}

}  // namespace

PolyForm apply_d(const PolyForm& f) {
  PolyForm out(f.m(), f.k() - 1);
  for (const auto& [key, c] : f.terms()) {
    for (int i = 1; i <= f.m(); ++i) {
      const int a = key.exps[i - 1];
      if (a == 0) continue;
      auto step = wedge_step(i, key.blade, f.m());
      if (!step) continue;
      MultiIndex e = key.exps;
      --e[i - 1];
      out.add_term(e, step->blade, c * (a * step->sign));
    }
  }
  return out;
}

PolyForm apply_dstar(const PolyForm& f) {
  PolyForm out(f.m(), f.k() - 1);
  for (const auto& [key, c] : f.terms()) {
    for (int i : key.blade) {
      const int a = key.exps[i - 1];
      if (a == 0) continue;
      auto step = contract_step(i, key.blade, f.m());
      MultiIndex e = key.exps;
      --e[i - 1];
      out.add_term(e, step->blade, c * (a * step->sign));
    }
  }
  return out;
}

PolyForm apply_laplacian(const PolyForm& f) {
  PolyForm out(f.m(), f.k() - 2);
  for (const auto& [key, c] : f.terms()) {
    for (int i = 0; i < f.m(); ++i) {
      const int a = key.exps[i];
      if (a < 2) continue;
      MultiIndex e = key.exps;
      e[i] -= 2;
      out.add_term(e, key.blade, c * (a * (a - 1)));
    }
  }
  return out;
}

PolyForm apply_euler_contraction(const PolyForm& f) {
  PolyForm out(f.m(), f.k() + 1);
  for (const auto& [key, c] : f.terms()) {
    for (int i : key.blade) {
      auto step = contract_step(i, key.blade, f.m());
      MultiIndex e = key.exps;
      ++e[i - 1];
      out.add_term(e, step->blade, c * step->sign);
    }
  }
  return out;
}

OperatorMatrix d_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto target = FormSpaceDescriptor::multi(m, k - 1, {s + 1});
  return build_termwise(source, target, apply_d);
}

OperatorMatrix dstar_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto target = FormSpaceDescriptor::multi(m, k - 1, {s - 1});
  return build_termwise(source, target, apply_dstar);
}

OperatorMatrix ddstar_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto down = FormSpaceDescriptor::multi(m, k - 1, {s - 1});
  auto target = FormSpaceDescriptor::multi(m, k - 2, {s});
  return compose(build_termwise(down, target, apply_d), build_termwise(source, down, apply_dstar));
}

OperatorMatrix dstard_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto up = FormSpaceDescriptor::multi(m, k - 1, {s + 1});
  auto target = FormSpaceDescriptor::multi(m, k - 2, {s});
  return compose(build_termwise(up, target, apply_dstar), build_termwise(source, up, apply_d));
}

OperatorMatrix laplacian_matrix(int m, int k, int s) {
  return operator_sum(ddstar_matrix(m, k, s), dstard_matrix(m, k, s));
}

OperatorMatrix star_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto target = FormSpaceDescriptor::single(m, k, m - s);
  return build_termwise(source, target, hodge_star);
}

OperatorMatrix euler_contraction_matrix(int m, int k, int s) {
  check_cell(m, k, s);
  auto source = FormSpaceDescriptor::single(m, k, s);
  auto target = FormSpaceDescriptor::multi(m, k + 1, {s - 1});
  return build_termwise(source, target, apply_euler_contraction);
}

OperatorMatrix r2_matrix(const FormSpaceDescriptor& source) {
  auto target = FormSpaceDescriptor::multi(source.m, source.k + 2, source.grades);
  return build_termwise(source, target, multiply_by_r2);
}

OperatorMatrix dirac_block_matrix(int m, int k, const GradeRange& range) {
  if (k < 0) throw InvalidDescriptor("homogeneity must be >= 0, got " + std::to_string(k));
  auto source = FormSpaceDescriptor::gmt(m, k, range);
  std::vector<int> target_grades;
  for (int g : source.grades) {
    target_grades.push_back(g - 1);
    target_grades.push_back(g + 1);
  }
  auto target = FormSpaceDescriptor::multi(m, k - 1, target_grades);
  return build_termwise(source, target,
                        [](const PolyForm& f) { return apply_d(f) + apply_dstar(f); });
}

OperatorMatrix phi_matrix(int m, int k, const GradeRange& range, const Subspace& mt) {
  if (k < 0) throw InvalidDescriptor("homogeneity must be >= 0, got " + std::to_string(k));
  auto source = FormSpaceDescriptor::gmt(m, k, range);
  if (mt.ambient() != source)
    throw ShapeMismatch("subspace ambient does not match the requested grade block");
  BasisIndex src(source);
  const int top = range.r + 2 * range.q;
  for (long i = 0; i < mt.dim(); ++i) {
    PolyForm f = src.from_vector(mt.basis()[i]);
    PolyForm df = apply_d(f);
    PolyForm dstarf = apply_dstar(f);
    if (!(df + dstarf).is_zero())
      throw NotInMT("basis vector " + std::to_string(i) + " of the given subspace does not solve the system");
  }
  std::vector<int> target_grades;
  for (int j = range.p; j < range.q; ++j) target_grades.push_back(range.r + 2 * j + 1);
  auto target = FormSpaceDescriptor::multi(m, k - 1, target_grades);
  BasisIndex tgt(target);
  OperatorMatrix op{source, target, SparseMatrix(tgt.dim(), mt.dim())};
  for (long col = 0; col < mt.dim(); ++col) {
    PolyForm f = src.from_vector(mt.basis()[col]);
    PolyForm out(m, k - 1);
    for (const auto& g : source.grades)
      if (g < top) out += apply_d(f.grade_component(g));
    for (const auto& [key, c] : out.terms()) op.mat.add(tgt.index_of(key.blade, key.exps), col, c);
  }
  return op;
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.source != b.target) throw ShapeMismatch("operator composition spaces do not match");
  return OperatorMatrix{b.source, a.target, compose(a.mat, b.mat)};
}

OperatorMatrix operator_sum(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.source != b.source || a.target != b.target)
    throw ShapeMismatch("operator sum spaces do not match");
  return OperatorMatrix{a.source, a.target, matrix_sum(a.mat, b.mat)};
}

PolyForm apply(const OperatorMatrix& op, const PolyForm& f) {
  BasisIndex src(op.source);
  BasisIndex tgt(op.target);
  auto x = sparse_to_dense(src.to_vector(f), src.dim());
  auto y = op.mat.apply(x);
  PolyForm out(op.target.m, op.target.k);
  for (long i = 0; i < tgt.dim(); ++i)
    if (y[i] != 0) out.add_term(tgt.exps_at(i), tgt.blade_at(i), y[i]);
  return out;
}

}  // namespace gmtforms
