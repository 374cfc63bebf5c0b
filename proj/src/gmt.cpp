#include "gmtforms/gmt.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

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

void check_range(int m, const GradeRange& range) {
  if (!range.valid(m))
    throw InvalidDescriptor("grade range (r=" + std::to_string(range.r) + ", p=" + std::to_string(range.p) +
                            ", q=" + std::to_string(range.q) + ") invalid for m=" + std::to_string(m));
}

// Copies the coefficients of a form into the rows of a stacked target vector,
// scaled by the given sign.
void place_form(const BasisIndex& target, const PolyForm& f, int sign, std::vector<Rat>& b) {
  for (const auto& [key, c] : f.terms()) b[target.index_of(key.blade, key.exps)] = sign > 0 ? c : Rat(-c);
}

}  // namespace

void validate_hodge_tuple(const HodgeTuple& tuple) {
  check_variables(tuple.m);
  check_range(tuple.m, tuple.range);
  const int count = tuple.range.q - tuple.range.p;
  if (static_cast<int>(tuple.components.size()) != count)
    throw ShapeMismatch("expected " + std::to_string(count) + " components, got " +
                        std::to_string(tuple.components.size()));
  for (int i = 0; i < count; ++i) {
    const PolyForm& c = tuple.components[i];
    if (c.m() != tuple.m) throw ShapeMismatch("component " + std::to_string(i) + " uses a different variable count");
    if (c.is_zero()) continue;
    const int grade = tuple.range.r + 2 * (tuple.range.p + i) + 1;
    auto sg = c.single_grade();
    if (c.k() != tuple.k - 1 || !sg || *sg != grade)
      throw ShapeMismatch("component " + std::to_string(i) + " must be a grade-" + std::to_string(grade) +
                          " form of homogeneity " + std::to_string(tuple.k - 1));
    if (!apply_d(c).is_zero() || !apply_dstar(c).is_zero())
      throw ComponentNotHodge("component " + std::to_string(i) + " is not closed and coclosed");
  }
}

const Subspace& mt_space(Context& ctx, int m, int k, const GradeRange& range) {
  check_variables(m);
  check_range(m, range);
  return ctx.spaces.get(cell_key("mt", {m, k, range.r, range.p, range.q}), [&]() -> Subspace {
    if (k < 0) return Subspace(FormSpaceDescriptor::gmt(m, k, range));
    return kernel(dirac_block(ctx, m, k, range));
  });
}

long mt_dim_formula(long k, int m, const GradeRange& range) {
  check_variables(m);
  check_range(m, range);
  long total = 0;
  for (int j = range.p; j <= range.q; ++j) total += hodge_dim_formula(k, m, range.r + 2 * j);
  for (int j = range.p; j < range.q; ++j) total += hodge_dim_formula(k - 1, m, range.r + 2 * j + 1);
  return total;
}

long c_formula(long k, int m) {
  check_variables(m);
  if (k < 0) return 0;
  if (m == 1) return k == 0 ? 1 : 0;
  return Int((Int(1) << (m - 1)) * binomial(k + m - 2, m - 2)).get_si();
}

PolyForm poincare_primitive_d(Context& ctx, const PolyForm& f) {
  const int m = f.m();
  if (f.is_zero()) return PolyForm(m, f.k() + 1);
  auto sg = f.single_grade();
  if (!sg) throw ShapeMismatch("a single-grade form is required");
  const int s = *sg;
  if (s < 1) throw InvalidDescriptor("a primitive requires grade at least 1");
  if (!apply_d(f).is_zero()) throw NotClosed("the form is not closed");
  const MinNormSolver& solver = dirac_solver(ctx, m, f.k() + 1, GradeRange{s - 1, 0, 0});
  BasisIndex target(solver.target());
  std::vector<Rat> b(target.dim(), Rat(0));
  place_form(target, f, 1, b);
  auto x = solver.solve(b);
  if (!x) throw InternalError("primitive system inconsistent for a closed form");
  return BasisIndex(solver.source()).from_vector(dense_to_sparse(*x));
}

PolyForm poincare_primitive_dstar(Context& ctx, const PolyForm& f) {
  const int m = f.m();
  if (f.is_zero()) return PolyForm(m, f.k() + 1);
  auto sg = f.single_grade();
  if (!sg) throw ShapeMismatch("a single-grade form is required");
  const int s = *sg;
  if (s > m - 1) throw InvalidDescriptor("a coprimitive requires grade at most m-1");
  if (!apply_dstar(f).is_zero()) throw NotCoclosed("the form is not coclosed");
  const MinNormSolver& solver = dirac_solver(ctx, m, f.k() + 1, GradeRange{s + 1, 0, 0});
  BasisIndex target(solver.target());
  std::vector<Rat> b(target.dim(), Rat(0));
  place_form(target, f, 1, b);
  auto x = solver.solve(b);
  if (!x) throw InternalError("coprimitive system inconsistent for a coclosed form");
  return BasisIndex(solver.source()).from_vector(dense_to_sparse(*x));
}

PolyForm lift_hodge_tuple(Context& ctx, const HodgeTuple& tuple) {
  validate_hodge_tuple(tuple);
  if (tuple.k < 0) throw InvalidDescriptor("homogeneity must be >= 0, got " + std::to_string(tuple.k));
  PolyForm out(tuple.m, tuple.k);
  for (int j = tuple.range.p; j <= tuple.range.q; ++j) {
    const int grade = tuple.range.r + 2 * j;
    bool any = false;
    if (j < tuple.range.q && !tuple.components[j - tuple.range.p].is_zero()) any = true;
    if (j > tuple.range.p && !tuple.components[j - 1 - tuple.range.p].is_zero()) any = true;
    if (!any) continue;
    const MinNormSolver& solver = dirac_solver(ctx, tuple.m, tuple.k, GradeRange{grade, 0, 0});
    BasisIndex target(solver.target());
    std::vector<Rat> b(target.dim(), Rat(0));
    if (j < tuple.range.q) place_form(target, tuple.components[j - tuple.range.p], 1, b);
    if (j > tuple.range.p) place_form(target, tuple.components[j - 1 - tuple.range.p], -1, b);
    auto x = solver.solve(b);
    if (!x) throw InternalError("contraction system inconsistent for a valid tuple");
    out += BasisIndex(solver.source()).from_vector(dense_to_sparse(*x));
  }
  return out;
}

PhiSplit phi_split(Context& ctx, const PolyForm& f, const GradeRange& range) {
  const int m = f.m();
  check_variables(m);
  check_range(m, range);
  auto desc = FormSpaceDescriptor::gmt(m, f.k(), range);
  for (int g : f.grade_set())
    if (std::find(desc.grades.begin(), desc.grades.end(), g) == desc.grades.end())
      throw NotInMT("the form has a grade-" + std::to_string(g) + " component outside the block");
  PolyForm residual = apply_d(f);
  residual += apply_dstar(f);
  if (!residual.is_zero()) throw NotInMT("the form does not solve the first-order system");
  HodgeTuple tuple{m, f.k(), range, {}};
  for (int j = range.p; j < range.q; ++j)
    tuple.components.push_back(apply_d(f.grade_component(range.r + 2 * j)));
  PolyForm rest = f;
  rest -= lift_hodge_tuple(ctx, tuple);
  PhiSplit out{{}, std::move(tuple)};
  for (int j = range.p; j <= range.q; ++j)
    out.kernel_part.push_back(rest.grade_component(range.r + 2 * j));
  return out;
}

const OperatorMatrix& phi_operator(Context& ctx, int m, int k, const GradeRange& range) {
  check_variables(m);
  check_range(m, range);
  return ctx.operators.get(cell_key("phi", {m, k, range.r, range.p, range.q}),
                           [&] { return phi_matrix(m, k, range, mt_space(ctx, m, k, range)); });
}

}  // namespace gmtforms
