#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmtforms/errors.hpp"
#include "gmtforms/gmt.hpp"
#include "gmtforms/operators.hpp"

using namespace gmtforms;

namespace {

PolyForm dx(int m, std::vector<int> blade, Rat c = Rat(1)) {
  PolyForm f(m, 0);
  f.add_term(MultiIndex(m, 0), blade, c);
  return f;
}

PolyForm xdx(int m, int var, std::vector<int> blade, Rat c = Rat(1)) {
  MultiIndex e(m, 0);
  e[var - 1] = 1;
  PolyForm f(m, 1);
  f.add_term(e, blade, c);
  return f;
}

}  // namespace

TEST_CASE("block solution space dimensions") {
  Context ctx;
  for (int k = 0; k <= 3; ++k) {
    CHECK(mt_dim_formula(k, 3, GradeRange{1, 0, 0}) == 2 * k + 3);
    CHECK(mt_space(ctx, 3, k, GradeRange{1, 0, 0}).dim() == 2 * k + 3);
  }
  CHECK(mt_dim_formula(0, 4, GradeRange{0, 0, 2}) == 8);
  CHECK(mt_space(ctx, 4, 0, GradeRange{0, 0, 2}).dim() == 8);
  CHECK(mt_dim_formula(1, 4, GradeRange{0, 0, 2}) == 24);
  CHECK(mt_space(ctx, 4, 1, GradeRange{0, 0, 2}).dim() == 24);
  CHECK(mt_space(ctx, 3, -1, GradeRange{0, 0, 1}).dim() == 0);
  CHECK_THROWS_AS(mt_space(ctx, 2, 0, GradeRange{1, 0, 1}), InvalidDescriptor);
}

TEST_CASE("monogenic count matches the even block") {
  CHECK(c_formula(1, 3) == 8);
  CHECK(c_formula(1, 4) == 24);
  CHECK(c_formula(0, 4) == 8);
  CHECK(c_formula(-1, 4) == 0);
  CHECK(c_formula(0, 1) == 1);
  CHECK(c_formula(2, 1) == 0);
  for (int k = 0; k <= 3; ++k)
    CHECK(c_formula(k, 3) == mt_dim_formula(k, 3, GradeRange{0, 0, 1}));
}

TEST_CASE("tuple validation") {
  HodgeTuple tuple{3, 1, GradeRange{0, 0, 1}, {}};
  CHECK_THROWS_AS(validate_hodge_tuple(tuple), ShapeMismatch);

  tuple.components.push_back(dx(3, {1}));
  validate_hodge_tuple(tuple);

  HodgeTuple wrong_grade{3, 1, GradeRange{0, 0, 1}, {dx(3, {1, 2})}};
  CHECK_THROWS_AS(validate_hodge_tuple(wrong_grade), ShapeMismatch);

  HodgeTuple not_hodge{3, 2, GradeRange{0, 0, 1}, {xdx(3, 1, {1})}};
  CHECK_THROWS_AS(validate_hodge_tuple(not_hodge), ComponentNotHodge);

  HodgeTuple zero_ok{3, 1, GradeRange{0, 0, 1}, {PolyForm(3, 0)}};
  validate_hodge_tuple(zero_ok);
}

TEST_CASE("primitives solve the defining equations with minimal norm") {
  Context ctx;

  PolyForm p1 = poincare_primitive_d(ctx, dx(2, {1}));
  PolyForm x1(2, 1);
  x1.add_term({1, 0}, {}, Rat(1));
  CHECK(p1 == x1);

  PolyForm p2 = poincare_primitive_d(ctx, dx(2, {1, 2}, Rat(2)));
  PolyForm expected2 = xdx(2, 1, {2});
  expected2 -= xdx(2, 2, {1});
  CHECK(p2 == expected2);
  CHECK(apply_d(p2) == dx(2, {1, 2}, Rat(2)));
  CHECK(apply_dstar(p2).is_zero());

  PolyForm one(2, 0);
  one.add_term({0, 0}, {}, Rat(1));
  PolyForm q = poincare_primitive_dstar(ctx, one);
  PolyForm expected_q = xdx(2, 1, {1}, Rat(1, 2));
  expected_q += xdx(2, 2, {2}, Rat(1, 2));
  CHECK(q == expected_q);
  CHECK(apply_dstar(q) == one);
  CHECK(apply_d(q).is_zero());

  CHECK(poincare_primitive_d(ctx, PolyForm(3, 0)).is_zero());
}

TEST_CASE("primitives reject unsuitable inputs") {
  Context ctx;
  CHECK_THROWS_AS(poincare_primitive_d(ctx, xdx(2, 2, {1})), NotClosed);
  CHECK_THROWS_AS(poincare_primitive_dstar(ctx, xdx(2, 1, {1})), NotCoclosed);

  PolyForm scalar(2, 1);
  scalar.add_term({1, 0}, {}, Rat(1));
  CHECK_THROWS_AS(poincare_primitive_d(ctx, scalar), InvalidDescriptor);
  CHECK_THROWS_AS(poincare_primitive_dstar(ctx, xdx(2, 1, {1, 2})), InvalidDescriptor);

  PolyForm mixed = xdx(2, 1, {1});
  PolyForm zero_grade(2, 1);
  zero_grade.add_term({0, 1}, {}, Rat(1));
  mixed += zero_grade;
  CHECK_THROWS_AS(poincare_primitive_d(ctx, mixed), ShapeMismatch);
}

TEST_CASE("lifting a tuple produces the minimal block solution") {
  Context ctx;
  HodgeTuple tuple{3, 1, GradeRange{0, 0, 1}, {dx(3, {1})}};
  PolyForm lifted = lift_hodge_tuple(ctx, tuple);

  PolyForm p0 = lifted.grade_component(0);
  PolyForm p2 = lifted.grade_component(2);
  CHECK(p0 + p2 == lifted);
  CHECK(apply_d(p0) == dx(3, {1}));
  CHECK(apply_dstar(p2) == dx(3, {1}, Rat(-1)));
  CHECK(apply_d(p2).is_zero());

  PolyForm expected_p2 = xdx(3, 2, {1, 2}, Rat(1, 2));
  expected_p2 += xdx(3, 3, {1, 3}, Rat(1, 2));
  CHECK(p2 == expected_p2);

  PolyForm residual = apply_d(lifted);
  residual += apply_dstar(lifted);
  CHECK(residual.is_zero());

  HodgeTuple zero{3, 1, GradeRange{0, 0, 1}, {PolyForm(3, 0)}};
  CHECK(lift_hodge_tuple(ctx, zero).is_zero());
}

TEST_CASE("splitting a block solution") {
  Context ctx;
  PolyForm f(3, 1);
  f.add_term({1, 0, 0}, {}, Rat(1));        // x1
  f.add_term({0, 1, 0}, {1, 2}, Rat(1));    // x2 dx12
  GradeRange range{0, 0, 1};

  PhiSplit split = phi_split(ctx, f, range);
  REQUIRE(split.image_part.components.size() == 1);
  CHECK(split.image_part.components[0] == dx(3, {1}));

  REQUIRE(split.kernel_part.size() == 2);
  CHECK(split.kernel_part[0].is_zero());
  PolyForm expected_kernel = xdx(3, 2, {1, 2}, Rat(1, 2));
  expected_kernel -= xdx(3, 3, {1, 3}, Rat(1, 2));
  CHECK(split.kernel_part[1] == expected_kernel);
  CHECK(apply_d(split.kernel_part[1]).is_zero());
  CHECK(apply_dstar(split.kernel_part[1]).is_zero());

  PolyForm rebuilt = lift_hodge_tuple(ctx, split.image_part);
  for (const PolyForm& part : split.kernel_part) rebuilt += part;
  CHECK(rebuilt == f);
}

TEST_CASE("splitting rejects forms outside the solution space") {
  Context ctx;
  GradeRange range{0, 0, 1};
  CHECK_THROWS_AS(phi_split(ctx, xdx(3, 1, {2}), range), NotInMT);

  PolyForm scalar(3, 1);
  scalar.add_term({1, 0, 0}, {}, Rat(1));
  CHECK_THROWS_AS(phi_split(ctx, scalar, range), NotInMT);
}

TEST_CASE("block map kernel and image dimensions") {
  Context ctx;
  const OperatorMatrix& phi = phi_operator(ctx, 3, 1, GradeRange{0, 0, 1});
  const Subspace& mt = mt_space(ctx, 3, 1, GradeRange{0, 0, 1});
  CHECK(mt.dim() == 8);
  CHECK(matrix_rank(phi.mat) == 3);
  CHECK(mt.dim() - matrix_rank(phi.mat) == 5);
  CHECK(static_cast<long>(null_space_rows(phi.mat).size()) == 5);
}
