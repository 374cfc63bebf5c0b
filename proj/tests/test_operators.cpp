#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmtforms/errors.hpp"
#include "gmtforms/operators.hpp"

using namespace gmtforms;

namespace {

PolyForm form(int m, int k) { return PolyForm(m, k); }

bool equal_up_to_global_sign(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  auto ta = a.triplets();
  auto tb = b.triplets();
  if (ta.size() != tb.size()) return false;
  if (ta.empty()) return true;
  const Rat sign = std::get<2>(ta[0]) / std::get<2>(tb[0]);
  if (sign != 1 && sign != -1) return false;
  for (size_t i = 0; i < ta.size(); ++i) {
    if (std::get<0>(ta[i]) != std::get<0>(tb[i])) return false;
    if (std::get<1>(ta[i]) != std::get<1>(tb[i])) return false;
    if (std::get<2>(ta[i]) != sign * std::get<2>(tb[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exterior derivative acts termwise") {
  PolyForm f = form(3, 2);
  f.add_term({1, 1, 0}, {3}, Rat(1));  // x1 x2 dx3
  PolyForm df = apply_d(f);
  CHECK(df.k() == 1);
  REQUIRE(df.terms().size() == 2);
  CHECK(df.terms().at(TermKey{{1, 3}, {0, 1, 0}}) == Rat(1));
  CHECK(df.terms().at(TermKey{{2, 3}, {1, 0, 0}}) == Rat(1));

  CHECK(apply_d(apply_d(f)).is_zero());

  PolyForm constant = form(3, 0);
  constant.add_term({0, 0, 0}, {1}, Rat(5));
  CHECK(apply_d(constant).is_zero());
}

TEST_CASE("codifferential contracts with the sign of the slot") {
  PolyForm f = form(2, 2);
  f.add_term({1, 1}, {1, 2}, Rat(1));  // x1 x2 dx12
  PolyForm g = apply_dstar(f);
  REQUIRE(g.terms().size() == 2);
  CHECK(g.terms().at(TermKey{{2}, {0, 1}}) == Rat(1));    // x2 dx2
  CHECK(g.terms().at(TermKey{{1}, {1, 0}}) == Rat(-1));   // -x1 dx1

  CHECK(apply_dstar(apply_dstar(f)).is_zero());
  PolyForm zero_grade = form(2, 3);
  zero_grade.add_term({2, 1}, {}, Rat(1));
  CHECK(apply_dstar(zero_grade).is_zero());
}

TEST_CASE("componentwise laplacian") {
  PolyForm f = form(2, 2);
  f.add_term({2, 0}, {1}, Rat(1));
  PolyForm lf = apply_laplacian(f);
  REQUIRE(lf.terms().size() == 1);
  CHECK(lf.terms().at(TermKey{{1}, {0, 0}}) == Rat(2));

  PolyForm h = form(2, 2);
  h.add_term({2, 0}, {}, Rat(1));
  h.add_term({0, 2}, {}, Rat(-1));
  CHECK(apply_laplacian(h).is_zero());
}

TEST_CASE("euler contraction raises degree and lowers grade") {
  PolyForm f = form(2, 0);
  f.add_term({0, 0}, {1}, Rat(1));  // dx1
  PolyForm g = apply_euler_contraction(f);
  REQUIRE(g.terms().size() == 1);
  CHECK(g.terms().at(TermKey{{}, {1, 0}}) == Rat(1));  // x1
}

TEST_CASE("cartan identity on a full basis") {
  for (int s = 0; s <= 3; ++s) {
    BasisIndex basis(FormSpaceDescriptor::multi(3, 2, {s}));
    for (long i = 0; i < basis.dim(); ++i) {
      PolyForm w = basis.element(i);
      PolyForm lhs = apply_d(apply_euler_contraction(w));
      lhs += apply_euler_contraction(apply_d(w));
      PolyForm rhs = w;
      rhs *= Rat(2 + s);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("operator matrices agree with the termwise actions") {
  OperatorMatrix d = d_matrix(3, 2, 1);
  BasisIndex basis(d.source);
  for (long i = 0; i < basis.dim(); ++i) {
    PolyForm w = basis.element(i);
    CHECK(apply(d, w) == apply_d(w));
  }

  OperatorMatrix lap = laplacian_matrix(3, 2, 1);
  for (long i = 0; i < basis.dim(); ++i) {
    PolyForm w = basis.element(i);
    CHECK(apply(lap, w) == apply_laplacian(w));
  }
}

TEST_CASE("codifferential matrix on degree one 1-forms") {
  OperatorMatrix op = dstar_matrix(3, 1, 1);
  CHECK(op.mat.rows() == 1);
  CHECK(op.mat.cols() == 9);
  CHECK(rank(op) == 1);
  CHECK(kernel(op).dim() == 8);
}

TEST_CASE("star conjugation of the derivative is the codifferential up to sign") {
  for (auto [m, k, s] : {std::tuple<int, int, int>{3, 2, 1}, {2, 1, 1}, {3, 1, 2}, {4, 2, 2}}) {
    OperatorMatrix first = star_matrix(m, k, s);
    OperatorMatrix second = d_matrix(m, k, m - s);
    OperatorMatrix third = star_matrix(m, k - 1, m - s + 1);
    OperatorMatrix conj = compose(third, compose(second, first));
    OperatorMatrix dstar = dstar_matrix(m, k, s);
    CHECK(conj.target == dstar.target);
    CHECK(equal_up_to_global_sign(conj.mat, dstar.mat));
  }
}

TEST_CASE("squared radius multiplication matrix") {
  OperatorMatrix op = r2_matrix(FormSpaceDescriptor::multi(2, 0, {0}));
  CHECK(op.target.k == 2);
  PolyForm one = form(2, 0);
  one.add_term({0, 0}, {}, Rat(1));
  CHECK(apply(op, one) == multiply_by_r2(one));
}

TEST_CASE("block system operator stacks both derivatives") {
  OperatorMatrix op = dirac_block_matrix(3, 1, GradeRange{1, 0, 1});
  CHECK(op.source.grades == std::vector<int>{1, 3});
  CHECK(op.target.grades == std::vector<int>{0, 2});
  CHECK(op.target.k == 0);

  BasisIndex basis(op.source);
  for (long i = 0; i < basis.dim(); ++i) {
    PolyForm w = basis.element(i);
    PolyForm expected = apply_d(w);
    expected += apply_dstar(w);
    CHECK(apply(op, w) == expected);
  }

  CHECK_THROWS_AS(dirac_block_matrix(3, -1, GradeRange{1, 0, 1}), InvalidDescriptor);
  CHECK_THROWS_AS(dirac_block_matrix(2, 1, GradeRange{1, 0, 1}), InvalidDescriptor);
}

TEST_CASE("block map construction validates its inputs") {
  auto source = FormSpaceDescriptor::gmt(3, 1, GradeRange{1, 0, 1});
  Subspace not_solutions = Subspace::full(source);
  CHECK_THROWS_AS(phi_matrix(3, 1, GradeRange{1, 0, 1}, not_solutions), NotInMT);

  Subspace wrong_ambient = Subspace::full(FormSpaceDescriptor::single(3, 1, 1));
  CHECK_THROWS_AS(phi_matrix(3, 1, GradeRange{1, 0, 1}, wrong_ambient), ShapeMismatch);
}

TEST_CASE("operator composition and sums validate spaces") {
  OperatorMatrix d1 = d_matrix(3, 2, 1);
  OperatorMatrix d0 = d_matrix(3, 1, 2);
  OperatorMatrix dd = compose(d0, d1);
  CHECK(dd.mat.is_zero());
  CHECK_THROWS_AS(compose(d1, d0), ShapeMismatch);
  CHECK_THROWS_AS(operator_sum(d1, d0), ShapeMismatch);
}

TEST_CASE("second order factors compose to the laplacian") {
  OperatorMatrix a = ddstar_matrix(3, 2, 1);
  OperatorMatrix b = dstard_matrix(3, 2, 1);
  OperatorMatrix lap = laplacian_matrix(3, 2, 1);
  CHECK(operator_sum(a, b) == lap);
  CHECK(a.source == lap.source);
  CHECK(a.target == lap.target);
}

TEST_CASE("matrix construction rejects invalid cells") {
  CHECK_THROWS_AS(d_matrix(3, -1, 1), InvalidDescriptor);
  CHECK_THROWS_AS(d_matrix(3, 1, 4), InvalidDescriptor);
  CHECK_THROWS_AS(star_matrix(0, 1, 0), InvalidDescriptor);
}
