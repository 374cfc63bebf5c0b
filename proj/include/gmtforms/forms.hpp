#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gmtforms/rational.hpp"

namespace gmtforms {

// Exponent vector of a monomial x^alpha; length m, entries >= 0.
using MultiIndex = std::vector<int>;

// Index set of a basis s-vector dx_{i1} ^ ... ^ dx_{is}; strictly increasing,
// entries in 1..m. The empty blade is the 0-form unit.
using Blade = std::vector<int>;

inline int degree(const MultiIndex& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

// All degree-k exponent vectors in m variables, lexicographically descending.
// C(k+m-1, m-1) entries; empty when k < 0.
std::vector<MultiIndex> enumerate_monomials(int m, int k);

// All grade-s blades over 1..m in lexicographic order; empty when s is out of
// [0, m].
std::vector<Blade> enumerate_blades(int m, int s);

struct BladeStep {
  int sign;  // +1 or -1
  Blade blade;
};

// dx_i ^ dx_b. Empty when i already occurs; otherwise the sign is
// (-1)^{#{j in b : j < i}}.
std::optional<BladeStep> wedge_step(int i, const Blade& b, int m);

// Interior product with e_i. Empty when i does not occur; same sign rule.
std::optional<BladeStep> contract_step(int i, const Blade& b, int m);

// dim of the grade-s homogeneity-k piece: C(m,s) * C(k+m-1, m-1); zero
// outside 0 <= s <= m or for k < 0.
long grade_space_dim(int m, int k, int s);

// A range of grades r+2p, r+2p+2, ..., r+2q. Valid when p <= q and
// r+2q <= m.
struct GradeRange {
  int r = 0, p = 0, q = 0;
  bool valid(int m) const { return r >= 0 && p >= 0 && p <= q && r + 2 * q <= m; }
  std::vector<int> grades() const;
  auto operator<=>(const GradeRange&) const = default;
};

// Names a coefficient-homogeneity-k form space over a set of grades. The
// grade list is sorted, duplicate-free, and within [0, m]; single-grade
// spaces and GMT block spaces are both instances.
struct FormSpaceDescriptor {
  int m = 1;
  int k = 0;
  std::vector<int> grades;

  static FormSpaceDescriptor single(int m, int k, int s);
  static FormSpaceDescriptor gmt(int m, int k, const GradeRange& range);
  // A multi-grade space; out-of-range grades are dropped, so the vacuous
  // pieces of the block operators vanish silently.
  static FormSpaceDescriptor multi(int m, int k, std::vector<int> grades);

  long dim() const;  // 0 when k < 0 or no grades survive
  bool single_grade() const { return grades.size() == 1; }
  auto operator<=>(const FormSpaceDescriptor&) const = default;
};

// Canonical term order: ascending grade, blades lexicographic within a
// grade, exponent vectors lexicographically descending within a blade.
struct TermKey {
  Blade blade;
  MultiIndex exps;
  bool operator==(const TermKey&) const = default;
};

struct TermLess {
  bool operator()(const TermKey& a, const TermKey& b) const {
    if (a.blade.size() != b.blade.size()) return a.blade.size() < b.blade.size();
    if (a.blade != b.blade) return a.blade < b.blade;
    return a.exps > b.exps;  // descending
  }
};

// A homogeneous polynomial differential form: finitely many terms
// coeff * x^alpha dx_I with deg(alpha) = k. Zero coefficients are never
// stored; the zero form has an empty term map (and may carry a negative
// nominal homogeneity, e.g. d of a constant).
class PolyForm {
 public:
  PolyForm(int m, int k);

  int m() const { return m_; }
  int k() const { return k_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<TermKey, Rat, TermLess>& terms() const { return terms_; }

  // Accumulates; validates the blade and the exponent degree; drops zeros.
  void add_term(const MultiIndex& exps, const Blade& blade, const Rat& coeff);

  std::set<int> grade_set() const;
  // The grade when exactly one is present.
  std::optional<int> single_grade() const;
  // Terms of one grade only, as a form of the same homogeneity.
  PolyForm grade_component(int s) const;

  PolyForm& operator+=(const PolyForm& other);
  PolyForm& operator-=(const PolyForm& other);
  PolyForm& operator*=(const Rat& c);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const Rat& c, PolyForm f) { return f *= c; }
  bool operator==(const PolyForm& other) const;

 private:
  int m_;
  int k_;
  std::map<TermKey, Rat, TermLess> terms_;
};

// Single-grade forms only. Blade I goes to sign(I, I^c) * I^c; coefficients
// are untouched. star(star(f)) = (-1)^{s(m-s)} f.
PolyForm hodge_star(const PolyForm& f);

// (x_1^2 + ... + x_m^2) * f; homogeneity k+2, grades unchanged.
PolyForm multiply_by_r2(const PolyForm& f);

// Fischer inner product: <x^a dx_I, x^b dx_J> = delta_ab delta_IJ a!.
Rat fischer_inner(const PolyForm& f, const PolyForm& g);

// Enumerated canonical basis of a form space: blade-major (grades ascending,
// blades lexicographic), monomials lexicographically descending inside each
// blade. Freezes matrix layouts and the JSON formats.
class BasisIndex {
 public:
  explicit BasisIndex(FormSpaceDescriptor desc);

  const FormSpaceDescriptor& descriptor() const { return desc_; }
  long dim() const { return dim_; }

  const Blade& blade_at(long idx) const;
  const MultiIndex& exps_at(long idx) const;
  long index_of(const Blade& blade, const MultiIndex& exps) const;

  PolyForm element(long idx) const;  // the basis form itself
  PolyForm from_vector(const std::vector<std::pair<long, Rat>>& entries) const;
  std::vector<std::pair<long, Rat>> to_vector(const PolyForm& f) const;

  // Fischer norms of the basis elements (diagonal Gram matrix entries).
  std::vector<Rat> fischer_gram_diagonal() const;

 private:
  FormSpaceDescriptor desc_;
  long dim_ = 0;
  std::vector<Blade> blades_;          // all grades, canonical order
  std::vector<MultiIndex> monomials_;  // lex descending
  std::map<Blade, long> blade_rank_;
  std::map<MultiIndex, long, std::greater<MultiIndex>> mono_rank_;
};

}  // namespace gmtforms
