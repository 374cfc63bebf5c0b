#include "gmtforms/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <initializer_list>
#include <random>
#include <thread>
#include <utility>

#include "gmtforms/errors.hpp"
#include "gmtforms/gmt.hpp"
#include "gmtforms/rational.hpp"

namespace gmtforms {

namespace {

// ---------------------------------------------------------------------------
// Deterministic sampling. The engine is seeded per case from the global seed
// and the cell coordinates, so results do not depend on thread scheduling,
// and draws avoid std::uniform_int_distribution to stay platform-stable.

unsigned long long mix_seed(std::initializer_list<unsigned long long> parts) {
  unsigned long long h = 0x9e3779b97f4a7c15ull;
  for (unsigned long long p : parts) {
    h ^= p + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
  }
  return h;
}

class CaseRng {
 public:
  explicit CaseRng(unsigned long long seed) : engine_(seed) {}

  long uniform(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<unsigned long long>(hi - lo + 1));
  }

  Rat coefficient() { return Rat(Int(uniform(-9, 9))) / Rat(Int(uniform(1, 4))); }

 private:
  std::mt19937_64 engine_;
};

PolyForm random_form(const BasisIndex& basis, CaseRng& rng) {
  std::vector<std::pair<long, Rat>> entries;
  for (long i = 0; i < basis.dim(); ++i) {
    Rat c = rng.coefficient();
    if (c != 0) entries.emplace_back(i, c);
  }
  return basis.from_vector(entries);
}

PolyForm random_element(const Subspace& space, const BasisIndex& basis, CaseRng& rng) {
  std::vector<Rat> dense(space.ambient_dim(), Rat(0));
  for (long i = 0; i < space.dim(); ++i) {
    Rat c = rng.coefficient();
    if (c == 0) continue;
    for (const auto& [idx, v] : space.basis()[i]) dense[idx] += c * v;
  }
  return basis.from_vector(dense_to_sparse(dense));
}

// ---------------------------------------------------------------------------
// Row construction.

CheckResult proto_cell(const char* id, int m, int k) {
  CheckResult row;
  row.check_id = id;
  row.m = m;
  row.k = k;
  return row;
}

CheckResult proto_s(const char* id, int m, int k, int s) {
  CheckResult row = proto_cell(id, m, k);
  row.s = s;
  return row;
}

CheckResult proto_range(const char* id, int m, int k, const GradeRange& range) {
  CheckResult row = proto_cell(id, m, k);
  row.r = range.r;
  row.p = range.p;
  row.q = range.q;
  return row;
}

CheckResult int_row(CheckResult proto, std::optional<int> j, long computed, long expected) {
  proto.j = j;
  proto.computed = CheckValue::of_int(computed);
  proto.expected = CheckValue::of_int(expected);
  proto.status = computed == expected ? CheckStatus::Pass : CheckStatus::Fail;
  return proto;
}

CheckResult bool_row(CheckResult proto, std::optional<int> j, bool computed) {
  proto.j = j;
  proto.computed = CheckValue::of_bool(computed);
  proto.expected = CheckValue::of_bool(true);
  proto.status = computed ? CheckStatus::Pass : CheckStatus::Fail;
  return proto;
}

// ---------------------------------------------------------------------------
// Embedding of a single-grade subspace into a multi-grade ambient space.

Subspace embed_subspace(const Subspace& part, const FormSpaceDescriptor& ambient, const BasisIndex& into) {
  BasisIndex from(part.ambient());
  std::vector<SparseRow> rows;
  rows.reserve(part.dim());
  for (const auto& v : part.basis()) {
    SparseRow mapped;
    mapped.reserve(v.size());
    for (const auto& [i, c] : v) mapped.emplace_back(into.index_of(from.blade_at(i), from.exps_at(i)), c);
    std::sort(mapped.begin(), mapped.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(mapped));
  }
  return Subspace::span(ambient, rows);
}

// ---------------------------------------------------------------------------
// Cell tasks.

struct CellTask {
  CheckResult proto;
  std::function<std::vector<CheckResult>(Context&)> run;
};

std::vector<GradeRange> valid_ranges(int m) {
  std::vector<GradeRange> out;
  for (int q = 0; q <= m / 2; ++q)
    for (int p = 0; p <= q; ++p)
      for (int r = 0; r + 2 * q <= m; ++r) out.push_back(GradeRange{r, p, q});
  return out;
}

void add_hodge_dim_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("HODGE_DIM", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context& ctx) -> std::vector<CheckResult> {
                           long ambient = grade_space_dim(m, k, s);
                           long computed = ambient - rank(dirac_block(ctx, m, k, GradeRange{s, 0, 0}));
                           return {int_row(proto, std::nullopt, computed, hodge_dim_formula(k, m, s))};
                         }});
      }
}

void add_mt_dim_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (const GradeRange& range : valid_ranges(m)) {
        CheckResult proto = proto_range("MT_DIM", m, k, range);
        tasks.push_back({proto, [proto, m, k, range](Context& ctx) -> std::vector<CheckResult> {
                           long ambient = FormSpaceDescriptor::gmt(m, k, range).dim();
                           long computed = ambient - rank(dirac_block(ctx, m, k, range));
                           return {int_row(proto, std::nullopt, computed, mt_dim_formula(k, m, range))};
                         }});
      }
}

void add_monogenic_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k) {
      GradeRange range{0, 0, m / 2};
      CheckResult proto = proto_range("MONOGENIC_DIM", m, k, range);
      tasks.push_back({proto, [proto, m, k, range](Context& ctx) -> std::vector<CheckResult> {
                         long ambient = FormSpaceDescriptor::gmt(m, k, range).dim();
                         long computed = ambient - rank(dirac_block(ctx, m, k, range));
                         long expected = c_formula(k, m);
                         return {int_row(proto, 0, computed, expected),
                                 bool_row(proto, 1, mt_dim_formula(k, m, range) == expected)};
                       }});
    }
}

// The fourth piece of the harmonic decomposition vanishes at the edge grades
// s = 0 and s = m even though H itself does not.
long w_piece_dim(int k, int m, int s) {
  if (s < 1 || s > m - 1) return 0;
  return hodge_dim_formula(k, m, s);
}

void add_lemma6_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("LEMMA6_UVW", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context& ctx) -> std::vector<CheckResult> {
                           const UVWDecomposition& parts = uvw_decomposition(ctx, m, k, s);
                           const Subspace& kerdelta = harmonic_kernel(ctx, m, k, s);
                           long sum4 = hodge_dim_formula(k, m, s) + hodge_dim_formula(k - 1, m, s - 1) +
                                       hodge_dim_formula(k - 1, m, s + 1) + w_piece_dim(k - 2, m, s);
                           bool exact = parts.h.dim() + parts.u.dim() + parts.v.dim() + parts.w.dim() ==
                                            kerdelta.dim() &&
                                        subspace_sum(subspace_sum(parts.h, parts.u),
                                                     subspace_sum(parts.v, parts.w)) == kerdelta;
                           long scalar = Int(binomial(m, s) * Int(harmonic_scalar_dim(k, m))).get_si();
                           return {int_row(proto, 0, kerdelta.dim(), sum4),
                                   int_row(proto, 1, parts.h.dim(), hodge_dim_formula(k, m, s)),
                                   int_row(proto, 2, parts.u.dim(), hodge_dim_formula(k - 1, m, s - 1)),
                                   int_row(proto, 3, parts.v.dim(), hodge_dim_formula(k - 1, m, s + 1)),
                                   int_row(proto, 4, parts.w.dim(), w_piece_dim(k - 2, m, s)),
                                   bool_row(proto, 5, exact),
                                   bool_row(proto, 6, sum4 == scalar)};
                         }});
      }
}

void add_thm7_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("THM7_SUBSPACES", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context& ctx) -> std::vector<CheckResult> {
                           const UVWDecomposition& parts = uvw_decomposition(ctx, m, k, s);
                           Subspace hu = subspace_sum(parts.h, parts.u);
                           Subspace hv = subspace_sum(parts.h, parts.v);
                           Subspace huv = subspace_sum(hu, parts.v);
                           bool first = hu == intersect(ddstar_kernel(ctx, m, k, s), d_kernel(ctx, m, k, s));
                           bool second = hv == intersect(dstard_kernel(ctx, m, k, s), dstar_kernel(ctx, m, k, s));
                           bool third =
                               huv == intersect(ddstar_kernel(ctx, m, k, s), dstard_kernel(ctx, m, k, s));
                           return {bool_row(proto, 0, first), bool_row(proto, 1, second),
                                   bool_row(proto, 2, third)};
                         }});
      }
}

void add_lemma8_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("LEMMA8_STRATA", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context& ctx) -> std::vector<CheckResult> {
                           Stratification st = kernel_stratification(ctx, m, k, s);
                           // Each radial stratum is entirely coclosed at s = 0 and
                           // entirely closed at s = m; in between it splits evenly.
                           long closed_expected = hodge_dim_formula(k, m, s);
                           long coclosed_expected = closed_expected;
                           for (int i = 0; i <= k / 2; ++i) {
                             long z = hodge_dim_formula(k - 2 * i - 2, m, s);
                             closed_expected +=
                                 hodge_dim_formula(k - 2 * i - 1, m, s - 1) + (s == 0 ? 0 : z);
                             coclosed_expected +=
                                 hodge_dim_formula(k - 2 * i - 1, m, s + 1) + (s == m ? 0 : z);
                           }
                           std::vector<CheckResult> rows{
                               int_row(proto, 0, d_kernel(ctx, m, k, s).dim(), closed_expected),
                               int_row(proto, 1, dstar_kernel(ctx, m, k, s).dim(), coclosed_expected),
                               bool_row(proto, 2, true), bool_row(proto, 3, true)};
                           for (int i = 0; i < static_cast<int>(st.x.size()); ++i) {
                             long piece = hodge_dim_formula(k - 2 * i - 2, m, s);
                             rows.push_back(int_row(proto, 10 + i, st.x[i].dim(), s == 0 ? 0 : piece));
                             rows.push_back(int_row(proto, 20 + i, st.y[i].dim(), s == m ? 0 : piece));
                           }
                           return rows;
                         }});
      }
}

void add_fisher_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("FISHER", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context& ctx) -> std::vector<CheckResult> {
                           const std::vector<Subspace>& strata = fisher_strata(ctx, m, k, s);
                           auto desc = FormSpaceDescriptor::multi(m, k, {s});
                           long total = 0;
                           Subspace acc(desc);
                           for (const Subspace& piece : strata) {
                             total += piece.dim();
                             acc = subspace_sum(acc, piece);
                           }
                           std::vector<CheckResult> rows{
                               int_row(proto, 0, total, grade_space_dim(m, k, s)),
                               bool_row(proto, 1, acc == Subspace::full(desc) && total == acc.dim())};
                           for (int i = 0; i < static_cast<int>(strata.size()); ++i) {
                             long expected =
                                 Int(binomial(m, s) * Int(harmonic_scalar_dim(k - 2 * i, m))).get_si();
                             rows.push_back(int_row(proto, 10 + i, strata[i].dim(), expected));
                           }
                           return rows;
                         }});
      }
}

void add_thm2_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (const GradeRange& range : valid_ranges(m)) {
        CheckResult proto = proto_range("THM2_SPLIT", m, k, range);
        tasks.push_back({proto, [proto, m, k, range](Context& ctx) -> std::vector<CheckResult> {
                           const Subspace& mt = mt_space(ctx, m, k, range);
                           const OperatorMatrix& phi = phi_operator(ctx, m, k, range);
                           long rk = matrix_rank(phi.mat);
                           long ker_expected = 0;
                           for (int j = range.p; j <= range.q; ++j)
                             ker_expected += hodge_dim_formula(k, m, range.r + 2 * j);
                           long im_expected = 0;
                           for (int j = range.p; j < range.q; ++j)
                             im_expected += hodge_dim_formula(k - 1, m, range.r + 2 * j + 1);

                           BasisIndex source_basis(mt.ambient());
                           std::vector<SparseRow> ker_vecs;
                           for (const auto& coeffs : null_space_rows(phi.mat)) {
                             std::vector<Rat> dense(mt.ambient_dim(), Rat(0));
                             for (const auto& [ci, cv] : coeffs)
                               for (const auto& [bi, bv] : mt.basis()[ci]) dense[bi] += cv * bv;
                             ker_vecs.push_back(dense_to_sparse(dense));
                           }
                           Subspace ker_phi = Subspace::span(mt.ambient(), ker_vecs);
                           Subspace ker_want(mt.ambient());
                           for (int j = range.p; j <= range.q; ++j)
                             ker_want = subspace_sum(
                                 ker_want, embed_subspace(hodge_space(ctx, m, k, range.r + 2 * j),
                                                          mt.ambient(), source_basis));

                           Subspace im_phi = image(phi);
                           BasisIndex target_basis(phi.target);
                           Subspace im_want(phi.target);
                           for (int j = range.p; j < range.q; ++j)
                             im_want = subspace_sum(
                                 im_want, embed_subspace(hodge_space(ctx, m, k - 1, range.r + 2 * j + 1),
                                                         phi.target, target_basis));

                           return {int_row(proto, 0, mt.dim() - rk, ker_expected),
                                   int_row(proto, 1, rk, im_expected), bool_row(proto, 2, ker_phi == ker_want),
                                   bool_row(proto, 3, im_phi == im_want)};
                         }});
      }
}

void add_lift_cells(const SuiteRanges& R, unsigned long long seed, long suite_ord, int cases,
                    std::vector<CellTask>& tasks) {
  long cell_ord = 0;
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (const GradeRange& range : valid_ranges(m)) {
        if (range.p != 0 || range.q < 1) continue;
        CheckResult proto = proto_range("LIFT_ROUNDTRIP", m, k, range);
        const long ord = cell_ord++;
        tasks.push_back({proto, [proto, m, k, range, seed, suite_ord, ord,
                                 cases](Context& ctx) -> std::vector<CheckResult> {
                           std::vector<BasisIndex> component_bases;
                           std::vector<const Subspace*> component_spaces;
                           for (int j = range.p; j < range.q; ++j) {
                             const int grade = range.r + 2 * j + 1;
                             const Subspace& h = hodge_space(ctx, m, k - 1, grade);
                             component_spaces.push_back(&h);
                             component_bases.emplace_back(h.ambient());
                           }
                           long lift_ok = 0;
                           for (int c = 0; c < cases; ++c) {
                             CaseRng rng(mix_seed({seed, static_cast<unsigned long long>(suite_ord),
                                                   static_cast<unsigned long long>(ord), 0ull,
                                                   static_cast<unsigned long long>(c)}));
                             HodgeTuple tuple{m, k, range, {}};
                             for (size_t i = 0; i < component_spaces.size(); ++i)
                               tuple.components.push_back(
                                   random_element(*component_spaces[i], component_bases[i], rng));
                             PolyForm lifted = lift_hodge_tuple(ctx, tuple);
                             PolyForm residual = apply_d(lifted);
                             residual += apply_dstar(lifted);
                             bool ok = residual.is_zero();
                             for (int j = range.p; ok && j < range.q; ++j)
                               ok = apply_d(lifted.grade_component(range.r + 2 * j)) ==
                                    tuple.components[j - range.p];
                             lift_ok += ok ? 1 : 0;
                           }

                           const Subspace& mt = mt_space(ctx, m, k, range);
                           BasisIndex block_basis(mt.ambient());
                           long split_ok = 0;
                           for (int c = 0; c < cases; ++c) {
                             CaseRng rng(mix_seed({seed, static_cast<unsigned long long>(suite_ord),
                                                   static_cast<unsigned long long>(ord), 1ull,
                                                   static_cast<unsigned long long>(c)}));
                             PolyForm f = random_element(mt, block_basis, rng);
                             PhiSplit split = phi_split(ctx, f, range);
                             PolyForm rebuilt = lift_hodge_tuple(ctx, split.image_part);
                             bool ok = true;
                             for (const PolyForm& part : split.kernel_part) {
                               rebuilt += part;
                               ok = ok && apply_d(part).is_zero() && apply_dstar(part).is_zero();
                             }
                             split_ok += (ok && rebuilt == f) ? 1 : 0;
                           }
                           return {int_row(proto, 0, lift_ok, cases), int_row(proto, 1, split_ok, cases)};
                         }});
      }
}

struct PoincareCell {
  int m = 0;
  int k = 0;
  int s = 0;
};

void add_poincare_cells(const SuiteRanges& R, unsigned long long seed, long suite_ord, int cases,
                        std::vector<CellTask>& tasks) {
  for (int category = 0; category < 4; ++category) {
    std::vector<PoincareCell> cells;
    for (int m = R.m_min; m <= R.m_max; ++m)
      for (int k = R.k_min; k <= R.k_max; ++k) {
        const int k_lo = category >= 2 ? 1 : 0;
        if (k < k_lo) continue;
        const int s_lo = category == 1 ? 0 : 1;
        const int s_hi = category == 0 ? m : m - 1;
        for (int s = s_lo; s <= s_hi; ++s) cells.push_back({m, k, s});
      }
    const long n_cells = static_cast<long>(cells.size());
    for (long ord = 0; ord < n_cells; ++ord) {
      const PoincareCell cell = cells[ord];
      CheckResult proto = proto_s("POINCARE", cell.m, cell.k, cell.s);
      proto.j = category;
      tasks.push_back({proto, [proto, cell, category, seed, suite_ord, ord, n_cells,
                               cases](Context& ctx) -> std::vector<CheckResult> {
                         const int m = cell.m;
                         const int k = cell.k;
                         const int s = cell.s;
                         BasisIndex down_basis(FormSpaceDescriptor::multi(m, k + 1, {s - 1}));
                         BasisIndex up_basis(FormSpaceDescriptor::multi(m, k + 1, {s + 1}));
                         BasisIndex own_basis(FormSpaceDescriptor::multi(m, k, {s}));
                         long runs = 0;
                         long ok_count = 0;
                         for (long c = ord; c < cases; c += n_cells) {
                           ++runs;
                           CaseRng rng(mix_seed({seed, static_cast<unsigned long long>(suite_ord),
                                                 static_cast<unsigned long long>(category),
                                                 static_cast<unsigned long long>(c)}));
                           bool ok = false;
                           if (category == 0) {
                             PolyForm f = apply_d(random_form(down_basis, rng));
                             PolyForm primitive = poincare_primitive_d(ctx, f);
                             ok = apply_d(primitive) == f && apply_dstar(primitive).is_zero();
                           } else if (category == 1) {
                             PolyForm f = apply_dstar(random_form(up_basis, rng));
                             PolyForm primitive = poincare_primitive_dstar(ctx, f);
                             ok = apply_dstar(primitive) == f && apply_d(primitive).is_zero();
                           } else if (category == 2) {
                             PolyForm f = apply_d(random_form(down_basis, rng));
                             for (int attempt = 0; attempt < 64; ++attempt) {
                               PolyForm e = random_form(own_basis, rng);
                               if (apply_d(e).is_zero()) continue;
                               f += e;
                               break;
                             }
                             try {
                               poincare_primitive_d(ctx, f);
                             } catch (const NotClosed&) {
                               ok = true;
                             }
                           } else {
                             PolyForm f = apply_dstar(random_form(up_basis, rng));
                             for (int attempt = 0; attempt < 64; ++attempt) {
                               PolyForm e = random_form(own_basis, rng);
                               if (apply_dstar(e).is_zero()) continue;
                               f += e;
                               break;
                             }
                             try {
                               poincare_primitive_dstar(ctx, f);
                             } catch (const NotCoclosed&) {
                               ok = true;
                             }
                           }
                           ok_count += ok ? 1 : 0;
                         }
                         return {int_row(proto, category, ok_count, runs)};
                       }});
    }
  }
}

void add_operator_identity_cells(const SuiteRanges& R, std::vector<CellTask>& tasks) {
  for (int m = R.m_min; m <= R.m_max; ++m)
    for (int k = R.k_min; k <= R.k_max; ++k)
      for (int s = 0; s <= m; ++s) {
        CheckResult proto = proto_s("OPERATOR_IDENTITIES", m, k, s);
        tasks.push_back({proto, [proto, m, k, s](Context&) -> std::vector<CheckResult> {
                           BasisIndex basis(FormSpaceDescriptor::multi(m, k, {s}));
                           bool d_twice = true;
                           bool dstar_twice = true;
                           bool cartan = true;
                           bool star_twice = true;
                           const Rat star_sign = (s * (m - s)) % 2 == 0 ? Rat(1) : Rat(-1);
                           for (long i = 0; i < basis.dim(); ++i) {
                             PolyForm w = basis.element(i);
                             d_twice = d_twice && apply_d(apply_d(w)).is_zero();
                             dstar_twice = dstar_twice && apply_dstar(apply_dstar(w)).is_zero();
                             PolyForm lhs = apply_d(apply_euler_contraction(w));
                             lhs += apply_euler_contraction(apply_d(w));
                             PolyForm rhs = w;
                             rhs *= Rat(k + s);
                             cartan = cartan && lhs == rhs;
                             PolyForm ss = hodge_star(hodge_star(w));
                             PolyForm scaled = w;
                             scaled *= star_sign;
                             star_twice = star_twice && ss == scaled;
                           }
                           return {bool_row(proto, 0, d_twice), bool_row(proto, 1, dstar_twice),
                                   bool_row(proto, 2, cartan),
                                   int_row(proto, 3, hodge_dim_formula(k, m, s),
                                           hodge_dim_formula(k, m, m - s)),
                                   bool_row(proto, 4, star_twice)};
                         }});
      }
}

// ---------------------------------------------------------------------------
// Catalog and runner.

const std::vector<SuiteInfo>& catalog() {
  static const std::vector<SuiteInfo> suites_v = {
      {"HODGE_DIM", "rank-computed dimensions of the closed-coclosed spaces against the closed formula",
       {2, 6, 0, 4}},
      {"MT_DIM", "solution-space dimensions of the grade-block systems against the closed formula",
       {2, 5, 0, 3}},
      {"MONOGENIC_DIM", "full even-grade block dimensions against the monogenic polynomial count",
       {2, 5, 0, 4}},
      {"LEMMA6_UVW", "harmonic forms split into four canonical pieces with matching dimensions",
       {2, 5, 0, 4}},
      {"THM7_SUBSPACES", "exact subspace identities for the mixed second-order kernels", {2, 4, 0, 3}},
      {"LEMMA8_STRATA", "radial stratification of the closed and coclosed kernels", {2, 4, 0, 4}},
      {"FISHER", "radial strata of harmonic forms summing to the full space", {2, 4, 0, 4}},
      {"THM2_SPLIT", "kernel and image of the block map against the component dimensions", {2, 5, 0, 3}},
      {"LIFT_ROUNDTRIP", "random tuple lifts and block splitting reassembly", {2, 5, 1, 3}},
      {"POINCARE", "random primitives and coprimitives with exact defining equations", {2, 4, 0, 3}},
      {"OPERATOR_IDENTITIES", "first-order operator identities verified on full bases", {2, 5, 0, 4}},
  };
  return suites_v;
}

long suite_ordinal(const std::string& name) {
  const auto& all = catalog();
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i].name == name) return static_cast<long>(i);
  return -1;
}

SuiteRanges effective_ranges(const SuiteInfo& info, const VerifyConfig& config) {
  SuiteRanges ranges = info.ranges;
  if (config.m_max) ranges.m_max = *config.m_max;
  if (config.k_max) ranges.k_max = *config.k_max;
  return ranges;
}

void add_suite_cells(const SuiteInfo& info, const VerifyConfig& config, std::vector<CellTask>& tasks) {
  SuiteRanges R = effective_ranges(info, config);
  const long ord = suite_ordinal(info.name);
  if (info.name == "HODGE_DIM") add_hodge_dim_cells(R, tasks);
  else if (info.name == "MT_DIM") add_mt_dim_cells(R, tasks);
  else if (info.name == "MONOGENIC_DIM") add_monogenic_cells(R, tasks);
  else if (info.name == "LEMMA6_UVW") add_lemma6_cells(R, tasks);
  else if (info.name == "THM7_SUBSPACES") add_thm7_cells(R, tasks);
  else if (info.name == "LEMMA8_STRATA") add_lemma8_cells(R, tasks);
  else if (info.name == "FISHER") add_fisher_cells(R, tasks);
  else if (info.name == "THM2_SPLIT") add_thm2_cells(R, tasks);
  else if (info.name == "LIFT_ROUNDTRIP") add_lift_cells(R, config.seed, ord, config.cases, tasks);
  else if (info.name == "POINCARE") add_poincare_cells(R, config.seed, ord, config.cases, tasks);
  else if (info.name == "OPERATOR_IDENTITIES") add_operator_identity_cells(R, tasks);
  else throw InvalidDescriptor("unknown suite " + info.name);
}

std::vector<CheckResult> execute(const std::vector<CellTask>& tasks, int threads) {
  std::vector<std::vector<CheckResult>> buckets(tasks.size());
  if (!tasks.empty()) {
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    n = std::min<long>(n, static_cast<long>(tasks.size()));
    std::atomic<size_t> next{0};
    auto worker = [&] {
      Context ctx;
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        try {
          buckets[i] = tasks[i].run(ctx);
        } catch (const CapExceeded&) {
          CheckResult row = tasks[i].proto;
          row.status = CheckStatus::Skip;
          buckets[i] = {row};
        } catch (const Error&) {
          CheckResult row = tasks[i].proto;
          row.computed = CheckValue::of_bool(false);
          row.expected = CheckValue::of_bool(true);
          row.status = CheckStatus::Fail;
          buckets[i] = {row};
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<CheckResult> rows;
  for (auto& bucket : buckets) rows.insert(rows.end(), bucket.begin(), bucket.end());
  return rows;
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    default:
      return "skip";
  }
}

std::string CheckValue::to_string() const {
  switch (kind) {
    case Kind::Integer:
      return std::to_string(integer);
    case Kind::Boolean:
      return boolean ? "true" : "false";
    default:
      return "";
  }
}

long Report::pass_count() const {
  return std::count_if(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.status == CheckStatus::Pass; });
}

long Report::fail_count() const {
  return std::count_if(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

long Report::skip_count() const {
  return std::count_if(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.status == CheckStatus::Skip; });
}

const std::vector<SuiteInfo>& suites() { return catalog(); }

std::optional<std::string> resolve_suite_name(const std::string& raw) {
  std::string lowered;
  lowered.reserve(raw.size());
  for (char ch : raw) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  for (const SuiteInfo& info : catalog()) {
    std::string canon;
    for (char ch : info.name) canon.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lowered == canon) return info.name;
  }
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"hodge", "HODGE_DIM"},          {"mt", "MT_DIM"},
      {"monogenic", "MONOGENIC_DIM"},  {"lemma6", "LEMMA6_UVW"},
      {"uvw", "LEMMA6_UVW"},           {"thm7", "THM7_SUBSPACES"},
      {"subspaces", "THM7_SUBSPACES"}, {"lemma8", "LEMMA8_STRATA"},
      {"strata", "LEMMA8_STRATA"},     {"thm2", "THM2_SPLIT"},
      {"split", "THM2_SPLIT"},         {"lift", "LIFT_ROUNDTRIP"},
      {"roundtrip", "LIFT_ROUNDTRIP"}, {"primitives", "POINCARE"},
      {"ops", "OPERATOR_IDENTITIES"},  {"operators", "OPERATOR_IDENTITIES"},
      {"identities", "OPERATOR_IDENTITIES"},
  };
  for (const auto& [alias, canon] : aliases)
    if (lowered == alias) return canon;
  return std::nullopt;
}

Report run_suites(const VerifyConfig& config) {
  Report report;
  report.config = config;
  report.dimension_cap = dimension_cap();
  std::vector<std::string> names;
  if (config.suites.empty()) {
    for (const SuiteInfo& info : catalog()) names.push_back(info.name);
  } else {
    for (const std::string& raw : config.suites) {
      auto resolved = resolve_suite_name(raw);
      if (!resolved) throw InvalidDescriptor("unknown suite " + raw);
      names.push_back(*resolved);
    }
  }
  report.config.suites = names;
  std::vector<CellTask> tasks;
  for (const std::string& name : names)
    for (const SuiteInfo& info : catalog())
      if (info.name == name) add_suite_cells(info, config, tasks);
  report.results = execute(tasks, config.threads);
  return report;
}

Report run_suite(const std::string& name, const VerifyConfig& config) {
  VerifyConfig one = config;
  auto resolved = resolve_suite_name(name);
  if (!resolved) throw InvalidDescriptor("unknown suite " + name);
  one.suites = {*resolved};
  return run_suites(one);
}

}  // namespace gmtforms
