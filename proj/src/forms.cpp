#include "gmtforms/forms.hpp"

#include <algorithm>

#include "gmtforms/errors.hpp"

namespace gmtforms {

namespace {

void check_variables(int m) {
  if (m < 1) throw InvalidDescriptor("number of variables must be >= 1, got " + std::to_string(m));
}

void check_blade(const Blade& b, int m) {
  int prev = 0;
  for (int i : b) {
    if (i <= prev || i > m)
      throw InvalidDescriptor("blade entries must be strictly increasing in 1.." + std::to_string(m));
    prev = i;
  }
}

void enumerate_monomials_rec(int pos, int m, int rem, MultiIndex& cur,
                             std::vector<MultiIndex>& out) {
  if (pos == m - 1) {
    cur[pos] = rem;
    out.push_back(cur);
    return;
  }
  // Descending exponent on the earliest variable first gives lex-descending
  // output overall.
  for (int e = rem; e >= 0; --e) {
    cur[pos] = e;
    enumerate_monomials_rec(pos + 1, m, rem - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_monomials(int m, int k) {
  check_variables(m);
  if (k < 0) return {};
  std::vector<MultiIndex> out;
  MultiIndex cur(m, 0);
  enumerate_monomials_rec(0, m, k, cur, out);
  return out;
}

std::vector<Blade> enumerate_blades(int m, int s) {
  check_variables(m);
  if (s < 0 || s > m) return {};
  std::vector<Blade> out;
  Blade cur(s);
  // Standard combinations in lex order.
  for (int i = 0; i < s; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = s - 1;
    while (i >= 0 && cur[i] == m - (s - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < s; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (s == 0) out = {Blade{}};
  return out;
}

std::optional<BladeStep> wedge_step(int i, const Blade& b, int m) {
  check_variables(m);
  if (i < 1 || i > m) throw IndexOutOfRange("wedge index " + std::to_string(i) + " outside 1.." + std::to_string(m));
  check_blade(b, m);
  int below = 0;
  for (int j : b) {
    if (j == i) return std::nullopt;
    if (j < i) ++below;
  }
  BladeStep step;
  step.sign = (below % 2 == 0) ? 1 : -1;
  step.blade = b;
  step.blade.insert(std::lower_bound(step.blade.begin(), step.blade.end(), i), i);
  return step;
}

std::optional<BladeStep> contract_step(int i, const Blade& b, int m) {
  check_variables(m);
  if (i < 1 || i > m) throw IndexOutOfRange("contraction index " + std::to_string(i) + " outside 1.." + std::to_string(m));
  check_blade(b, m);
  int below = 0;
  bool found = false;
  for (int j : b) {
    if (j == i) found = true;
    if (j < i) ++below;
  }
  if (!found) return std::nullopt;
  BladeStep step;
  step.sign = (below % 2 == 0) ? 1 : -1;
  step.blade = b;
  step.blade.erase(std::find(step.blade.begin(), step.blade.end(), i));
  return step;
}

std::vector<int> GradeRange::grades() const {
  std::vector<int> out;
  for (int j = p; j <= q; ++j) out.push_back(r + 2 * j);
  return out;
}

FormSpaceDescriptor FormSpaceDescriptor::single(int m, int k, int s) {
  check_variables(m);
  if (s < 0 || s > m)
    throw InvalidDescriptor("grade " + std::to_string(s) + " outside 0.." + std::to_string(m));
  FormSpaceDescriptor d;
  d.m = m;
  d.k = k;
  d.grades = {s};
  return d;
}

FormSpaceDescriptor FormSpaceDescriptor::gmt(int m, int k, const GradeRange& range) {
  check_variables(m);
  if (!range.valid(m))
    throw InvalidDescriptor("grade range (r=" + std::to_string(range.r) + ", p=" + std::to_string(range.p) +
                            ", q=" + std::to_string(range.q) + ") invalid for m=" + std::to_string(m));
  FormSpaceDescriptor d;
  d.m = m;
  d.k = k;
  d.grades = range.grades();
  return d;
}

FormSpaceDescriptor FormSpaceDescriptor::multi(int m, int k, std::vector<int> grades) {
  check_variables(m);
  std::sort(grades.begin(), grades.end());
  grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
  std::erase_if(grades, [m](int s) { return s < 0 || s > m; });
  FormSpaceDescriptor d;
  d.m = m;
  d.k = k;
  d.grades = std::move(grades);
  return d;
}

long grade_space_dim(int m, int k, int s) {
  check_variables(m);
  if (k < 0 || s < 0 || s > m) return 0;
  return Int(binomial(m, s) * binomial(k + m - 1, m - 1)).get_si();
}

long FormSpaceDescriptor::dim() const {
  long total = 0;
  for (int s : grades) total += grade_space_dim(m, k, s);
  return total;
}

PolyForm::PolyForm(int m, int k) : m_(m), k_(k) { check_variables(m); }

void PolyForm::add_term(const MultiIndex& exps, const Blade& blade, const Rat& coeff) {
  if (static_cast<int>(exps.size()) != m_)
    throw ShapeMismatch("exponent vector has " + std::to_string(exps.size()) + " entries, expected " + std::to_string(m_));
  for (int e : exps)
    if (e < 0) throw InvalidDescriptor("negative exponent in monomial");
  if (degree(exps) != k_)
    throw ShapeMismatch("monomial degree " + std::to_string(degree(exps)) + " does not match homogeneity " + std::to_string(k_));
  check_blade(blade, m_);
  if (coeff == 0) return;
  TermKey key{blade, exps};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::set<int> PolyForm::grade_set() const {
  std::set<int> out;
  for (const auto& [key, c] : terms_) out.insert(static_cast<int>(key.blade.size()));
  return out;
}

std::optional<int> PolyForm::single_grade() const {
  auto g = grade_set();
  if (g.size() == 1) return *g.begin();
  return std::nullopt;
}

PolyForm PolyForm::grade_component(int s) const {
  PolyForm out(m_, k_);
  for (const auto& [key, c] : terms_)
    if (static_cast<int>(key.blade.size()) == s) out.add_term(key.exps, key.blade, c);
  return out;
}

PolyForm& PolyForm::operator+=(const PolyForm& other) {
  if (other.m_ != m_ || (!other.is_zero() && !is_zero() && other.k_ != k_))
    throw ShapeMismatch("cannot add forms over different spaces");
  if (is_zero()) k_ = other.k_;
  for (const auto& [key, c] : other.terms_) add_term(key.exps, key.blade, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& other) {
  if (other.m_ != m_ || (!other.is_zero() && !is_zero() && other.k_ != k_))
    throw ShapeMismatch("cannot subtract forms over different spaces");
  if (is_zero()) k_ = other.k_;
  for (const auto& [key, c] : other.terms_) add_term(key.exps, key.blade, -c);
  return *this;
}

PolyForm& PolyForm::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= c;
  return *this;
}

bool PolyForm::operator==(const PolyForm& other) const {
  if (m_ != other.m_) return false;
  if (is_zero() && other.is_zero()) return true;
  return k_ == other.k_ && terms_ == other.terms_;
}

namespace {

// Sign of the permutation sending (I, I^c) to (1, ..., m): the parity of
// the number of pairs x in I, y in I^c with x > y.
int complement_sign(const Blade& b, int m) {
  std::vector<bool> in_b(m + 1, false);
  for (int i : b) in_b[i] = true;
  long inversions = 0;
  long comp_below = 0;
  for (int i = 1; i <= m; ++i) {
    if (in_b[i])
      inversions += comp_below;
    else
      ++comp_below;
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

PolyForm hodge_star(const PolyForm& f) {
  auto s = f.single_grade();
  if (!f.is_zero() && !s)
    throw ShapeMismatch("hodge star needs a single-grade form");
  PolyForm out(f.m(), f.k());
  for (const auto& [key, c] : f.terms()) {
    Blade comp;
    std::vector<bool> in_b(f.m() + 1, false);
    for (int i : key.blade) in_b[i] = true;
    for (int i = 1; i <= f.m(); ++i)
      if (!in_b[i]) comp.push_back(i);
    int sgn = complement_sign(key.blade, f.m());
    out.add_term(key.exps, comp, sgn * c);
  }
  return out;
}

PolyForm multiply_by_r2(const PolyForm& f) {
  PolyForm out(f.m(), f.k() + 2);
  for (const auto& [key, c] : f.terms()) {
    for (int i = 0; i < f.m(); ++i) {
      MultiIndex e = key.exps;
      e[i] += 2;
      out.add_term(e, key.blade, c);
    }
  }
  return out;
}

namespace {

Rat multi_factorial(const MultiIndex& a) {
  Int f = 1;
  for (int e : a) f *= factorial(e);
  return Rat(f);
}

}  // namespace

Rat fischer_inner(const PolyForm& f, const PolyForm& g) {
  if (f.m() != g.m() || (!f.is_zero() && !g.is_zero() && f.k() != g.k()))
    throw ShapeMismatch("fischer inner product of forms over different spaces");
  // Iterate over the smaller map.
  const PolyForm& a = f.terms().size() <= g.terms().size() ? f : g;
  const PolyForm& b = f.terms().size() <= g.terms().size() ? g : f;
  Rat total = 0;
  for (const auto& [key, c] : a.terms()) {
    auto it = b.terms().find(key);
    if (it == b.terms().end()) continue;
    total += c * it->second * multi_factorial(key.exps);
  }
  return total;
}

BasisIndex::BasisIndex(FormSpaceDescriptor desc) : desc_(std::move(desc)) {
  for (int s : desc_.grades) {
    auto blades = enumerate_blades(desc_.m, s);
    blades_.insert(blades_.end(), blades.begin(), blades.end());
  }
  monomials_ = enumerate_monomials(desc_.m, desc_.k);
  for (long i = 0; i < static_cast<long>(blades_.size()); ++i) blade_rank_[blades_[i]] = i;
  for (long i = 0; i < static_cast<long>(monomials_.size()); ++i) mono_rank_[monomials_[i]] = i;
  dim_ = static_cast<long>(blades_.size()) * static_cast<long>(monomials_.size());
}

const Blade& BasisIndex::blade_at(long idx) const {
  if (idx < 0 || idx >= dim_) throw IndexOutOfRange("basis index " + std::to_string(idx) + " outside 0.." + std::to_string(dim_ - 1));
  return blades_[idx / static_cast<long>(monomials_.size())];
}

const MultiIndex& BasisIndex::exps_at(long idx) const {
  if (idx < 0 || idx >= dim_) throw IndexOutOfRange("basis index " + std::to_string(idx) + " outside 0.." + std::to_string(dim_ - 1));
  return monomials_[idx % static_cast<long>(monomials_.size())];
}

long BasisIndex::index_of(const Blade& blade, const MultiIndex& exps) const {
  auto bit = blade_rank_.find(blade);
  auto mit = mono_rank_.find(exps);
  if (bit == blade_rank_.end()) throw IndexOutOfRange("blade not in this space");
  if (mit == mono_rank_.end()) throw IndexOutOfRange("monomial not in this space");
  return bit->second * static_cast<long>(monomials_.size()) + mit->second;
}

PolyForm BasisIndex::element(long idx) const {
  PolyForm f(desc_.m, desc_.k);
  f.add_term(exps_at(idx), blade_at(idx), 1);
  return f;
}

PolyForm BasisIndex::from_vector(const std::vector<std::pair<long, Rat>>& entries) const {
  PolyForm f(desc_.m, desc_.k);
  for (const auto& [idx, c] : entries) f.add_term(exps_at(idx), blade_at(idx), c);
  return f;
}

std::vector<std::pair<long, Rat>> BasisIndex::to_vector(const PolyForm& f) const {
  if (f.m() != desc_.m) throw ShapeMismatch("form over " + std::to_string(f.m()) + " variables, space over " + std::to_string(desc_.m));
  if (!f.is_zero() && f.k() != desc_.k)
    throw ShapeMismatch("form homogeneity " + std::to_string(f.k()) + ", space homogeneity " + std::to_string(desc_.k));
  std::vector<std::pair<long, Rat>> out;
  out.reserve(f.terms().size());
  for (const auto& [key, c] : f.terms()) out.emplace_back(index_of(key.blade, key.exps), c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Rat> BasisIndex::fischer_gram_diagonal() const {
  std::vector<Rat> out;
  out.reserve(dim_);
  for (long i = 0; i < dim_; ++i) out.push_back(multi_factorial(exps_at(i)));
  return out;
}

}  // namespace gmtforms
