// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmtforms/gmt.hpp"
#include "gmtforms/rational.hpp"
#include "gmtforms/spaces.hpp"
#include "gmtforms/verify.hpp"

using namespace gmtforms;

namespace {

constexpr unsigned long long kSeed = 2026;

bool suite_clean(const std::string& name, int cases = 100) {
  VerifyConfig config;
  config.cases = cases;
  config.seed = kSeed;
  Report report = run_suite(name, config);
  return report.all_passed() && report.skip_count() == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool byte_identical_reports() {
  const char* cli = std::getenv("GMTFORMS_CLI");
  if (!cli) {
    std::cerr << "GMTFORMS_CLI is not set\n";
    return false;
  }
  namespace fs = std::filesystem;
  const std::string a = (fs::temp_directory_path() / "gmtforms_accept_a.json").string();
  const std::string b = (fs::temp_directory_path() / "gmtforms_accept_b.json").string();
  const std::string base = std::string("'") + cli +
                           "' verify --suite all --seed 7 --m-max 3 --k-max 2 --format json --out ";
  if (std::system((base + "'" + a + "'").c_str()) != 0) return false;
  if (std::system((base + "'" + b + "'").c_str()) != 0) return false;
  const std::string text_a = slurp(a);
  const std::string text_b = slurp(b);
  fs::remove(a);
  fs::remove(b);
  return !text_a.empty() && text_a == text_b;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string label;
    bool ok;
  };
  std::vector<Criterion> criteria;

  auto add = [&](int id, const std::string& label, auto&& check) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      std::cerr << "criterion " << id << " raised: " << e.what() << "\n";
    }
    criteria.push_back({id, label, ok});
  };

  add(1, "single-grade kernel dimensions match the closed formula (m 2..6, k 0..4)", [] {
    if (hodge_dim_formula(1, 3, 1) != 5) return false;
    if (hodge_dim_formula(2, 4, 2) != 30) return false;
    if (hodge_dim_formula(0, 4, 2) != Int(binomial(4, 2)).get_si()) return false;
    return suite_clean("HODGE_DIM");
  });

  add(2, "block solution dimensions match the closed formula (m 2..5, k 0..3)", [] {
    if (mt_dim_formula(1, 4, GradeRange{0, 0, 2}) != 24) return false;
    return suite_clean("MT_DIM");
  });

  add(3, "full even block matches the monogenic count (m 2..5, k 0..4)", [] {
    if (c_formula(1, 4) != 24) return false;
    for (int m = 2; m <= 5; ++m)
      if (c_formula(0, m) != (1L << (m - 1))) return false;
    return suite_clean("MONOGENIC_DIM");
  });

  add(4, "Laplacian kernels split into four independent pieces (m 2..5, k 0..4)", [] {
    long expected = hodge_dim_formula(2, 4, 2) + hodge_dim_formula(1, 4, 1) +
                    hodge_dim_formula(1, 4, 3) + hodge_dim_formula(0, 4, 2);
    if (expected != 54) return false;
    return suite_clean("LEMMA6_UVW");
  });

  add(5, "second-order kernel intersections match H+U, H+V, H+U+V (m 2..4, k 0..3)",
      [] { return suite_clean("THM7_SUBSPACES"); });

  add(6, "block map has the predicted kernel and image; lift/split round-trip exactly", [] {
    return suite_clean("THM2_SPLIT") && suite_clean("LIFT_ROUNDTRIP");
  });

  add(7, "primitives solve both defining equations; counterexamples are rejected",
      [] { return suite_clean("POINCARE"); });

  add(8, "radial strata reassemble the first-order kernels; strata fill the whole space", [] {
    Context ctx;
    Stratification strata = kernel_stratification(ctx, 3, 2, 1);
    long closed = strata.h.dim();
    for (const Subspace& part : strata.ru) closed += part.dim();
    for (const Subspace& part : strata.x) closed += part.dim();
    if (closed != 10) return false;
    return suite_clean("LEMMA8_STRATA") && suite_clean("FISHER");
  });

  add(9, "operator identities hold on full bases (m 2..5, k 0..4)",
      [] { return suite_clean("OPERATOR_IDENTITIES"); });

  add(10, "verification reports are byte-identical across runs with a fixed seed",
      [] { return byte_identical_reports(); });

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.label << "\n";
    if (!c.ok) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
