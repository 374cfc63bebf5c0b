#include "gmtforms/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gmtforms/errors.hpp"
#include "gmtforms/gmt.hpp"
#include "gmtforms/json_io.hpp"
#include "gmtforms/spaces.hpp"
#include "gmtforms/verify.hpp"

namespace gmtforms {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + out_path);
  file << text;
}

int usage_error(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return 2;
}

bool parse_long(const char* text, long& value) {
  char* end = nullptr;
  value = std::strtol(text, &end, 10);
  return end != text && *end == '\0';
}

struct DimsArgs {
  int m = 0;
  int k = 0;
  int s = 0;
  int r = 0;
  int p = 0;
  int q = 0;
  bool both = false;
  CLI::Option* opt_s = nullptr;
  CLI::Option* opt_r = nullptr;
  CLI::Option* opt_p = nullptr;
  CLI::Option* opt_q = nullptr;
};

int cmd_dims(const DimsArgs& a, std::ostream& out, std::ostream& err) {
  const bool has_s = a.opt_s->count() > 0;
  const int range_parts = (a.opt_r->count() > 0) + (a.opt_p->count() > 0) + (a.opt_q->count() > 0);
  if (has_s && range_parts > 0) return usage_error(err, "--s cannot be combined with --r/--p/--q");
  if (range_parts != 0 && range_parts != 3)
    return usage_error(err, "--r, --p and --q must be given together");

  long formula = 0;
  long computed = 0;
  Context ctx;
  if (has_s) {
    auto desc = FormSpaceDescriptor::single(a.m, a.k, a.s);
    formula = hodge_dim_formula(a.k, a.m, a.s);
    if (a.both)
      computed = a.k < 0 ? 0 : desc.dim() - rank(dirac_block(ctx, a.m, a.k, GradeRange{a.s, 0, 0}));
  } else if (range_parts == 3) {
    GradeRange range{a.r, a.p, a.q};
    auto desc = FormSpaceDescriptor::gmt(a.m, a.k, range);
    formula = mt_dim_formula(a.k, a.m, range);
    if (a.both) computed = a.k < 0 ? 0 : desc.dim() - rank(dirac_block(ctx, a.m, a.k, range));
  } else {
    GradeRange range{0, 0, a.m / 2};
    auto desc = FormSpaceDescriptor::gmt(a.m, a.k, range);
    formula = c_formula(a.k, a.m);
    if (a.both) computed = a.k < 0 ? 0 : desc.dim() - rank(dirac_block(ctx, a.m, a.k, range));
  }
  if (!a.both) {
    out << formula << "\n";
    return 0;
  }
  const bool match = formula == computed;
  out << "formula " << formula << "\n";
  out << "rank " << computed << "\n";
  out << "match " << (match ? "true" : "false") << "\n";
  return match ? 0 : 1;
}

struct BasisArgs {
  std::string space;
  int m = 0;
  int k = 0;
  int s = 0;
  int r = 0;
  int p = 0;
  int q = 0;
  std::string out_path;
  CLI::Option* opt_s = nullptr;
  CLI::Option* opt_r = nullptr;
  CLI::Option* opt_p = nullptr;
  CLI::Option* opt_q = nullptr;
};

int cmd_basis(const BasisArgs& a, std::ostream& out, std::ostream& err) {
  const bool wants_range = a.space == "mt";
  const bool has_s = a.opt_s->count() > 0;
  const int range_parts = (a.opt_r->count() > 0) + (a.opt_p->count() > 0) + (a.opt_q->count() > 0);
  if (wants_range && range_parts != 3)
    return usage_error(err, "--space mt requires --r, --p and --q");
  if (!wants_range && !has_s) return usage_error(err, "--space " + a.space + " requires --s");

  Context ctx;
  const Subspace* sub = nullptr;
  Subspace local{FormSpaceDescriptor::multi(a.m, a.k, {})};
  if (a.space == "mt") {
    sub = &mt_space(ctx, a.m, a.k, GradeRange{a.r, a.p, a.q});
  } else if (a.space == "hodge") {
    sub = &hodge_space(ctx, a.m, a.k, a.s);
  } else if (a.space == "kerdelta") {
    sub = &harmonic_kernel(ctx, a.m, a.k, a.s);
  } else {
    FormSpaceDescriptor::single(a.m, a.k, a.s);
    const UVWDecomposition& parts = uvw_decomposition(ctx, a.m, a.k, a.s);
    if (a.space == "U") local = parts.u;
    else if (a.space == "V") local = parts.v;
    else local = parts.w;
    sub = &local;
  }
  write_output(dump_json(subspace_to_json(*sub)), a.out_path, out);
  return 0;
}

struct ApplyArgs {
  std::string op;
  std::string input;
  std::string out_path;
};

int cmd_apply(const ApplyArgs& a, std::ostream& out) {
  PolyForm f = polyform_from_json(parse_json(read_file(a.input)));
  PolyForm result(f.m(), 0);
  if (a.op == "d") {
    result = apply_d(f);
  } else if (a.op == "dstar") {
    result = apply_dstar(f);
  } else if (a.op == "laplacian") {
    result = apply_laplacian(f);
  } else {
    result = apply_d(f);
    result += apply_dstar(f);
  }
  write_output(dump_json(polyform_to_json(result)), a.out_path, out);
  return 0;
}

struct SplitArgs {
  int r = 0;
  int p = 0;
  int q = 0;
  std::string input;
  std::string out_path;
};

int cmd_split(const SplitArgs& a, std::ostream& out) {
  PolyForm f = polyform_from_json(parse_json(read_file(a.input)));
  Context ctx;
  PhiSplit split = phi_split(ctx, f, GradeRange{a.r, a.p, a.q});
  write_output(dump_json(split_to_json(split)), a.out_path, out);
  return 0;
}

struct LiftArgs {
  std::string input;
  std::string out_path;
};

int cmd_lift(const LiftArgs& a, std::ostream& out) {
  HodgeTuple tuple = hodge_tuple_from_json(parse_json(read_file(a.input)));
  Context ctx;
  PolyForm lifted = lift_hodge_tuple(ctx, tuple);
  write_output(dump_json(polyform_to_json(lifted)), a.out_path, out);
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> suite_names;
  int m_max = 0;
  int k_max = 0;
  unsigned long long seed = 0;
  int cases = 100;
  std::string format = "csv";
  std::string out_path;
  bool list = false;
  CLI::Option* opt_m_max = nullptr;
  CLI::Option* opt_k_max = nullptr;
};

int cmd_verify(const VerifyArgs& a, int threads, std::ostream& out, std::ostream& err) {
  if (a.list) {
    for (const SuiteInfo& info : suites()) {
      out << info.name << "  m " << info.ranges.m_min << ".." << info.ranges.m_max << "  k "
          << info.ranges.k_min << ".." << info.ranges.k_max << "  " << info.description << "\n";
    }
    return 0;
  }
  VerifyConfig config;
  for (const std::string& raw : a.suite_names) {
    if (raw == "all") continue;
    auto resolved = resolve_suite_name(raw);
    if (!resolved) return usage_error(err, "unknown suite " + raw);
    config.suites.push_back(*resolved);
  }
  if (a.opt_m_max->count() > 0) config.m_max = a.m_max;
  if (a.opt_k_max->count() > 0) config.k_max = a.k_max;
  config.seed = a.seed;
  config.cases = a.cases;
  config.threads = threads;
  Report report = run_suites(config);
  const std::string text =
      a.format == "json" ? dump_json(report_to_json(report)) : report_to_csv(report);
  write_output(text, a.out_path, out);
  return report.fail_count() > 0 ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int threads = 0;
  if (const char* env = std::getenv("GMTFORMS_THREADS")) {
    long value = 0;
    if (!parse_long(env, value) || value < 0)
      return usage_error(err, "GMTFORMS_THREADS must be a non-negative integer");
    threads = static_cast<int>(value);
  }
  if (const char* env = std::getenv("GMTFORMS_DIM_CAP")) {
    long value = 0;
    if (!parse_long(env, value) || value < 1)
      return usage_error(err, "GMTFORMS_DIM_CAP must be a positive integer");
    set_dimension_cap(value);
  }

  CLI::App app{"exact computations with polynomial differential forms"};
  app.name("gmtforms");
  app.require_subcommand(1);

  DimsArgs dims;
  CLI::App* dims_cmd = app.add_subcommand("dims", "print a solution-space dimension");
  dims_cmd->add_option("--m", dims.m, "number of variables")->required();
  dims_cmd->add_option("--k", dims.k, "homogeneity degree")->required();
  dims.opt_s = dims_cmd->add_option("--s", dims.s, "form grade");
  dims.opt_r = dims_cmd->add_option("--r", dims.r, "lowest grade offset");
  dims.opt_p = dims_cmd->add_option("--p", dims.p, "first grade step");
  dims.opt_q = dims_cmd->add_option("--q", dims.q, "last grade step");
  dims_cmd->add_flag("--both", dims.both, "also compute the dimension by exact rank and compare");

  BasisArgs basis;
  CLI::App* basis_cmd = app.add_subcommand("basis", "write a canonical basis of a solution space");
  basis_cmd->add_option("--space", basis.space, "which space to compute")
      ->required()
      ->check(CLI::IsMember({"hodge", "mt", "kerdelta", "U", "V", "W"}));
  basis_cmd->add_option("--m", basis.m, "number of variables")->required();
  basis_cmd->add_option("--k", basis.k, "homogeneity degree")->required();
  basis.opt_s = basis_cmd->add_option("--s", basis.s, "form grade");
  basis.opt_r = basis_cmd->add_option("--r", basis.r, "lowest grade offset");
  basis.opt_p = basis_cmd->add_option("--p", basis.p, "first grade step");
  basis.opt_q = basis_cmd->add_option("--q", basis.q, "last grade step");
  basis_cmd->add_option("--out", basis.out_path, "output file (default stdout)");

  ApplyArgs apply_args;
  CLI::App* apply_cmd = app.add_subcommand("apply", "apply an operator to a form");
  apply_cmd->add_option("--op", apply_args.op, "operator to apply")
      ->required()
      ->check(CLI::IsMember({"d", "dstar", "laplacian", "dirac"}));
  apply_cmd->add_option("--input", apply_args.input, "input form file")->required();
  apply_cmd->add_option("--out", apply_args.out_path, "output file (default stdout)");

  SplitArgs split_args;
  CLI::App* split_cmd = app.add_subcommand("split", "split a block solution into kernel and image parts");
  split_cmd->add_option("--r", split_args.r, "lowest grade offset")->required();
  split_cmd->add_option("--p", split_args.p, "first grade step")->required();
  split_cmd->add_option("--q", split_args.q, "last grade step")->required();
  split_cmd->add_option("--input", split_args.input, "input form file")->required();
  split_cmd->add_option("--out", split_args.out_path, "output file (default stdout)");

  LiftArgs lift_args;
  CLI::App* lift_cmd = app.add_subcommand("lift", "lift a tuple of components to a block solution");
  lift_cmd->add_option("--input", lift_args.input, "input tuple file")->required();
  lift_cmd->add_option("--out", lift_args.out_path, "output file (default stdout)");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites and write a report");
  verify_cmd->add_option("--suite", verify_args.suite_names, "suite name, or all (default)");
  verify_args.opt_m_max = verify_cmd->add_option("--m-max", verify_args.m_max, "override the largest m");
  verify_args.opt_k_max = verify_cmd->add_option("--k-max", verify_args.k_max, "override the largest k");
  verify_cmd->add_option("--seed", verify_args.seed, "seed for randomized checks");
  verify_cmd->add_option("--cases", verify_args.cases, "random cases per randomized check");
  verify_cmd->add_option("--format", verify_args.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  verify_cmd->add_option("--out", verify_args.out_path, "output file (default stdout)");
  verify_cmd->add_flag("--list", verify_args.list, "list the suites and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dims_cmd->parsed()) return cmd_dims(dims, out, err);
    if (basis_cmd->parsed()) return cmd_basis(basis, out, err);
    if (apply_cmd->parsed()) return cmd_apply(apply_args, out);
    if (split_cmd->parsed()) return cmd_split(split_args, out);
    if (lift_cmd->parsed()) return cmd_lift(lift_args, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, threads, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gmtforms
