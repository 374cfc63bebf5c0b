#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmtforms/cli.hpp"
#include "gmtforms/gmt.hpp"
#include "gmtforms/json_io.hpp"
#include "gmtforms/linalg.hpp"

using namespace gmtforms;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  RunResult result;
  result.code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gmtforms_cli_" + name)).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
}

PolyForm dx1_form(int m) {
  PolyForm f(m, 0);
  f.add_term(MultiIndex(m, 0), {1}, Rat(1));
  return f;
}

}  // namespace

TEST_CASE("dims prints dimensions from the closed formulas") {
  RunResult single = run({"dims", "--m", "3", "--k", "1", "--s", "1"});
  CHECK(single.code == 0);
  CHECK(single.out == "5\n");

  RunResult block = run({"dims", "--m", "4", "--k", "1", "--r", "0", "--p", "0", "--q", "2"});
  CHECK(block.code == 0);
  CHECK(block.out == "24\n");

  RunResult middle = run({"dims", "--m", "4", "--k", "0", "--s", "2"});
  CHECK(middle.code == 0);
  CHECK(middle.out == "6\n");

  RunResult monogenic = run({"dims", "--m", "3", "--k", "1"});
  CHECK(monogenic.code == 0);
  CHECK(monogenic.out == "8\n");
}

TEST_CASE("dims --both cross-checks the formula against a rank computation") {
  RunResult both = run({"dims", "--m", "3", "--k", "1", "--s", "1", "--both"});
  CHECK(both.code == 0);
  CHECK(both.out == "formula 5\nrank 5\nmatch true\n");

  RunResult block = run({"dims", "--m", "3", "--k", "2", "--r", "1", "--p", "0", "--q", "1", "--both"});
  CHECK(block.code == 0);
  CHECK(block.out.find("match true\n") != std::string::npos);
}

TEST_CASE("dims argument validation") {
  CHECK(run({"dims", "--m", "3", "--k", "1", "--s", "1", "--r", "0"}).code == 2);
  CHECK(run({"dims", "--m", "3", "--k", "1", "--r", "0", "--p", "0"}).code == 2);
  CHECK(run({"dims", "--k", "1", "--s", "1"}).code == 2);
  CHECK(run({"dims", "--m", "3", "--k", "1", "--zz", "4"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"dims", "--m", "3", "--k", "1", "--s", "5"}).code == 1);
}

TEST_CASE("basis writes canonical bases") {
  RunResult hodge = run({"basis", "--space", "hodge", "--m", "3", "--k", "1", "--s", "1"});
  CHECK(hodge.code == 0);
  Json j = parse_json(hodge.out);
  CHECK(j["dim"] == 5);
  CHECK(j["ambient"]["grades"] == std::vector<int>{1});
  CHECK(j["basis"].size() == 5);
  CHECK(j["basis"][0].size() == 9);

  RunResult w = run({"basis", "--space", "W", "--m", "4", "--k", "1", "--s", "2"});
  CHECK(w.code == 0);
  CHECK(parse_json(w.out)["dim"] == 0);

  RunResult u = run({"basis", "--space", "U", "--m", "3", "--k", "1", "--s", "1"});
  CHECK(u.code == 0);
  CHECK(parse_json(u.out)["dim"] == 1);

  RunResult mt = run({"basis", "--space", "mt", "--m", "3", "--k", "0",
                      "--r", "0", "--p", "0", "--q", "1"});
  CHECK(mt.code == 0);
  CHECK(parse_json(mt.out)["dim"] == 4);
}

TEST_CASE("basis argument validation") {
  CHECK(run({"basis", "--space", "mt", "--m", "3", "--k", "0"}).code == 2);
  CHECK(run({"basis", "--space", "hodge", "--m", "3", "--k", "1"}).code == 2);
  CHECK(run({"basis", "--space", "nosuch", "--m", "3", "--k", "1", "--s", "1"}).code == 2);
}

TEST_CASE("basis can write to a file") {
  const std::string path = temp_path("basis.json");
  RunResult r = run({"basis", "--space", "hodge", "--m", "2", "--k", "0", "--s", "1",
                     "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  std::stringstream buf;
  buf << file.rdbuf();
  CHECK(parse_json(buf.str())["dim"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("apply differentiates forms from files") {
  PolyForm x1(2, 1);
  x1.add_term({1, 0}, {}, Rat(1));
  const std::string in_path = temp_path("apply_in.json");
  const std::string mid_path = temp_path("apply_mid.json");
  write_text(in_path, dump_json(polyform_to_json(x1)));

  RunResult first = run({"apply", "--op", "d", "--input", in_path, "--out", mid_path});
  CHECK(first.code == 0);
  CHECK(first.out.empty());

  std::ifstream mid(mid_path);
  std::stringstream buf;
  buf << mid.rdbuf();
  CHECK(polyform_from_json(parse_json(buf.str())) == dx1_form(2));

  RunResult second = run({"apply", "--op", "d", "--input", mid_path});
  CHECK(second.code == 0);
  CHECK(parse_json(second.out)["terms"].empty());

  RunResult dirac = run({"apply", "--op", "dirac", "--input", in_path});
  CHECK(dirac.code == 0);
  CHECK(polyform_from_json(parse_json(dirac.out)) == dx1_form(2));

  std::filesystem::remove(in_path);
  std::filesystem::remove(mid_path);
}

TEST_CASE("apply reports file and operator errors") {
  CHECK(run({"apply", "--op", "d", "--input", temp_path("missing.json")}).code == 1);
  CHECK(run({"apply", "--op", "nosuch", "--input", temp_path("missing.json")}).code == 2);
}

TEST_CASE("split separates kernel and image parts") {
  PolyForm f(3, 1);
  f.add_term({1, 0, 0}, {}, Rat(1));
  f.add_term({0, 1, 0}, {1, 2}, Rat(1));
  const std::string path = temp_path("split_in.json");
  write_text(path, dump_json(polyform_to_json(f)));

  RunResult r = run({"split", "--r", "0", "--p", "0", "--q", "1", "--input", path});
  CHECK(r.code == 0);
  Json j = parse_json(r.out);
  REQUIRE(j["image_part"]["components"].size() == 1);
  CHECK(polyform_from_json(j["image_part"]["components"][0]) == dx1_form(3));
  REQUIRE(j["kernel_part"].size() == 2);
  CHECK(j["kernel_part"][0]["terms"].empty());
  std::filesystem::remove(path);
}

TEST_CASE("split rejects forms outside the solution space") {
  PolyForm scalar(3, 1);
  scalar.add_term({1, 0, 0}, {}, Rat(1));
  const std::string path = temp_path("split_bad.json");
  write_text(path, dump_json(polyform_to_json(scalar)));
  RunResult r = run({"split", "--r", "0", "--p", "0", "--q", "1", "--input", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") == 0);
  std::filesystem::remove(path);
}

TEST_CASE("lift solves for a block solution") {
  HodgeTuple zero{3, 1, GradeRange{0, 0, 1}, {PolyForm(3, 0)}};
  const std::string zero_path = temp_path("lift_zero.json");
  write_text(zero_path, dump_json(hodge_tuple_to_json(zero)));
  RunResult z = run({"lift", "--input", zero_path});
  CHECK(z.code == 0);
  CHECK(parse_json(z.out)["terms"].empty());
  std::filesystem::remove(zero_path);

  HodgeTuple tuple{3, 1, GradeRange{0, 0, 1}, {dx1_form(3)}};
  const std::string path = temp_path("lift_in.json");
  write_text(path, dump_json(hodge_tuple_to_json(tuple)));
  RunResult r = run({"lift", "--input", path});
  CHECK(r.code == 0);
  Context ctx;
  CHECK(polyform_from_json(parse_json(r.out)) == lift_hodge_tuple(ctx, tuple));
  std::filesystem::remove(path);
}

TEST_CASE("verify lists suites") {
  RunResult r = run({"verify", "--list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("HODGE_DIM") != std::string::npos);
  CHECK(r.out.find("OPERATOR_IDENTITIES") != std::string::npos);
  long lines = std::count(r.out.begin(), r.out.end(), '\n');
  CHECK(lines == 11);
}

TEST_CASE("verify runs suites and writes reports") {
  RunResult csv = run({"verify", "--suite", "hodge", "--m-max", "2", "--k-max", "1"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("check_id,m,k,s,r,p,q,j,computed,expected,status\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);

  RunResult json = run({"verify", "--suite", "hodge", "--m-max", "2", "--k-max", "1",
                        "--format", "json", "--seed", "3"});
  CHECK(json.code == 0);
  Json j = parse_json(json.out);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["config"]["suites"] == std::vector<std::string>{"HODGE_DIM"});

  RunResult a = run({"verify", "--suite", "mt", "--m-max", "3", "--k-max", "1", "--seed", "9"});
  RunResult b = run({"verify", "--suite", "mt", "--m-max", "3", "--k-max", "1", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify rejects unknown suites") {
  RunResult r = run({"verify", "--suite", "nosuch"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown suite") != std::string::npos);
}

TEST_CASE("environment variables control threads and the size cap") {
  setenv("GMTFORMS_THREADS", "abc", 1);
  CHECK(run({"dims", "--m", "2", "--k", "0", "--s", "0"}).code == 2);
  unsetenv("GMTFORMS_THREADS");

  setenv("GMTFORMS_DIM_CAP", "0", 1);
  CHECK(run({"dims", "--m", "2", "--k", "0", "--s", "0"}).code == 2);

  setenv("GMTFORMS_DIM_CAP", "50", 1);
  RunResult capped = run({"dims", "--m", "6", "--k", "4", "--s", "3", "--both"});
  CHECK(capped.code == 1);
  CHECK(capped.err.find("error:") == 0);
  unsetenv("GMTFORMS_DIM_CAP");
  set_dimension_cap(20000);
}

TEST_CASE("output path failures are reported") {
  RunResult r = run({"basis", "--space", "hodge", "--m", "2", "--k", "0", "--s", "1",
                     "--out", "/nonexistent_dir/out.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("cannot write") != std::string::npos);
}
