#define DOCTEST_CONFIG_IMPLEMENT
#define DOCTEST_CONFIG_NO_UNPREFIXED_OPTIONS
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dualmink/io.hpp"
#include "dualmink/types.hpp"

// Drives the installed binary end to end; the binary path arrives as the
// first non-doctest command-line argument (see tests/CMakeLists.txt).

namespace {

std::string g_binary;

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/dualmink_cli_") + std::to_string(::getpid()) + "_" + name;
}

int run_raw(const std::string& cmdline, std::string* output = nullptr) {
  std::string out_file = tmp_path("stdout.txt");
  std::string cmd = cmdline + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

int run(const std::string& args, std::string* output = nullptr) {
  return run_raw(g_binary + " " + args, output);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("measure: ball and ellipsoid totals") {
  std::string body = tmp_path("ball.json");
  write_file(body, R"({"type":"ball","radius":2.0})");
  std::string out = tmp_path("measure.json");
  CHECK(run("measure --body " + body + " --p 0 --q 3 --out " + out) == 0);
  auto j = dualmink::load_json(out);
  CHECK(j["total"].get<double>() == doctest::Approx(32.0 * dualmink::kPi).epsilon(1e-9));
  CHECK(j["identities"]["nVk_check"].get<double>() <= 1e-9);
  CHECK(j["identities"]["scaling_check"].get<double>() <= 1e-10);

  std::string ebody = tmp_path("ellipsoid.json");
  write_file(ebody, R"({"type":"ellipsoid","axes":[1,2,3]})");
  std::string eout = tmp_path("emeasure.json");
  CHECK(run("measure --body " + ebody + " --p 0 --q 3 --out " + eout) == 0);
  auto ej = dualmink::load_json(eout);
  CHECK(ej["total"].get<double>() ==
        doctest::Approx(24.0 * dualmink::kPi).epsilon(1e-4));
}

TEST_CASE("measure: cube atoms and dumps") {
  std::string body = tmp_path("cube.json");
  write_file(body, R"({"type":"polytope","vertices":[[1,1,1],[1,1,-1],[1,-1,1],[1,-1,-1],
                       [-1,1,1],[-1,1,-1],[-1,-1,1],[-1,-1,-1]]})");
  std::string out = tmp_path("cube_measure.json");
  std::string dump = tmp_path("cube_atoms.csv");
  CHECK(run("measure --body " + body + " --p 0 --q 3 --out " + out + " --dump " + dump) == 0);
  auto j = dualmink::load_json(out);
  CHECK(j["representation"] == "atomic");
  CHECK(j["total"].get<double>() == doctest::Approx(24.0).epsilon(1e-12));
  std::ifstream atoms(dump);
  std::string header;
  std::getline(atoms, header);
  CHECK(header == "index,x,y,z,mass");
}

TEST_CASE("measure: support_field body round-trips through JSON") {
  // ball of radius 2 carried as raw node values on the L = 16 grid
  std::ostringstream body;
  body << R"({"type":"support_field","L":16,"n":3,"values":[)";
  for (int i = 0; i < 16 * 32; ++i) body << (i ? "," : "") << "2.0";
  body << "]}";
  std::string path = tmp_path("field_body.json");
  write_file(path, body.str());
  std::string out = tmp_path("field_measure.json");
  CHECK(run("measure --body " + path + " --p 0.5 --q 2.5 --out " + out) == 0);
  auto j = dualmink::load_json(out);
  CHECK(j["total"].get<double>() ==
        doctest::Approx(std::pow(2.0, 2.0) * 4.0 * dualmink::kPi).epsilon(1e-9));

  // a non-convex field is rejected with exit 3
  std::ostringstream bad;
  bad << R"({"type":"support_field","L":16,"n":3,"values":[)";
  for (int i = 0; i < 16 * 32; ++i) bad << (i ? "," : "") << (2.0 + ((i % 7) ? 0.9 : -0.9));
  bad << "]}";
  std::string bad_path = tmp_path("bad_field.json");
  write_file(bad_path, bad.str());
  CHECK(run("measure --body " + bad_path + " --p 0 --q 3") == 3);
}

TEST_CASE("exit codes: malformed input, invariant violation, non-convergence") {
  std::string bad = tmp_path("bad.json");
  write_file(bad, "{ not json");
  CHECK(run("measure --body " + bad + " --p 0 --q 3") == 2);
  CHECK(run("measure --body /nonexistent.json --p 0 --q 3") == 2);

  // f with a non-positive node
  std::string param = tmp_path("bad_problem.json");
  write_file(param, R"({"n":3,"p":0.0,"q":3.0,"f":{"constant":0.5,"harmonics":[{"k":1,"m":0,"coef":5.0}]}})");
  CHECK(run("solve --problem " + param) == 3);

  // far-from-isotropic data with a tiny iteration budget
  std::string hard = tmp_path("hard_problem.json");
  write_file(hard, R"({"n":3,"p":0.0,"q":3.0,"f":{"constant":1.0,"harmonics":[{"k":2,"m":0,"coef":0.3}]}})");
  CHECK(run("solve --problem " + hard + " --max-iter 1 --L 16") == 4);

  CHECK(run("verify --suite unknown_suite") == 2);
  CHECK(run("probe --problem /nonexistent.json") == 2);
}

TEST_CASE("solve: isotropic problem writes solution files") {
  std::string problem = tmp_path("iso.json");
  write_file(problem, R"({"n":3,"p":0.5,"q":3.0,"f":1.0})");
  std::string prefix = tmp_path("iso_sol");
  CHECK(run("solve --problem " + problem + " --out " + prefix) == 0);
  auto j = dualmink::load_json(prefix + ".json");
  CHECK(j["converged"].get<bool>());
  CHECK(j["iterations"].get<int>() <= 5);
  CHECK(j["residual_sup"].get<double>() <= 1e-10);
  CHECK(j["diagnostics"]["volume"].get<double>() ==
        doctest::Approx(4.0 * dualmink::kPi / 3.0).epsilon(1e-6));
  std::ifstream csv(prefix + ".csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "index,x,y,z,value");
}

TEST_CASE("solve: n = 2 curve path") {
  std::string problem = tmp_path("curve.json");
  write_file(problem, R"({"n":2,"p":0.0,"q":2.0,"f":{"constant":16.0}})");
  std::string prefix = tmp_path("curve_sol");
  CHECK(run("solve --problem " + problem + " --curve --out " + prefix) == 0);
  auto j = dualmink::load_json(prefix + ".json");
  CHECK(j["converged"].get<bool>());
  CHECK(j["diagnostics"]["min_u"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("probe emits a report") {
  std::string problem = tmp_path("probe.json");
  write_file(problem, R"({"n":3,"p":0.0,"q":3.0,"f":1.0})");
  std::string out = tmp_path("probe_report.json");
  CHECK(run("probe --problem " + problem + " --starts 3 --seed 11 --perturb-scale 0.1 --L 16 --out " +
            out) == 0);
  auto j = dualmink::load_json(out);
  CHECK(j["num_starts"].get<int>() == 3);
  CHECK(j["converged_count"].get<int>() == 3);
  CHECK(j["max_spread"].get<double>() <= 1e-6);
}

TEST_CASE("verify: suite filter and pass lines") {
  std::string output;
  CHECK(run("verify --suite lemma43", &output) == 0);
  CHECK(output.find("[PASS]") != std::string::npos);
  CHECK(output.find("singular_axis_integral") != std::string::npos);
  CHECK(output.find("ALL PASS") != std::string::npos);
  CHECK(output.find("power_diff") == std::string::npos);  // filtered out
}

TEST_CASE("scan emits rows and csv") {
  std::string out = tmp_path("scan.json");
  std::string csv = tmp_path("scan.csv");
  CHECK(run("scan --family balls --params 0.5,1,2 --p 0.5 --q 3 --out " + out + " --csv " + csv) ==
        0);
  auto j = dualmink::load_json(out);
  CHECK(j["all_pass"].get<bool>());
  std::ifstream c(csv);
  std::string header;
  std::getline(c, header);
  CHECK(header == "name,label,lhs,relation,rhs,pass,margin");
}

TEST_CASE("identical invocations produce byte-identical output") {
  std::string problem = tmp_path("det.json");
  write_file(problem, R"({"n":3,"p":0.0,"q":3.0,"f":{"constant":1.0,"harmonics":[{"k":2,"m":0,"coef":0.01}]}})");
  std::string out1 = tmp_path("det1.json");
  std::string out2 = tmp_path("det2.json");
  CHECK(run("probe --problem " + problem + " --starts 2 --seed 7 --perturb-scale 0.05 --L 16 --out " +
            out1) == 0);
  CHECK(run("probe --problem " + problem + " --starts 2 --seed 7 --perturb-scale 0.05 --L 16 --out " +
            out2) == 0);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
}

TEST_CASE("results do not depend on the worker count") {
  std::string body = tmp_path("mc_body.json");
  write_file(body, R"({"type":"ellipsoid","axes":[1,2,3]})");
  std::string out1 = tmp_path("thr1.json");
  std::string out2 = tmp_path("thr2.json");
  std::string base = g_binary + " measure --body " + body + " --p 0 --q 3 --L 24 --out ";
  CHECK(run_raw("env DUALMINK_THREADS=1 " + base + out1) == 0);
  CHECK(run_raw("env DUALMINK_THREADS=2 " + base + out2) == 0);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
}

int main(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (!arg.empty() && arg[0] != '-') g_binary = arg;
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-dualmink-binary>\n");
    return 1;
  }
  return context.run();
}
