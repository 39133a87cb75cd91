#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hyperocta/json_io.hpp"

using namespace hyperocta;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "hyperocta_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(HYPEROCTA_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data_file(const std::string& name) {
  return (fs::path(HYPEROCTA_DATA_DIR) / name).string();
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hyperocta_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

// strip the elapsed_ms column for byte-identity comparisons
std::string strip_elapsed(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << line.substr(0, pos) << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("verify-ek reports and exit codes") {
  const RunResult ok = run_cli("verify-ek --n 6 --m 3 --k 2 --json");
  REQUIRE(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j.at("equal") == true);
  CHECK(j.at("kernel_rank") == 5);

  CHECK(run_cli("verify-ek --n 3 --m 2 --k 3").code == 2);

  const RunResult zero = run_cli("verify-ek --n 5 --m 2 --k 2 --json");
  REQUIRE(zero.code == 0);
  CHECK(json::parse(zero.out).at("kernel_rank") == 0);
}

TEST_CASE("rewrite and check-cert round trip through files") {
  const fs::path cert = temp_file("octa_cert.json");
  const RunResult rw = run_cli("rewrite --in " + data_file("octahedron_relation.json") +
                               " --k 2 --out " + cert.string());
  REQUIRE(rw.code == 0);

  const RunResult chk = run_cli("check-cert --relation " +
                                data_file("octahedron_relation.json") +
                                " --cert " + cert.string());
  CHECK(chk.code == 0);
  CHECK(chk.out.find("verified") != std::string::npos);

  // perturb one coefficient; the checker must fail with exit 1
  json cj = load_json_file(cert.string());
  REQUIRE(!cj.at("entries").empty());
  const Int c = int_from_json(cj["entries"][0]["coeff"]);
  cj["entries"][0]["coeff"] = Int(c + 1).str();
  const fs::path bad = temp_file("octa_cert_bad.json");
  save_json_file(bad.string(), cj);
  CHECK(run_cli("check-cert --relation " + data_file("octahedron_relation.json") +
                " --cert " + bad.string()).code == 1);
}

TEST_CASE("rewrite rejects non-relations with a named witness") {
  json rel = {{"n", 3}, {"m", 2},
              {"terms", json::array({{{"subset", {1, 2}}, {"coeff", "1"}}})}};
  const fs::path p = temp_file("nonrelation.json");
  save_json_file(p.string(), rel);
  const RunResult r = run_cli("rewrite --in " + p.string() + " --k 0");
  CHECK(r.code == 2);
  CHECK(r.err.find("constant term 1") != std::string::npos);
}

TEST_CASE("zero relation rewrites to an empty certificate") {
  json rel = {{"n", 4}, {"m", 2}, {"terms", json::array()}};
  const fs::path p = temp_file("zero_relation.json");
  save_json_file(p.string(), rel);
  const RunResult r = run_cli("rewrite --in " + p.string() + " --k 1");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).at("entries").empty());
}

TEST_CASE("chow on builtin models") {
  const RunResult p1 = run_cli("chow --model builtin:p1 --alpha diagonal --m 2 --n 4 --json");
  REQUIRE(p1.code == 0);
  const json j = json::parse(p1.out);
  CHECK(j.at("vanishing_order") == 1);
  CHECK(j.at("report").at("equal") == true);
  CHECK(j.at("report").at("kernel_rank") == 2);

  const RunResult pt = run_cli("chow --model builtin:point --alpha diagonal --m 2 --n 4 --json");
  REQUIRE(pt.code == 0);
  CHECK(json::parse(pt.out).at("vanishing_order") == 0);
}

TEST_CASE("chow loads model files and validates them") {
  const RunResult z2 = run_cli("chow --model " + data_file("z2_model.json") +
                               " --alpha diagonal --m 2 --n 4 --json");
  CHECK(z2.code == 0);

  // a non-associative table must be rejected with the triple named:
  // u*u = v, u*v = v, v*v = 0 gives (uu)v = 0 but u(uv) = v
  const json bad = {
      {"name", "bad"},
      {"basis", {"1", "u", "v"}},
      {"degrees", {0, 0, 0}},
      {"unit", 0},
      {"mul",
       {{{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
        {{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "1"}},
        {{"0", "0", "1"}, {"0", "0", "1"}, {"0", "0", "0"}}}},
      {"integral", {"1", "0", "0"}}};
  const fs::path p = temp_file("bad_model.json");
  save_json_file(p.string(), bad);
  const RunResult r = run_cli("chow --model " + p.string() +
                              " --alpha diagonal --m 2 --n 4");
  CHECK(r.code == 2);
  CHECK(r.err.find("associativity") != std::string::npos);
  CHECK(r.err.find("(u, u, v)") != std::string::npos);
}

TEST_CASE("sweep emits deterministic CSV and exit status") {
  const fs::path csv1 = temp_file("sweep1.csv");
  const fs::path csv2 = temp_file("sweep2.csv");
  REQUIRE(run_cli("sweep --max-m 2 --extra 1 --out " + csv1.string()).code == 0);
  REQUIRE(run_cli("sweep --max-m 2 --extra 1 --out " + csv2.string()).code == 0);

  std::ifstream f1(csv1), f2(csv2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(strip_elapsed(s1.str()) == strip_elapsed(s2.str()));

  std::istringstream lines(s1.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,m,k,kernel_rank,g_rank,equal,elapsed_ms");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",true,") != std::string::npos);
  }
  CHECK(rows > 0);

  // the trivial sweep is a single row
  const RunResult trivial = run_cli("sweep --max-m 0 --extra 0");
  REQUIRE(trivial.code == 0);
  std::istringstream tl(trivial.out);
  int count = 0;
  while (std::getline(tl, line)) ++count;
  CHECK(count == 2);  // header + one row
}
