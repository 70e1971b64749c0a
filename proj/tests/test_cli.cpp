#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "qek/json_io.hpp"

#ifndef QEK_CLI_PATH
#define QEK_CLI_PATH "qek"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QEK_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kSphere =
    R"('{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [1,0,0,0]}]}')";

}  // namespace

TEST_CASE("roots subcommand") {
  const RunResult r = run_cli(std::string("roots ") + kSphere);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"type\":\"sphere\"") != std::string::npos);
  CHECK(r.output.find("\"maxModulus\":1") != std::string::npos);
}

TEST_CASE("bounds subcommand exit codes") {
  // equal adjacent coefficients: hypothesis violated, exit 1, index named
  const RunResult bad = run_cli(
      R"(bounds '{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [1,0,0,0]}]}' --theorem t1)");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("\"satisfied\":false") != std::string::npos);
  CHECK(bad.output.find("\"index\":1") != std::string::npos);

  const RunResult good = run_cli(
      R"(bounds '{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [2,0,0,0]}]}' --theorem t1 --alpha 0)");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("\"radius\":3") != std::string::npos);

  const RunResult malformed = run_cli("bounds '{\"terms\": [' --theorem ek");
  CHECK(malformed.exit_code == 2);

  const RunResult unknown_flag = run_cli(std::string("roots --bogus ") + kSphere);
  CHECK(unknown_flag.exit_code == 2);
}

TEST_CASE("m-const subcommand") {
  const RunResult r = run_cli(
      R"(m-const '{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [2,0,0,0]}]}')");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"overall\":3") != std::string::npos);
  const RunResult s = run_cli(
      R"(m-const '{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [2,0,0,0]}]}' --method sampled --samples 2000 --seed 4)");
  CHECK(s.exit_code == 0);
  CHECK(s.output.find("\"method\":\"sampled\"") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const RunResult r = run_cli(
      R"(verify '{"terms": [{"exp": 0, "coeff": [1,0,0,0]}, {"exp": 1, "coeff": [1,0,0,0]}, {"exp": 2, "coeff": [1,0,0,0]}]}' --theorem ek)");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"ok\":true") != std::string::npos);
}

TEST_CASE("sweep determinism and instance round trip") {
  const std::string args =
      "sweep --kind monotone-real --theorem ek --count 8 --max-degree 6 "
      "--support-size 3 --seed 11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // byte-identical CSV
  CHECK(a.output.rfind("instanceId,theoremId,", 0) == 0);

  const std::string dump = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/qek_dump_instances.json";
  const RunResult c = run_cli(args + " --dump-instances " + dump);
  CHECK(c.exit_code == 0);

  // every dumped instance re-parses to an identical document
  std::ifstream f(dump);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  const nlohmann::json arr = nlohmann::json::parse(buf.str());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 8);
  for (const auto& doc : arr) {
    const std::string once = qek::stable_dump(doc);
    const qek::SparseQPolynomial p = qek::poly_from_string(once);
    CHECK(qek::stable_dump(qek::poly_to_json(p)) == once);
  }
  std::remove(dump.c_str());
}

TEST_CASE("sweep accepts a JSON config file") {
  const std::string path =
      std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
      "/qek_sweep_config.json";
  {
    std::ofstream f(path);
    f << R"({"kind": "monotone-real", "theorem": "ek", "count": 8,
             "maxDegree": 6, "supportSize": 3, "seed": 11})";
  }
  const RunResult from_config = run_cli("sweep --config " + path);
  const RunResult from_flags = run_cli(
      "sweep --kind monotone-real --theorem ek --count 8 --max-degree 6 "
      "--support-size 3 --seed 11");
  CHECK(from_config.exit_code == 0);
  CHECK(from_config.output == from_flags.output);
  // explicit flags win over the file
  const RunResult overridden = run_cli("sweep --config " + path + " --count 3");
  CHECK(overridden.exit_code == 0);
  CHECK(std::count(overridden.output.begin(), overridden.output.end(), '\n') ==
        4);  // header + 3 rows
  std::remove(path.c_str());
}
