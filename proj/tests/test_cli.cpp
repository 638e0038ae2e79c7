#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lplab/field_io.hpp"
#include "oracles.hpp"

using Json = nlohmann::json;

namespace {

const std::string kCli = LPLAB_CLI_PATH;

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(LPLAB_TEST_TMP);
  return std::string(LPLAB_TEST_TMP) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Runs the CLI with stdout captured to `out`; returns the exit status.
int run(const std::string& args, const std::string& out) {
  const std::string cmd = "'" + kCli + "' --quiet " + args + " > '" + out + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("decompose of cos x1 has one shell") {
  const auto g = lplab::make_grid(16, 2 * oracle::kPi);
  const auto field = lplab::SpectralVectorField(oracle::wave(g, {1, 0, 0}, 1.0),
                                                lplab::SpectralField(g), lplab::SpectralField(g));
  const auto in = tmp_path("cos.lpf");
  lplab::write_field(in, field);
  const auto out = tmp_path("decompose.json");
  REQUIRE(run("decompose --u '" + in + "'", out) == 0);
  const auto j = Json::parse(slurp(out));
  int nonzero = 0;
  for (const auto& rec : j.at("blocks").at("records")) {
    if (rec.at("l2_energy").get<double>() > 0.0) {
      ++nonzero;
      CHECK(rec.at("k") == 0);
      CHECK(rec.at("support_min") == 1.0);
      CHECK(rec.at("support_max") == 1.0);
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("all-checks on zero fields") {
  const auto out = tmp_path("zero.json");
  REQUIRE(run("all-checks --grid 32 --box 4pi --seeds 7 --zero-fields", out) == 0);
  const auto j = Json::parse(slurp(out)).at("all_checks");
  CHECK(j.at("passed") == true);
  CHECK(j.at("zero_fields") == true);
  for (const auto& [name, entry] : j.at("summary").items()) {
    CHECK(entry.at("passed") == true);
    if (entry.contains("value")) CHECK(entry.at("value") == 0.0);
  }
}

TEST_CASE("verify-identity sweep on a generated pair") {
  const auto u = tmp_path("u.lpf"), b = tmp_path("b.lpf");
  REQUIRE(run("gen --grid 16 --box 4pi --seed 3 --kind power_law --out '" + u + "' --out-b '" + b + "'",
              tmp_path("gen.json")) == 0);
  const auto out = tmp_path("sweep.json");
  CHECK(run("verify-identity --sweep --u '" + u + "' --b '" + b + "'", out) == 0);
  const auto text = slurp(out);
  CHECK(text.find("imbalance") != std::string::npos);
}

TEST_CASE("error exits") {
  const auto out = tmp_path("err.txt");
  CHECK(run("no-such-command", out) == 3);
  CHECK(run("decompose --u /nonexistent/field.lpf", out) == 3);
  CHECK(run("decompose --grid 15", out) == 3);
  CHECK(run("norms --kind lebesgue --p 0.5", out) == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = tmp_path("det_a.json"), b = tmp_path("det_b.json");
  REQUIRE(run("verify-bounds --grid 16 --box 4pi --seed 5 --flavor l3", a) == 0);
  REQUIRE(run("verify-bounds --grid 16 --box 4pi --seed 5 --flavor l3", b) == 0);
  const auto ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
}

TEST_CASE("bernstein writes csv by default") {
  const auto out = tmp_path("bern.csv");
  REQUIRE(run("bernstein --grid 16 --box 4pi --seed 2", out) == 0);
  CHECK(slurp(out).rfind("k,", 0) == 0);
}

}  // TEST_SUITE
