#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "lplab/report.hpp"
#include "oracles.hpp"

using namespace lplab;

TEST_SUITE("report") {

TEST_CASE("keys are sorted") {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 2;
  j["mid"] = Json{{"b", 1}, {"a", 2}};
  const auto s = dump_json(j);
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
}

TEST_CASE("floats round trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0 * 1e-300, 6.02214076e23, -1.2345678901234567}) {
    const auto s = dump_json(number(v));
    CHECK(std::stod(s) == v);
  }
  CHECK(dump_json(number(0.1)) == "0.1\n");
}

TEST_CASE("non-finite values become strings") {
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(number(std::nan("")) == "nan");
  CHECK(number(2.5) == 2.5);
}

TEST_CASE("manifest") {
  const LPProfile p(make_grid(16, 4 * oracle::kPi));
  const auto m = make_manifest("decompose", p, {3, 1});
  const auto j = to_json(m);
  CHECK(j.at("command") == "decompose");
  CHECK(j.dump().find("\"artifact_version\":\"lplab-0.1.0\"") != std::string::npos);
  CHECK(m.k_min == -1);
  CHECK(m.tolerances == default_tolerances());
  const auto wrapped = wrap_report(m, "body", Json{{"x", 1}});
  CHECK(wrapped.contains("manifest"));
  CHECK(wrapped.at("body").at("x") == 1);
  CHECK(dump_json(wrapped) == dump_json(wrap_report(m, "body", Json{{"x", 1}})));
}

TEST_CASE("default tolerances") {
  const auto t = default_tolerances();
  CHECK(t.at("partition") == 1e-12);
  CHECK(t.at("vanishing") == 1e-12);
  CHECK(t.at("decomposition") == 1e-10);
  CHECK(t.at("transport") == 1e-10);
  CHECK(t.at("energy_imbalance") == 1e-8);
  CHECK(t.at("bernstein_ratio_min") == 0.5);
  CHECK(t.at("bernstein_ratio_max") == 2.0);
}

TEST_CASE("bound ratio null serializes as null") {
  BoundReport r;
  BoundRecord rec;
  rec.name = "J1";
  r.records.push_back(rec);
  const auto j = to_json(r);
  CHECK(j.dump().find("null") != std::string::npos);
}

TEST_CASE("csv") {
  const auto csv = to_csv({"k", "v"}, {{Json(1), number(0.25)}, {Json(2), number(kInfinity)}});
  CHECK(csv.rfind("k,v\n", 0) == 0);
  CHECK(csv.find("1,0.25") != std::string::npos);
  CHECK(csv.find("inf") != std::string::npos);
}

}  // TEST_SUITE
