// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 4 8        selected criteria only
//   acceptance calibrate  recompute the master-bound baseline
//   --known-failure N     a FAIL of criterion N is still printed but does not
//                         change the exit status (repeatable)

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "lplab/acceptance.hpp"

using namespace lplab;

namespace {

void print(const CriterionResult& r) {
  std::printf("%s criterion %d (%s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
              r.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  set_warnings_enabled(false);
  std::set<int> only;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
      continue;
    }
    if (arg == "calibrate") {
      std::vector<std::uint64_t> seeds;
      for (std::uint64_t s = 1001; s <= 1040; ++s) seeds.push_back(s);
      const auto c = calibrate_master_constants(seeds);
      std::printf("linf %.17g\nl3 %.17g\n", c.linf, c.l3);
      return 0;
    }
    only.insert(std::atoi(arg.c_str()));
  }
  auto want = [&](int id) { return only.empty() || only.count(id) > 0; };

  bool ok = true;
  int passed = 0, failed = 0, tolerated = 0;
  auto record = [&](const CriterionResult& r) {
    print(r);
    if (r.passed) {
      ++passed;
    } else if (known.count(r.id)) {
      ++tolerated;
    } else {
      ++failed;
      ok = false;
    }
  };
  if (want(1)) record(check_partition());
  if (want(2)) record(check_bernstein());
  if (want(3)) record(check_support());
  if (want(4) || want(5) || want(6) || want(7)) {
    for (const auto& r : check_identity_suite()) {
      if (want(r.id)) record(r);
    }
  }
  if (want(8)) record(check_tail_trend());
  if (want(9)) record(check_j_ladders());
  if (want(10)) record(check_conditions());
  if (want(11)) record(check_determinism());
  std::printf("%d passed, %d failed, %d known failures\n", passed, failed, tolerated);
  return ok ? 0 : 1;
}
