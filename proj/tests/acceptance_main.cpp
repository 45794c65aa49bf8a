// Acceptance gate: runs the full analytic-vs-simulation comparison grid at
// its pinned production scale and reports one verdict per criterion.
//
//   1. marginal running-max CDF matches the path simulation
//   2. degenerate, full-window, and nonpositive closed forms hold
//   3. the density normalizes and differentiates the CDF
//   4. closed-form moments match quadrature and simulation, and the
//      uncorrected second-moment variant fails against both
//   5. the joint CDF matches simulation and collapses to its reductions
//   6. boundary non-crossing probabilities match their simulations
//   7. validation output is bitwise deterministic across reruns and
//      worker counts
//
// Exits 0 only if every criterion passes.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "slepian/cli.hpp"
#include "slepian/montecarlo.hpp"
#include "slepian/validate.hpp"

namespace {

using slepian::validate::CheckRow;
using slepian::validate::Report;

const char* kCriterionNames[] = {
    "marginal cdf vs simulation",
    "window-zero, full-window, and nonpositive reductions",
    "density normalization and cdf slope",
    "moment identities and the corrected second moment",
    "joint cdf vs simulation and its reductions",
    "boundary non-crossing vs simulation",
    "deterministic validation output",
};

std::string describe(const CheckRow& row) {
  std::ostringstream os;
  os << row.check;
  if (row.s) os << " s=" << *row.s;
  if (row.t) os << " t=" << *row.t;
  if (row.m) os << " m=" << *row.m;
  if (row.M) os << " M=" << *row.M;
  char buf[64];
  std::snprintf(buf, sizeof(buf), " diff=%.3g tol=%.3g", row.abs_diff, row.tol);
  os << buf << " verdict=" << row.verdict();
  return os.str();
}

bool criterion_passes(int criterion, const Report& report,
                      std::vector<std::string>& failures) {
  bool any = false;
  bool ok = true;
  int expected_fail_rows = 0;
  for (const CheckRow& row : report.rows) {
    if (row.criterion != criterion) continue;
    any = true;
    if (!row.ok()) {
      ok = false;
      failures.push_back(describe(row));
    }
    if (criterion == 4 && row.expected_fail) {
      ++expected_fail_rows;
      // A wrong-by-construction closed form must miss by a wide margin,
      // not squeak past on a loose tolerance.
      if (row.abs_diff < 0.4) {
        ok = false;
        failures.push_back("uncorrected variant too close to the oracle: " +
                           describe(row));
      }
    }
  }
  if (criterion == 4 && expected_fail_rows < 2) {
    ok = false;
    failures.push_back("missing expected-failure rows for the uncorrected variant");
  }
  return any && ok;
}

struct CliCapture {
  int code;
  std::string out;
};

CliCapture run_validate_cli(int workers) {
  std::ostringstream out;
  std::ostringstream err;
  std::vector<std::string> args = {
      "validate", "--paths", "20000",  "--grid",    "1e-3",
      "--seed",   "42",      "--scope", "all",      "--workers",
      std::to_string(workers)};
  int code = slepian::cli::run_cli(args, out, err);
  return {code, out.str()};
}

}  // namespace

int main() {
  slepian::montecarlo::McSpec spec;
  spec.paths = 1'000'000;
  spec.grid_step = 1e-4;
  spec.master_seed = 42;
  spec.workers = 0;

  std::cerr << "[acceptance] running full validation: paths=" << spec.paths
            << " grid=" << spec.grid_step << " seed=" << spec.master_seed
            << "\n";
  Report report = slepian::validate::run_validation(
      spec, slepian::validate::Scope::all, &std::cerr);

  int passed = 0;
  for (int criterion = 1; criterion <= 6; ++criterion) {
    std::vector<std::string> failures;
    bool ok = criterion_passes(criterion, report, failures);
    std::cout << "criterion " << criterion << " ("
              << kCriterionNames[criterion - 1]
              << "): " << (ok ? "PASS" : "FAIL") << "\n";
    for (const std::string& f : failures) std::cout << "    " << f << "\n";
    if (ok) ++passed;
  }

  std::cerr << "[acceptance] determinism: four reduced validation runs\n";
  CliCapture base = run_validate_cli(1);
  CliCapture repeat = run_validate_cli(1);
  CliCapture two = run_validate_cli(2);
  CliCapture three = run_validate_cli(3);
  bool deterministic = !base.out.empty() && base.out == repeat.out &&
                       base.out == two.out && base.out == three.out &&
                       base.code == repeat.code && base.code == two.code &&
                       base.code == three.code;
  std::cout << "criterion 7 (" << kCriterionNames[6]
            << "): " << (deterministic ? "PASS" : "FAIL") << "\n";
  if (!deterministic) {
    std::cout << "    outputs or exit codes differ across reruns/worker counts\n";
    std::cout << "    bytes: base=" << base.out.size()
              << " repeat=" << repeat.out.size() << " two=" << two.out.size()
              << " three=" << three.out.size() << "\n";
  } else {
    ++passed;
  }

  std::cout << "acceptance: " << passed << " of 7 criteria passed\n";
  return passed == 7 ? 0 : 1;
}
