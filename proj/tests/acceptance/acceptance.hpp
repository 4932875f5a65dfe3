#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qmetric::acceptance {

struct Options {
  std::uint64_t seed = 20240917;
  /// Directory holding the *.txt metric corpus used by criterion 6.
  std::string data_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::size_t checks = 0;
  double seconds = 0.0;
  double limit_seconds = 0.0;  ///< 0 when the criterion has no runtime limit
};

CriterionResult diagonal_recovery(const Options& options);
CriterionResult quasi_leibniz(const Options& options);
CriterionResult reach_certificate(const Options& options);
CriterionResult circle_convergence(const Options& options);
CriterionResult expectation_axioms(const Options& options);
CriterionResult mk_oracle(const Options& options);
CriterionResult fuzzy_torus_structure(const Options& options);
CriterionResult fixed_point_modulus(const Options& options);
CriterionResult commutative_cross_check(const Options& options);

/// All nine, in order. `only` restricts to the listed ids when nonempty.
std::vector<CriterionResult> run_all(const Options& options, const std::vector<int>& only = {});

/// "PASS  3  reach-certificate  <detail>  (0.41 s)".
std::string format_line(const CriterionResult& result);

std::string default_data_dir();

}  // namespace qmetric::acceptance
