#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rotopulse {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // gate it was held against
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  unsigned seed = 0;
  std::vector<VerifyCheck> checks;
  bool all_pass = false;
  nlohmann::ordered_json extra;  // suite-specific structured results

  nlohmann::ordered_json to_json() const;
};

/// Run one of the named verification suites:
///   lemma1       boost-momentum conservation along an integrated run
///   theorem1     randomized exclusion of distinct phase offsets
///   theorem2     mass-kernel dimensions and conditioning
///   monotonicity kernel-slope sign scan and sphere threshold location
///   all          every suite above
/// Unknown names throw DomainError.
VerifyReport run_verify_suite(const std::string& suite, unsigned seed);

}  // namespace rotopulse
