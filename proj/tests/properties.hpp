#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wpcount::testing {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string firstFailure;
  bool ok() const { return failures == 0 && cases > 0; }
};

SuiteResult scalingInvariance(int cases, std::uint64_t seed = 1);
SuiteResult membershipOracle(int cases, std::uint64_t seed = 2);
// f(z) lies in the coefficient ideal of f times I_w(z)^deg f
SuiteResult polynomialValues(int cases, std::uint64_t seed = 3);
// a root z of a monic h lies in I_(1..d) of the ideals of h's coefficients
SuiteResult monicRoots(int cases, std::uint64_t seed = 4);
SuiteResult associativity(int cases, std::uint64_t seed = 5);

std::vector<SuiteResult> allPropertySuites();

}  // namespace wpcount::testing
