#pragma once

// Randomised property suites shared by the unit tests and the acceptance
// binary. Each returns how many instances ran and which failed first.

#include <cstdint>
#include <filesystem>
#include <string>

namespace alginv::testing {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return instances > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

SuiteResult division_contract(std::size_t n, std::uint64_t seed);
SuiteResult s_polynomials_reduce(std::size_t n, std::uint64_t seed);
SuiteResult membership_agrees_with_oracle(std::size_t n, std::uint64_t seed);
SuiteResult reduced_basis_canonicity(std::size_t n, std::uint64_t seed);
SuiteResult lie_laws(std::size_t n, std::uint64_t seed);
SuiteResult template_commutation(std::size_t n, std::uint64_t seed);
// Random small POST runs: dimensions never increase along the trace, the
// result lies in J and J is Lie-closed.
SuiteResult chain_monotonicity(std::size_t n, std::uint64_t seed);
// Every spec in `dir` run with the numeric check on; each report that
// carries a numeric section must pass it.
SuiteResult corpus_numeric_soundness(const std::filesystem::path& dir);

}  // namespace alginv::testing
