#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsearch {

// One self-check outcome. detail is empty on success and carries the
// mismatch or exception text on failure.
struct VerifyCheck {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the built-in self-checks: every primitive is compared against a dense
// reference matrix constructed directly from its definition (sign-rule
// Walsh-Hadamard, single-qubit embedding, diagonal flips, permutation
// tables), programs against products of those references, and the
// amplification iterate against both its dense matrix and the closed 2x2
// recurrence. The seed drives the randomized program draws.
std::vector<VerifyCheck> run_verify(std::uint64_t seed);

}  // namespace qsearch
