#pragma once

// Property suites behind the `verify` command. Each check reports how many
// samples it ran and the worst residual against its threshold.

#include <cstdint>
#include <string>
#include <vector>

#include "pincherle/special_functions.hpp"

namespace pincherle {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  std::string to_json() const;
};

/// gamma, duality, fde, laplace, mb, special or all. Throws ParameterError
/// for an unknown suite name.
VerifyReport run_suite(const std::string& suite, std::uint64_t seed);

const std::vector<std::string>& suite_names();

struct BankEntry {
  std::string name;
  GParams params;
  Complex z;
};

/// Meijer G kernels of orders up to (2, 2, 2, 3) whose contour integral
/// converges absolutely and whose preferred residue series has simple poles.
const std::vector<BankEntry>& g_test_bank();

/// A second anchor strictly inside the separation window, away from the
/// default one.
double alternate_anchor(const MellinKernel& kernel);

}  // namespace pincherle
