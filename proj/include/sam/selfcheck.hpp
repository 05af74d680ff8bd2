#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sam::selfcheck {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // failure description or a short stats note
};

/// Fixed-threshold retrieval with h <= |input| grows the active set
/// monotonically and converges within n steps. Randomized instances with
/// n <= 256, M <= 200, erasure inputs.
CheckResult willshaw_fixed_convergence(std::uint32_t instances,
                                       std::uint64_t seed);

/// Max-score WTA either repeats state(1) forever or alternates with period 2
/// from t = 1 on. Randomized erasure instances, same bounds as above.
CheckResult willshaw_wta_one_step_law(std::uint32_t instances,
                                      std::uint64_t seed);

/// After the initial empty-cluster fill, SUM-OF-MAX active sets are
/// non-increasing and converge within c*l iterations.
CheckResult gb_som_shrinkage(std::uint32_t instances, std::uint64_t seed);

/// Every stored message is a one-step fixed point of the clustered threshold
/// dynamics at h = c.
CheckResult gb_fixed_stability(std::uint32_t instances, std::uint64_t seed);

/// Off-diagonal binary weights equal the clipped integer counts.
CheckResult clipping_equivalence(std::uint32_t instances, std::uint64_t seed);

/// A flat binary network built from clustered messages matches the block
/// weights on all inter-cluster pairs.
CheckResult gb_willshaw_restriction(std::uint32_t instances,
                                    std::uint64_t seed);

/// All score operations agree with a naive dense-matrix reference on random
/// instances with n <= 64.
CheckResult dense_reference_equivalence(std::uint32_t instances,
                                        std::uint64_t seed);

/// Exhaustive completion agrees with a subset-enumeration oracle on n <= 32;
/// in particular a unique completion is always returned.
CheckResult exhaustive_vs_bruteforce(std::uint32_t instances,
                                     std::uint64_t seed);

/// Permuting the stored set leaves the serialized weights identical.
CheckResult store_order_independence(std::uint32_t instances,
                                     std::uint64_t seed);

/// Steps read only the pre-step state (a sequential update would differ on
/// this crafted instance).
CheckResult synchronous_update();

/// Recognition holds for every stored message.
CheckResult stored_always_recognized(std::uint32_t instances,
                                     std::uint64_t seed);

std::vector<CheckResult> run_all(std::uint64_t seed, bool quick = false);

}  // namespace sam::selfcheck
