#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sam::theory {

// Capacity-threshold constants, as load factors alpha.

/// Stability threshold of the integer-count model: e^-2.
double amari_stability();

/// Erasure-correction threshold (1-rho) * e^{-(1 + 1/(1+rho))}.
double amari_erasure(double rho);

/// Upper stability bound -ln(1 - e^-1); also the WTA threshold at rho = 0.
double amari_upper();

/// One-step WTA retrieval threshold -ln(1 - e^{-1/(1-rho)}).
double willshaw_wta(double rho);

/// Same expression for the clustered model.
double gb_wta(double rho);

/// Critical load of the wrong-message recognition transition.
double wrong_message_alpha();

/// Lookup by CLI name: amari-stability, amari-erasure, amari-upper,
/// willshaw-wta, gb-wta, wrong-message-alpha.
double eval_constant(const std::string& name, std::optional<double> rho);

/// d = 1 - (1 - 1/l^2)^M: probability that a fixed inter-cluster edge is
/// covered by at least one of M random messages.
double edge_density(std::uint32_t l, std::uint64_t m);

/// d^L with L = c(c-1)/2: lower bound on the probability that a random
/// message is recognized as stored (positive association).
double recognition_lower_bound(std::uint32_t l, std::uint32_t c,
                               std::uint64_t m);

/// r(c, rho) = rho(1-rho)c^2 + (1-rho)c((1-rho)c - 1)/2: edges a partially
/// kept message still needs covered. rho is the KEPT fraction of clusters.
double subclique_edge_count(std::uint32_t c, double rho);

/// d^{r(c, rho)}: lower bound on the subclique completion probability.
double subclique_lower_bound(std::uint32_t l, std::uint32_t c, std::uint64_t m,
                             double rho);

struct RecognitionEstimate {
  double probability = 0.0;
  double std_error = 0.0;   // zero in enumeration mode
  bool exact = false;
  std::uint64_t trials = 0; // enumerated cases or MC trials
};

/// P(random message is recognized) for the clustered model with M stored
/// messages: exact enumeration over every (stored set, query) realization
/// when the case count fits the guard, otherwise an error.
RecognitionEstimate exact_recognition_probability(std::uint32_t l,
                                                  std::uint32_t c,
                                                  std::uint64_t m,
                                                  std::uint64_t case_guard =
                                                      200'000'000);

/// Monte Carlo companion of the enumerator: builds a fresh network per trial
/// and recognizes a fresh random message.
RecognitionEstimate mc_recognition_probability(std::uint32_t l,
                                               std::uint32_t c,
                                               std::uint64_t m,
                                               std::uint64_t trials,
                                               std::uint64_t seed);

}  // namespace sam::theory
