#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sam/network.hpp"
#include "sam/pattern.hpp"
#include "sam/rng.hpp"

namespace sam {

/// Which one-step retrieval map to apply, with its parameters.
struct RetrievalPolicy {
  enum class Kind {
    fixed_threshold,    // keep neurons with score >= h
    input_count,        // fixed threshold, h = |active(input)|
    wta_max,            // keep the argmax neurons (ties kept)
    wta_kth,            // keep neurons at or above the k-th largest score
    gb_cluster_wta,     // per-cluster argmax (GB only)
    gb_sum_of_max,      // empty-cluster fill + keep SUM-OF-MAX score == c
    exhaustive,         // clique completion search (not an iterated map)
  };

  Kind kind = Kind::fixed_threshold;
  std::uint64_t threshold = 0;      // fixed_threshold
  std::uint32_t keep_count = 0;     // wta_kth
  bool wta_uses_som = true;         // gb_cluster_wta score choice
  std::uint32_t target_size = 0;    // exhaustive completion size
  std::uint64_t max_candidates = 1'000'000;

  static RetrievalPolicy fixed(std::uint64_t h) {
    return {Kind::fixed_threshold, h, 0, true, 0, 1'000'000};
  }
  static RetrievalPolicy input_count() { return {Kind::input_count}; }
  static RetrievalPolicy wta_max() { return {Kind::wta_max}; }
  static RetrievalPolicy wta_kth(std::uint32_t k) {
    return {Kind::wta_kth, 0, k, true, 0, 1'000'000};
  }
  static RetrievalPolicy cluster_wta(bool use_som = true) {
    return {Kind::gb_cluster_wta, 0, 0, use_som, 0, 1'000'000};
  }
  static RetrievalPolicy sum_of_max() { return {Kind::gb_sum_of_max}; }
  static RetrievalPolicy exhaustive(std::uint32_t target_size,
                                    std::uint64_t max_candidates = 1'000'000) {
    return {Kind::exhaustive, 0, 0, true, target_size, max_candidates};
  }

  std::string name() const;
};

/// States produced by iterating a one-step map, with the stop reason.
struct Trajectory {
  enum class Outcome { converged, cycle, truncated };

  std::vector<Pattern> states;  // sigma(0..T)
  Outcome outcome = Outcome::truncated;
  std::uint32_t converged_at = 0;  // states[t] == states[t-1]
  std::uint32_t cycle_entry = 0;   // states[T] == states[cycle_entry]
  std::uint32_t cycle_period = 0;  // T - cycle_entry, >= 2

  const Pattern& final_state() const { return states.back(); }
  std::uint32_t iterations() const {
    return static_cast<std::uint32_t>(states.size()) - 1;
  }
};

// One-step maps. All of them update every neuron synchronously from the
// pre-step state.

Pattern step_amari(const AmariNetwork& net, const Pattern& state,
                   std::uint64_t h);

Pattern step_willshaw_threshold(const WillshawNetwork& net,
                                const Pattern& state, std::uint64_t h);

/// WTA on Willshaw scores: policy wta_max keeps all argmax neurons, wta_kth
/// keeps everything at or above the k-th largest score. All-zero scores (or
/// an empty state) yield the empty pattern.
Pattern step_willshaw_wta(const WillshawNetwork& net, const Pattern& state,
                          const RetrievalPolicy& policy);

/// Same WTA selections driven by Amari local fields.
Pattern step_amari_wta(const AmariNetwork& net, const Pattern& state,
                       const RetrievalPolicy& policy);

Pattern step_gb_threshold(const GBNetwork& net, const Pattern& state,
                          std::uint64_t h);

/// Per-cluster argmax, ties kept (including an all-zero cluster, where every
/// neuron ties). use_som picks the SUM-OF-MAX score over the raw field.
Pattern step_gb_wta(const GBNetwork& net, const Pattern& state,
                    bool use_som = true);

/// Fill every empty cluster, then keep exactly the neurons whose SUM-OF-MAX
/// score equals the cluster count.
Pattern step_gb_som(const GBNetwork& net, const Pattern& state);

/// Iterate the policy's step map until a state repeats (convergence when the
/// repeat is immediate, a cycle otherwise) or max_iters steps were taken.
/// For gb_sum_of_max the empty-cluster fill is applied on the first step
/// only, which keeps the active set non-increasing afterwards.
Trajectory iterate(const AnyNetwork& net, const Pattern& input,
                   const RetrievalPolicy& policy, std::uint32_t max_iters);

/// Result of the exhaustive clique-completion search.
struct ExhaustiveResult {
  enum class Status { found, not_found, capacity_exceeded };

  Status status = Status::not_found;
  std::optional<Pattern> pattern;
  std::uint64_t completions = 0;  // valid completions enumerated
};

/// Enumerates completions of `partial` to `target_size` neurons that span a
/// full clique in the binary weight graph. Willshaw/GB pick uniformly among
/// the valid completions; Amari picks among the completions maximizing the
/// total edge weight. The search aborts once it would touch more than
/// max_candidates search nodes.
ExhaustiveResult retrieve_exhaustive(const AnyNetwork& net,
                                     const Pattern& partial,
                                     std::uint32_t target_size,
                                     std::uint64_t max_candidates,
                                     RngStream& rng);

}  // namespace sam
