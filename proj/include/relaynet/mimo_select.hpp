#pragma once

// Transmit/receive antenna subset selection for MIMO channels with i.i.d.
// unit-power Gaussian inputs, and the lower bounds on what the best subset
// retains.

#include <optional>
#include <vector>

#include "relaynet/linalg.hpp"

namespace relaynet {

struct SubchannelSelection {
  IndexSet tx;  // selected columns
  IndexSet rx;  // selected rows
  CapacityBits capacity;
};

inline constexpr double kMaxBruteForceCombinations = 1e6;

// Exact best k_t x k_r subchannel. Ties go to the lexicographically smallest
// (tx, rx) pair. Throws LimitExceeded past kMaxBruteForceCombinations subsets.
SubchannelSelection best_subchannel_bruteforce(const MimoChannel& h, std::size_t k_t, std::size_t k_r);

struct GreedyStep {
  bool receiver;                // true: a row was removed, false: a column
  std::size_t removed;          // index in the original channel
  std::size_t antennas_before;  // m, antennas on that side before the removal
  double capacity_before;
  double capacity_after;
};

struct GreedyResult {
  SubchannelSelection selection;
  std::vector<GreedyStep> steps;
};

// Drops one receive antenna at a time (the one whose removal keeps the
// largest log-det, smallest index on ties) until k_r remain, then transmit
// antennas the same way until k_t remain. Each removal among m antennas keeps
// at least (m-1)/m of the capacity, so the result keeps at least
// k_t k_r / (n_t n_r) of the full capacity.
GreedyResult greedy_subchannel_trace(const MimoChannel& h, std::size_t k_t, std::size_t k_r);
SubchannelSelection greedy_subchannel(const MimoChannel& h, std::size_t k_t, std::size_t k_r);

// min(k_t,k_r)/min(n_t,n_r) C - log2(C(n_t,k_t) C(n_r,k_r)); may be negative.
double thm3_lower_bound(double capacity, std::size_t n_t, std::size_t n_r, std::size_t k_t, std::size_t k_r);

enum class Lemma1Case {
  few_receivers,   // k_r < n_t:  (k_r/n_t) C - log2(C(n_r,k_r) / C(n_t,k_r))
  many_receivers,  // k_r >= n_t: C - log2(C(n_r,k_r) / C(n_r-n_t, k_r-n_t)), and C* <= C
};

struct Lemma1Bound {
  Lemma1Case which;
  double lower;
  std::optional<double> upper;
};

// Best n_t x k_r subchannel bounds; requires n_t <= n_r. For n_t > n_r pass
// the reciprocal problem (swap n_t and n_r, select transmitters).
Lemma1Bound lemma1_bounds(double capacity, std::size_t n_t, std::size_t n_r, std::size_t k_r);

// k_t k_r / (n_t n_r)
double lemma2_fraction(std::size_t n_t, std::size_t n_r, std::size_t k_t, std::size_t k_r);

// n x n diagonal channel, each link carrying `per_link_bits`.
MimoChannel make_parallel_channel(std::size_t n, double per_link_bits);

// n_r x n_t channel with every entry sqrt(power); capacity log2(1 + P n_t n_r).
MimoChannel make_allones_channel(std::size_t n_t, std::size_t n_r, double power);

}  // namespace relaynet
