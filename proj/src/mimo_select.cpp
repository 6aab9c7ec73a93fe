#include "relaynet/mimo_select.hpp"

#include <algorithm>
#include <cmath>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

void check_dims(const MimoChannel& h, std::size_t k_t, std::size_t k_r) {
  if (k_t < 1 || k_t > h.num_tx()) throw InvalidArgument("k_t must satisfy 1 <= k_t <= n_t");
  if (k_r < 1 || k_r > h.num_rx()) throw InvalidArgument("k_r must satisfy 1 <= k_r <= n_r");
}

void check_sizes(std::size_t n_t, std::size_t n_r, std::size_t k_t, std::size_t k_r) {
  if (k_t < 1 || k_t > n_t || k_r < 1 || k_r > n_r) {
    throw InvalidArgument("subchannel dimensions must satisfy 1 <= k <= n on both sides");
  }
}

double capacity_of(const MimoChannel& h, const IndexSet& rx, const IndexSet& tx) {
  return log2_det_identity_plus_gram(select_submatrix(h.matrix(), rx, tx));
}

std::vector<std::size_t> without(const std::vector<std::size_t>& v, std::size_t pos) {
  std::vector<std::size_t> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != pos) out.push_back(v[i]);
  return out;
}

}  // namespace

SubchannelSelection best_subchannel_bruteforce(const MimoChannel& h, std::size_t k_t, std::size_t k_r) {
  check_dims(h, k_t, k_r);
  const double combos = binomial(h.num_tx(), k_t) * binomial(h.num_rx(), k_r);
  if (combos > kMaxBruteForceCombinations) {
    throw LimitExceeded("brute-force selection is capped at 1e6 subset pairs");
  }
  double best = -1.0;
  std::vector<std::size_t> best_tx, best_rx;
  for_each_combination(h.num_tx(), k_t, [&](const std::vector<std::size_t>& tx) {
    const IndexSet txs(tx);
    for_each_combination(h.num_rx(), k_r, [&](const std::vector<std::size_t>& rx) {
      const double c = capacity_of(h, IndexSet(rx), txs);
      if (c > best) {
        best = c;
        best_tx = tx;
        best_rx = rx;
      }
    });
  });
  return {IndexSet(best_tx), IndexSet(best_rx), CapacityBits(best)};
}

GreedyResult greedy_subchannel_trace(const MimoChannel& h, std::size_t k_t, std::size_t k_r) {
  check_dims(h, k_t, k_r);
  std::vector<std::size_t> rx = IndexSet::range(h.num_rx()).indices();
  std::vector<std::size_t> tx = IndexSet::range(h.num_tx()).indices();
  double current = capacity_of(h, IndexSet(rx), IndexSet(tx));
  GreedyResult result;

  auto drop_one = [&](bool receiver) {
    std::vector<std::size_t>& side = receiver ? rx : tx;
    double best = -1.0;
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < side.size(); ++pos) {
      const auto reduced = without(side, pos);
      const double c = receiver ? capacity_of(h, IndexSet(reduced), IndexSet(tx))
                                : capacity_of(h, IndexSet(rx), IndexSet(reduced));
      if (c > best) {
        best = c;
        best_pos = pos;
      }
    }
    result.steps.push_back({receiver, side[best_pos], side.size(), current, best});
    side = without(side, best_pos);
    current = best;
  };

  while (rx.size() > k_r) drop_one(true);
  while (tx.size() > k_t) drop_one(false);
  result.selection = {IndexSet(tx), IndexSet(rx), CapacityBits(current)};
  return result;
}

SubchannelSelection greedy_subchannel(const MimoChannel& h, std::size_t k_t, std::size_t k_r) {
  return greedy_subchannel_trace(h, k_t, k_r).selection;
}

double thm3_lower_bound(double capacity, std::size_t n_t, std::size_t n_r, std::size_t k_t, std::size_t k_r) {
  check_sizes(n_t, n_r, k_t, k_r);
  const double ratio = static_cast<double>(std::min(k_t, k_r)) / static_cast<double>(std::min(n_t, n_r));
  return ratio * capacity - std::log2(binomial(n_t, k_t) * binomial(n_r, k_r));
}

Lemma1Bound lemma1_bounds(double capacity, std::size_t n_t, std::size_t n_r, std::size_t k_r) {
  if (n_t < 1 || n_t > n_r) {
    throw InvalidArgument("incremental receiver bound needs 1 <= n_t <= n_r; pass the reciprocal channel");
  }
  if (k_r < 1 || k_r > n_r) throw InvalidArgument("k_r must satisfy 1 <= k_r <= n_r");
  if (k_r < n_t) {
    const double lower = static_cast<double>(k_r) / static_cast<double>(n_t) * capacity -
                         std::log2(binomial(n_r, k_r) / binomial(n_t, k_r));
    return {Lemma1Case::few_receivers, lower, std::nullopt};
  }
  const double lower = capacity - std::log2(binomial(n_r, k_r) / binomial(n_r - n_t, k_r - n_t));
  return {Lemma1Case::many_receivers, lower, capacity};
}

double lemma2_fraction(std::size_t n_t, std::size_t n_r, std::size_t k_t, std::size_t k_r) {
  check_sizes(n_t, n_r, k_t, k_r);
  return static_cast<double>(k_t * k_r) / static_cast<double>(n_t * n_r);
}

MimoChannel make_parallel_channel(std::size_t n, double per_link_bits) {
  if (n < 1) throw InvalidArgument("parallel channel needs n >= 1");
  const Complex g = gain_for_capacity(per_link_bits);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = g;
  return MimoChannel(std::move(h));
}

MimoChannel make_allones_channel(std::size_t n_t, std::size_t n_r, double power) {
  if (!(power >= 0.0) || !std::isfinite(power)) throw InvalidArgument("power must be finite and nonnegative");
  if (n_t < 1 || n_r < 1) throw InvalidArgument("channel needs at least one antenna per side");
  CMatrix h(n_r, n_t);
  const double g = std::sqrt(power);
  for (std::size_t r = 0; r < n_r; ++r)
    for (std::size_t c = 0; c < n_t; ++c) h(r, c) = g;
  return MimoChannel(std::move(h));
}

}  // namespace relaynet
