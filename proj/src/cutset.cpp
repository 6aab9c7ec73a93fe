#include "relaynet/cutset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "relaynet/errors.hpp"

namespace relaynet {

Cut::Cut(std::size_t num_relays, std::vector<Node> members)
    : num_relays_(num_relays), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || members_.front() != 0) throw ValidationError("cut", "must contain the source");
  if (members_.back() > num_relays_ + 1) throw ValidationError("cut", "node index out of range");
  if (members_.back() == num_relays_ + 1) throw ValidationError("cut", "must not contain the destination");
}

Cut Cut::from_relay_mask(std::size_t num_relays, std::uint64_t mask) {
  if (num_relays < 64 && (mask >> num_relays) != 0) throw InvalidArgument("relay mask has bits beyond N");
  std::vector<Node> m{0};
  for (std::size_t k = 1; k <= num_relays; ++k)
    if (mask >> (k - 1) & 1U) m.push_back(k);
  return Cut(num_relays, std::move(m));
}

std::vector<Node> Cut::complement() const {
  std::vector<Node> c;
  for (Node v = 0; v <= num_relays_ + 1; ++v)
    if (!contains(v)) c.push_back(v);
  return c;
}

bool Cut::contains(Node v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::uint64_t Cut::relay_mask() const {
  std::uint64_t mask = 0;
  for (Node v : members_)
    if (v != 0) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

namespace {

void check_cut(const Network& net, const Cut& cut) {
  if (cut.num_relays() != net.num_relays()) {
    throw ValidationError("cut", "cut and network disagree on the number of relays");
  }
}

CMatrix block(const Network& net, const std::vector<Node>& tx, const std::vector<Node>& rx) {
  CMatrix h(rx.size(), tx.size());
  for (std::size_t r = 0; r < rx.size(); ++r)
    for (std::size_t c = 0; c < tx.size(); ++c) h(r, c) = net.gain(tx[c], rx[r]);
  return h;
}

}  // namespace

CMatrix cut_matrix(const Network& net, const Cut& cut) {
  check_cut(net, cut);
  return block(net, cut.members(), cut.complement());
}

CapacityBits cut_value(const Network& net, const Cut& cut) {
  return CapacityBits(log2_det_identity_plus_gram(cut_matrix(net, cut)));
}

ApproxCapacity approx_capacity(const Network& net, std::size_t cap, unsigned threads) {
  const std::size_t n = net.num_relays();
  if (n > cap) {
    throw LimitExceeded("exhaustive cut enumeration is capped at N <= " + std::to_string(cap) +
                        " relays (network has " + std::to_string(n) + ")");
  }
  if (n >= 63) throw LimitExceeded("relay masks are limited to 62 relays");
  const std::uint64_t total = std::uint64_t{1} << n;

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::uint64_t mask = 0;
  };
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    Best b;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const double v = cut_value(net, Cut::from_relay_mask(n, mask)).bits();
      if (v < b.value) b = {v, mask};
    }
    return b;
  };

  unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  if (total < 4096) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = scan(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min(total, w * chunk), hi = std::min(total, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
    }
    for (auto& t : pool) t.join();
  }
  Best best = partial[0];
  for (const Best& b : partial) {
    if (b.value < best.value || (b.value == best.value && b.mask < best.mask)) best = b;
  }
  return {CapacityBits(best.value), Cut::from_relay_mask(n, best.mask)};
}

LayeredCutView decompose_cut(const Network& net, const Cut& cut) {
  check_cut(net, cut);
  if (!net.is_layered()) throw InvalidArgument("network is not layered");
  const std::size_t num_layers = net.layering()->num_layers;
  LayeredCutView view;
  view.parts.resize(num_layers + 2);
  for (std::size_t l = 0; l <= num_layers + 1; ++l) {
    for (Node v : net.layer_nodes(l))
      if (cut.contains(v)) view.parts[l].push_back(v);
  }
  for (std::size_t l = 0; l <= num_layers; ++l) {
    view.next_complement_sizes.push_back(net.layer_nodes(l + 1).size() - view.parts[l + 1].size());
  }
  return view;
}

LayeredCutValue layered_cut_value(const Network& net, const Cut& cut) {
  const LayeredCutView view = decompose_cut(net, cut);
  const std::size_t num_layers = net.layering()->num_layers;
  LayeredCutValue out;
  for (std::size_t l = 0; l <= num_layers; ++l) {
    std::vector<Node> rx;
    for (Node v : net.layer_nodes(l + 1))
      if (!cut.contains(v)) rx.push_back(v);
    const double stage = log2_det_identity_plus_gram(block(net, view.parts[l], rx));
    out.stages.push_back(stage);
    out.total += stage;
  }
  return out;
}

double cut_upper_bound_general(const Network& net, const Cut& cut) {
  check_cut(net, cut);
  const auto inside = cut.members();
  const auto outside = cut.complement();
  double max_link = 0.0;
  for (Node i : inside)
    for (Node j : outside) max_link = std::max(max_link, capacity_of_gain(net.gain(i, j)));
  const double m = static_cast<double>(std::min(inside.size(), outside.size()));
  return m * max_link + m * std::log2(static_cast<double>(inside.size() * outside.size()));
}

std::size_t t_of_cut(const Network& net, const Cut& cut) {
  const LayeredCutView view = decompose_cut(net, cut);
  std::size_t t = 0;
  for (std::size_t l = 0; l < view.next_complement_sizes.size(); ++l) {
    t += std::min(view.parts[l].size(), view.next_complement_sizes[l]);
  }
  return t;
}

std::size_t t_max(std::size_t num_layers, std::size_t relays_per_layer) {
  if (num_layers < 1 || relays_per_layer < 1) throw InvalidArgument("t_max needs L >= 1 and N_L >= 1");
  if (num_layers % 2 == 1) return ((num_layers - 1) * relays_per_layer + 4) / 2;
  return (num_layers * relays_per_layer + 2) / 2;
}

}  // namespace relaynet
