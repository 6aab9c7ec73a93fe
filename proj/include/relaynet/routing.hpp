#pragma once

// Single routes (line networks) and the route-versus-capacity guarantees.

#include <vector>

#include "relaynet/network.hpp"

namespace relaynet {

class Path {
 public:
  // Throws ValidationError unless nodes run from the source to the
  // destination through distinct relays over nonzero-gain links.
  Path(const Network& net, std::vector<Node> nodes);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t hops() const noexcept { return nodes_.size() - 1; }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Node> nodes_;
};

// Bottleneck link capacity along the path (decode-and-forward rate).
CapacityBits path_capacity(const Network& net, const Path& path);

struct Route {
  Path path;
  CapacityBits bits;
};

// Widest (max-bottleneck) path. Among widest paths the one with fewest hops,
// then the lexicographically smallest node sequence, is returned. Throws
// DisconnectedError if no path exists.
Route best_route(const Network& net);

inline constexpr std::size_t kMaxEnumerationRelays = 10;

// Every simple source-destination path over nonzero links with at most
// `max_hops` hops, in DFS order (neighbors by increasing index).
std::vector<Path> enumerate_paths(const Network& net, std::size_t max_hops);

struct Guarantee {
  double fraction;
  double gap_bits;
};

// 1 / (floor(N/2) + 1), 2 log2((N+2)/2)
Guarantee thm1_guarantee(std::size_t num_relays);

// 2 / ((L-1) N_L + 4) for odd L, 2 / (L N_L + 2) for even L; gap 2 log2(N_L)
Guarantee thm2_guarantee(std::size_t num_layers, std::size_t relays_per_layer);

struct GuaranteeReport {
  double best_route_bits = 0.0;
  double approx_capacity_bits = 0.0;
  double fraction = 0.0;
  double additive_gap_bits = 0.0;
  bool satisfied = false;

  double bound_bits() const { return fraction * approx_capacity_bits - additive_gap_bits; }
};

inline constexpr double kGuaranteeTolerance = 1e-9;

// Guarantee check from already computed quantities.
GuaranteeReport make_guarantee_report(double route_bits, double capacity_bits, Guarantee g);

// Layered networks are checked against the layered guarantee, all others
// against the general one.
GuaranteeReport check_route_guarantee(const Network& net);

}  // namespace relaynet
