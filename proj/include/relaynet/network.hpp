#pragma once

// N-relay Gaussian full-duplex networks.
//
// Nodes are numbered 0..N+1: node 0 is the source, node N+1 the destination
// and 1..N the relays. gain(i, j) is the complex channel gain from
// transmitter i to receiver j. Transmit power is normalized to 1, so any SNR
// scaling must be folded into the gains before construction.
//
// All capacities are in bits per channel use (log base 2).

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "relaynet/complex_matrix.hpp"

namespace relaynet {

using Node = std::size_t;

// Nonnegative, finite number of bits per channel use.
class CapacityBits {
 public:
  constexpr CapacityBits() = default;
  explicit CapacityBits(double bits);

  constexpr double bits() const noexcept { return bits_; }

  friend constexpr auto operator<=>(CapacityBits, CapacityBits) = default;

 private:
  double bits_ = 0.0;
};

// Builds a gain, rejecting NaN or infinite components.
Complex make_gain(double re, double im);

// Relays are split into `num_layers` layers of `relays_per_layer` nodes;
// relay k sits in layer ceil(k / relays_per_layer). The source is layer 0 and
// the destination layer num_layers + 1.
struct LayerStructure {
  std::size_t num_layers = 1;
  std::size_t relays_per_layer = 1;

  std::size_t num_relays() const noexcept { return num_layers * relays_per_layer; }

  friend bool operator==(const LayerStructure&, const LayerStructure&) = default;
};

class Network {
 public:
  // `gains` must be (N+2) x (N+2). Diagonal entries are discarded. Throws
  // ValidationError when a gain feeds the source, leaves the destination, is
  // not finite, or (for layered networks) skips a layer.
  Network(std::size_t num_relays, CMatrix gains,
          std::optional<LayerStructure> layering = std::nullopt);

  std::size_t num_relays() const noexcept { return num_relays_; }
  std::size_t num_nodes() const noexcept { return num_relays_ + 2; }
  static constexpr Node source() noexcept { return 0; }
  Node destination() const noexcept { return num_relays_ + 1; }

  const Complex& gain(Node from, Node to) const { return gains_(from, to); }
  const CMatrix& gains() const noexcept { return gains_; }

  const std::optional<LayerStructure>& layering() const noexcept { return layering_; }
  bool is_layered() const noexcept { return layering_.has_value(); }

  // Layer index of `node`; requires a layered network.
  std::size_t layer_of(Node node) const;

  // Nodes of layer l in increasing order; requires a layered network.
  std::vector<Node> layer_nodes(std::size_t l) const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::size_t num_relays_;
  CMatrix gains_;
  std::optional<LayerStructure> layering_;
};

// log2(1 + |h|^2)
double capacity_of_gain(const Complex& h);

// Point-to-point capacity R_{i->j}. Requires 0 <= i <= N, 1 <= j <= N+1, i != j.
CapacityBits link_capacity(const Network& net, Node i, Node j);

// Real nonnegative gain sqrt(2^r - 1) whose link capacity is r.
Complex gain_for_capacity(double bits);

struct LinkSpec {
  Node from;
  Node to;
  double bits;
};

// Builds a network from per-link capacities; unspecified links are absent.
Network network_from_capacities(std::size_t num_relays, std::span<const LinkSpec> links,
                                std::optional<LayerStructure> layering = std::nullopt);

// JSON document, see README for the schema.
Network load_network(std::string_view json_text);
std::string save_network(const Network& net);

}  // namespace relaynet
