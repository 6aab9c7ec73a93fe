#pragma once

// Cuts, cut values and the approximate capacity (minimum cut value).
//
// A cut is the set of nodes on the source side: it always contains the
// source and never the destination, so an N-relay network has exactly 2^N
// cuts, one per subset of relays. Relay k corresponds to bit k-1 of a mask.

#include <cstdint>
#include <vector>

#include "relaynet/linalg.hpp"
#include "relaynet/network.hpp"

namespace relaynet {

class Cut {
 public:
  // Source-side nodes of an (N+2)-node network. Throws ValidationError if the
  // source is missing, the destination is present or an index is out of range.
  Cut(std::size_t num_relays, std::vector<Node> members);

  static Cut from_relay_mask(std::size_t num_relays, std::uint64_t mask);

  std::size_t num_relays() const noexcept { return num_relays_; }
  const std::vector<Node>& members() const noexcept { return members_; }
  std::vector<Node> complement() const;
  bool contains(Node v) const;
  std::uint64_t relay_mask() const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::size_t num_relays_;
  std::vector<Node> members_;
};

// H_Omega: rows are the nodes outside the cut, columns the nodes inside, both
// in increasing node order.
CMatrix cut_matrix(const Network& net, const Cut& cut);

// log2 det(I + H_Omega H_Omega^H)
CapacityBits cut_value(const Network& net, const Cut& cut);

struct ApproxCapacity {
  CapacityBits bits;
  Cut min_cut;
};

inline constexpr std::size_t kDefaultExhaustiveCap = 20;

// Exhaustive minimum over all 2^N cuts. The minimizer is the smallest relay
// mask among exact ties. Work is split across `threads` workers (0 = use
// hardware concurrency); the result does not depend on the split.
ApproxCapacity approx_capacity(const Network& net, std::size_t cap = kDefaultExhaustiveCap,
                               unsigned threads = 0);

// Per-layer parts Omega_l = Omega ∩ V_l for l = 0..L+1, and the sizes of the
// next layer's complement |V_{l+1} \ Omega_{l+1}| for l = 0..L.
struct LayeredCutView {
  std::vector<std::vector<Node>> parts;
  std::vector<std::size_t> next_complement_sizes;
};

LayeredCutView decompose_cut(const Network& net, const Cut& cut);

struct LayeredCutValue {
  std::vector<double> stages;  // stage l: cut-side layer l to non-cut layer l+1
  double total = 0.0;
};

LayeredCutValue layered_cut_value(const Network& net, const Cut& cut);

// min(|Omega|, |Omega^c|) * max_{i in Omega, j in Omega^c} R_{i->j}
//   + min(|Omega|, |Omega^c|) * log2(|Omega| |Omega^c|)
double cut_upper_bound_general(const Network& net, const Cut& cut);

// T(Omega) = sum_{l=0}^{L} min(|Omega_l|, |Omega_{l+1}^c|)
std::size_t t_of_cut(const Network& net, const Cut& cut);

// ((L-1) N_L + 4) / 2 for odd L; (L N_L + 2) / 2 for even L. Both are integers.
std::size_t t_max(std::size_t num_layers, std::size_t relays_per_layer);

}  // namespace relaynet
