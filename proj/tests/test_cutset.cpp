#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "relaynet/cutset.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/experiments.hpp"

using namespace relaynet;

namespace {

Network random_full(std::size_t n, std::size_t trial, double scale = 1.0) {
  EnsembleSpec spec;
  spec.num_relays = n;
  spec.fading = Fading::rayleigh(scale);
  spec.seed = 3;
  return random_network(spec, trial);
}

Network random_layered(std::size_t l, std::size_t nl, std::size_t trial) {
  EnsembleSpec spec;
  spec.topology = Topology::layered(l, nl);
  spec.num_relays = l * nl;
  spec.seed = 4;
  return random_network(spec, trial);
}

}  // namespace

TEST_CASE("cut construction and validation") {
  const Cut c(3, {2, 0, 2});
  CHECK(c.members() == std::vector<Node>{0, 2});
  CHECK(c.complement() == std::vector<Node>{1, 3, 4});
  CHECK(c.relay_mask() == 0b10);
  CHECK(Cut::from_relay_mask(3, 0b101).members() == std::vector<Node>{0, 1, 3});
  CHECK_THROWS_AS(Cut(3, {1}), ValidationError);
  CHECK_THROWS_AS(Cut(3, {0, 4}), ValidationError);
  CHECK_THROWS_AS(Cut(3, {0, 7}), ValidationError);
}

TEST_CASE("cut matrix orientation") {
  const Network net = random_full(3, 0);
  const Cut c(3, {0, 2});
  const CMatrix h = cut_matrix(net, c);
  REQUIRE(h.rows() == 3);
  REQUIRE(h.cols() == 2);
  CHECK(h(0, 0) == net.gain(0, 1));
  CHECK(h(2, 1) == net.gain(2, 4));
  CHECK(cut_value(net, c).bits() == doctest::Approx(oracle::log2det(h)));
}

TEST_CASE("approximate capacity matches an independent exhaustive minimum") {
  for (std::size_t t = 0; t < 120; ++t) {
    const std::size_t n = 1 + t % 8;
    const Network net = random_full(n, t, t % 3 == 0 ? 0.1 : (t % 3 == 1 ? 1.0 : 10.0));
    std::uint64_t argmin = 0;
    const double want = oracle::min_cut_bits(net, &argmin);
    const ApproxCapacity got = approx_capacity(net);
    CHECK(got.bits.bits() == doctest::Approx(want).epsilon(1e-10).scale(1.0));
    CHECK(cut_value(net, got.min_cut).bits() == got.bits.bits());
  }
}

TEST_CASE("thread count does not change the result") {
  for (std::size_t t = 0; t < 5; ++t) {
    const Network net = random_full(13, t);
    const ApproxCapacity one = approx_capacity(net, kDefaultExhaustiveCap, 1);
    for (unsigned threads : {2u, 3u, 7u}) {
      const ApproxCapacity many = approx_capacity(net, kDefaultExhaustiveCap, threads);
      CHECK(many.bits == one.bits);
      CHECK(many.min_cut == one.min_cut);
    }
  }
}

TEST_CASE("ties go to the smallest mask and caps are enforced") {
  CHECK(approx_capacity(Network(3, CMatrix(5, 5))).min_cut.relay_mask() == 0);
  CHECK_THROWS_AS(approx_capacity(Network(21, CMatrix(23, 23))), LimitExceeded);
  CHECK_THROWS_AS(approx_capacity(random_full(6, 0), 5), LimitExceeded);
}

TEST_CASE("layered stage values sum to the whole cut") {
  for (std::size_t t = 0; t < 80; ++t) {
    const std::size_t l = 1 + t % 4, nl = 1 + t % 3;
    const Network net = random_layered(l, nl, t);
    const std::uint64_t mask = (t * 2654435761u) & ((1u << (l * nl)) - 1);
    const Cut cut = Cut::from_relay_mask(l * nl, mask);
    const LayeredCutValue v = layered_cut_value(net, cut);
    CHECK(v.stages.size() == l + 1);
    CHECK(v.total == doctest::Approx(cut_value(net, cut).bits()).epsilon(1e-12).scale(1.0));
    const LayeredCutView view = decompose_cut(net, cut);
    CHECK(view.parts.size() == l + 2);
    CHECK(view.parts.front() == std::vector<Node>{0});
    CHECK(view.parts.back().empty());
  }
  CHECK_THROWS(layered_cut_value(random_full(2, 0), Cut(2, {0})));
}

TEST_CASE("T of a cut and its maximum") {
  CHECK(t_max(1, 4) == 2);
  CHECK(t_max(3, 2) == 4);
  CHECK(t_max(2, 3) == 4);
  CHECK(t_max(3, 10) == 12);
  CHECK(t_max(6, 5) == 16);
  const Network net(4, CMatrix(6, 6), LayerStructure{2, 2});
  // Omega = {S, relay 2 of layer 1, relay 1 of layer 2}
  const Cut cut(4, {0, 2, 3});
  // stages: min(1, 1) + min(1, 1) + min(1, 1)
  CHECK(t_of_cut(net, cut) == 3);
  CHECK(t_of_cut(net, Cut(4, {0})) == 1);
}

TEST_CASE("general cut upper bound dominates the cut value") {
  for (std::size_t t = 0; t < 60; ++t) {
    const Network net = random_full(1 + t % 6, t, 3.0);
    const Cut cut = Cut::from_relay_mask(net.num_relays(), t & ((1u << net.num_relays()) - 1));
    CHECK(cut_value(net, cut).bits() <= cut_upper_bound_general(net, cut) + 1e-9);
  }
}
