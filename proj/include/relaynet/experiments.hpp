#pragma once

// Seeded Monte Carlo harness for the route and MIMO selection guarantees.
//
// Randomness is counter based: every draw is a pure function of
// (seed, trial, stream, index), so results do not depend on how trials are
// scheduled across threads.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relaynet/linalg.hpp"
#include "relaynet/network.hpp"

namespace relaynet {

// --- counter-based random numbers -------------------------------------------

// Uniform in [0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index);
// Standard normal (Box-Muller on two independent uniforms).
double counter_normal(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index);

// --- ensembles ----------------------------------------------------------------

struct Topology {
  enum class Kind { full, layered } kind = Kind::full;
  std::size_t num_layers = 0;        // layered only
  std::size_t relays_per_layer = 0;  // layered only

  static Topology full() { return {}; }
  static Topology layered(std::size_t l, std::size_t n_l) { return {Kind::layered, l, n_l}; }
};

struct Fading {
  enum class Kind { rayleigh, fixed_snr } kind = Kind::rayleigh;
  double value = 1.0;  // Rayleigh scale (E|h|^2 = scale^2) or SNR in dB

  static Fading rayleigh(double scale = 1.0) { return {Kind::rayleigh, scale}; }
  static Fading fixed_snr(double db) { return {Kind::fixed_snr, db}; }
};

struct EnsembleSpec {
  Topology topology;
  std::size_t num_relays = 1;
  Fading fading;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  // Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

// Complex circular Gaussian gains on every allowed link (all i -> j for the
// full topology, successive layers only for the layered one); fixed SNR uses
// a constant magnitude with a uniform phase.
Network random_network(const EnsembleSpec& spec, std::size_t trial);

struct TrialRecord {
  std::size_t trial_index = 0;
  double approx_capacity_bits = 0.0;
  double best_route_bits = 0.0;
  double fraction_achieved = 0.0;  // route / capacity, 1 when capacity is 0
  double theorem_bound_bits = 0.0;
  bool satisfied = false;
};

struct VerifySummary {
  std::vector<TrialRecord> records;
  std::size_t violations = 0;
  double min_fraction = 0.0;
  double mean_fraction = 0.0;
};

// Runs the general guarantee on full topologies and the layered guarantee on
// layered ones. `threads` = 0 uses hardware concurrency.
VerifySummary run_verify(const EnsembleSpec& spec, unsigned threads = 0);

// Both make_guarantee_report and run_verify agree on this record for net.
TrialRecord evaluate_trial(const Network& net, std::size_t trial_index);

// trial,cap_bits,route_bits,fraction,bound_bits,satisfied
void write_trial_csv(std::ostream& os, const std::vector<TrialRecord>& records);
std::string trial_records_json(const std::vector<TrialRecord>& records);

// --- MIMO selection -----------------------------------------------------------

enum class MimoClaim { all, thm3, lemma1, lemma2 };

struct MimoRecord {
  std::size_t trial = 0;
  std::size_t k_t = 0;
  std::size_t k_r = 0;
  double capacity_bits = 0.0;
  double best_bits = 0.0;
  double greedy_bits = 0.0;
  double thm3_bound_bits = 0.0;
  bool lemma1_applies = false;
  double lemma1_bound_bits = 0.0;
  double lemma2_bound_bits = 0.0;
  bool greedy_steps_ok = true;
  bool satisfied = false;
};

struct MimoVerifySummary {
  std::vector<MimoRecord> records;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_thm3_slack = 0.0;
  double worst_lemma1_slack = 0.0;
  double worst_lemma2_slack = 0.0;
  double worst_step_slack = 0.0;  // min over greedy steps of after - (m-1)/m before
};

// Random n_r x n_t channel for one trial: i.i.d. CN(0, s^2) entries with a
// per-trial scale s log-uniform in [0.1, 10].
MimoChannel random_channel(std::size_t n_t, std::size_t n_r, std::uint64_t seed, std::size_t trial);

// Evaluates every (k_t, k_r) on one channel; appends to `out`.
void evaluate_channel(const MimoChannel& h, std::size_t trial, MimoClaim claim, MimoVerifySummary& out);

MimoVerifySummary run_mimo_verify(std::size_t n_t, std::size_t n_r, std::size_t trials, std::uint64_t seed,
                                  MimoClaim claim = MimoClaim::all, unsigned threads = 0);

// trial,kt,kr,cap_bits,best_bits,greedy_bits,thm3_bound_bits,lemma1_bound_bits,lemma2_bound_bits,satisfied
void write_mimo_csv(std::ostream& os, const std::vector<MimoRecord>& records);

struct TightnessRecord {
  std::string channel;  // "parallel" or "allones"
  std::size_t k_t = 0;
  std::size_t k_r = 0;
  double ratio = 0.0;
  double expected = 0.0;
  bool ok = false;
};

inline constexpr double kAllOnesPower = 1e-4;
inline constexpr double kAllOnesRelativeTolerance = 0.01;

// Unit-parallel n x n channel (square shapes only): best ratio must equal
// min(k_t,k_r)/n. All-ones channel at kAllOnesPower: ratio within 1% of
// k_t k_r / (n_t n_r).
std::vector<TightnessRecord> run_mimo_tightness(std::size_t n_t, std::size_t n_r);

// --- structural properties --------------------------------------------------

struct Prop1Result {
  std::size_t max_t = 0;
  std::size_t bound = 0;
  std::uint64_t argmax_mask = 0;
  bool ok = false;
};

// Exhaustive max of T over all cuts of an L x N_L layered network.
Prop1Result run_prop1(std::size_t num_layers, std::size_t relays_per_layer);

struct Prop2Record {
  std::size_t trial = 0;
  std::size_t k = 0;
  bool positive_definite = false;
  double poly_relative = 0.0;
  double scalar_relative = 0.0;
  bool satisfied = false;
};

inline constexpr double kIdentityTolerance = 1e-8;

// Even trials use an indefinite Hermitian (B + B^H)/2, odd trials the
// positive definite I + B B^H; every k in [1, n] is checked.
CMatrix random_hermitian(std::size_t n, std::uint64_t seed, std::size_t trial);
std::vector<Prop2Record> run_prop2(std::size_t n, std::size_t trials, std::uint64_t seed);

// trial,k,positive_definite,poly_relative,scalar_relative,satisfied
void write_prop2_csv(std::ostream& os, const std::vector<Prop2Record>& records);

// Shortest round-trip representation, used for all CSV numbers.
std::string format_double(double v);

}  // namespace relaynet
