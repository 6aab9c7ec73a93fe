#include "relaynet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "relaynet/cutset.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/mimo_select.hpp"
#include "relaynet/routing.hpp"

namespace relaynet {

namespace {

constexpr double kCheckTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ stream);
  return splitmix64(h ^ index);
}

// Runs body(i) for i in [0, count) on `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index) {
  return static_cast<double>(counter_hash(seed, trial, stream, index) >> 11) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index) {
  const double u1 = 1.0 - counter_uniform(seed, trial, stream, 2 * index);  // (0, 1]
  const double u2 = counter_uniform(seed, trial, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void EnsembleSpec::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (num_relays < 1) throw InvalidArgument("num_relays must be at least 1");
  if (topology.kind == Topology::Kind::layered) {
    if (topology.num_layers < 1 || topology.relays_per_layer < 1) {
      throw InvalidArgument("layered topology needs L >= 1 and N_L >= 1");
    }
    if (topology.num_layers * topology.relays_per_layer != num_relays) {
      throw InvalidArgument("layered topology needs L * N_L == N");
    }
  }
  if (!std::isfinite(fading.value)) throw InvalidArgument("fading parameter must be finite");
  if (fading.kind == Fading::Kind::rayleigh && fading.value < 0.0) {
    throw InvalidArgument("Rayleigh scale must be nonnegative");
  }
}

Network random_network(const EnsembleSpec& spec, std::size_t trial) {
  spec.validate();
  const std::size_t n = spec.num_relays + 2;
  std::optional<LayerStructure> layering;
  if (spec.topology.kind == Topology::Kind::layered) {
    layering = LayerStructure{spec.topology.num_layers, spec.topology.relays_per_layer};
  }
  const std::size_t width = layering ? layering->relays_per_layer : 0;
  auto layer = [&](Node v) -> std::size_t {
    if (v == 0) return 0;
    if (v == n - 1) return layering->num_layers + 1;
    return (v + width - 1) / width;
  };

  CMatrix gains(n, n);
  for (Node i = 0; i + 1 < n; ++i) {
    for (Node j = 1; j < n; ++j) {
      if (i == j) continue;
      if (layering && layer(j) != layer(i) + 1) continue;
      const std::uint64_t edge = i * n + j;
      if (spec.fading.kind == Fading::Kind::rayleigh) {
        const double s = spec.fading.value * std::numbers::sqrt2 / 2.0;
        gains(i, j) = {s * counter_normal(spec.seed, trial, 0, edge), s * counter_normal(spec.seed, trial, 1, edge)};
      } else {
        const double mag = std::sqrt(std::pow(10.0, spec.fading.value / 10.0));
        gains(i, j) = std::polar(mag, 2.0 * std::numbers::pi * counter_uniform(spec.seed, trial, 2, edge));
      }
    }
  }
  return Network(spec.num_relays, std::move(gains), layering);
}

TrialRecord evaluate_trial(const Network& net, std::size_t trial_index) {
  double route = 0.0;
  try {
    route = best_route(net).bits.bits();
  } catch (const DisconnectedError&) {
    route = 0.0;
  }
  const double cap = approx_capacity(net, kDefaultExhaustiveCap, 1).bits.bits();
  const Guarantee g = net.is_layered()
                          ? thm2_guarantee(net.layering()->num_layers, net.layering()->relays_per_layer)
                          : thm1_guarantee(net.num_relays());
  const GuaranteeReport rep = make_guarantee_report(route, cap, g);
  TrialRecord r;
  r.trial_index = trial_index;
  r.approx_capacity_bits = cap;
  r.best_route_bits = route;
  r.fraction_achieved = cap > 0.0 ? route / cap : 1.0;
  r.theorem_bound_bits = rep.bound_bits();
  r.satisfied = rep.satisfied;
  return r;
}

VerifySummary run_verify(const EnsembleSpec& spec, unsigned threads) {
  spec.validate();
  VerifySummary s;
  s.records.resize(spec.trials);
  parallel_for(spec.trials, threads, [&](std::size_t t) { s.records[t] = evaluate_trial(random_network(spec, t), t); });
  s.min_fraction = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& r : s.records) {
    if (!r.satisfied) ++s.violations;
    s.min_fraction = std::min(s.min_fraction, r.fraction_achieved);
    sum += r.fraction_achieved;
  }
  s.mean_fraction = sum / static_cast<double>(s.records.size());
  return s;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trial_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "trial,cap_bits,route_bits,fraction,bound_bits,satisfied\n";
  for (const auto& r : records) {
    os << r.trial_index << ',' << format_double(r.approx_capacity_bits) << ',' << format_double(r.best_route_bits)
       << ',' << format_double(r.fraction_achieved) << ',' << format_double(r.theorem_bound_bits) << ','
       << (r.satisfied ? "true" : "false") << '\n';
  }
}

std::string trial_records_json(const std::vector<TrialRecord>& records) {
  auto arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"trial", r.trial_index},
                   {"cap_bits", r.approx_capacity_bits},
                   {"route_bits", r.best_route_bits},
                   {"fraction", r.fraction_achieved},
                   {"bound_bits", r.theorem_bound_bits},
                   {"satisfied", r.satisfied}});
  }
  return arr.dump(2) + "\n";
}

// --- MIMO ---------------------------------------------------------------------

MimoChannel random_channel(std::size_t n_t, std::size_t n_r, std::uint64_t seed, std::size_t trial) {
  if (n_t < 1 || n_r < 1) throw InvalidArgument("channel needs at least one antenna per side");
  const double scale = std::pow(10.0, 2.0 * counter_uniform(seed, trial, 20, 0) - 1.0);
  const double s = scale * std::numbers::sqrt2 / 2.0;
  CMatrix h(n_r, n_t);
  for (std::size_t r = 0; r < n_r; ++r) {
    for (std::size_t c = 0; c < n_t; ++c) {
      const std::uint64_t idx = r * n_t + c;
      h(r, c) = {s * counter_normal(seed, trial, 21, idx), s * counter_normal(seed, trial, 22, idx)};
    }
  }
  return MimoChannel(std::move(h));
}

void evaluate_channel(const MimoChannel& h, std::size_t trial, MimoClaim claim, MimoVerifySummary& out) {
  const std::size_t n_t = h.num_tx(), n_r = h.num_rx();
  const double cap = mimo_capacity(h).bits();
  const bool check_thm3 = claim == MimoClaim::all || claim == MimoClaim::thm3;
  const bool check_lemma1 = claim == MimoClaim::all || claim == MimoClaim::lemma1;
  const bool check_lemma2 = claim == MimoClaim::all || claim == MimoClaim::lemma2;

  for (std::size_t k_t = 1; k_t <= n_t; ++k_t) {
    for (std::size_t k_r = 1; k_r <= n_r; ++k_r) {
      MimoRecord rec;
      rec.trial = trial;
      rec.k_t = k_t;
      rec.k_r = k_r;
      rec.capacity_bits = cap;
      rec.best_bits = best_subchannel_bruteforce(h, k_t, k_r).capacity.bits();
      const GreedyResult greedy = greedy_subchannel_trace(h, k_t, k_r);
      rec.greedy_bits = greedy.selection.capacity.bits();
      rec.thm3_bound_bits = thm3_lower_bound(cap, n_t, n_r, k_t, k_r);
      rec.lemma2_bound_bits = lemma2_fraction(n_t, n_r, k_t, k_r) * cap;

      std::optional<Lemma1Bound> l1;
      if (n_t <= n_r && k_t == n_t) {
        l1 = lemma1_bounds(cap, n_t, n_r, k_r);
      } else if (n_r <= n_t && k_r == n_r) {
        l1 = lemma1_bounds(cap, n_r, n_t, k_t);  // reciprocal channel
      }
      if (l1) {
        rec.lemma1_applies = true;
        rec.lemma1_bound_bits = l1->lower;
      }

      double step_slack = std::numeric_limits<double>::infinity();
      for (const GreedyStep& st : greedy.steps) {
        const double m = static_cast<double>(st.antennas_before);
        step_slack = std::min(step_slack, st.capacity_after - (m - 1.0) / m * st.capacity_before);
      }
      rec.greedy_steps_ok = step_slack >= -kCheckTolerance;

      bool ok = true;
      if (check_thm3) {
        out.worst_thm3_slack = std::min(out.worst_thm3_slack, rec.best_bits - rec.thm3_bound_bits);
        ok = ok && rec.best_bits >= rec.thm3_bound_bits - kCheckTolerance;
      }
      if (check_lemma1 && l1) {
        double slack = rec.best_bits - l1->lower;
        if (l1->upper) slack = std::min(slack, *l1->upper - rec.best_bits);
        out.worst_lemma1_slack = std::min(out.worst_lemma1_slack, slack);
        ok = ok && slack >= -kCheckTolerance;
      }
      if (check_lemma2) {
        const double slack = std::min(rec.best_bits, rec.greedy_bits) - rec.lemma2_bound_bits;
        out.worst_lemma2_slack = std::min(out.worst_lemma2_slack, slack);
        out.worst_step_slack = std::min(out.worst_step_slack, step_slack);
        ok = ok && slack >= -kCheckTolerance && rec.greedy_steps_ok &&
             rec.greedy_bits <= rec.best_bits + kCheckTolerance;
      }
      rec.satisfied = ok;
      ++out.checks;
      if (!ok) ++out.violations;
      out.records.push_back(rec);
    }
  }
}

MimoVerifySummary run_mimo_verify(std::size_t n_t, std::size_t n_r, std::size_t trials, std::uint64_t seed,
                                  MimoClaim claim, unsigned threads) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<MimoVerifySummary> per_trial(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    MimoVerifySummary& s = per_trial[t];
    s.worst_thm3_slack = s.worst_lemma1_slack = s.worst_lemma2_slack = s.worst_step_slack = inf;
    evaluate_channel(random_channel(n_t, n_r, seed, t), t, claim, s);
  });
  MimoVerifySummary out;
  out.worst_thm3_slack = out.worst_lemma1_slack = out.worst_lemma2_slack = out.worst_step_slack = inf;
  for (auto& s : per_trial) {
    out.records.insert(out.records.end(), s.records.begin(), s.records.end());
    out.checks += s.checks;
    out.violations += s.violations;
    out.worst_thm3_slack = std::min(out.worst_thm3_slack, s.worst_thm3_slack);
    out.worst_lemma1_slack = std::min(out.worst_lemma1_slack, s.worst_lemma1_slack);
    out.worst_lemma2_slack = std::min(out.worst_lemma2_slack, s.worst_lemma2_slack);
    out.worst_step_slack = std::min(out.worst_step_slack, s.worst_step_slack);
  }
  return out;
}

void write_mimo_csv(std::ostream& os, const std::vector<MimoRecord>& records) {
  os << "trial,kt,kr,cap_bits,best_bits,greedy_bits,thm3_bound_bits,lemma1_bound_bits,lemma2_bound_bits,"
        "satisfied\n";
  for (const auto& r : records) {
    os << r.trial << ',' << r.k_t << ',' << r.k_r << ',' << format_double(r.capacity_bits) << ','
       << format_double(r.best_bits) << ',' << format_double(r.greedy_bits) << ','
       << format_double(r.thm3_bound_bits) << ',' << (r.lemma1_applies ? format_double(r.lemma1_bound_bits) : "")
       << ',' << format_double(r.lemma2_bound_bits) << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
}

std::vector<TightnessRecord> run_mimo_tightness(std::size_t n_t, std::size_t n_r) {
  std::vector<TightnessRecord> out;
  if (n_t == n_r) {
    const std::size_t n = n_t;
    const MimoChannel h = make_parallel_channel(n, 1.0);
    const double cap = mimo_capacity(h).bits();
    for (std::size_t k_t = 1; k_t <= n; ++k_t) {
      for (std::size_t k_r = 1; k_r <= n; ++k_r) {
        const double ratio = best_subchannel_bruteforce(h, k_t, k_r).capacity.bits() / cap;
        const double expected = static_cast<double>(std::min(k_t, k_r)) / static_cast<double>(n);
        out.push_back({"parallel", k_t, k_r, ratio, expected, ratio == expected});
      }
    }
  }
  const MimoChannel ones = make_allones_channel(n_t, n_r, kAllOnesPower);
  const double cap = mimo_capacity(ones).bits();
  for (std::size_t k_t = 1; k_t <= n_t; ++k_t) {
    for (std::size_t k_r = 1; k_r <= n_r; ++k_r) {
      const double ratio = best_subchannel_bruteforce(ones, k_t, k_r).capacity.bits() / cap;
      const double expected = lemma2_fraction(n_t, n_r, k_t, k_r);
      out.push_back({"allones", k_t, k_r, ratio, expected,
                     std::abs(ratio / expected - 1.0) <= kAllOnesRelativeTolerance});
    }
  }
  return out;
}

// --- structural properties --------------------------------------------------

Prop1Result run_prop1(std::size_t num_layers, std::size_t relays_per_layer) {
  const std::size_t n = num_layers * relays_per_layer;
  if (n > kDefaultExhaustiveCap) throw LimitExceeded("exhaustive T(cut) scan is capped at N <= 20");
  const Network net(n, CMatrix(n + 2, n + 2), LayerStructure{num_layers, relays_per_layer});
  Prop1Result res;
  res.bound = t_max(num_layers, relays_per_layer);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const std::size_t t = t_of_cut(net, Cut::from_relay_mask(n, mask));
    if (t > res.max_t) {
      res.max_t = t;
      res.argmax_mask = mask;
    }
  }
  res.ok = res.max_t <= res.bound;
  return res;
}

CMatrix random_hermitian(std::size_t n, std::uint64_t seed, std::size_t trial) {
  CMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = {counter_normal(seed, trial, 30, i * n + j), counter_normal(seed, trial, 31, i * n + j)};
  if (trial % 2 == 1) return identity_plus_gram(b);
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (b(i, j) + std::conj(b(j, i)));
  return a;
}

std::vector<Prop2Record> run_prop2(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 1 || n > kMaxIdentityDimension) throw LimitExceeded("identity check needs 1 <= n <= 12");
  std::vector<Prop2Record> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const CMatrix a = random_hermitian(n, seed, t);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto rep = verify_submatrix_identity(a, k);
      Prop2Record r{t, k, t % 2 == 1, rep.poly_relative(), rep.scalar_relative(), false};
      r.satisfied = r.poly_relative <= kIdentityTolerance && r.scalar_relative <= kIdentityTolerance;
      out.push_back(r);
    }
  }
  return out;
}

void write_prop2_csv(std::ostream& os, const std::vector<Prop2Record>& records) {
  os << "trial,k,positive_definite,poly_relative,scalar_relative,satisfied\n";
  for (const auto& r : records) {
    os << r.trial << ',' << r.k << ',' << (r.positive_definite ? "true" : "false") << ','
       << format_double(r.poly_relative) << ',' << format_double(r.scalar_relative) << ','
       << (r.satisfied ? "true" : "false") << '\n';
  }
}

}  // namespace relaynet
