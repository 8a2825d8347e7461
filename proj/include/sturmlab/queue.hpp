#pragma once

// Admission control in front of a single FIFO server: customer k is admitted
// when x_k = 1 and sent elsewhere otherwise.

#include "sturmlab/words.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace sturm::queueing {

/// Admission decisions: a mechanical word, or an explicit word repeated.
using AdmissionSource = std::variant<words::MechanicalSpec, words::Word>;

struct QueueConfig {
  double mean_interarrival = 1.0;  // exponential interarrival times
  double service_time = 1.0;       // deterministic
  std::size_t horizon = 1;         // customers
  std::uint64_t seed = 0;
  AdmissionSource admission = words::MechanicalSpec{};

  void validate() const;
};

/// Reads {"mean_interarrival", "service_time", "horizon", "seed",
/// "admission": {"gamma": "1/3", "delta": "0"} | {"word": "001"}}.
/// "seeds": [..] in place of "seed" yields one config per seed.
std::vector<QueueConfig> configs_from_json(const nlohmann::json& j);

/// Realized admission sequence of length cfg.horizon.
words::Word admission_sequence(const QueueConfig& cfg);

/// Interarrival gaps drawn from mt19937_64(seed) by inverse transform.
std::vector<double> interarrival_times(std::uint64_t seed, double mean, std::size_t count);

struct QueueSummary {
  std::uint64_t seed = 0;
  std::string gamma;       // "p/q" for exact admission ratios
  std::size_t horizon = 0;
  double mean_cost = 0;    // (1/horizon) sum_k x_k (N_k + 1)
  std::size_t max_queue = 0;
  double admitted_fraction = 0;
};

/// N_k is the number in the system just before customer k arrives; an
/// admitted customer costs N_k + 1, a rejected one costs nothing.
QueueSummary simulate_queue(const QueueConfig& cfg);

/// Same, with an explicit admission sequence of at least cfg.horizon symbols
/// (used for paired runs with common arrival times).
QueueSummary simulate_queue(const QueueConfig& cfg, const words::Word& admission);

/// Uniformly random permutation of w's symbols (Fisher-Yates on
/// mt19937_64(seed) with rejection sampling), so the 1-count is preserved.
words::Word shuffled(const words::Word& w, std::uint64_t seed);

struct CompetitorComparison {
  QueueSummary reference;
  std::vector<QueueSummary> competitors;
  /// Competitors whose mean cost is >= the reference's.
  std::size_t dominated = 0;
  bool reference_is_best() const { return dominated == competitors.size(); }
};

/// Runs cfg's admission sequence against `count` shuffles of it, all driven
/// by the same arrival times (common random numbers).
CompetitorComparison compare_with_shuffled(const QueueConfig& cfg, std::size_t count, std::uint64_t shuffle_seed);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const QueueSummary& s);

}  // namespace sturm::queueing
