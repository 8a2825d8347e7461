#include "sturmlab/queue.hpp"

#include "sturmlab/csv.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

namespace sturm::queueing {

void QueueConfig::validate() const {
  if (!(mean_interarrival > 0)) throw std::invalid_argument("queue: mean_interarrival must be positive");
  if (!(service_time > 0)) throw std::invalid_argument("queue: service_time must be positive");
  if (horizon < 1) throw std::invalid_argument("queue: horizon must be at least 1");
  if (const auto* w = std::get_if<words::Word>(&admission); w && w->empty())
    throw std::invalid_argument("queue: admission word is empty");
}

namespace {

AdmissionSource admission_from_json(const nlohmann::json& j) {
  if (j.contains("word")) return words::Word::parse(j.at("word").get<std::string>());
  words::MechanicalSpec spec;
  auto scalar = [](const nlohmann::json& v) -> Scalar {
    return v.is_string() ? parse_scalar(v.get<std::string>()) : Scalar(parse_ratio(std::to_string(v.get<double>())));
  };
  spec.gamma = scalar(j.at("gamma"));
  if (j.contains("delta")) spec.delta = scalar(j.at("delta"));
  return spec;
}

}  // namespace

std::vector<QueueConfig> configs_from_json(const nlohmann::json& j) {
  QueueConfig base;
  base.mean_interarrival = j.at("mean_interarrival").get<double>();
  base.service_time = j.at("service_time").get<double>();
  base.horizon = j.at("horizon").get<std::size_t>();
  base.admission = admission_from_json(j.at("admission"));

  std::vector<std::uint64_t> seeds;
  if (j.contains("seeds"))
    seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  else
    seeds.push_back(j.value("seed", std::uint64_t{0}));

  std::vector<QueueConfig> out;
  for (auto s : seeds) {
    QueueConfig c = base;
    c.seed = s;
    c.validate();
    out.push_back(c);
  }
  return out;
}

words::Word admission_sequence(const QueueConfig& cfg) {
  if (const auto* spec = std::get_if<words::MechanicalSpec>(&cfg.admission))
    return words::mechanical_word(*spec, cfg.horizon);
  return std::get<words::Word>(cfg.admission).cyclic_prefix(cfg.horizon);
}

std::vector<double> interarrival_times(std::uint64_t seed, double mean, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<double> gaps(count);
  for (auto& g : gaps) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    g = -mean * std::log1p(-u);
  }
  return gaps;
}

namespace {

std::string configured_gamma(const QueueConfig& cfg) {
  if (const auto* spec = std::get_if<words::MechanicalSpec>(&cfg.admission)) {
    if (is_exact(spec->gamma)) return format_ratio(std::get<Ratio>(spec->gamma));
    return format_real(to_real(spec->gamma), 20);
  }
  return format_ratio(words::one_ratio(std::get<words::Word>(cfg.admission)));
}

QueueSummary run(const QueueConfig& cfg, const words::Word& admission, std::string gamma) {
  cfg.validate();
  const auto gaps = interarrival_times(cfg.seed, cfg.mean_interarrival, cfg.horizon);
  std::deque<double> departures;  // of admitted customers still in the system
  double now = 0;
  double last_departure = 0;
  double total_cost = 0;
  std::size_t admitted = 0;
  std::size_t max_queue = 0;

  for (std::size_t k = 0; k < cfg.horizon; ++k) {
    now += gaps[k];
    while (!departures.empty() && departures.front() <= now) departures.pop_front();
    if (admission[k]) {
      const std::size_t in_system = departures.size() + 1;
      total_cost += static_cast<double>(in_system);
      max_queue = std::max(max_queue, in_system);
      last_departure = std::max(now, last_departure) + cfg.service_time;
      departures.push_back(last_departure);
      ++admitted;
    } else {
      max_queue = std::max(max_queue, departures.size());
    }
  }

  QueueSummary s;
  s.seed = cfg.seed;
  s.gamma = std::move(gamma);
  s.horizon = cfg.horizon;
  s.mean_cost = total_cost / static_cast<double>(cfg.horizon);
  s.max_queue = max_queue;
  s.admitted_fraction = static_cast<double>(admitted) / static_cast<double>(cfg.horizon);
  return s;
}

}  // namespace

QueueSummary simulate_queue(const QueueConfig& cfg) {
  return run(cfg, admission_sequence(cfg), configured_gamma(cfg));
}

QueueSummary simulate_queue(const QueueConfig& cfg, const words::Word& admission) {
  if (admission.size() < cfg.horizon) throw std::invalid_argument("queue: admission sequence shorter than horizon");
  return run(cfg, admission, format_ratio(words::one_ratio(admission.factor(0, cfg.horizon))));
}

words::Word shuffled(const words::Word& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(w.bits().begin(), w.bits().end());
  for (std::size_t i = bits.size(); i > 1; --i) {
    // uniform index in [0, i)
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = rng();
    while (r >= limit);
    std::swap(bits[i - 1], bits[r % bound]);
  }
  return words::Word(std::move(bits));
}

CompetitorComparison compare_with_shuffled(const QueueConfig& cfg, std::size_t count, std::uint64_t shuffle_seed) {
  CompetitorComparison out;
  const words::Word reference = admission_sequence(cfg);
  out.reference = run(cfg, reference, configured_gamma(cfg));
  for (std::size_t i = 0; i < count; ++i) {
    words::Word competitor = shuffled(reference, shuffle_seed + i);
    out.competitors.push_back(simulate_queue(cfg, competitor));
    if (out.competitors.back().mean_cost >= out.reference.mean_cost) ++out.dominated;
  }
  return out;
}

void write_csv_header(std::ostream& os) {
  csv::write_row(os, {"seed", "gamma", "horizon", "mean_cost", "max_queue", "admitted_fraction"});
}

void write_csv_row(std::ostream& os, const QueueSummary& s) {
  csv::write_row(os, {std::to_string(s.seed), s.gamma, std::to_string(s.horizon), csv::format_double(s.mean_cost),
                      std::to_string(s.max_queue), csv::format_double(s.admitted_fraction)});
}

}  // namespace sturm::queueing
