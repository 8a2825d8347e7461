#include "sturmlab/cli.hpp"

#include "sturmlab/csv.hpp"
#include "sturmlab/cyclic_products.hpp"
#include "sturmlab/heaps.hpp"
#include "sturmlab/jsr.hpp"
#include "sturmlab/measures.hpp"
#include "sturmlab/queue.hpp"
#include "sturmlab/verify.hpp"
#include "sturmlab/wigner.hpp"
#include "sturmlab/words.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#ifndef STURMLAB_VERSION
#define STURMLAB_VERSION "unknown"
#endif

namespace sturm::cli {

using nlohmann::json;
using words::Word;

std::string version() { return STURMLAB_VERSION; }

namespace {

std::string format_name(Format f) { return f == Format::json ? "json" : "csv"; }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("format must be csv or json, got '" + s + "'");
}

// Typed access to the normalized parameters of one run.
class Args {
 public:
  Args(const RunManifest& m) : m_(m) {}

  const std::string& str(const std::string& name) const { return m_.parameters.at(name); }
  bool has(const std::string& name) const { return !str(name).empty(); }

  std::uint64_t u64(const std::string& name) const {
    const std::string& s = str(name);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
      throw UsageError("--" + name + ": expected a non-negative integer, got '" + s + "'");
    return v;
  }

  std::size_t size(const std::string& name, std::size_t lo, std::size_t hi) const {
    const std::uint64_t v = u64(name);
    if (v < lo || v > hi)
      throw UsageError("--" + name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                       std::to_string(v));
    return static_cast<std::size_t>(v);
  }

  double real(const std::string& name) const {
    const std::string& s = str(name);
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("--" + name + ": expected a number, got '" + s + "'");
  }

  // Rational or one of the named irrationals, at the current precision.
  Scalar scalar(const std::string& name) const {
    try {
      return parse_scalar(str(name));
    } catch (const std::exception& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }

  Ratio ratio(const std::string& name) const {
    try {
      return parse_ratio(str(name));
    } catch (const std::exception& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }

  Word word(const std::string& name) const {
    try {
      return Word::parse(str(name));
    } catch (const std::exception& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }

  bool flag(const std::string& name) const {
    const std::string& s = str(name);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0" || s.empty()) return false;
    throw UsageError("--" + name + ": expected true or false, got '" + s + "'");
  }

  unsigned bits() const { return static_cast<unsigned>(size("bits", 64, 1u << 20)); }

  json config() const {
    const std::string& path = str("config");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config '" + path + "'");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("malformed config '" + path + "': " + e.what());
    }
  }

  const RunManifest& manifest() const { return m_; }

 private:
  const RunManifest& m_;
};

json ratio_cell(const Ratio& r) { return format_ratio(r); }
json bigint_cell(const BigInt& n) { return n.str(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> coprime_pairs(std::size_t q_max) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q = 2; q <= q_max; ++q)
    for (std::size_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  return out;
}

// Significant digits a binary precision can honestly show.
int shown_digits(unsigned bits) { return std::max(10, static_cast<int>(bits * 0.30103) - 5); }

// ---- words ------------------------------------------------------------

Table words_mechanical(const Args& a) {
  PrecisionScope scope(a.bits());
  const std::size_t n = a.size("n", 0, 100'000'000);
  const Word w = words::mechanical_word({a.scalar("gamma"), a.scalar("delta")}, n);
  Table t{{"gamma", "delta", "n", "word", "balanced"}, {}};
  t.rows.push_back({a.str("gamma"), a.str("delta"), n, w.str(), words::is_balanced(w)});
  return t;
}

Table words_balance(const Args& a) {
  const Word w = a.word("word");
  const auto r = words::check_balanced(w);
  Table t{{"word", "balanced", "witness_u", "witness_v"}, {}};
  t.rows.push_back({w.str(), r.balanced, r.witness ? r.witness->u.str() : "", r.witness ? r.witness->v.str() : ""});
  return t;
}

Table words_standard(const Args& a) {
  words::ContinuedFraction cf;
  try {
    cf = words::ContinuedFraction::parse(a.str("cf"));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--cf: ") + e.what());
  }
  if (cf.q(static_cast<int>(cf.size())) > 10'000'000) throw UsageError("--cf: standard words longer than 10^7 symbols");
  const auto sw = words::standard_words(cf);
  Table t{{"n", "length", "ones", "convergent", "word"}, {}};
  for (std::size_t i = 0; i < sw.size(); ++i) {
    const int n = static_cast<int>(i) - 1;
    t.rows.push_back({n, sw[i].size(), sw[i].one_length(), ratio_cell(cf.convergent(n)), sw[i].str()});
  }
  return t;
}

Table words_complexity(const Args& a) {
  PrecisionScope scope(a.bits());
  const std::size_t length = a.size("length", 1, 10'000'000);
  const std::size_t n_max = a.size("n-max", 1, length);
  const Word w = words::mechanical_word({a.scalar("gamma"), a.scalar("delta")}, length);
  Table t{{"n", "complexity", "n_plus_1"}, {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t c = words::complexity(w, n);
    t.rows.push_back({n, c, c == n + 1});
  }
  return t;
}

// ---- cyclic -----------------------------------------------------------

Table cyclic_verify(const Args& a) {
  Table t{{"p", "q", "balanced", "max_product", "argmax", "unique_balanced_argmax"}, {}};
  for (auto [p, q] : coprime_pairs(a.size("q-max", 2, 24))) {
    const auto r = cyclic::check_product_maximizer(p, q);
    std::vector<std::string> argmax;
    for (const auto& o : r.argmax) argmax.push_back(o.representative().str());
    t.rows.push_back({p, q, r.balanced.representative().str(), bigint_cell(r.max_value), join(argmax), r.passed});
    t.passed = t.passed && r.passed;
  }
  return t;
}

std::string factor_list(const std::vector<BigInt>& factors) {
  std::vector<std::string> parts;
  for (const auto& f : factors) parts.push_back(f.str());
  return join(parts);
}

Table cyclic_orbits(const Args& a) {
  const std::size_t q = a.size("q", 2, 24);
  const auto r = cyclic::check_product_maximizer(a.size("p", 1, q - 1), q);
  Table t{{"representative", "factors", "product", "is_balanced", "is_argmax"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({row.report.orbit.representative().str(), factor_list(row.report.factors),
                      bigint_cell(row.report.product), row.is_balanced, row.is_argmax});
  t.passed = r.passed;
  return t;
}

Table cyclic_product(const Args& a) {
  const Word w = a.word("word");
  const auto r = cyclic::orbit_product(w);
  Table t{{"word", "representative", "factors", "product", "is_balanced"}, {}};
  t.rows.push_back({w.str(), r.orbit.representative().str(), factor_list(r.factors), bigint_cell(r.product),
                    r.orbit.is_balanced()});
  return t;
}

// ---- measures ---------------------------------------------------------

Table measure_table(const measures::OrbitMeasure& mu) {
  Table t{{"word", "atom", "weight"}, {}};
  for (const auto& x : mu.support) t.rows.push_back({mu.generating_word.str(), ratio_cell(x), ratio_cell(mu.weight)});
  return t;
}

Table measures_sturmian(const Args& a) {
  const std::size_t q = a.size("q", 1, 64);
  return measure_table(measures::sturmian_measure(a.size("p", 0, q), q));
}

Table measures_orbit(const Args& a) { return measure_table(measures::orbit_measure(a.word("word"))); }

Table measures_least(const Args& a) {
  const std::uint64_t seed = a.manifest().seed.value_or(1);
  const std::size_t q_max = a.size("q-max", 2, 16);
  const std::size_t mixtures = a.size("mixtures", 0, 100000);
  const auto r = measures::check_sturmian_least(q_max, mixtures, seed);
  Table t{{"q_max", "mixtures", "seed", "pairs", "comparisons", "counterexamples", "first_counterexample"}, {}};
  t.rows.push_back({q_max, mixtures, seed, r.pairs, r.comparisons, r.failures.size(),
                    r.failures.empty() ? "" : r.failures.front()});
  t.passed = r.passed();
  return t;
}

Table measures_maximize(const Args& a) {
  const std::string& kind = a.str("observable");
  if (kind != "cosine" && kind != "tent") throw UsageError("--observable must be cosine or tent");
  const std::size_t grid = a.size("theta-grid", 1, 10000);
  const std::size_t max_period = a.size("max-period", 1, 20);
  Table t{{"theta", "best_word", "value", "is_balanced"}, {}};
  for (std::size_t i = 0; i < grid; ++i) {
    const double theta = static_cast<double>(i) / static_cast<double>(grid);
    auto f = kind == "cosine" ? measures::cosine_observable(theta) : measures::tent_observable(theta);
    const auto best = measures::maximize_over_orbits(f, max_period);
    t.rows.push_back({theta, best.measure.generating_word.str(), best.value, best.balanced});
    t.passed = t.passed && best.balanced;
  }
  return t;
}

Table measures_phi(const Args& a) {
  PrecisionScope scope(a.bits());
  const auto s = measures::phi_sample(a.scalar("gamma"), a.scalar("x"), a.size("terms", 1, 100000));
  Table t{{"gamma", "x", "terms", "digits", "value", "value_decimal", "error_bound"}, {}};
  t.rows.push_back({a.str("gamma"), a.str("x"), s.terms, s.digits.str(), ratio_cell(s.value),
                    format_real(to_real(s.value), 20), ratio_cell(s.error_bound)});
  return t;
}

// ---- queue ------------------------------------------------------------

std::vector<queueing::QueueConfig> queue_configs(const Args& a) {
  std::vector<queueing::QueueConfig> cfgs;
  try {
    cfgs = queueing::configs_from_json(a.config());
  } catch (const json::exception& e) {
    throw UsageError("malformed queue config: " + std::string(e.what()));
  }
  if (auto seed = a.manifest().seed) {
    cfgs.resize(1);
    cfgs[0].seed = *seed;
  }
  return cfgs;
}

Table queue_simulate(const Args& a) {
  Table t{{"seed", "gamma", "horizon", "mean_cost", "max_queue", "admitted_fraction"}, {}};
  for (const auto& cfg : queue_configs(a)) {
    const auto s = queueing::simulate_queue(cfg);
    t.rows.push_back({s.seed, s.gamma, s.horizon, s.mean_cost, s.max_queue, s.admitted_fraction});
  }
  return t;
}

Table queue_compare(const Args& a) {
  const std::size_t count = a.size("competitors", 1, 100000);
  Table t{{"seed", "gamma", "horizon", "mean_cost", "best_competitor_cost", "competitors", "dominated"}, {}};
  for (const auto& cfg : queue_configs(a)) {
    const std::uint64_t shuffle_seed = a.has("shuffle-seed") ? a.u64("shuffle-seed") : 1000 * cfg.seed;
    const auto c = queueing::compare_with_shuffled(cfg, count, shuffle_seed);
    double best = c.competitors.front().mean_cost;
    for (const auto& s : c.competitors) best = std::min(best, s.mean_cost);
    t.rows.push_back({cfg.seed, c.reference.gamma, cfg.horizon, c.reference.mean_cost, best, count, c.dominated});
    t.passed = t.passed && c.reference_is_best();
  }
  return t;
}

// ---- heaps ------------------------------------------------------------

heaps::HeapModel heap_model(const Args& a) {
  if (a.has("config")) {
    if (a.str("model") != "default") throw UsageError("give either --config or --model, not both");
    try {
      return heaps::HeapModel::from_json(a.config());
    } catch (const json::exception& e) {
      throw UsageError("malformed heap config: " + std::string(e.what()));
    }
  }
  const std::string& name = a.str("model");
  if (name == "default") return heaps::default_model();
  if (name == "symmetric") return heaps::symmetric_model();
  if (name == "flat") return heaps::flat_piece0_model();
  throw UsageError("--model must be default, symmetric or flat");
}

std::string word_list(const std::vector<Word>& ws) {
  std::vector<std::string> parts;
  for (const auto& w : ws) parts.push_back(w.str());
  return join(parts);
}

Table heaps_scan(const Args& a) {
  const auto model = heap_model(a);
  Table t{{"n", "min_rate", "argmin_words", "balanced"}, {}};
  for (std::size_t n = 1, n_max = a.size("n-max", 1, 20); n <= n_max; ++n) {
    const auto r = heaps::min_rate_exhaustive(model, n);
    t.rows.push_back({n, ratio_cell(r.min_rate), word_list(r.argmin), r.argmin_has_balanced()});
    t.passed = t.passed && r.argmin_has_balanced();
  }
  return t;
}

Table heaps_best(const Args& a) {
  const auto model = heap_model(a);
  const auto b = heaps::best_balanced_schedule(model, a.size("q-max", 1, 64), a.size("exhaustive-n", 1, 20));
  Table t{{"ratio", "word", "rate", "check_n", "exhaustive_rate", "matches"}, {}};
  t.rows.push_back({ratio_cell(b.ratio), b.word.str(), ratio_cell(b.rate), b.check_n, ratio_cell(b.exhaustive_rate),
                    b.matches_exhaustive()});
  return t;
}

Table heaps_rate(const Args& a) {
  const auto model = heap_model(a);
  const Word w = a.word("word");
  Table t{{"word", "cycle_rate", "height"}, {}};
  t.rows.push_back({w.str(), ratio_cell(heaps::cycle_rate(w, model)), ratio_cell(heaps::heap_height(w, model))});
  return t;
}

// ---- jsr --------------------------------------------------------------

double unit_alpha(const Args& a) {
  const double alpha = a.real("alpha");
  if (alpha < 0 || alpha > 1) throw UsageError("--alpha must lie in [0, 1]");
  return alpha;
}

Table jsr_bounds(const Args& a) {
  jsr::Norm norm;
  try {
    norm = jsr::parse_norm(a.str("norm"));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--norm: ") + e.what());
  }
  const auto b = jsr::jsr_bounds(jsr::scaled_pair(unit_alpha(a)), a.size("n-max", 1, 22), norm);
  Table t{{"n", "best_radius", "best_norm", "lower", "upper"}, {}};
  double lower = 0;
  for (const auto& level : b.levels) {
    lower = std::max(lower, level.best_radius);
    t.rows.push_back({level.n, level.best_radius, level.best_norm, lower, level.upper});
  }
  return t;
}

Table jsr_scan_ratio(const Args& a) {
  const std::size_t grid = a.size("alpha-grid", 2, 100000);
  const std::size_t n = a.size("n", 1, 18);
  Table t{{"alpha", "ratio", "necklace", "growth"}, {}};
  Ratio previous(0);
  for (std::size_t i = 0; i < grid; ++i) {
    const auto r = jsr::optimal_ratio_scan(static_cast<double>(i) / static_cast<double>(grid - 1), n);
    t.rows.push_back({r.alpha, ratio_cell(r.ratio), r.necklace.str(), r.growth});
    t.passed = t.passed && r.ratio >= previous && r.ratio <= Ratio(1, 2);
    previous = r.ratio;
  }
  return t;
}

std::vector<json> alpha_cells(const jsr::AlphaEstimate& e) {
  const int digits = shown_digits(e.bits);
  return {e.terms, e.bits, format_real(e.value, digits), format_real(e.limit_form, digits),
          format_real(e.error_estimate, 3)};
}

Table jsr_alpha_star(const Args& a) {
  const unsigned bits = a.bits();
  PrecisionScope scope(bits);
  const auto e = jsr::alpha_star_tau(a.size("terms", 1, 64), {bits});
  Table t{{"terms", "bits", "alpha", "limit_form", "error_estimate", "matching_digits"}, {}};
  auto row = alpha_cells(e);
  row.push_back(jsr::matching_digits(e.value, jsr::alpha_star_reference()));
  t.rows.push_back(std::move(row));
  return t;
}

Table jsr_alpha_inverse(const Args& a) {
  const unsigned bits = a.bits();
  PrecisionScope scope(bits);
  words::ContinuedFraction cf;
  try {
    cf = words::ContinuedFraction::parse(a.str("cf"));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--cf: ") + e.what());
  }
  const auto e = jsr::alpha_inverse(cf, a.size("terms", 1, 64), {bits});
  Table t{{"terms", "bits", "alpha", "limit_form", "error_estimate", "gamma"}, {}};
  auto row = alpha_cells(e);
  row.push_back(format_real(to_real(cf.convergent(static_cast<int>(cf.size()))), 20));
  t.rows.push_back(std::move(row));
  return t;
}

Table jsr_traces(const Args& a) {
  const std::size_t last = a.size("last", 2, 40);
  const jsr::StandardMatrices sm(words::ContinuedFraction(std::vector<std::uint64_t>(last, 1)), last);
  Table t{{"k", "trace", "recurrence"}, {}};
  for (long k = -1; k <= static_cast<long>(last); ++k) {
    json holds = "";
    if (k >= 2) {
      const bool ok = sm.tau(k) == sm.tau(k - 1) * sm.tau(k - 2) - sm.tau(k - 3);
      t.passed = t.passed && ok;
      holds = ok;
    }
    t.rows.push_back({k, numerator(sm.tau(k)).str(), holds});
  }
  return t;
}

// ---- wigner -----------------------------------------------------------

wigner::Potential potential(const Args& a) {
  try {
    return wigner::Potential::parse(a.str("potential"));
  } catch (const std::exception& e) {
    throw UsageError(std::string("--potential: ") + e.what());
  }
}

wigner::EnergyMode energy_mode(const Args& a) { return {a.flag("images"), a.size("cutoff", 1, 100000)}; }

Table wigner_ground_state(const Args& a) {
  const std::size_t q = a.size("q", 2, 20);
  const auto g = wigner::ground_state(a.size("p", 1, q - 1), q, potential(a), energy_mode(a));
  Table t{{"representative", "energy", "is_balanced", "is_argmin"}, {}};
  for (const auto& r : g.rows) t.rows.push_back({r.orbit.representative().str(), r.energy.str(), r.balanced, r.is_argmin});
  t.passed = g.all_argmin_balanced();
  return t;
}

Table wigner_sweep(const Args& a) {
  const auto V = potential(a);
  const auto mode = energy_mode(a);
  Table t{{"p", "q", "argmin", "min_energy", "balanced"}, {}};
  for (auto [p, q] : coprime_pairs(a.size("q-max", 2, 20))) {
    const auto g = wigner::ground_state(p, q, V, mode);
    std::vector<std::string> reps;
    for (const auto& o : g.argmin) reps.push_back(o.representative().str());
    t.rows.push_back({p, q, join(reps), g.min_energy.str(), g.all_argmin_balanced()});
    t.passed = t.passed && g.all_argmin_balanced();
  }
  return t;
}

// ---- verify-all -------------------------------------------------------

Table verify_all(const Args& a, std::ostream* log) {
  std::vector<std::size_t> only;
  if (a.has("only")) {
    std::stringstream ss(a.str("only"));
    for (std::string id; std::getline(ss, id, ',');) {
      try {
        only.push_back(std::stoul(id));
      } catch (const std::exception&) {
        throw UsageError("--only: expected comma-separated check ids, got '" + a.str("only") + "'");
      }
    }
  }
  Table t{{"id", "name", "passed", "detail"}, {}};
  for (const auto& check : verify::acceptance_checks()) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<std::size_t>(check.id)) == only.end())
      continue;
    const auto r = verify::run_check(check);
    if (log) {
      char line[160];
      std::snprintf(line, sizeof line, "[%s] %2d %-28s %7.2fs\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds);
      *log << line << std::flush;
    }
    t.rows.push_back({r.id, r.name, r.passed, r.detail});
    t.passed = t.passed && r.passed;
  }
  if (t.rows.empty()) throw UsageError("--only selects no checks");
  return t;
}

// ---- command table ----------------------------------------------------

struct Param {
  std::string name;
  std::optional<std::string> fallback;  // nullopt: required
  std::string help;
  bool flag = false;
};

struct Command {
  std::string verb;
  std::string name;  // empty for a verb without sub-commands
  std::string help;
  std::vector<Param> params;
  std::function<Table(const Args&)> run;
};

std::ostream* verify_log = nullptr;  // progress lines for verify-all

const std::vector<Command>& commands() {
  const Param bits{"bits", "256", "working precision in bits"};
  const Param model{"model", "default", "shipped heap model: default, symmetric or flat"};
  const Param heap_config{"config", "", "heap model JSON file (replaces --model)"};
  const Param pot{"potential", "coulomb", "coulomb, power:s, exp:l, screened:l or anti-coulomb"};
  const Param images{"images", "false", "sum over periodic images instead of ring distances", true};
  const Param cutoff{"cutoff", "8", "periods summed in images mode"};
  static const std::vector<Command> table{
      {"words", "mechanical", "mechanical word of slope gamma and phase delta",
       {{"gamma", std::nullopt, "slope: p/q, decimal, gamma* or phi-1"}, {"delta", "0", "phase in [0,1)"},
        {"n", std::nullopt, "length"}, bits},
       words_mechanical},
      {"words", "balance", "balance test with a witness pair", {{"word", std::nullopt, "0-1 word"}}, words_balance},
      {"words", "standard", "standard words of a directive continued fraction",
       {{"cf", std::nullopt, "directive quotients, e.g. 1,1,1"}}, words_standard},
      {"words", "complexity", "factor complexity of a mechanical prefix",
       {{"gamma", std::nullopt, "slope"}, {"delta", "0", "phase"}, {"length", "2048", "prefix length"},
        {"n-max", "128", "largest factor length"}, bits},
       words_complexity},
      {"cyclic", "verify", "balanced orbit maximizes the product of shifts, all coprime p<q<=q-max",
       {{"q-max", "14", "largest period"}}, cyclic_verify},
      {"cyclic", "orbits", "product of shifts for every orbit of W_{p,q}",
       {{"p", std::nullopt, "number of ones"}, {"q", std::nullopt, "length"}}, cyclic_orbits},
      {"cyclic", "product", "product of the binary values of all shifts of a word",
       {{"word", std::nullopt, "0-1 word"}}, cyclic_product},
      {"measures", "sturmian", "Sturmian orbit measure of ratio p/q",
       {{"p", std::nullopt, "number of ones"}, {"q", std::nullopt, "period"}}, measures_sturmian},
      {"measures", "orbit", "orbit measure generated by a word", {{"word", std::nullopt, "0-1 word"}}, measures_orbit},
      {"measures", "least", "Sturmian measure is convex-order least (uses --seed, default 1)",
       {{"q-max", "10", "largest period"}, {"mixtures", "100", "random mixtures per ratio"}}, measures_least},
      {"measures", "maximize", "orbit measure maximizing an observable, over a theta grid",
       {{"observable", "cosine", "cosine or tent"}, {"theta-grid", "16", "theta = i/K, i < K"},
        {"max-period", "12", "longest period searched"}},
       measures_maximize},
      {"measures", "phi", "truncated coding map phi_gamma(x)",
       {{"gamma", std::nullopt, "rotation number"}, {"x", "0", "point"}, {"terms", "64", "binary digits"}, bits},
       measures_phi},
      {"queue", "simulate", "admission-controlled FIFO queue (--seed replaces the config's seeds)",
       {{"config", std::nullopt, "queue JSON file"}}, queue_simulate},
      {"queue", "compare", "configured admission against shuffled same-ratio competitors",
       {{"config", std::nullopt, "queue JSON file"}, {"competitors", "50", "number of shuffles"},
        {"shuffle-seed", "", "first shuffle seed (default 1000 * seed)"}},
       queue_compare},
      {"heaps", "scan", "exhaustive minimal rate per length", {model, heap_config, {"n-max", "14", "longest word"}},
       heaps_scan},
      {"heaps", "best", "best balanced periodic schedule, checked exhaustively",
       {model, heap_config, {"q-max", "8", "largest period"}, {"exhaustive-n", "16", "exhaustive check bound"}},
       heaps_best},
      {"heaps", "rate", "asymptotic rate of a periodic schedule", {model, heap_config, {"word", std::nullopt, "period"}},
       heaps_rate},
      {"jsr", "bounds", "JSR bounds for {A0, alpha A1} from products up to n-max",
       {{"alpha", "1", "scale of A1 in [0,1]"}, {"n-max", "8", "longest product"},
        {"norm", "spectral", "spectral or max-row-sum"}},
       jsr_bounds},
      {"jsr", "scan-ratio", "1-ratio of the maximizing necklace over an alpha grid",
       {{"alpha-grid", "50", "grid points i/(K-1)"}, {"n", "14", "necklace length"}}, jsr_scan_ratio},
      {"jsr", "alpha-star", "alpha_* from the trace sequence",
       {{"terms", "12", "product factors"}, bits}, jsr_alpha_star},
      {"jsr", "alpha-inverse", "alpha with optimal ratio gamma, gamma by directive quotients",
       {{"cf", std::nullopt, "directive quotients, at least --terms of them"}, {"terms", "12", "product factors"}, bits},
       jsr_alpha_inverse},
      {"jsr", "traces", "traces of the Fibonacci standard matrices and their recurrence",
       {{"last", "15", "last matrix index"}}, jsr_traces},
      {"wigner", "ground-state", "energies of every orbit of W_{p,q}",
       {{"p", std::nullopt, "electrons"}, {"q", std::nullopt, "sites"}, pot, images, cutoff}, wigner_ground_state},
      {"wigner", "sweep", "ground states for all coprime p<q<=q-max",
       {{"q-max", "14", "largest period"}, pot, images, cutoff}, wigner_sweep},
      {"verify-all", "", "run every acceptance check",
       {{"only", "", "comma-separated check ids"}},
       [](const Args& a) { return verify_all(a, verify_log); }},
  };
  return table;
}

const Command& find_command(const RunManifest& m) {
  bool verb_known = false;
  std::vector<std::string> names;
  auto it = m.parameters.find("command");
  const std::string name = it == m.parameters.end() ? "" : it->second;
  for (const auto& c : commands()) {
    if (c.verb != m.verb) continue;
    verb_known = true;
    if (c.name == name) return c;
    names.push_back(c.name);
  }
  if (!verb_known) throw UsageError("unknown verb '" + m.verb + "'");
  throw UsageError("verb '" + m.verb + "' needs a command: " + join(names, ", "));
}

std::string cell_text(const json& v) {
  switch (v.type()) {
    case json::value_t::string: return v.get<std::string>();
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::number_float: return csv::format_double(v.get<double>());
    case json::value_t::null: return "";
    default: return v.dump();
  }
}

void write_artifact(const std::string& text, const RunManifest& m, std::ostream& out) {
  if (m.output_path.empty() || m.output_path == "-") {
    out << text << std::flush;
    return;
  }
  std::ofstream f(m.output_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + m.output_path + "'");
  f << text;
  if (!f.flush()) throw UsageError("cannot write '" + m.output_path + "'");
}

}  // namespace

json RunManifest::to_json() const {
  json j = json::object();
  j["verb"] = verb;
  j["parameters"] = parameters;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["output_path"] = output_path;
  j["format"] = format_name(format);
  return j;
}

RunManifest RunManifest::from_json(const json& j) {
  try {
    RunManifest m;
    m.verb = j.at("verb").get<std::string>();
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j.at("parameters").items()) m.parameters[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (j.contains("seed") && !j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.output_path = j.value("output_path", std::string());
    m.format = parse_format(j.value("format", std::string("csv")));
    return m;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
}

RunManifest normalize(const RunManifest& m) {
  const Command& c = find_command(m);
  RunManifest out = m;
  out.parameters.clear();
  if (!c.name.empty()) out.parameters["command"] = c.name;
  for (const auto& [key, value] : m.parameters) {
    if (key == "command") continue;
    bool known = false;
    for (const auto& p : c.params) known = known || p.name == key;
    if (!known) throw UsageError("unknown parameter '" + key + "' for " + m.verb + (c.name.empty() ? "" : " " + c.name));
    out.parameters[key] = value;
  }
  for (const auto& p : c.params) {
    if (out.parameters.count(p.name)) continue;
    if (!p.fallback) throw UsageError("missing --" + p.name);
    out.parameters[p.name] = *p.fallback;
  }
  return out;
}

Table execute(const RunManifest& m) {
  const RunManifest n = normalize(m);
  return find_command(n).run(Args(n));
}

std::string render(const Table& t, const RunManifest& m) {
  if (m.format == Format::csv) {
    std::ostringstream os;
    csv::write_row(os, t.header);
    for (const auto& row : t.rows) {
      std::vector<std::string> fields;
      for (const auto& v : row) fields.push_back(cell_text(v));
      csv::write_row(os, fields);
    }
    return os.str();
  }
  nlohmann::ordered_json doc;
  doc["meta"]["verb"] = m.verb;
  doc["meta"]["parameters"] = m.parameters;
  doc["meta"]["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nlohmann::ordered_json(nullptr);
  doc["meta"]["version"] = version();
  doc["meta"]["passed"] = t.passed;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = nlohmann::ordered_json::parse(row[i].dump());
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

int dispatch(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  try {
    const RunManifest m = normalize(manifest);
    verify_log = &err;
    const Table t = find_command(m).run(Args(m));
    verify_log = nullptr;
    write_artifact(render(t, m), m, out);
    if (!t.passed) {
      err << "sturmlab: " << m.verb << (m.parameters.count("command") ? " " + m.parameters.at("command") : "")
          << ": verification failed\n";
      return exit_failure;
    }
    return exit_pass;
  } catch (const UsageError& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  } catch (const jsr::PrecisionError& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "sturmlab: internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

namespace {

// CLI11 options of one command, bound to strings that outlive parsing.
struct Binding {
  const Command* command = nullptr;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Testbeds for balanced words: mechanical words, orbit products, Sturmian measures, admission\n"
               "queues, heaps of pieces, joint spectral radius and Wigner lattices.",
               "sturmlab"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string format = "csv", output, save_manifest, replay_path;
  std::optional<std::uint64_t> seed;
  auto* format_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* output_opt = app.add_option("-o,--output", output, "output file (default stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed for stochastic commands");
  app.add_option("--save-manifest", save_manifest, "write the run manifest to this JSON file");

  const std::map<std::string, std::string> verb_help{
      {"words", "mechanical words, balance, standard words, complexity"},
      {"cyclic", "products of binary values over cyclic shifts"},
      {"measures", "orbit measures of the doubling map and the convex order"},
      {"queue", "admission control in front of a FIFO server"},
      {"heaps", "two-piece heap models in (max, +) algebra"},
      {"jsr", "joint spectral radius of {A0, alpha A1} and the constant alpha_*"},
      {"wigner", "ground states of lattice particles with convex repulsion"},
  };
  std::map<std::string, CLI::App*> verbs;
  std::vector<std::unique_ptr<Binding>> bindings;
  for (const auto& c : commands()) {
    CLI::App*& verb = verbs[c.verb];
    if (!verb) {
      verb = app.add_subcommand(c.verb, c.name.empty() ? c.help : verb_help.at(c.verb));
      verb->fallthrough();
    }
    auto b = std::make_unique<Binding>();
    b->command = &c;
    b->app = verb;
    if (!c.name.empty()) {
      verb->require_subcommand(1);
      b->app = verb->add_subcommand(c.name, c.help);
      b->app->fallthrough();
    }
    for (const auto& p : c.params) {
      const std::string help = p.help + (p.fallback && !p.fallback->empty() && !p.flag ? " [" + *p.fallback + "]" : "");
      b->options[p.name] = p.flag ? b->app->add_flag("--" + p.name, help)
                                  : b->app->add_option("--" + p.name, b->values[p.name], help);
    }
    bindings.push_back(std::move(b));
  }
  auto* replay = app.add_subcommand("replay", "rerun a saved manifest (--output and --format override it)");
  replay->add_option("manifest", replay_path, "manifest JSON file")->required();
  replay->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  RunManifest m;
  try {
    if (replay->parsed()) {
      std::ifstream in(replay_path, std::ios::binary);
      if (!in) throw UsageError("cannot read manifest '" + replay_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("malformed manifest '" + replay_path + "': " + e.what());
      }
      m = RunManifest::from_json(j);
      if (output_opt->count()) m.output_path = output;
      if (format_opt->count()) m.format = parse_format(format);
      if (seed_opt->count()) m.seed = seed;
    } else {
      const Binding* chosen = nullptr;
      for (const auto& b : bindings)
        if (b->app->parsed()) chosen = b.get();
      if (!chosen) throw UsageError("no command given");
      m.verb = chosen->command->verb;
      if (!chosen->command->name.empty()) m.parameters["command"] = chosen->command->name;
      for (const auto& p : chosen->command->params)
        if (chosen->options.at(p.name)->count()) m.parameters[p.name] = p.flag ? "true" : chosen->values.at(p.name);
      m.seed = seed;
      m.output_path = output;
      m.format = parse_format(format);
    }
    if (!save_manifest.empty()) {
      const RunManifest full = normalize(m);
      std::ofstream f(save_manifest, std::ios::binary);
      if (!f) throw UsageError("cannot write manifest '" + save_manifest + "'");
      f << full.to_json().dump(2) << "\n";
    }
  } catch (const UsageError& e) {
    err << "sturmlab: " << e.what() << "\n";
    return exit_usage;
  }
  return dispatch(m, out, err);
}

}  // namespace sturm::cli
