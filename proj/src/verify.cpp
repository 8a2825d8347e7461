#include "sturmlab/verify.hpp"

#include "sturmlab/cyclic_products.hpp"
#include "sturmlab/heaps.hpp"
#include "sturmlab/jsr.hpp"
#include "sturmlab/measures.hpp"
#include "sturmlab/queue.hpp"
#include "sturmlab/wigner.hpp"
#include "sturmlab/words.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sturm::verify {

using words::Word;

namespace {

std::string fixed5(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

CheckResult result(bool passed, const std::string& detail) { return {0, "", passed, detail, 0}; }

std::vector<std::pair<std::size_t, std::size_t>> coprime_pairs(std::size_t q_max) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q = 2; q <= q_max; ++q)
    for (std::size_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  return out;
}

CheckResult cyclic_products() {
  std::ostringstream os;
  const BigInt b1 = cyclic::orbit_product(Word::parse("10100")).product;
  const BigInt b2 = cyclic::orbit_product(Word::parse("11000")).product;
  bool ok = b1 == 162000 && b2 == 88128;
  os << "B(10100)=" << b1 << " B(11000)=" << b2;
  std::size_t pairs = 0, failed = 0;
  for (auto [p, q] : coprime_pairs(14)) {
    ++pairs;
    if (!cyclic::check_product_maximizer(p, q).passed) {
      ++failed;
      os << " fail " << p << "/" << q;
    }
  }
  os << "; balanced orbit is the unique argmax for " << pairs - failed << "/" << pairs << " pairs with q<=14";
  return result(ok && failed == 0, os.str());
}

CheckResult sturmian_measure() {
  auto mu = measures::sturmian_measure(2, 5);
  std::vector<Ratio> expected;
  for (long n : {5, 10, 20, 9, 18}) expected.emplace_back(n, 31);
  const Ratio bar = measures::barycenter(mu);
  const bool ok = mu.support == expected && mu.weight == Ratio(1, 5) && bar == Ratio(2, 5);
  std::ostringstream os;
  os << "support {";
  for (std::size_t i = 0; i < mu.support.size(); ++i) os << (i ? ", " : "") << format_ratio(mu.support[i]);
  os << "} weight " << format_ratio(mu.weight) << " barycenter " << format_ratio(bar);
  return result(ok, os.str());
}

CheckResult convex_order() {
  auto r = measures::check_sturmian_least(10, 100, 1);
  std::ostringstream os;
  os << r.pairs << " pairs, " << r.comparisons << " comparisons, " << r.failures.size() << " counterexamples";
  if (!r.failures.empty()) os << "; first: " << r.failures.front();
  return result(r.passed(), os.str());
}

CheckResult jsr_golden() {
  const double golden = (1 + std::sqrt(5.0)) / 2;
  auto b = jsr::jsr_bounds(jsr::scaled_pair(1), 8);
  bool monotone = true;
  for (std::size_t i = 1; i < b.levels.size(); ++i) monotone = monotone && b.levels[i].upper <= b.levels[i - 1].upper;
  const double gap = std::abs(b.lower - golden);
  std::ostringstream os;
  os.precision(17);
  os << "lower " << b.lower << " (word " << b.lower_word << ", |lower-golden|=" << gap << ") upper " << b.upper
     << (monotone ? ", upper non-increasing" : ", upper NOT non-increasing");
  return result(gap <= 1e-12 && b.upper >= b.lower && monotone, os.str());
}

CheckResult alpha_digits() {
  PrecisionScope scope(256);
  auto star = jsr::alpha_star_tau(12, {256});
  std::vector<std::uint64_t> expansion(13, 1);
  expansion[0] = 2;
  auto inv = jsr::alpha_inverse(words::ContinuedFraction::from_expansion(expansion), 12, {256});
  const std::size_t digits = jsr::matching_digits(star.value, jsr::alpha_star_reference());
  const Real gap = abs(star.value - inv.value);
  std::ostringstream os;
  os << "alpha_* = " << format_real(star.value, 45) << " (+/- " << format_real(star.error_estimate, 3) << "), "
     << digits << " matching digits, |tau form - inverse form| = " << format_real(gap, 3);
  return result(digits >= 30 && gap < Real("1e-25"), os.str());
}

CheckResult trace_recurrence() {
  std::vector<std::uint64_t> expansion(16, 1);
  expansion[0] = 2;
  jsr::StandardMatrices sm(words::ContinuedFraction::from_expansion(expansion), 15);
  bool ok = true;
  std::ostringstream os;
  for (long k = 1; k < 15; ++k)
    if (sm.tau(k + 1) != sm.tau(k) * sm.tau(k - 1) - sm.tau(k - 2)) {
      ok = false;
      os << "fails at B_" << k + 1 << "; ";
    }
  auto seq = jsr::fibonacci_trace_sequence(17);
  for (std::size_t k = 1; k < seq.size(); ++k) ok = ok && Ratio(seq[k]) == sm.tau(static_cast<long>(k) - 2);
  os << "tr(B_{k+1}) = tr(B_k) tr(B_{k-1}) - tr(B_{k-2}) for B_{-1}..B_15; offset t_k = tr(B_{k-2}); traces ";
  for (long k = -1; k <= 6; ++k) os << sm.tau(k) << (k < 6 ? "," : "...");
  return result(ok, os.str());
}

CheckResult ratio_monotonicity() {
  Ratio previous(0);
  bool ok = true;
  std::ostringstream steps;
  for (int i = 0; i < 50; ++i) {
    auto r = jsr::optimal_ratio_scan(i / 49.0, 14);
    if (r.ratio < previous || r.ratio < 0 || r.ratio > Ratio(1, 2)) ok = false;
    if (i == 0 || r.ratio != previous) steps << " " << format_ratio(r.ratio) << "@" << i << "/49";
    previous = r.ratio;
  }
  auto top = jsr::optimal_ratio_scan(1.0, 14);
  const bool periodic = top.necklace == Word::parse("01").power(7);
  return result(ok && periodic, "steps" + steps.str() + "; argmax at alpha=1: " + top.necklace.str());
}

CheckResult heaps_balanced() {
  const auto model = heaps::default_model();
  bool ok = true;
  std::ostringstream os;
  for (std::size_t n = 1; n <= 14; ++n)
    if (!heaps::min_rate_exhaustive(model, n).argmin_has_balanced()) {
      ok = false;
      os << "no balanced argmin at n=" << n << "; ";
    }
  auto best = heaps::best_balanced_schedule(model, 8, 16);
  const std::size_t q = best.word.size();
  std::size_t compared = 0;
  for (std::size_t n = q; n <= 16; n += q) {
    const Ratio exhaustive = heaps::min_rate_exhaustive(model, n).min_rate;
    ++compared;
    if (std::abs(to_double(Ratio(exhaustive - best.rate))) > 1e-12) {
      ok = false;
      os << "n=" << n << " exhaustive " << format_ratio(exhaustive) << "; ";
    }
  }
  os << "balanced argmin for n=1..14; best balanced schedule " << best.word.str() << " (ratio "
     << format_ratio(best.ratio) << ") rate " << format_ratio(best.rate) << " equals the exhaustive minimum at "
     << compared << " multiples of " << q;
  return result(ok, os.str());
}

CheckResult wigner_balanced() {
  bool ok = true;
  std::size_t runs = 0;
  std::ostringstream os;
  for (const auto& V : wigner::default_potentials())
    for (auto [p, q] : coprime_pairs(14)) {
      ++runs;
      if (!wigner::ground_state(p, q, V).all_argmin_balanced()) {
        ok = false;
        os << "COUNTEREXAMPLE " << V.name() << " " << p << "/" << q << "; ";
      }
    }
  std::size_t clustered = 0;
  std::string first;
  for (auto [p, q] : coprime_pairs(14))
    if (!wigner::ground_state(p, q, wigner::Potential::anti_coulomb()).all_argmin_balanced()) {
      if (!clustered++) first = std::to_string(p) + "/" + std::to_string(q);
    }
  os << runs << " ground states balanced; anti-potential unbalanced at " << clustered << " pairs (first " << first << ")";
  return result(ok && clustered > 0, os.str());
}

// Balance by comparing every pair of equal-length factors.
bool naive_balanced(const Word& w) {
  for (std::size_t len = 1; len <= w.size(); ++len)
    for (std::size_t i = 0; i + len <= w.size(); ++i)
      for (std::size_t j = i + 1; j + len <= w.size(); ++j) {
        long a = 0, b = 0;
        for (std::size_t k = 0; k < len; ++k) a += w[i + k], b += w[j + k];
        if (std::abs(a - b) > 1) return false;
      }
  return true;
}

CheckResult words_core() {
  PrecisionScope scope(200);
  std::size_t grid = 0, grid_bad = 0;
  std::vector<Scalar> gammas;
  for (long q = 1; q <= 16; ++q)
    for (long p = 0; p <= q; ++p)
      if (std::gcd(p, q) == 1) gammas.emplace_back(Ratio(p, q));
  gammas.emplace_back(parse_scalar("gamma*"));
  gammas.emplace_back(Real(sqrt(Real(2)) - 1));
  gammas.emplace_back(Real(sqrt(Real(3)) - 1));
  const std::vector<Scalar> deltas{Ratio(0), Ratio(1, 3), Ratio(5, 7), Ratio(1, 2)};
  for (const auto& g : gammas)
    for (const auto& d : deltas)
      for (std::size_t n = 1; n <= 64; ++n) {
        ++grid;
        if (!words::is_balanced(words::mechanical_word({g, d}, n))) ++grid_bad;
      }

  std::size_t oracle = 0, oracle_bad = 0;
  for (std::size_t len = 0; len <= 12; ++len)
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::vector<std::uint8_t> bits(len);
      for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> i) & 1u;
      Word w(bits);
      ++oracle;
      if (words::is_balanced(w) != naive_balanced(w)) ++oracle_bad;
    }

  std::size_t windows = 0, complexity_bad = 0;
  for (const char* name : {"gamma*", "phi-1"}) {
    Word prefix = words::mechanical_word({parse_scalar(name), Ratio(0)}, 2048);
    for (std::size_t n = 1; n <= 2048 / 16; ++n, ++windows)
      if (words::complexity(prefix, n) != n + 1) ++complexity_bad;
  }
  std::ostringstream os;
  os << grid - grid_bad << "/" << grid << " mechanical words balanced; oracle agreement " << oracle - oracle_bad << "/"
     << oracle << "; complexity n+1 on " << windows - complexity_bad << "/" << windows << " windows";
  return result(grid_bad == 0 && oracle_bad == 0 && complexity_bad == 0, os.str());
}

CheckResult queue_dominance() {
  bool ok = true;
  std::ostringstream os;
  for (std::uint64_t seed : {1, 2, 3}) {
    queueing::QueueConfig cfg;
    cfg.mean_interarrival = 1;
    cfg.service_time = 2;
    cfg.horizon = 100000;
    cfg.seed = seed;
    cfg.admission = words::MechanicalSpec{Ratio(1, 3), Ratio(0)};
    auto cmp = queueing::compare_with_shuffled(cfg, 50, 1000 * seed);
    double best = cmp.competitors.front().mean_cost;
    for (const auto& c : cmp.competitors) best = std::min(best, c.mean_cost);
    ok = ok && cmp.reference_is_best();
    os << (seed > 1 ? "; " : "") << "seed " << seed << ": mechanical " << fixed5(cmp.reference.mean_cost) << " vs best of 50 "
       << fixed5(best) << " (" << cmp.dominated << "/50 dominated)";
  }
  return result(ok, os.str());
}

}  // namespace

const std::vector<Check>& acceptance_checks() {
  static const std::vector<Check> checks{
      {1, "cyclic products", cyclic_products},
      {2, "sturmian measure 2/5", sturmian_measure},
      {3, "convex order least element", convex_order},
      {4, "jsr golden ratio", jsr_golden},
      {5, "alpha_* digits", alpha_digits},
      {6, "trace recurrence", trace_recurrence},
      {7, "optimal ratio monotonicity", ratio_monotonicity},
      {8, "heap balanced optimum", heaps_balanced},
      {9, "wigner ground states", wigner_balanced},
      {10, "words core", words_core},
      {11, "queue admission dominance", queue_dominance},
  };
  return checks;
}

CheckResult run_check(const Check& c) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r = result(false, std::string("exception: ") + e.what());
  }
  r.id = c.id;
  r.name = c.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  for (const auto& c : acceptance_checks()) out.push_back(run_check(c));
  return out;
}

}  // namespace sturm::verify
