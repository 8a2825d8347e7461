#include "sturmlab/measures.hpp"

#include "sturmlab/csv.hpp"
#include "sturmlab/cyclic_products.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sturm::measures {

using words::Word;

OrbitMeasure orbit_measure(const Word& w) {
  if (w.empty()) throw std::invalid_argument("orbit measure of the empty word");
  Word root = w.primitive_root();
  if (root.size() == 1 && root[0] == 1)
    throw std::domain_error("the word " + w.str() + " codes the point 1, outside [0,1)");
  const std::size_t q = root.size();
  const BigInt den = (BigInt(1) << q) - 1;
  OrbitMeasure mu{root, {}, Ratio(1, q)};
  for (std::size_t i = 0; i < q; ++i) mu.support.emplace_back(cyclic::binary_value(root.rotated(i)), den);
  return mu;
}

OrbitMeasure sturmian_measure(std::size_t p, std::size_t q) {
  if (p == 0 && q == 1) return orbit_measure(Word::parse("0"));
  if (!(1 <= p && p < q) || std::gcd(p, q) != 1)
    throw std::invalid_argument("sturmian measure needs coprime 1 <= p < q");
  return orbit_measure(words::balanced_orbit(p, q).representative());
}

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<Ratio, Ratio>> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Ratio total = 0;
  for (auto& [x, w] : atoms) {
    if (w <= 0) throw std::invalid_argument("measure weights must be positive");
    total += w;
    if (!atoms_.empty() && atoms_.back().first == x)
      atoms_.back().second += w;
    else
      atoms_.emplace_back(std::move(x), std::move(w));
  }
  if (total != 1) throw std::invalid_argument("measure weights must sum to 1");
}

DiscreteMeasure::DiscreteMeasure(const OrbitMeasure& mu) {
  std::vector<std::pair<Ratio, Ratio>> atoms;
  for (const auto& x : mu.support) atoms.emplace_back(x, mu.weight);
  *this = DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure DiscreteMeasure::mixture(const std::vector<std::pair<Ratio, DiscreteMeasure>>& parts) {
  std::vector<std::pair<Ratio, Ratio>> atoms;
  for (const auto& [c, mu] : parts) {
    if (c <= 0) throw std::invalid_argument("mixture coefficients must be positive");
    for (const auto& [x, w] : mu.atoms()) atoms.emplace_back(x, c * w);
  }
  return DiscreteMeasure(std::move(atoms));
}

Ratio DiscreteMeasure::hockey_stick(const Ratio& t) const {
  Ratio s = 0;
  for (const auto& [x, w] : atoms_)
    if (x > t) s += w * (x - t);
  return s;
}

Ratio barycenter(const OrbitMeasure& mu) {
  Ratio s = 0;
  for (const auto& x : mu.support) s += x;
  return s * mu.weight;
}

Ratio barycenter(const DiscreteMeasure& mu) {
  Ratio s = 0;
  for (const auto& [x, w] : mu.atoms()) s += x * w;
  return s;
}

namespace {

// int (x - t)_+ at each t of `ts` (ascending), by a sweep from the top.
std::vector<Ratio> hockey_sticks(const DiscreteMeasure& mu, const std::vector<Ratio>& ts) {
  std::vector<Ratio> out(ts.size());
  const auto& atoms = mu.atoms();
  std::size_t j = atoms.size();
  Ratio mass = 0, moment = 0;  // of atoms strictly above t
  for (std::size_t i = ts.size(); i-- > 0;) {
    while (j > 0 && atoms[j - 1].first > ts[i]) {
      --j;
      mass += atoms[j].second;
      moment += atoms[j].second * atoms[j].first;
    }
    out[i] = moment - ts[i] * mass;
  }
  return out;
}

}  // namespace

ConvexOrderResult convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (barycenter(mu) != barycenter(nu))
    throw std::domain_error("convex order compares measures with equal barycenters only");
  std::vector<Ratio> ts;
  for (const auto& a : mu.atoms()) ts.push_back(a.first);
  for (const auto& a : nu.atoms()) ts.push_back(a.first);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  auto hm = hockey_sticks(mu, ts);
  auto hn = hockey_sticks(nu, ts);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (hm[i] > hn[i]) return {false, ts[i]};
  return {true, std::nullopt};
}

namespace {

std::string describe(const DiscreteMeasure& mu) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < mu.atoms().size(); ++i)
    os << (i ? ", " : "") << format_ratio(mu.atoms()[i].first) << ":" << format_ratio(mu.atoms()[i].second);
  os << "}";
  return os.str();
}

// All orbit measures of primitive words of length <= q_max, 1 excluded.
std::vector<OrbitMeasure> orbit_pool(std::size_t q_max) {
  std::vector<OrbitMeasure> pool;
  for (std::size_t len = 1; len <= q_max; ++len)
    words::for_each_necklace(len, std::nullopt, [&](std::span<const std::uint8_t> s) {
      Word w(std::vector<std::uint8_t>(s.begin(), s.end()));
      if (w.primitive_root().size() != len || (len == 1 && w[0] == 1)) return;
      pool.push_back(orbit_measure(w));
    });
  return pool;
}

}  // namespace

LeastElementReport check_sturmian_least(std::size_t q_max, std::size_t mixtures, std::uint64_t seed) {
  if (q_max < 2) throw std::invalid_argument("least-element check needs q_max >= 2");
  LeastElementReport report;
  report.q_max = q_max;

  const auto pool = orbit_pool(q_max);
  std::vector<Ratio> bary;
  std::vector<DiscreteMeasure> discrete;
  for (const auto& mu : pool) {
    bary.push_back(barycenter(mu));
    discrete.emplace_back(mu);
  }

  for (std::size_t q = 2; q <= q_max; ++q)
    for (std::size_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++report.pairs;
      const Ratio gamma(p, q);
      const DiscreteMeasure sturmian(sturmian_measure(p, q));
      std::vector<std::size_t> same, below, above;
      for (std::size_t i = 0; i < pool.size(); ++i)
        (bary[i] == gamma ? same : bary[i] < gamma ? below : above).push_back(i);

      auto compare = [&](const DiscreteMeasure& nu, const std::string& label) {
        ++report.comparisons;
        auto r = convex_order_leq(sturmian, nu);
        if (!r.leq)
          report.failures.push_back(format_ratio(gamma) + ": Sturmian measure not below " + label + " at t=" +
                                    format_ratio(*r.witness));
      };
      for (std::size_t i : same) compare(discrete[i], "orbit of " + pool[i].generating_word.str());

      std::mt19937_64 rng(seed * 1000003u + q * 1009u + p);
      auto pick = [&](const std::vector<std::size_t>& from) { return from[rng() % from.size()]; };
      auto coefficient = [&] { return Ratio(1 + static_cast<long>(rng() % 10)); };
      for (std::size_t k = 0; k < mixtures; ++k) {
        std::vector<std::pair<Ratio, DiscreteMeasure>> parts;
        const std::size_t n_same = 1 + rng() % 3;
        for (std::size_t j = 0; j < n_same; ++j) parts.emplace_back(coefficient(), discrete[pick(same)]);
        if (!below.empty() && !above.empty()) {
          // a below/above pair balanced to barycenter gamma
          std::size_t b = pick(below), a = pick(above);
          Ratio lb = (bary[a] - gamma) / (bary[a] - bary[b]);
          parts.emplace_back(coefficient(),
                             DiscreteMeasure::mixture({{lb, discrete[b]}, {1 - lb, discrete[a]}}));
        }
        Ratio total = 0;
        for (const auto& part : parts) total += part.first;
        for (auto& part : parts) part.first /= total;
        DiscreteMeasure nu = DiscreteMeasure::mixture(parts);
        compare(nu, "mixture " + describe(nu));
      }
    }
  return report;
}

PhiSample phi_sample(const Scalar& gamma, const Scalar& x, std::size_t terms) {
  if (terms < 1) throw std::invalid_argument("phi sample needs at least one term");
  std::vector<std::uint8_t> digits(terms);
  if (is_exact(gamma) && is_exact(x)) {
    const Ratio& g = std::get<Ratio>(gamma);
    const Ratio& x0 = std::get<Ratio>(x);
    if (g < 0 || g > 1) throw std::invalid_argument("phi sample needs gamma in [0,1]");
    if (x0 < 0 || x0 >= 1) throw std::invalid_argument("phi sample needs x in [0,1)");
    BigInt prev = floor_ratio(x0);
    for (std::size_t n = 0; n < terms; ++n) {
      BigInt next = floor_ratio(Ratio(n + 1) * g + x0);
      digits[n] = static_cast<std::uint8_t>(next - prev);
      prev = next;
    }
  } else {
    const Real g = to_real(gamma), x0 = to_real(x);
    if (g < 0 || g > 1) throw std::invalid_argument("phi sample needs gamma in [0,1]");
    if (x0 < 0 || x0 >= 1) throw std::invalid_argument("phi sample needs x in [0,1)");
    BigInt prev = floor_real(x0);
    for (std::size_t n = 0; n < terms; ++n) {
      BigInt next = floor_real(Real(n + 1) * g + x0);
      digits[n] = static_cast<std::uint8_t>(next - prev);
      prev = next;
    }
  }
  PhiSample s;
  s.terms = terms;
  s.digits = Word(std::move(digits));
  const BigInt scale = BigInt(1) << terms;
  s.value = Ratio(cyclic::binary_value(s.digits), scale);
  s.error_bound = Ratio(BigInt(1), scale);
  return s;
}

namespace {

double circle_distance(double x, double theta) {
  double d = std::fmod(std::abs(x - theta), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace

Observable cosine_observable(double theta) {
  return [theta](const Ratio& x) { return std::cos(2 * std::numbers::pi * (to_double(x) - theta)); };
}

Observable tent_observable(double theta) {
  return [theta](const Ratio& x) { return 1 - 4 * circle_distance(to_double(x), theta); };
}

double integrate(const Observable& f, const OrbitMeasure& mu) {
  double s = 0;
  for (const auto& x : mu.support) s += f(x);
  return s / static_cast<double>(mu.support.size());
}

OrbitMaximum maximize_over_orbits(const Observable& f, std::size_t max_period) {
  if (max_period < 1) throw std::invalid_argument("orbit maximization needs max_period >= 1");
  std::optional<OrbitMaximum> best;
  for (std::size_t len = 1; len <= max_period; ++len)
    words::for_each_necklace(len, std::nullopt, [&](std::span<const std::uint8_t> s) {
      Word w(std::vector<std::uint8_t>(s.begin(), s.end()));
      if (w.primitive_root().size() != len || (len == 1 && w[0] == 1)) return;
      OrbitMeasure mu = orbit_measure(w);
      double v = integrate(f, mu);
      if (!best || v > best->value + 1e-12 * std::max(1.0, std::abs(best->value)))
        best = OrbitMaximum{std::move(mu), v, false};
    });
  best->balanced = words::Orbit(best->measure.generating_word).is_balanced();
  return *best;
}

nlohmann::json to_json(const OrbitMeasure& mu) {
  nlohmann::json support = nlohmann::json::array();
  for (const auto& x : mu.support) support.push_back(format_ratio(x));
  return {{"word", mu.generating_word.str()}, {"support", support}, {"weight", format_ratio(mu.weight)}};
}

void write_maximum_csv_header(std::ostream& os) { csv::write_row(os, {"theta", "best_word", "value", "is_balanced"}); }

void write_maximum_csv_row(std::ostream& os, double theta, const OrbitMaximum& m) {
  csv::write_row(os, {csv::format_double(theta), m.measure.generating_word.str(), csv::format_double(m.value),
                      m.balanced ? "true" : "false"});
}

}  // namespace sturm::measures
