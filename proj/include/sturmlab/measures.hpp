#pragma once

// Periodic-orbit measures of the doubling map x -> 2x mod 1, the convex
// order between them, and the coding map phi_gamma.

#include "sturmlab/numeric.hpp"
#include "sturmlab/words.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sturm::measures {

/// Uniform measure on the doubling-map orbit of b(w)/(2^q - 1).
struct OrbitMeasure {
  words::Word generating_word;  // primitive, length q
  /// b(rot_i w)/(2^q - 1) for i = 0..q-1, in left-rotation order.
  std::vector<Ratio> support;
  Ratio weight;  // 1/q
};

/// Words with a proper period collapse to their primitive root.  The word
/// 1^q would sit at the excluded point 1 and is rejected.
OrbitMeasure orbit_measure(const words::Word& w);

/// Measure generated by the balanced word of W_{p,q}; 1 <= p < q coprime,
/// or (0, 1) for the fixed point 0.
OrbitMeasure sturmian_measure(std::size_t p, std::size_t q);

/// Finitely supported probability measure, atoms sorted and merged.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Weights must be positive and sum to 1.
  DiscreteMeasure(std::vector<std::pair<Ratio, Ratio>> atoms);
  DiscreteMeasure(const OrbitMeasure& mu);

  /// sum_i c_i mu_i with c_i > 0 summing to 1.
  static DiscreteMeasure mixture(const std::vector<std::pair<Ratio, DiscreteMeasure>>& parts);

  const std::vector<std::pair<Ratio, Ratio>>& atoms() const { return atoms_; }
  /// integral of (x - t)_+
  Ratio hockey_stick(const Ratio& t) const;

 private:
  std::vector<std::pair<Ratio, Ratio>> atoms_;  // (point, weight)
};

Ratio barycenter(const OrbitMeasure& mu);
Ratio barycenter(const DiscreteMeasure& mu);

struct ConvexOrderResult {
  bool leq = false;
  /// First t (ascending) with int (x-t)_+ dmu > int (x-t)_+ dnu.
  std::optional<Ratio> witness;
};

/// mu <= nu in the convex order.  Throws std::domain_error when the
/// barycenters differ.
ConvexOrderResult convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct LeastElementReport {
  std::size_t q_max = 0;
  std::size_t pairs = 0;        // coprime (p, q) examined
  std::size_t comparisons = 0;  // convex-order checks against competitors
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// For every coprime 1 <= p < q <= q_max: the Sturmian measure lies below
/// every orbit measure of W_{kp,kq} (kq <= q_max) and below `mixtures`
/// seeded random mixtures with barycenter p/q.
LeastElementReport check_sturmian_least(std::size_t q_max, std::size_t mixtures = 100, std::uint64_t seed = 1);

struct PhiSample {
  std::size_t terms = 0;
  /// chi_{[1-gamma,1)}(x + n gamma mod 1) for n = 0..terms-1.
  words::Word digits;
  /// The truncated sum, a dyadic rational; the tail is at most 2^-terms.
  Ratio value;
  Ratio error_bound;
};

/// Truncated phi_gamma(x) = sum_n chi_{[1-gamma,1)}(x + n gamma mod 1) / 2^{n+1}.
/// Irrational arguments are handled at the current Real precision.
PhiSample phi_sample(const Scalar& gamma, const Scalar& x, std::size_t terms);

using Observable = std::function<double(const Ratio&)>;

/// cos 2 pi (x - theta)
Observable cosine_observable(double theta);
/// 1 - 4 dist(x, theta) on the circle
Observable tent_observable(double theta);

double integrate(const Observable& f, const OrbitMeasure& mu);

struct OrbitMaximum {
  OrbitMeasure measure;
  double value = 0;
  bool balanced = false;
};

/// Best orbit measure over primitive words of length <= max_period (1^q
/// excluded).  Ties within a relative 1e-12 go to the shorter, then
/// lexicographically smaller, necklace representative.
OrbitMaximum maximize_over_orbits(const Observable& f, std::size_t max_period);

nlohmann::json to_json(const OrbitMeasure& mu);

/// theta, best_word, value, is_balanced
void write_maximum_csv_header(std::ostream& os);
void write_maximum_csv_row(std::ostream& os, double theta, const OrbitMaximum& m);

}  // namespace sturm::measures
