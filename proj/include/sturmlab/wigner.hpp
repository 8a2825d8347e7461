#pragma once

// Electrons on a ring of q sites with a pair potential: energies of
// occupancy words and exhaustive ground states.

#include "sturmlab/numeric.hpp"
#include "sturmlab/words.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sturm::wigner {

class Potential {
 public:
  enum class Kind { coulomb, power, exponential, screened, anti_coulomb };

  static Potential coulomb();                   // 1/r
  static Potential power(double s);             // r^-s, s > 0
  static Potential exponential(double lambda);  // e^{-lambda r}
  static Potential screened(double lambda);     // e^{-lambda r}/r
  /// -1/r: increasing and concave, so clustering is favoured.
  static Potential anti_coulomb();
  /// "coulomb", "power:3", "exp:1", "screened:0.5", "anti-coulomb".
  static Potential parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::string name() const;
  long double operator()(long double r) const;
  /// Exact value at an integer distance when it is rational.
  std::optional<Ratio> exact(std::size_t r) const;
  /// Upper bound on sum_{m >= 0} V(start + m step) for decreasing
  /// integrable V; infinity otherwise.
  long double tail_bound(long double start, long double step) const;

 private:
  Potential(Kind k, double param) : kind_(k), param_(param) {}
  Kind kind_;
  double param_;
};

/// Coulomb, r^-3 and e^-r.
std::vector<Potential> default_potentials();

/// Decreasing, discretely convex and vanishing at infinity on 1..r_max.
bool is_convex_decreasing(const Potential& V, std::size_t r_max = 64);

struct Energy {
  std::optional<Ratio> exact;
  long double value = 0;
  std::string str() const;
};

/// Exact comparison when both are exact, else within a relative 1e-12.
bool energy_less(const Energy& a, const Energy& b);
bool energy_tied(const Energy& a, const Energy& b);

/// Ring: each pair interacts once at distance min(|i-j|, q-|i-j|).
/// Images: each electron interacts with every periodic image of the others
/// and of itself, summed over |k| <= cutoff periods.
struct EnergyMode {
  bool images = false;
  std::size_t cutoff = 8;
};

/// Sum over unordered pairs of electrons.  Throws if V is undefined at a
/// realized distance (the images mode never realizes distance 0).
Energy ring_energy(const words::Word& occupancy, const Potential& V, EnergyMode mode = {});

/// Bound on what the images mode leaves out beyond the cutoff.
long double image_tail_bound(std::size_t p, std::size_t q, const Potential& V, std::size_t cutoff);

struct OrbitEnergy {
  words::Orbit orbit;
  Energy energy;
  bool balanced = false;
  bool is_argmin = false;
};

struct GroundState {
  std::size_t p = 0, q = 0;
  std::vector<OrbitEnergy> rows;  // every orbit of W_{p,q}, sorted
  Energy min_energy;
  std::vector<words::Orbit> argmin;
  bool all_argmin_balanced() const;
};

/// Exhaustive minimum of ring_energy over W_{p,q}; q <= bound.
GroundState ground_state(std::size_t p, std::size_t q, const Potential& V, EnergyMode mode = {}, std::size_t bound = 20);

/// representative, energy, is_balanced, is_argmin
void write_csv_header(std::ostream& os);
void write_csv_rows(std::ostream& os, const GroundState& g);

}  // namespace sturm::wigner
