#include "sturmlab/wigner.hpp"

#include "sturmlab/csv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sturm::wigner {

Potential Potential::coulomb() { return {Kind::coulomb, 1}; }
Potential Potential::anti_coulomb() { return {Kind::anti_coulomb, 1}; }

Potential Potential::power(double s) {
  if (!(s > 0)) throw std::invalid_argument("power potential needs a positive exponent");
  return {Kind::power, s};
}

Potential Potential::exponential(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("exponential potential needs a positive rate");
  return {Kind::exponential, lambda};
}

Potential Potential::screened(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("screened potential needs a positive rate");
  return {Kind::screened, lambda};
}

Potential Potential::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  auto param = [&](double fallback) {
    if (colon == std::string::npos) return fallback;
    std::size_t used = 0;
    const std::string tail = text.substr(colon + 1);
    double v = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("bad potential parameter in '" + text + "'");
    return v;
  };
  if (head == "coulomb") return coulomb();
  if (head == "anti-coulomb") return anti_coulomb();
  if (head == "power") return power(param(3));
  if (head == "exp") return exponential(param(1));
  if (head == "screened") return screened(param(1));
  throw std::invalid_argument("unknown potential '" + text + "' (coulomb, power:s, exp:l, screened:l, anti-coulomb)");
}

std::string Potential::name() const {
  const auto num = csv::format_double;
  switch (kind_) {
    case Kind::coulomb: return "coulomb";
    case Kind::power: return "power:" + num(param_);
    case Kind::exponential: return "exp:" + num(param_);
    case Kind::screened: return "screened:" + num(param_);
    case Kind::anti_coulomb: return "anti-coulomb";
  }
  return "?";
}

long double Potential::operator()(long double r) const {
  if (!(r > 0)) throw std::domain_error("potential " + name() + " undefined at distance 0");
  switch (kind_) {
    case Kind::coulomb: return 1 / r;
    case Kind::power: return std::pow(r, -static_cast<long double>(param_));
    case Kind::exponential: return std::exp(-param_ * r);
    case Kind::screened: return std::exp(-param_ * r) / r;
    case Kind::anti_coulomb: return -1 / r;
  }
  return 0;
}

std::optional<Ratio> Potential::exact(std::size_t r) const {
  if (r == 0) throw std::domain_error("potential " + name() + " undefined at distance 0");
  switch (kind_) {
    case Kind::coulomb: return Ratio(1, r);
    case Kind::anti_coulomb: return Ratio(-1, static_cast<long>(r));
    case Kind::power:
      if (param_ == std::floor(param_) && param_ <= 16) {
        BigInt den = 1;
        for (int i = 0; i < static_cast<int>(param_); ++i) den *= r;
        return Ratio(BigInt(1), den);
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

long double Potential::tail_bound(long double start, long double step) const {
  // sum_{m>=0} V(a + m h) <= V(a) + (1/h) int_a^inf V for decreasing V
  const long double a = start, h = step, inf = std::numeric_limits<long double>::infinity();
  switch (kind_) {
    case Kind::power:
      if (param_ <= 1) return inf;
      return (*this)(a) + std::pow(a, 1 - static_cast<long double>(param_)) / ((param_ - 1) * h);
    case Kind::exponential: return (*this)(a) + std::exp(-param_ * a) / (param_ * h);
    case Kind::screened: return (*this)(a) + std::exp(-param_ * a) / (param_ * a * h);
    default: return inf;
  }
}

std::vector<Potential> default_potentials() {
  return {Potential::coulomb(), Potential::power(3), Potential::exponential(1)};
}

bool is_convex_decreasing(const Potential& V, std::size_t r_max) {
  for (std::size_t r = 1; r < r_max; ++r) {
    const long double prev = V(r), cur = V(r + 1);
    if (!(cur < prev)) return false;
    if (r >= 2 && V(r - 1) + cur < 2 * prev) return false;
  }
  return std::abs(V(static_cast<long double>(r_max))) < std::abs(V(1.0L)) && V(1e12L) >= 0 && V(1e12L) < 1e-6L;
}

std::string Energy::str() const {
  if (exact) return format_ratio(*exact);
  return csv::format_double(static_cast<double>(value));
}

bool energy_tied(const Energy& a, const Energy& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return std::abs(a.value - b.value) <= 1e-12L * std::max(1.0L, std::max(std::abs(a.value), std::abs(b.value)));
}

bool energy_less(const Energy& a, const Energy& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.value < b.value && !energy_tied(a, b);
}

Energy ring_energy(const words::Word& occupancy, const Potential& V, EnergyMode mode) {
  const std::size_t q = occupancy.size();
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < q; ++i)
    if (occupancy[i]) sites.push_back(i);

  Energy e;
  if (!mode.images) {
    Ratio exact_sum = 0;
    bool exact = true;
    long double sum = 0;
    for (std::size_t x = 0; x < sites.size(); ++x)
      for (std::size_t y = x + 1; y < sites.size(); ++y) {
        const std::size_t gap = sites[y] - sites[x];
        const std::size_t d = std::min(gap, q - gap);
        sum += V(static_cast<long double>(d));
        if (exact) {
          auto v = V.exact(d);
          if (v)
            exact_sum += *v;
          else
            exact = false;
        }
      }
    e.value = sum;
    if (exact) e.exact = exact_sum;
    return e;
  }

  // images: (1/2) sum over ordered (x, y) and |k| <= cutoff, skipping x = y, k = 0
  const long K = static_cast<long>(mode.cutoff);
  long double sum = 0;
  for (std::size_t x = 0; x < sites.size(); ++x)
    for (std::size_t y = 0; y < sites.size(); ++y)
      for (long k = -K; k <= K; ++k) {
        if (x == y && k == 0) continue;
        const long d = std::labs(static_cast<long>(sites[y]) - static_cast<long>(sites[x]) + k * static_cast<long>(q));
        sum += V(static_cast<long double>(d));
      }
  e.value = sum / 2;
  return e;
}

long double image_tail_bound(std::size_t p, std::size_t q, const Potential& V, std::size_t cutoff) {
  // each omitted image of an ordered pair sits at distance >= m q with
  // m = |k| - 1 >= cutoff, on both sides
  if (cutoff == 0) return std::numeric_limits<long double>::infinity();
  const long double per_pair = 2 * V.tail_bound(static_cast<long double>(cutoff * q), static_cast<long double>(q));
  return static_cast<long double>(p * p) * per_pair / 2;
}

bool GroundState::all_argmin_balanced() const {
  for (const auto& row : rows)
    if (row.is_argmin && !row.balanced) return false;
  return true;
}

GroundState ground_state(std::size_t p, std::size_t q, const Potential& V, EnergyMode mode, std::size_t bound) {
  if (q < 1) throw std::invalid_argument("ground state needs q >= 1");
  if (p > q) throw std::invalid_argument("ground state needs p <= q");
  if (q > bound) throw std::invalid_argument("exhaustive ground state limited to q <= " + std::to_string(bound));
  GroundState g;
  g.p = p;
  g.q = q;
  for (const auto& orbit : words::enumerate_orbits(p, q))
    g.rows.push_back({orbit, ring_energy(orbit.representative(), V, mode), orbit.is_balanced(), false});
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.rows.size(); ++i)
    if (energy_less(g.rows[i].energy, g.rows[best].energy)) best = i;
  g.min_energy = g.rows[best].energy;
  for (auto& row : g.rows)
    if (energy_tied(row.energy, g.min_energy)) {
      row.is_argmin = true;
      g.argmin.push_back(row.orbit);
    }
  return g;
}

void write_csv_header(std::ostream& os) { csv::write_row(os, {"representative", "energy", "is_balanced", "is_argmin"}); }

void write_csv_rows(std::ostream& os, const GroundState& g) {
  for (const auto& row : g.rows)
    csv::write_row(os, {row.orbit.representative().str(), row.energy.str(), row.balanced ? "true" : "false",
                        row.is_argmin ? "true" : "false"});
}

}  // namespace sturm::wigner
