#include "sturmlab/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace sturm::jsr {

double spectral_radius(const Mat2<double>& m) {
  const double t = m.trace(), disc = t * t - 4 * m.det();
  if (disc >= 0) return (std::abs(t) + std::sqrt(disc)) / 2;
  return std::sqrt(m.det());  // complex pair of modulus sqrt(det)
}

Real spectral_radius(const Mat2<Ratio>& m) {
  const Ratio t = m.trace(), det = m.det(), disc = t * t - 4 * det;
  if (disc >= 0) return (to_real(Ratio(abs(t))) + sqrt(to_real(disc))) / 2;
  return sqrt(to_real(det));
}

double spectral_norm(const Mat2<double>& m) {
  const double s = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d, det = m.det();
  return std::sqrt((s + std::sqrt(std::max(0.0, s * s - 4 * det * det))) / 2);
}

double max_row_sum_norm(const Mat2<double>& m) {
  return std::max(std::abs(m.a) + std::abs(m.b), std::abs(m.c) + std::abs(m.d));
}

Norm parse_norm(const std::string& name) {
  if (name == "spectral") return Norm::spectral;
  if (name == "max-row-sum") return Norm::max_row_sum;
  throw std::invalid_argument("unknown norm '" + name + "' (spectral, max-row-sum)");
}

namespace {

// w is the least of its rotations
bool is_necklace(const std::vector<std::uint8_t>& w) {
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      auto x = w[(r + i) % n], y = w[i];
      if (x != y) {
        if (x < y) return false;
        break;
      }
    }
  return true;
}

}  // namespace

JsrBounds jsr_bounds(const std::vector<Mat2<double>>& matrices, std::size_t n_max, Norm norm) {
  if (matrices.empty()) throw std::invalid_argument("jsr bounds of an empty matrix set");
  if (n_max < 1) throw std::invalid_argument("jsr bounds need n_max >= 1");
  const auto norm_of = norm == Norm::spectral ? spectral_norm : max_row_sum_norm;

  JsrBounds out;
  out.levels.resize(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.levels[n - 1].n = n;

  std::vector<std::uint8_t> word;
  std::function<void(const Mat2<double>&)> visit = [&](const Mat2<double>& prod) {
    if (!word.empty()) {
      const std::size_t n = word.size();
      const double inv = 1.0 / static_cast<double>(n);
      auto& level = out.levels[n - 1];
      level.best_norm = std::max(level.best_norm, std::pow(norm_of(prod), inv));
      if (is_necklace(word)) {
        double r = std::pow(spectral_radius(prod), inv);
        if (r > level.best_radius) level.best_radius = r;
        if (r > out.lower * (1 + 1e-15)) {
          out.lower = r;
          out.lower_word.clear();
          for (auto s : word) out.lower_word += static_cast<char>('0' + s);
        }
      }
    }
    if (word.size() == n_max) return;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      word.push_back(static_cast<std::uint8_t>(i));
      visit(prod * matrices[i]);
      word.pop_back();
    }
  };
  visit(Mat2<double>::identity());

  double running = std::numeric_limits<double>::infinity();
  for (auto& level : out.levels) level.upper = running = std::min(running, level.best_norm);
  out.upper = running;
  return out;
}

std::vector<Mat2<double>> scaled_pair(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("alpha must lie in [0,1]");
  return {Mat2<double>::A0(), Mat2<double>::A1().scaled(alpha)};
}

RatioScan optimal_ratio_scan(double alpha, std::size_t n, std::size_t bound) {
  if (n < 1) throw std::invalid_argument("ratio scan needs n >= 1");
  if (n > bound) throw std::invalid_argument("ratio scan limited to n <= " + std::to_string(bound));
  const auto pair = scaled_pair(alpha);
  RatioScan best{alpha, n, Ratio(0), {}, -1};
  words::for_each_necklace(n, std::nullopt, [&](std::span<const std::uint8_t> w) {
    Mat2<double> prod = Mat2<double>::identity();
    std::size_t ones = 0;
    for (auto s : w) prod = prod * pair[s], ones += s;
    const double g = std::pow(spectral_radius(prod), 1.0 / static_cast<double>(n));
    const Ratio ratio(ones, n);
    const double tol = 1e-12 * std::max(1.0, best.growth);
    if (g > best.growth + tol || (g >= best.growth - tol && ratio < best.ratio)) {
      best.growth = g;
      best.ratio = ratio;
      best.necklace = words::Word(std::vector<std::uint8_t>(w.begin(), w.end()));
    }
  });
  return best;
}

StandardMatrices::StandardMatrices(const words::ContinuedFraction& cf, std::size_t last, const Ratio& alpha) {
  if (last > cf.size()) throw std::invalid_argument("continued fraction too short for the requested matrices");
  mats_.push_back(Mat2<Ratio>::A1().scaled(alpha));
  mats_.push_back(Mat2<Ratio>::A0());
  for (std::size_t k = 1; k <= last; ++k) {
    const auto& prev = mats_[k];
    const auto& before = mats_[k - 1];
    mats_.push_back(power(prev, cf.quotient(k)) * before);
  }
}

std::vector<BigInt> fibonacci_trace_sequence(std::size_t count) {
  std::vector<BigInt> t{1, 2, 2};
  while (t.size() < count) {
    const std::size_t k = t.size() - 1;
    t.push_back(t[k] * t[k - 1] - t[k - 2]);
  }
  t.resize(count);
  return t;
}

namespace {

Real log2_of(const BigInt& x) { return log(to_real(x)) / log(Real(2)); }

// The forms subtract quantities of size exponent * log(growth), so the
// working precision must cover that magnitude plus ~128 bits of answer.
void require_bits(unsigned bits, const Real& magnitude_log2) {
  if (bits < 128) throw PrecisionError("alpha evaluation needs at least 128 bits");
  const double needed = std::max(0.0, magnitude_log2.convert_to<double>()) + 128;
  if (needed > bits)
    throw PrecisionError("exponents outgrow the working precision: need about " +
                         std::to_string(static_cast<unsigned>(std::ceil(needed))) + " bits, have " +
                         std::to_string(bits));
}

AlphaEstimate finish(std::vector<Real> partial_logs, Real limit_log, std::size_t terms, unsigned bits) {
  AlphaEstimate out;
  for (const auto& l : partial_logs) out.partials.push_back(exp(l));
  out.value = out.partials.back();
  out.limit_form = exp(limit_log);
  const Real floor_error = ldexp(Real(1), -static_cast<int>(bits) + 16);
  Real gap = out.partials.size() > 1 ? Real(abs(out.partials.back() - out.partials[out.partials.size() - 2])) : Real(1);
  out.error_estimate = std::max(gap, floor_error);
  out.terms = terms;
  out.bits = bits;
  return out;
}

}  // namespace

AlphaEstimate alpha_inverse(const words::ContinuedFraction& gamma, std::size_t terms, PrecisionContext ctx) {
  if (terms < 3) throw std::invalid_argument("alpha inverse needs terms >= 3");
  if (gamma.size() < terms) throw std::invalid_argument("continued fraction needs at least `terms` quotients");
  PrecisionScope scope(ctx.bits);
  // log rho_n <= q_n log 2 (entries of B_n are bounded by 2^{q_n})
  const BigInt& q_last = gamma.q(static_cast<int>(terms));
  if (q_last > BigInt(1) << 20) throw PrecisionError("standard matrices too large to build exactly for these terms");
  require_bits(ctx.bits, 2 * log2_of(q_last));

  StandardMatrices sm(gamma, terms);
  std::vector<Real> log_rho;  // log_rho[k + 1] = log rho_k
  for (long k = -1; k <= static_cast<long>(terms); ++k) log_rho.push_back(log(sm.rho(k)));
  auto L = [&](long k) -> const Real& { return log_rho.at(static_cast<std::size_t>(k + 1)); };

  // factor n: (rho_n^{d_{n+1}} rho_{n-1} / rho_{n+1})^{(-1)^n q_n}
  std::vector<Real> partial_logs;
  Real sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    const long k = static_cast<long>(n);
    Real factor = Real(gamma.quotient(n + 1)) * L(k) + L(k - 1) - L(k + 1);
    factor *= to_real(gamma.q(static_cast<int>(n)));
    sum += (n % 2 ? -factor : factor);
    partial_logs.push_back(sum);
  }
  // limit form at N = terms - 1: (rho_N^{q_{N+1}} / rho_{N+1}^{q_N})^{(-1)^N}
  const int N = static_cast<int>(terms) - 1;
  Real limit = to_real(gamma.q(N + 1)) * L(N) - to_real(gamma.q(N)) * L(N + 1);
  if (N % 2) limit = -limit;
  return finish(std::move(partial_logs), limit, terms, ctx.bits);
}

AlphaEstimate alpha_star_tau(std::size_t terms, PrecisionContext ctx) {
  if (terms < 3) throw std::invalid_argument("alpha_* needs terms >= 3");
  PrecisionScope scope(ctx.bits);
  // Fibonacci numbers F_0..F_{terms+2}
  std::vector<BigInt> F{0, 1};
  while (F.size() < terms + 3) F.push_back(F[F.size() - 1] + F[F.size() - 2]);

  // log t_k by the log-domain recurrence; t_k itself has about F_k digits
  std::vector<Real> lt{Real(0), log(Real(2)), log(Real(2))};
  while (lt.size() < terms + 2) {
    const std::size_t k = lt.size() - 1;
    lt.push_back(lt[k] + lt[k - 1] + log1p(-exp(lt[k - 2] - lt[k] - lt[k - 1])));
  }
  require_bits(ctx.bits, log2_of(F[terms + 2]) + log(lt[terms + 1] + 1) / log(Real(2)));

  // factor n: (1 - t_{n-1} / (t_n t_{n+1}))^{(-1)^n F_{n+1}}
  std::vector<Real> partial_logs;
  Real sum = 0;
  for (std::size_t n = 1; n <= terms; ++n) {
    Real factor = to_real(F[n + 1]) * log1p(-exp(lt[n - 1] - lt[n] - lt[n + 1]));
    sum += (n % 2 ? -factor : factor);
    partial_logs.push_back(sum);
  }
  // limit form at k = terms + 1: (t_k^{F_{k+1}} / t_{k+1}^{F_k})^{(-1)^k}; the
  // product over n <= terms telescopes to exactly this value
  const std::size_t k = terms + 1;
  lt.push_back(lt[k] + lt[k - 1] + log1p(-exp(lt[k - 2] - lt[k] - lt[k - 1])));
  Real limit = to_real(F[k + 1]) * lt[k] - to_real(F[k]) * lt[k + 1];
  if (k % 2) limit = -limit;
  return finish(std::move(partial_logs), limit, terms, ctx.bits);
}

const std::string& alpha_star_reference() {
  static const std::string digits = "0.749326546330367557943961948091344672091327";
  return digits;
}

std::size_t matching_digits(const Real& x, const std::string& reference) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(static_cast<int>(reference.size()) + 20) << x;
  const std::string mine = os.str();
  auto significant = [](const std::string& s) {
    std::string out;
    bool started = false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') continue;
      if (ch != '0') started = true;
      if (started) out += ch;
    }
    return out;
  };
  // both must agree on the position of the decimal point
  if (mine.find('.') != reference.find('.')) return 0;
  const std::string a = significant(mine), b = significant(reference);
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

}  // namespace sturm::jsr
