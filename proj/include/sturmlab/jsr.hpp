#pragma once

// Joint spectral radius of {A_0, alpha A_1} with A_0 = (1 1; 0 1) and
// A_1 = (1 0; 1 1): brute-force bounds, optimal 1-ratio scans, standard
// matrices along a continued fraction, and the inverse of alpha -> r(alpha).

#include "sturmlab/numeric.hpp"
#include "sturmlab/words.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sturm::jsr {

template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }
  Mat2 scaled(const T& s) const { return {a * s, b * s, c * s, d * s}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static Mat2 A0() { return {T(1), T(1), T(0), T(1)}; }
  static Mat2 A1() { return {T(1), T(0), T(1), T(1)}; }
};

template <class T>
Mat2<T> power(Mat2<T> m, std::size_t k) {
  Mat2<T> out = Mat2<T>::identity();
  for (; k; k >>= 1, m = m * m)
    if (k & 1) out = out * m;
  return out;
}

/// max |eigenvalue| from trace and determinant.
double spectral_radius(const Mat2<double>& m);
/// Exact trace and determinant, square root at the current Real precision.
Real spectral_radius(const Mat2<Ratio>& m);

double spectral_norm(const Mat2<double>& m);   // largest singular value
double max_row_sum_norm(const Mat2<double>& m);

enum class Norm { spectral, max_row_sum };
Norm parse_norm(const std::string& name);

struct JsrLevel {
  std::size_t n = 0;
  double best_radius = 0;  // max over necklaces of rho(P)^(1/n)
  double best_norm = 0;    // max over words of ||P||^(1/n)
  double upper = 0;        // min of best_norm over levels <= n
};

struct JsrBounds {
  double lower = 0;
  std::string lower_word;  // digits index the matrices
  double upper = 0;
  std::vector<JsrLevel> levels;
};

/// lower <= JSR <= upper from all products of length <= n_max.
JsrBounds jsr_bounds(const std::vector<Mat2<double>>& matrices, std::size_t n_max, Norm norm = Norm::spectral);

/// {A_0, alpha A_1}; alpha in [0,1].
std::vector<Mat2<double>> scaled_pair(double alpha);

struct RatioScan {
  double alpha = 0;
  std::size_t n = 0;
  Ratio ratio;  // 1-ratio of the argmax necklace
  words::Word necklace;
  double growth = 0;  // rho(P)^(1/n)
};

/// Maximizes rho(P)^(1/n) over binary necklaces of length n.  Values within
/// a relative 1e-12 tie; ties go to the smaller 1-ratio, then to the
/// lexicographically smaller necklace.
RatioScan optimal_ratio_scan(double alpha, std::size_t n, std::size_t bound = 18);

/// B_{-1} = alpha A_1, B_0 = A_0, B_{k+1} = B_k^{a_{k+1}} B_{k-1}, exact.
class StandardMatrices {
 public:
  /// Builds B_{-1}, ..., B_last; needs cf.size() >= last.
  StandardMatrices(const words::ContinuedFraction& cf, std::size_t last, const Ratio& alpha = Ratio(1));

  std::size_t last() const { return mats_.size() - 2; }
  const Mat2<Ratio>& B(long k) const { return mats_.at(static_cast<std::size_t>(k + 1)); }
  Ratio tau(long k) const { return B(k).trace(); }
  Real rho(long k) const { return spectral_radius(B(k)); }

 private:
  std::vector<Mat2<Ratio>> mats_;
};

/// The trace sequence fixed by t_0 = 1, t_1 = t_2 = 2,
/// t_{k+1} = t_k t_{k-1} - t_{k-2}; entries 0..count-1.
std::vector<BigInt> fibonacci_trace_sequence(std::size_t count);

struct PrecisionContext {
  unsigned bits = 256;
};

/// Thrown when the requested number of terms needs more working precision
/// than the context provides.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlphaEstimate {
  Real value;           // product form
  Real limit_form;      // same truncation, limit formula
  Real error_estimate;  // gap between the last two partial values
  std::vector<Real> partials;  // product form truncated after each factor
  std::size_t terms = 0;
  unsigned bits = 0;
};

/// alpha with r(alpha) = gamma, gamma given by directive quotients.  Uses
/// the factors n = 0..terms-1, i.e. rho_{-1}..rho_terms.
AlphaEstimate alpha_inverse(const words::ContinuedFraction& gamma, std::size_t terms, PrecisionContext ctx = {});

/// alpha_* from the trace sequence, product over n = 1..terms.
AlphaEstimate alpha_star_tau(std::size_t terms, PrecisionContext ctx = {});

/// Known decimal expansion of alpha_*, 42 digits.
const std::string& alpha_star_reference();

/// Leading significant decimal digits shared by x and `reference`.
std::size_t matching_digits(const Real& x, const std::string& reference);

}  // namespace sturm::jsr
