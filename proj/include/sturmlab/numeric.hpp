#pragma once

// Number types shared by every testbed: exact integers and rationals (GMP)
// and runtime-precision binary floating point (MPFR).

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace sturm {

using BigInt = boost::multiprecision::mpz_int;
using Ratio = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// A quantity that is either known exactly or only to working precision.
using Scalar = std::variant<Ratio, Real>;

Ratio make_ratio(std::int64_t num, std::int64_t den);

/// Parses "p/q", "p" or a plain decimal such as "0.25" (converted exactly).
Ratio parse_ratio(std::string_view text);

/// Parses a rational ("2/5", "0.25") exactly.  The irrational constants
/// "gamma*" = (3-sqrt 5)/2 and "phi-1" = (sqrt 5-1)/2 are produced as Real at
/// the current default precision.
Scalar parse_scalar(std::string_view text);

/// Always "p/q" in lowest terms, including integers ("2/1", "0/1").
std::string format_ratio(const Ratio& r);

BigInt floor_ratio(const Ratio& r);
BigInt floor_real(const Real& x);

Real to_real(const Ratio& r);
Real to_real(const BigInt& n);
Real to_real(const Scalar& s);
double to_double(const Ratio& r);

bool is_exact(const Scalar& s);

/// Digits printed with fixed significant digits, never in scientific form
/// for values in (1e-3, 1e6).
std::string format_real(const Real& x, int significant_digits);

/// Default precision of newly created Real values, in bits.
unsigned real_precision_bits();

/// Sets the working precision of newly created Real values for its lifetime.
/// Not thread safe: the MPFR default precision is a process-wide setting.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

}  // namespace sturm
