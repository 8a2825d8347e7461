#include "sturmlab/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sturm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  BigInt n{std::string(s)};
  return negative ? BigInt(-n) : n;
}

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

Ratio make_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Ratio(BigInt(num), BigInt(den));
}

Ratio parse_ratio(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Ratio(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = (whole.empty() ? BigInt(0) : BigInt(std::string(whole))) * scale +
                 (frac.empty() ? BigInt(0) : BigInt(std::string(frac)));
    Ratio r(num, scale);
    return negative ? Ratio(-r) : r;
  }
  return Ratio(parse_integer(text));
}

Scalar parse_scalar(std::string_view text) {
  if (text == "gamma*") return Real((3 - sqrt(Real(5))) / 2);
  if (text == "phi-1") return Real((sqrt(Real(5)) - 1) / 2);
  return parse_ratio(text);
}

std::string format_ratio(const Ratio& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt floor_ratio(const Ratio& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt floor_real(const Real& x) {
  Real f = floor(x);
  BigInt out;
  mpfr_get_z(out.backend().data(), f.backend().data(), MPFR_RNDD);
  return out;
}

Real to_real(const Ratio& r) {
  Real out;
  mpfr_set_q(out.backend().data(), r.backend().data(), MPFR_RNDN);
  return out;
}

Real to_real(const BigInt& n) {
  Real out;
  mpfr_set_z(out.backend().data(), n.backend().data(), MPFR_RNDN);
  return out;
}

Real to_real(const Scalar& s) {
  if (const auto* r = std::get_if<Ratio>(&s)) return to_real(*r);
  return std::get<Real>(s);
}

double to_double(const Ratio& r) { return r.convert_to<double>(); }

bool is_exact(const Scalar& s) { return std::holds_alternative<Ratio>(s); }

std::string format_real(const Real& x, int significant_digits) {
  std::ostringstream os;
  Real ax = abs(x);
  if (x == 0 || (ax > Real("1e-3") && ax < Real(1e6))) {
    int int_digits = 1;
    if (ax >= 1) int_digits = static_cast<int>(floor(log10(ax)).convert_to<double>()) + 1;
    int frac = significant_digits - int_digits;
    if (ax < 1 && ax != 0) frac = significant_digits - static_cast<int>(floor(log10(ax)).convert_to<double>()) - 1;
    os << std::fixed << std::setprecision(frac > 0 ? frac : 0) << x;
  } else {
    os << std::scientific << std::setprecision(significant_digits - 1) << x;
  }
  return os.str();
}

unsigned real_precision_bits() {
  return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  if (bits < 16) throw std::invalid_argument("precision below 16 bits");
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

}  // namespace sturm
