#include "sturmlab/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace sturm::words {

Word::Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("word symbols must be 0 or 1");
}

Word Word::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("word may contain only '0' and '1', got '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(bits));
}

std::size_t Word::one_length() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Word Word::rotated(std::size_t k) const {
  if (bits_.empty()) return *this;
  k %= bits_.size();
  std::vector<std::uint8_t> out(bits_.begin() + static_cast<std::ptrdiff_t>(k), bits_.end());
  out.insert(out.end(), bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(k));
  return Word(std::move(out));
}

Word Word::factor(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw std::out_of_range("factor exceeds word");
  auto first = bits_.begin() + static_cast<std::ptrdiff_t>(pos);
  return Word(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(len)));
}

Word Word::reversed() const { return Word(std::vector<std::uint8_t>(bits_.rbegin(), bits_.rend())); }

Word Word::power(std::size_t k) const { return cyclic_prefix(k * bits_.size()); }

Word Word::cyclic_prefix(std::size_t len) const {
  if (bits_.empty() && len > 0) throw std::invalid_argument("cannot extend the empty word");
  std::vector<std::uint8_t> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = bits_[i % bits_.size()];
  return Word(std::move(out));
}

Word Word::primitive_root() const {
  const std::size_t n = bits_.size();
  if (n == 0) return *this;
  // prefix function: the smallest period divides n iff the word is a power
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && bits_[i] != bits_[k]) k = pi[k - 1];
    if (bits_[i] == bits_[k]) ++k;
    pi[i] = k;
  }
  std::size_t p = n - pi[n - 1];
  return n % p == 0 ? factor(0, p) : *this;
}

std::string Word::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

Word operator+(const Word& a, const Word& b) {
  std::vector<std::uint8_t> out = a.bits_;
  out.insert(out.end(), b.bits_.begin(), b.bits_.end());
  return Word(std::move(out));
}

BalanceResult check_balanced(const Word& w) {
  const std::size_t m = w.size();
  std::vector<std::size_t> prefix(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + w[i];

  for (std::size_t len = m; len >= 1; --len) {
    std::size_t lo_pos = 0, hi_pos = 0;
    std::size_t lo = prefix[len], hi = prefix[len];
    for (std::size_t i = 1; i + len <= m; ++i) {
      std::size_t c = prefix[i + len] - prefix[i];
      if (c > hi) hi = c, hi_pos = i;
      if (c < lo) lo = c, lo_pos = i;
    }
    if (hi - lo > 1)
      return {false, BalanceWitness{w.factor(hi_pos, len), w.factor(lo_pos, len)}};
  }
  return {};
}

bool is_balanced(const Word& w) { return check_balanced(w).balanced; }

bool is_cyclically_balanced(const Word& w) {
  // Factors of ww up to length |w| are exactly the cyclic factors of w; longer
  // ones add a full copy of w to a shorter cyclic factor.
  return w.empty() || is_balanced(w + w);
}

namespace {

void check_unit_interval(const Scalar& gamma, const Scalar& delta) {
  auto in_range = [](const Scalar& s, bool closed_above) {
    return std::visit(
        [&](const auto& v) { return v >= 0 && (closed_above ? v <= 1 : v < 1); }, s);
  };
  if (!in_range(gamma, true)) throw std::invalid_argument("mechanical word: gamma outside [0,1]");
  if (!in_range(delta, false)) throw std::invalid_argument("mechanical word: delta outside [0,1)");
}

}  // namespace

Word mechanical_word(const MechanicalSpec& spec, std::size_t length) {
  if (length == 0) throw std::invalid_argument("mechanical word: length must be positive");
  check_unit_interval(spec.gamma, spec.delta);

  std::vector<std::uint8_t> bits(length);
  if (is_exact(spec.gamma) && is_exact(spec.delta)) {
    const Ratio& gamma = std::get<Ratio>(spec.gamma);
    const Ratio& delta = std::get<Ratio>(spec.delta);
    BigInt previous = floor_ratio(gamma + delta);
    for (std::size_t n = 1; n <= length; ++n) {
      BigInt next = floor_ratio(Ratio(n + 1) * gamma + delta);
      bits[n - 1] = static_cast<std::uint8_t>(next - previous);
      previous = next;
    }
  } else {
    // Floors are evaluated on the working-precision approximations.
    Real gamma = to_real(spec.gamma);
    Real delta = to_real(spec.delta);
    BigInt previous = floor_real(gamma + delta);
    for (std::size_t n = 1; n <= length; ++n) {
      BigInt next = floor_real(Real(n + 1) * gamma + delta);
      bits[n - 1] = static_cast<std::uint8_t>(next - previous);
      previous = next;
    }
  }
  return Word(std::move(bits));
}

Word mechanical_word(const Ratio& gamma, std::size_t length) {
  return mechanical_word(MechanicalSpec{gamma, Ratio(0)}, length);
}

std::size_t complexity(const Word& w, std::size_t n) {
  if (n > w.size()) throw std::invalid_argument("complexity: factor length exceeds word length");
  if (n == 0) return 1;
  const std::string s = w.str();
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + n <= s.size(); ++i) seen.insert(std::string_view(s).substr(i, n));
  return seen.size();
}

Ratio one_ratio(const Word& w) {
  if (w.empty()) throw std::invalid_argument("one_ratio of the empty word");
  return Ratio(BigInt(w.one_length()), BigInt(w.size()));
}

ContinuedFraction::ContinuedFraction(std::vector<std::uint64_t> quotients)
    : quotients_(std::move(quotients)) {
  for (auto a : quotients_)
    if (a < 1) throw std::invalid_argument("continued fraction quotients must be >= 1");
  p_ = {BigInt(1), BigInt(0)};
  q_ = {BigInt(1), BigInt(1)};
  for (auto a : quotients_) {
    std::size_t k = p_.size();
    p_.push_back(BigInt(a) * p_[k - 1] + p_[k - 2]);
    q_.push_back(BigInt(a) * q_[k - 1] + q_[k - 2]);
  }
}

ContinuedFraction ContinuedFraction::from_expansion(const std::vector<std::uint64_t>& regular) {
  if (regular.empty()) throw std::invalid_argument("empty continued fraction expansion");
  if (regular.front() < 2)
    throw std::invalid_argument("expansion must describe a value in (0, 1/2] (first quotient >= 2)");
  std::vector<std::uint64_t> directive = regular;
  directive.front() -= 1;
  return ContinuedFraction(std::move(directive));
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    if (item.empty()) throw std::invalid_argument("empty continued fraction quotient");
    for (char c : item)
      if (c < '0' || c > '9') throw std::invalid_argument("malformed quotient '" + std::string(item) + "'");
    out.push_back(std::stoull(std::string(item)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return ContinuedFraction(std::move(out));
}

std::uint64_t ContinuedFraction::quotient(std::size_t n) const {
  if (n < 1 || n > quotients_.size()) throw std::out_of_range("continued fraction index");
  return quotients_[n - 1];
}

std::vector<std::uint64_t> ContinuedFraction::regular_expansion() const {
  std::vector<std::uint64_t> out = quotients_;
  if (!out.empty()) out.front() += 1;
  return out;
}

const BigInt& ContinuedFraction::p(int n) const {
  if (n < -1 || n > static_cast<int>(quotients_.size())) throw std::out_of_range("convergent index");
  return p_[static_cast<std::size_t>(n + 1)];
}

const BigInt& ContinuedFraction::q(int n) const {
  if (n < -1 || n > static_cast<int>(quotients_.size())) throw std::out_of_range("convergent index");
  return q_[static_cast<std::size_t>(n + 1)];
}

Ratio ContinuedFraction::convergent(int n) const { return Ratio(p(n), q(n)); }

std::vector<Word> standard_words(const ContinuedFraction& cf) {
  if (cf.empty()) throw std::invalid_argument("standard words need a nonempty continued fraction");
  std::vector<Word> s{Word::parse("1"), Word::parse("0")};
  for (std::size_t n = 1; n <= cf.size(); ++n) {
    const Word& prev = s[s.size() - 1];
    const Word& prev2 = s[s.size() - 2];
    s.push_back(prev.power(cf.quotient(n)) + prev2);
  }
  return s;
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    auto a = w[(i + k) % n];
    auto b = w[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return w.rotated(std::min(i, j));
}

Orbit::Orbit(const Word& member) : rep_(least_rotation(member)) {
  period_ = rep_.primitive_root().size();
}

std::vector<Word> Orbit::members() const {
  std::vector<Word> out;
  out.reserve(period_);
  for (std::size_t k = 0; k < period_; ++k) out.push_back(rep_.rotated(k));
  return out;
}

bool Orbit::contains(const Word& w) const { return w.size() == rep_.size() && least_rotation(w) == rep_; }

bool Orbit::is_balanced() const {
  for (const Word& m : members())
    if (!words::is_balanced(m)) return false;
  return true;
}

namespace {

// Fredricksen-Kessler-Maiorana prenecklace recursion, pruned on 1-length.
struct NecklaceWalker {
  std::size_t n;
  std::optional<std::size_t> ones;
  const std::function<void(std::span<const std::uint8_t>)>& visit;
  std::vector<std::uint8_t> a;  // a[0] is a sentinel, symbols live in a[1..n]

  void run(std::size_t t, std::size_t period, std::size_t count) {
    if (t > n) {
      if (n % period == 0) visit(std::span<const std::uint8_t>(a).subspan(1));
      return;
    }
    for (std::uint8_t v = a[t - period]; v <= 1; ++v) {
      std::size_t c = count + v;
      if (ones && (c > *ones || c + (n - t) < *ones)) continue;
      a[t] = v;
      run(t + 1, v == a[t - period] ? period : t, c);
    }
  }
};

}  // namespace

void for_each_necklace(std::size_t length, std::optional<std::size_t> ones,
                       const std::function<void(std::span<const std::uint8_t>)>& visit) {
  if (ones && *ones > length) return;
  if (length == 0) {
    visit({});
    return;
  }
  NecklaceWalker walker{length, ones, visit, std::vector<std::uint8_t>(length + 1, 0)};
  walker.run(1, 1, 0);
}

std::vector<Orbit> enumerate_orbits(std::size_t p, std::size_t q) {
  if (q < 1) throw std::invalid_argument("enumerate_orbits: q must be >= 1");
  if (p > q) throw std::invalid_argument("enumerate_orbits: p exceeds q");
  std::vector<Orbit> out;
  for_each_necklace(q, p, [&](std::span<const std::uint8_t> bits) {
    out.emplace_back(Word(std::vector<std::uint8_t>(bits.begin(), bits.end())));
  });
  return out;
}

Orbit balanced_orbit(std::size_t p, std::size_t q) {
  if (p < 1 || p >= q) throw std::invalid_argument("balanced_orbit: need 1 <= p < q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("balanced_orbit: p and q must be coprime");
  return Orbit(mechanical_word(Ratio(BigInt(p), BigInt(q)), q));
}

}  // namespace sturm::words
