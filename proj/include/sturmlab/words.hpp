#pragma once

// Finite 0-1 words and the combinatorics every testbed is phrased in:
// balance, mechanical words, factor complexity, standard words and
// necklaces (cyclic orbits).

#include "sturmlab/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sturm::words {

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> bits);

  /// Accepts only the characters '0' and '1'.
  static Word parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  /// |w|_1, the number of 1 symbols.
  std::size_t one_length() const;

  /// Left rotation by k: w_{k+1} ... w_m w_1 ... w_k.
  Word rotated(std::size_t k) const;
  Word factor(std::size_t pos, std::size_t len) const;
  Word reversed() const;
  Word power(std::size_t k) const;
  /// First len symbols of the periodic word w w w ...
  Word cyclic_prefix(std::size_t len) const;
  /// Shortest u with w = u^k.
  Word primitive_root() const;

  std::string str() const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

struct BalanceWitness {
  Word u;  // the factor with more ones
  Word v;
};

struct BalanceResult {
  bool balanced = true;
  std::optional<BalanceWitness> witness;
  explicit operator bool() const { return balanced; }
};

/// Balanced iff every two factors of equal length differ in 1-length by at
/// most one.  On failure the witness is taken at the longest offending length.
BalanceResult check_balanced(const Word& w);
bool is_balanced(const Word& w);

/// Balanced as a cyclic word: every rotation is balanced.
bool is_cyclically_balanced(const Word& w);

/// Slope gamma in [0,1] and phase delta in [0,1).  Exact when both are
/// rational; otherwise floors are taken of the working-precision values.
struct MechanicalSpec {
  Scalar gamma = Ratio(0);
  Scalar delta = Ratio(0);
};

/// w_n = floor((n+1) gamma + delta) - floor(n gamma + delta) for n = 1..length.
Word mechanical_word(const MechanicalSpec& spec, std::size_t length);
Word mechanical_word(const Ratio& gamma, std::size_t length);

/// Number of distinct factors of length n.  Throws if n > |w|.
std::size_t complexity(const Word& w, std::size_t n);

/// |w|_1 / |w| in lowest terms.  Throws on the empty word.
Ratio one_ratio(const Word& w);

/// Quotients of the standard-word recurrence s_{n+1} = s_n^{a_{n+1}} s_{n-1}
/// with s_{-1} = 1, s_0 = 0.  Convergents follow the same recurrence,
/// p_n = a_n p_{n-1} + p_{n-2} (likewise q_n), seeded by p_{-1}/q_{-1} = 1/1
/// and p_0/q_0 = 0/1, so p_n/q_n is exactly the 1-ratio of s_n and
/// q_n = |s_n|.  The limit value is the regular continued fraction
/// [0; a_1 + 1, a_2, a_3, ...].
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::uint64_t> quotients);

  /// From a regular expansion [0; c_1, c_2, ...] with c_1 >= 2, i.e. a value
  /// in (0, 1/2]; e.g. {2,1,1,1,...} for (3 - sqrt 5)/2.
  static ContinuedFraction from_expansion(const std::vector<std::uint64_t>& regular);

  /// Parses "1,1,1" (directive quotients).
  static ContinuedFraction parse(std::string_view text);

  std::size_t size() const { return quotients_.size(); }
  bool empty() const { return quotients_.empty(); }
  /// a_n for 1 <= n <= size().
  std::uint64_t quotient(std::size_t n) const;
  const std::vector<std::uint64_t>& quotients() const { return quotients_; }
  std::vector<std::uint64_t> regular_expansion() const;

  /// p_n and q_n for -1 <= n <= size().
  const BigInt& p(int n) const;
  const BigInt& q(int n) const;
  Ratio convergent(int n) const;

 private:
  std::vector<std::uint64_t> quotients_;
  std::vector<BigInt> p_;  // p_[n + 1] = p_n
  std::vector<BigInt> q_;
};

/// s_{-1}, s_0, s_1, ..., s_N: element k holds s_{k-1}.
std::vector<Word> standard_words(const ContinuedFraction& cf);

/// A necklace: the class of a word under rotation, stored by its
/// lexicographically least rotation.
class Orbit {
 public:
  explicit Orbit(const Word& member);

  const Word& representative() const { return rep_; }
  std::size_t length() const { return rep_.size(); }
  std::size_t one_length() const { return rep_.one_length(); }
  /// Number of distinct rotations.
  std::size_t period() const { return period_; }
  std::vector<Word> members() const;
  bool contains(const Word& w) const;
  bool is_balanced() const;

  friend bool operator==(const Orbit& a, const Orbit& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const Orbit& a, const Orbit& b) { return a.rep_ <=> b.rep_; }

 private:
  Word rep_;
  std::size_t period_ = 0;
};

Word least_rotation(const Word& w);

/// Visits every necklace of the given length in lexicographic order,
/// restricted to a fixed 1-length when `ones` is set.  The callback sees the
/// canonical representative's symbols.
void for_each_necklace(std::size_t length, std::optional<std::size_t> ones,
                       const std::function<void(std::span<const std::uint8_t>)>& visit);

/// All orbits of W_{p,q} (length q, 1-length p), sorted.
std::vector<Orbit> enumerate_orbits(std::size_t p, std::size_t q);

/// The unique orbit of W_{p,q} whose members are all balanced; p, q coprime.
Orbit balanced_orbit(std::size_t p, std::size_t q);

}  // namespace sturm::words
