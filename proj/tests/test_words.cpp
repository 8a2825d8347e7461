#include "doctest.h"

#include "sturmlab/words.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace sturm;
using namespace sturm::words;

namespace {

Word W(const char* s) { return Word::parse(s); }

Word from_mask(std::uint32_t mask, std::size_t len) {
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> (len - 1 - i)) & 1u;
  return Word(std::move(bits));
}

// All-pairs factor comparison, O(m^3).
bool naive_balanced(const Word& w) {
  const std::size_t m = w.size();
  for (std::size_t len = 1; len <= m; ++len)
    for (std::size_t i = 0; i + len <= m; ++i)
      for (std::size_t j = 0; j + len <= m; ++j) {
        long ci = 0, cj = 0;
        for (std::size_t k = 0; k < len; ++k) ci += w[i + k], cj += w[j + k];
        if (std::abs(ci - cj) > 1) return false;
      }
  return true;
}

Word brute_least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) best = std::min(best, w.rotated(k));
  return best;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("word basics") {
  Word w = W("10100");
  CHECK(w.size() == 5);
  CHECK(w.one_length() == 2);
  CHECK(w.rotated(1).str() == "01001");
  CHECK(w.rotated(5) == w);
  CHECK(w.reversed().str() == "00101");
  CHECK(W("01").power(3).str() == "010101");
  CHECK(W("001").cyclic_prefix(7).str() == "0010010");
  CHECK(W("010101").primitive_root().str() == "01");
  CHECK(W("0110").primitive_root().str() == "0110");
  CHECK_THROWS_AS(Word::parse("012"), std::invalid_argument);
  CHECK_THROWS_AS(Word({0, 2}), std::invalid_argument);
}

TEST_CASE("is_balanced examples") {
  CHECK(is_balanced(W("10100")));
  CHECK(is_balanced(Word{}));

  auto r = check_balanced(W("11000"));
  REQUIRE_FALSE(r.balanced);
  REQUIRE(r.witness);
  CHECK(r.witness->u.str() == "110");
  CHECK(r.witness->v.str() == "000");
}

TEST_CASE("is_balanced agrees with the all-pairs oracle for every word up to length 12") {
  for (std::size_t len = 0; len <= 12; ++len)
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      Word w = from_mask(mask, len);
      auto r = check_balanced(w);
      REQUIRE_MESSAGE(r.balanced == naive_balanced(w), w.str());
      if (!r.balanced) {
        REQUIRE(r.witness->u.size() == r.witness->v.size());
        CHECK(r.witness->u.one_length() >= r.witness->v.one_length() + 2);
      }
    }
}

TEST_CASE("mechanical_word examples") {
  CHECK(mechanical_word(Ratio(0), 6).str() == "000000");
  CHECK(mechanical_word(Ratio(1), 6).str() == "111111");
  CHECK(mechanical_word(make_ratio(2, 5), 10).str() == "0101001010");

  CHECK_THROWS_AS(mechanical_word(MechanicalSpec{Ratio(0), Ratio(1)}, 4), std::invalid_argument);
  CHECK_THROWS_AS(mechanical_word(MechanicalSpec{make_ratio(3, 2), Ratio(0)}, 4), std::invalid_argument);
  CHECK_THROWS_AS(mechanical_word(MechanicalSpec{Ratio(-1), Ratio(0)}, 4), std::invalid_argument);
  CHECK_THROWS_AS(mechanical_word(Ratio(0), 0), std::invalid_argument);
}

TEST_CASE("mechanical words are balanced over a (gamma, delta, n) grid") {
  for (int q = 1; q <= 13; ++q)
    for (int p = 0; p <= q; ++p)
      for (int d = 0; d < 7; ++d)
        for (std::size_t n : {1u, 2u, 5u, 17u, 40u, 64u}) {
          Word w = mechanical_word(MechanicalSpec{make_ratio(p, q), make_ratio(d, 7)}, n);
          REQUIRE_MESSAGE(is_balanced(w), p << "/" << q << " delta " << d << "/7 n " << n);
        }

  PrecisionScope prec(200);
  for (const Real& gamma : {Real((3 - sqrt(Real(5))) / 2), Real(sqrt(Real(2)) - 1), Real(1 / sqrt(Real(7)))})
    for (int d = 0; d < 5; ++d) {
      Word w = mechanical_word(MechanicalSpec{gamma, make_ratio(d, 5)}, 64);
      CHECK(is_balanced(w));
    }
}

TEST_CASE("mechanical word over one period has exactly p ones") {
  for (std::size_t q = 2; q <= 64; ++q)
    for (std::size_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      REQUIRE(mechanical_word(Ratio(BigInt(p), BigInt(q)), q).one_length() == p);
    }
}

TEST_CASE("complexity") {
  CHECK(complexity(W("000000"), 3) == 1);
  CHECK(complexity(W("01010101"), 2) == 2);
  CHECK_THROWS_AS(complexity(W("0101"), 5), std::invalid_argument);

  // Sturmian prefixes: only lengths n with prefix >= 16 n are asserted, so
  // every factor of length n has had room to occur.
  PrecisionScope prec(256);
  const std::size_t prefix = 2048;
  for (const Real& gamma : {Real((3 - sqrt(Real(5))) / 2), Real(sqrt(Real(2)) - 1)}) {
    Word w = mechanical_word(MechanicalSpec{gamma, Ratio(0)}, prefix);
    for (std::size_t n = 1; 16 * n <= prefix; ++n) REQUIRE(complexity(w, n) == n + 1);
  }
}

TEST_CASE("one_ratio") {
  CHECK(one_ratio(W("10100")) == make_ratio(2, 5));
  CHECK(one_ratio(W("111")) == Ratio(1));
  CHECK_THROWS_AS(one_ratio(Word{}), std::invalid_argument);
}

TEST_CASE("continued fraction convergents") {
  ContinuedFraction cf({1, 2, 3, 1, 4});
  CHECK(cf.p(-1) == 1);
  CHECK(cf.q(-1) == 1);
  CHECK(cf.p(0) == 0);
  CHECK(cf.q(0) == 1);
  for (int n = 1; n <= 5; ++n) {
    BigInt a(cf.quotient(static_cast<std::size_t>(n)));
    CHECK(cf.p(n) == a * cf.p(n - 1) + cf.p(n - 2));
    CHECK(cf.q(n) == a * cf.q(n - 1) + cf.q(n - 2));
    CHECK(gcd(cf.p(n), cf.q(n)) == 1);
  }
  CHECK_THROWS_AS(ContinuedFraction({1, 0, 2}), std::invalid_argument);

  auto golden = ContinuedFraction::from_expansion({2, 1, 1, 1});
  CHECK(golden.quotients() == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(golden.regular_expansion() == std::vector<std::uint64_t>{2, 1, 1, 1});
  // regular convergents of [0; 2, 1, 1, 1]: 1/2, 1/3, 2/5, 3/8
  CHECK(golden.convergent(1) == make_ratio(1, 2));
  CHECK(golden.convergent(4) == make_ratio(3, 8));
  CHECK_THROWS_AS(ContinuedFraction::from_expansion({1, 2}), std::invalid_argument);
  CHECK(ContinuedFraction::parse("3,1,2").quotients() == std::vector<std::uint64_t>{3, 1, 2});
  CHECK_THROWS_AS(ContinuedFraction::parse("3,,2"), std::invalid_argument);
}

TEST_CASE("standard words") {
  auto s = standard_words(ContinuedFraction({1, 1, 1}));
  REQUIRE(s.size() == 5);
  CHECK(s[0].str() == "1");
  CHECK(s[1].str() == "0");
  CHECK(s[2].str() == "01");
  CHECK(s[3].str() == "010");
  CHECK(s[4].str() == "01001");

  CHECK(standard_words(ContinuedFraction({2}))[2].str() == "001");
  CHECK_THROWS_AS(standard_words(ContinuedFraction{}), std::invalid_argument);

  for (const auto& quotients : std::vector<std::vector<std::uint64_t>>{
           {1, 1, 1, 1, 1, 1, 1, 1}, {2, 1, 3, 1, 2}, {3, 3, 3}, {1, 4, 1, 1, 2, 1}}) {
    ContinuedFraction cf(quotients);
    auto sw = standard_words(cf);
    for (int n = 1; n <= static_cast<int>(cf.size()); ++n) {
      const Word& sn = sw[static_cast<std::size_t>(n + 1)];
      CHECK(one_ratio(sn) == cf.convergent(n));
      CHECK(BigInt(sn.size()) == cf.q(n));
      CHECK(BigInt(sn.one_length()) == cf.p(n));
      if (n + 1 <= static_cast<int>(cf.size())) {
        const Word& next = sw[static_cast<std::size_t>(n + 2)];
        CHECK(next.factor(0, sn.size()) == sn);
      }
    }
  }
}

TEST_CASE("least rotation matches brute force") {
  for (std::size_t len = 1; len <= 10; ++len)
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      Word w = from_mask(mask, len);
      REQUIRE(least_rotation(w) == brute_least_rotation(w));
    }
}

TEST_CASE("enumerate_orbits examples") {
  auto o25 = enumerate_orbits(2, 5);
  REQUIRE(o25.size() == 2);
  CHECK(o25[0].representative().str() == "00011");
  CHECK(o25[1].representative().str() == "00101");
  CHECK(enumerate_orbits(1, 2).size() == 1);
  CHECK(enumerate_orbits(3, 7).size() == binomial(7, 3) / 7);
  CHECK(enumerate_orbits(0, 4).size() == 1);
  CHECK(enumerate_orbits(4, 4).size() == 1);
  CHECK_THROWS_AS(enumerate_orbits(5, 4), std::invalid_argument);
}

TEST_CASE("enumerate_orbits is exhaustive and duplicate-free against a bitmask oracle") {
  for (std::size_t q = 1; q <= 12; ++q)
    for (std::size_t p = 0; p <= q; ++p) {
      std::set<std::string> expected;
      for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
        Word w = from_mask(mask, q);
        if (w.one_length() == p) expected.insert(brute_least_rotation(w).str());
      }
      auto orbits = enumerate_orbits(p, q);
      std::vector<std::string> got;
      std::uint64_t members = 0;
      for (const auto& o : orbits) {
        got.push_back(o.representative().str());
        members += o.period();
      }
      CHECK(std::is_sorted(got.begin(), got.end()));
      CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
      CHECK(got.size() == expected.size());
      CHECK(members == binomial(q, p));
    }
}

TEST_CASE("balanced_orbit") {
  CHECK(balanced_orbit(2, 5).contains(W("10100")));
  CHECK(balanced_orbit(1, 4).representative().str() == "0001");
  CHECK(balanced_orbit(1, 4).contains(W("1000")));

  for (std::size_t q = 2; q <= 13; ++q)
    for (std::size_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      std::vector<Orbit> survivors;
      for (const auto& o : enumerate_orbits(p, q))
        if (o.is_balanced()) survivors.push_back(o);
      REQUIRE(survivors.size() == 1);
      CHECK(survivors.front() == balanced_orbit(p, q));
    }

  CHECK_THROWS_AS(balanced_orbit(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(balanced_orbit(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(balanced_orbit(3, 3), std::invalid_argument);
}

TEST_CASE("necklaces of all densities") {
  std::size_t count = 0;
  for_each_necklace(6, std::nullopt, [&](std::span<const std::uint8_t>) { ++count; });
  CHECK(count == 14);  // binary necklaces of length 6
}
