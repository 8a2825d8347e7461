#include "doctest.h"

#include "sturmlab/heaps.hpp"

#include <random>
#include <sstream>

using namespace sturm;
using namespace sturm::heaps;
using words::Word;

namespace {

Word from_mask(unsigned mask, std::size_t len) {
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> (len - 1 - i)) & 1u;
  return Word(bits);
}

Ratio R(long p, long q = 1) { return Ratio(p, q); }

// Rate of w^infinity from heights alone: (h(w^120) - h(w^60)) / (60 |w|).
// Any cyclicity up to 6 divides 60, and these models have short transients.
Ratio rate_by_iteration(const Word& w, const HeapModel& m) {
  Heights h(m.num_columns, Ratio(0));
  Ratio h60;
  for (int k = 1; k <= 120; ++k) {
    for (std::size_t i = 0; i < w.size(); ++i) h = drop(h, m.piece(w[i]));
    if (k == 60) h60 = *std::max_element(h.begin(), h.end());
  }
  return (*std::max_element(h.begin(), h.end()) - h60) / Ratio(60 * w.size());
}

// Maximum cycle mean as max over k <= n of max_i (A^k)_ii / k.
Ratio cycle_mean_by_powers(const MaxPlusMatrix& a) {
  const std::size_t n = a.size();
  std::optional<Ratio> best;
  MaxPlusMatrix power = a;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      if (power[i][i] && (!best || *power[i][i] / Ratio(k) > *best)) best = *power[i][i] / Ratio(k);
    MaxPlusMatrix next(n, std::vector<MaxPlus>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          if (power[i][l] && a[l][j] && (!next[i][j] || *power[i][l] + *a[l][j] > *next[i][j]))
            next[i][j] = *power[i][l] + *a[l][j];
    power = next;
  }
  return *best;
}

std::vector<HeapModel> all_models() { return {default_model(), symmetric_model(), flat_piece0_model()}; }

}  // namespace

TEST_CASE("shipped models are valid") {
  for (const auto& m : all_models()) CHECK_NOTHROW(m.validate());
}

TEST_CASE("drop mechanics") {
  auto m = default_model();
  Heights zero(3, Ratio(0));
  CHECK(drop(zero, m.piece0) == Heights{R(2), R(1), R(0)});
  CHECK(drop(zero, m.piece1) == Heights{R(0), R(3), R(3)});
  // 01 by hand: piece 0 lands at 0 -> (2,1,0); piece 1 lands at
  // max(1-2, 0-0) = 0 -> (2,3,3).
  CHECK(heights_after(Word::parse("01"), m) == Heights{R(2), R(3), R(3)});
  CHECK(heap_height(Word::parse("01"), m) == 3);
  // 10: piece 1 -> (0,3,3); piece 0 lands at max(0,3) = 3 -> (5,4,3).
  CHECK(heights_after(Word::parse("10"), m) == Heights{R(5), R(4), R(3)});
  CHECK(heap_height(Word(), m) == 0);

  HeapModel disjoint{2, {{0}, {R(0)}, {R(2)}}, {{1}, {R(0)}, {R(3)}}};
  Heights h{R(1, 2), R(5, 3)};
  CHECK(drop(drop(h, disjoint.piece0), disjoint.piece1) == drop(drop(h, disjoint.piece1), disjoint.piece0));
}

TEST_CASE("repeating one covering piece adds a constant") {
  for (const auto& m : all_models())
    for (std::uint8_t s = 0; s < 2; ++s) {
      Ratio one = heap_height(Word(std::vector<std::uint8_t>{s}), m);
      for (std::size_t n = 1; n <= 12; ++n)
        CHECK(heap_height(Word(std::vector<std::uint8_t>(n, s)), m) == Ratio(n) * one);
    }
}

TEST_CASE("drop agrees with its max-plus matrix on random heights") {
  std::mt19937_64 rng(2);
  for (const auto& m : all_models())
    for (int trial = 0; trial < 100; ++trial) {
      Heights h(m.num_columns);
      for (auto& x : h) x = Ratio(static_cast<long>(rng() % 100), 1 + static_cast<long>(rng() % 7));
      std::uint8_t s = rng() & 1u;
      CHECK(max_plus_apply(drop_matrix(m, s), h) == drop(h, m.piece(s)));
      Word w = from_mask(static_cast<unsigned>(rng() % 256), 8);
      Heights direct = h;
      for (std::size_t i = 0; i < w.size(); ++i) direct = drop(direct, m.piece(w[i]));
      CHECK(max_plus_apply(word_matrix(m, w), h) == direct);
    }
}

TEST_CASE("height is monotone and subadditive, words up to length 10") {
  for (const auto& m : all_models())
    for (std::size_t len = 0; len <= 10; ++len)
      for (unsigned mask = 0; mask < (1u << len); ++mask) {
        Word wv = from_mask(mask, len);
        Ratio h = heap_height(wv, m);
        if (len > 0) CHECK(heap_height(wv.factor(0, len - 1), m) <= h);
        for (std::size_t cut = 0; cut <= len; ++cut)
          CHECK(h <= heap_height(wv.factor(0, cut), m) + heap_height(wv.factor(cut, len - cut), m));
      }
}

TEST_CASE("Karp maximum cycle mean matches the diagonal of powers") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    MaxPlusMatrix a(n, std::vector<MaxPlus>(n));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][(i + 1) % n] = Ratio(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3));
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 3 == 0) a[i][j] = Ratio(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3));
    }
    CHECK(max_cycle_mean(a) == cycle_mean_by_powers(a));
  }
  CHECK_THROWS_AS(max_cycle_mean(MaxPlusMatrix(2, std::vector<MaxPlus>(2))), std::domain_error);
}

TEST_CASE("cycle rates") {
  auto m = default_model();
  CHECK(cycle_rate(Word::parse("0"), m) == 2);
  CHECK(cycle_rate(Word::parse("1"), m) == 3);
  CHECK(cycle_rate(Word::parse("001"), m) == R(4, 3));
  CHECK_THROWS_AS(cycle_rate(Word(), m), std::invalid_argument);
  for (const auto& model : all_models())
    for (std::size_t len = 1; len <= 8; ++len)
      for (unsigned mask = 0; mask < (1u << len); ++mask) {
        Word w = from_mask(mask, len);
        Ratio r = cycle_rate(w, model);
        CHECK(r == rate_by_iteration(w, model));
        CHECK(r == cycle_rate(w.rotated(1), model));
        CHECK(r <= heap_height(w, model) / Ratio(len));
      }
}

TEST_CASE("balanced words have the best cycle rate at each ratio, default model, q <= 8") {
  auto m = default_model();
  for (std::size_t q = 2; q <= 8; ++q)
    for (std::size_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Ratio balanced = cycle_rate(words::balanced_orbit(p, q).representative(), m);
      for (const auto& orbit : words::enumerate_orbits(p, q))
        CHECK_MESSAGE(balanced <= cycle_rate(orbit.representative(), m), p << "/" << q << " " << orbit.representative().str());
    }
}

TEST_CASE("exhaustive minimum rate") {
  auto m = default_model();
  auto one = min_rate_exhaustive(m, 1);
  CHECK(one.min_height == std::min(heap_height(Word::parse("0"), m), heap_height(Word::parse("1"), m)));

  const std::vector<Ratio> expected{R(2),     R(3, 2),   R(4, 3),  R(3, 2), R(7, 5),   R(4, 3),   R(10, 7),
                                    R(11, 8), R(4, 3),   R(7, 5),  R(15, 11), R(4, 3), R(18, 13), R(19, 14)};
  for (std::size_t n = 1; n <= 14; ++n) CHECK(min_rate_exhaustive(m, n).min_rate == expected[n - 1]);

  // brute force over bitmasks with heap_height
  for (const auto& model : all_models())
    for (std::size_t n = 1; n <= 10; ++n) {
      auto r = min_rate_exhaustive(model, n);
      std::optional<Ratio> best;
      std::vector<Word> argmin;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Word w = from_mask(mask, n);
        Ratio h = heap_height(w, model);
        if (!best || h < *best) best = h, argmin.clear();
        if (h == *best) argmin.push_back(w);
      }
      CHECK(r.min_height == *best);
      CHECK(r.argmin == argmin);
    }

  CHECK_THROWS_AS(min_rate_exhaustive(m, 21), std::invalid_argument);
  CHECK_THROWS_AS(min_rate_exhaustive(m, 12, 10), std::invalid_argument);
  CHECK_THROWS_AS(min_rate_exhaustive(m, 0), std::invalid_argument);
}

TEST_CASE("argmin sets contain a balanced word, n <= 14, every model") {
  for (const auto& m : all_models())
    for (std::size_t n = 1; n <= 14; ++n) CHECK_MESSAGE(min_rate_exhaustive(m, n).argmin_has_balanced(), "n=" << n);
}

TEST_CASE("doubling a word never beats twice its rate") {
  for (const auto& m : all_models())
    for (std::size_t k = 1; k <= 8; ++k) {
      auto single = min_rate_exhaustive(m, k);
      CHECK(min_rate_exhaustive(m, 2 * k).min_rate <= single.min_rate);
      for (const auto& w : single.argmin) CHECK(heap_height(w + w, m) <= 2 * single.min_height);
    }
}

TEST_CASE("balanced schedules") {
  auto d = best_balanced_schedule(default_model(), 8);
  CHECK(d.ratio == R(1, 3));
  CHECK(d.word.str() == "001");
  CHECK(d.rate == R(4, 3));
  CHECK(d.check_n == 15);
  CHECK(d.matches_exhaustive());
  for (std::size_t n = 1; n <= 16; ++n) CHECK(min_rate_exhaustive(default_model(), n).min_rate >= d.rate);

  auto s = best_balanced_schedule(symmetric_model(), 8);
  CHECK(s.ratio == R(1, 2));
  CHECK(s.rate == 1);
  for (std::size_t k = 1; k <= 7; ++k) {
    auto r = min_rate_exhaustive(symmetric_model(), 2 * k);
    CHECK(r.min_rate == Ratio(2 * k + 1, 2 * k));
    bool alternating = false;
    for (const auto& w : r.argmin) alternating = alternating || w == Word::parse("01").power(k) || w == Word::parse("10").power(k);
    CHECK(alternating);
  }

  auto f = best_balanced_schedule(flat_piece0_model(), 8);
  CHECK(f.ratio == 0);
  CHECK(f.word.str() == "0");
  CHECK(f.matches_exhaustive());
  CHECK_THROWS_AS(best_balanced_schedule(default_model(), 0), std::invalid_argument);
}

TEST_CASE("models from json") {
  auto j = nlohmann::json::parse(R"({"num_columns": 3, "pieces": [
      {"columns": [0, 1], "lower": [0, 0], "upper": ["2", 1]},
      {"columns": [1, 2], "lower": [2, 0], "upper": [3, "3/1"]}]})");
  auto m = HeapModel::from_json(j);
  CHECK(m.to_json() == default_model().to_json());
  CHECK(HeapModel::from_json(m.to_json()).to_json() == m.to_json());

  auto bad = [](const char* text) { return HeapModel::from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"num_columns": 3, "pieces": [{"columns": [0,1], "lower": [0,0], "upper": [1,1]},
                                                       {"columns": [0,1], "lower": [0,0], "upper": [1,1]}]})"),
                  std::invalid_argument);  // column 2 uncovered
  CHECK_THROWS_AS(bad(R"({"num_columns": 2, "pieces": [{"columns": [0,1], "lower": [1,1], "upper": [2,2]},
                                                       {"columns": [0,1], "lower": [0,0], "upper": [1,1]}]})"),
                  std::invalid_argument);  // not resting at 0
  CHECK_THROWS_AS(bad(R"({"num_columns": 2, "pieces": [{"columns": [0,1], "lower": [0,1], "upper": [2,0]},
                                                       {"columns": [0,1], "lower": [0,0], "upper": [1,1]}]})"),
                  std::invalid_argument);  // upper below lower
  CHECK_THROWS_AS(bad(R"({"num_columns": 2, "pieces": [{"columns": [0,5], "lower": [0,0], "upper": [2,2]},
                                                       {"columns": [0,1], "lower": [0,0], "upper": [1,1]}]})"),
                  std::invalid_argument);
}

TEST_CASE("scan csv") {
  std::ostringstream os;
  write_scan_csv_header(os);
  write_scan_csv_row(os, min_rate_exhaustive(default_model(), 3));
  auto r = min_rate_exhaustive(default_model(), 3);
  std::string words;
  for (const auto& w : r.argmin) words += (words.empty() ? "" : " ") + w.str();
  CHECK(os.str() == "n,min_rate,argmin_words,balanced_flag\r\n3,4/3," + words + ",true\r\n");
}
