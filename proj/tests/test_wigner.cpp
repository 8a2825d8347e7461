#include "doctest.h"

#include "sturmlab/wigner.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

using namespace sturm;
using namespace sturm::wigner;
using words::Word;

namespace {

Word from_mask(unsigned mask, std::size_t len) {
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> (len - 1 - i)) & 1u;
  return Word(bits);
}

// All pairs, distance measured by walking the ring both ways.
long double oracle_energy(const Word& w, const std::function<long double(long double)>& V) {
  const std::size_t q = w.size();
  long double e = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      if (!w[i] || !w[j]) continue;
      std::size_t forward = 0, backward = 0;
      for (std::size_t k = i; k != j; k = (k + 1) % q) ++forward;
      for (std::size_t k = i; k != j; k = (k + q - 1) % q) ++backward;
      e += V(static_cast<long double>(std::min(forward, backward)));
    }
  return e;
}

}  // namespace

TEST_CASE("potentials") {
  for (const auto& V : default_potentials()) CHECK_MESSAGE(is_convex_decreasing(V), V.name());
  CHECK(is_convex_decreasing(Potential::screened(0.5)));
  CHECK_FALSE(is_convex_decreasing(Potential::anti_coulomb()));
  CHECK(Potential::coulomb().exact(4) == Ratio(1, 4));
  CHECK(Potential::power(3).exact(2) == Ratio(1, 8));
  CHECK_FALSE(Potential::exponential(1).exact(2));
  CHECK(Potential::exponential(2)(1.5L) == doctest::Approx(std::exp(-3.0)));
  CHECK(Potential::parse("power:2.5").name() == "power:2.5");
  CHECK(Potential::parse("screened:0.5")(2.0L) == doctest::Approx(std::exp(-1.0) / 2));
  CHECK(Potential::parse("anti-coulomb")(2.0L) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(Potential::parse("yukawa"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("power:x"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::power(-1), std::invalid_argument);
  CHECK_THROWS_AS(Potential::coulomb()(0.0L), std::domain_error);
}

TEST_CASE("ring energies by hand") {
  auto V = Potential::coulomb();
  CHECK(*ring_energy(Word::parse("0000"), V).exact == 0);
  CHECK(*ring_energy(Word::parse("0100"), V).exact == 0);
  // one pair at distance 2
  CHECK(*ring_energy(Word::parse("1010"), V).exact == Ratio(1, 2));
  // one pair at distance 1
  CHECK(*ring_energy(Word::parse("1100"), V).exact == 1);
  CHECK(energy_less(ring_energy(Word::parse("1010"), V), ring_energy(Word::parse("1100"), V)));
  // 10100: one pair at distance 2; 11000: one at distance 1
  CHECK(*ring_energy(Word::parse("10100"), V).exact == Ratio(1, 2));
}

TEST_CASE("full ring energy") {
  for (const auto& V : default_potentials())
    for (std::size_t q = 1; q <= 12; ++q) {
      long double per_site = 0;
      for (std::size_t r = 1; 2 * r < q; ++r) per_site += 2 * V(static_cast<long double>(r));
      if (q % 2 == 0) per_site += V(static_cast<long double>(q / 2));
      auto e = ring_energy(Word(std::vector<std::uint8_t>(q, 1)), V);
      CHECK(static_cast<double>(e.value) == doctest::Approx(static_cast<double>(q * per_site / 2)).epsilon(1e-14));
    }
}

TEST_CASE("ring energy matches the oracle and is rotation and reflection invariant, q <= 10") {
  for (const auto& V : {Potential::coulomb(), Potential::exponential(1), Potential::screened(0.7)})
    for (std::size_t q = 1; q <= 10; ++q)
      for (unsigned mask = 0; mask < (1u << q); ++mask) {
        Word w = from_mask(mask, q);
        auto e = ring_energy(w, V);
        CHECK(static_cast<double>(e.value) ==
              doctest::Approx(static_cast<double>(oracle_energy(w, [&](long double r) { return V(r); }))).epsilon(1e-14));
        CHECK(energy_tied(e, ring_energy(w.rotated(1 + mask % q), V)));
        CHECK(energy_tied(e, ring_energy(w.reversed(), V)));
        if (e.exact) CHECK(*e.exact == *ring_energy(w.reversed(), V).exact);
      }
}

TEST_CASE("ground state examples") {
  auto g = ground_state(2, 5, Potential::coulomb());
  CHECK(g.rows.size() == 2);
  REQUIRE(g.argmin.size() == 1);
  CHECK(g.argmin.front().contains(Word::parse("10100")));
  CHECK(g.all_argmin_balanced());

  for (std::size_t q = 1; q <= 9; ++q) {
    auto single = ground_state(1, q, Potential::coulomb());
    CHECK(single.rows.size() == 1);
    CHECK(*single.min_energy.exact == 0);
    CHECK(single.all_argmin_balanced());
  }
  for (const auto& V : default_potentials()) {
    auto g37 = ground_state(3, 7, V);
    CHECK(g37.rows.size() == 5);
    REQUIRE(g37.argmin.size() == 1);
    CHECK(g37.argmin.front() == words::balanced_orbit(3, 7));
  }
  CHECK_THROWS_AS(ground_state(3, 21, Potential::coulomb()), std::invalid_argument);
  CHECK_THROWS_AS(ground_state(5, 4, Potential::coulomb()), std::invalid_argument);
}

TEST_CASE("ground states are balanced and unique for coprime densities, q <= 14") {
  for (const auto& V : default_potentials())
    for (std::size_t q = 2; q <= 14; ++q)
      for (std::size_t p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        auto g = ground_state(p, q, V);
        CHECK_MESSAGE(g.all_argmin_balanced(), V.name() << " " << p << "/" << q);
        CHECK_MESSAGE(g.argmin.size() == 1, V.name() << " " << p << "/" << q);
      }
}

TEST_CASE("adding an electron never lowers the minimal Coulomb energy, q <= 12") {
  for (std::size_t q = 1; q <= 12; ++q)
    for (std::size_t p = 0; p < q; ++p)
      CHECK(*ground_state(p, q, Potential::coulomb()).min_energy.exact <=
            *ground_state(p + 1, q, Potential::coulomb()).min_energy.exact);
}

TEST_CASE("an anti-potential makes clusters win") {
  auto g = ground_state(2, 5, Potential::anti_coulomb());
  CHECK_FALSE(g.all_argmin_balanced());
  REQUIRE(g.argmin.size() == 1);
  CHECK(g.argmin.front().contains(Word::parse("11000")));
  std::size_t unbalanced = 0;
  for (std::size_t q = 3; q <= 10; ++q)
    for (std::size_t p = 2; p < q - 1; ++p)
      if (std::gcd(p, q) == 1) unbalanced += !ground_state(p, q, Potential::anti_coulomb()).all_argmin_balanced();
  CHECK(unbalanced > 0);
}

TEST_CASE("periodic images") {
  EnergyMode images{true, 30};
  auto V = Potential::exponential(1);
  // images of a single electron: sum_{k != 0} e^{-|k| q}
  for (std::size_t q : {3, 5, 8}) {
    auto e = ring_energy(Word::parse("1") + Word(std::vector<std::uint8_t>(q - 1, 0)), V, images);
    long double expected = 0;
    for (int k = 1; k <= 30; ++k) expected += std::exp(-static_cast<long double>(k * q));
    CHECK(static_cast<double>(e.value) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
  }
  // the truncation error is within the bound
  for (std::size_t cutoff : {1, 2, 4}) {
    Word w = Word::parse("1001010");
    auto coarse = ring_energy(w, V, {true, cutoff});
    auto fine = ring_energy(w, V, {true, 60});
    CHECK(fine.value - coarse.value >= 0);
    CHECK(fine.value - coarse.value <= image_tail_bound(3, 7, V, cutoff));
  }
  CHECK(std::isinf(static_cast<double>(image_tail_bound(2, 5, Potential::coulomb(), 4))));
  // balanced words still win with images
  auto g = ground_state(3, 8, Potential::power(3), images);
  CHECK(g.all_argmin_balanced());
}

TEST_CASE("ground state csv") {
  std::ostringstream os;
  write_csv_header(os);
  write_csv_rows(os, ground_state(2, 5, Potential::coulomb()));
  CHECK(os.str() == "representative,energy,is_balanced,is_argmin\r\n00011,1/1,false,false\r\n00101,1/2,true,true\r\n");
}
