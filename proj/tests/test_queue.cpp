#include "doctest.h"

#include "sturmlab/queue.hpp"

#include <algorithm>
#include <sstream>

using namespace sturm;
using namespace sturm::queueing;
using words::Word;

namespace {

QueueConfig mechanical(Ratio gamma, std::size_t horizon, std::uint64_t seed, double mean = 1.0, double service = 2.0) {
  QueueConfig cfg;
  cfg.mean_interarrival = mean;
  cfg.service_time = service;
  cfg.horizon = horizon;
  cfg.seed = seed;
  cfg.admission = words::MechanicalSpec{gamma, Ratio(0)};
  return cfg;
}

}  // namespace

TEST_CASE("nobody admitted costs nothing") {
  QueueConfig cfg = mechanical(Ratio(0), 1000, 1);
  auto s = simulate_queue(cfg);
  CHECK(s.mean_cost == 0);
  CHECK(s.admitted_fraction == 0);
  CHECK(s.max_queue == 0);
  CHECK(s.gamma == "0/1");
}

TEST_CASE("everyone admitted with fast service") {
  QueueConfig cfg = mechanical(Ratio(1), 1000, 2, 1.0, 1e-9);
  auto s = simulate_queue(cfg);
  CHECK(s.admitted_fraction == 1);
  CHECK(s.mean_cost == doctest::Approx(1.0));
}

TEST_CASE("hand-checked trajectory") {
  // A huge service time dwarfs the unit-mean gaps, so the queue simply
  // grows: costs 1, 2, 3.
  QueueConfig cfg = mechanical(Ratio(1), 3, 5, 1.0, 1e6);
  auto s = simulate_queue(cfg);
  CHECK(s.mean_cost == doctest::Approx(2.0));
  CHECK(s.max_queue == 3);

  // Explicit word 10 repeated admits customers 1 and 3.
  QueueConfig alt = cfg;
  alt.horizon = 4;
  alt.admission = Word::parse("10");
  auto t = simulate_queue(alt);
  CHECK(t.admitted_fraction == doctest::Approx(0.5));
  CHECK(t.mean_cost == doctest::Approx((1.0 + 2.0) / 4));
  CHECK(t.gamma == "1/2");
}

TEST_CASE("admitted fraction tends to gamma") {
  for (auto gamma : {make_ratio(1, 3), make_ratio(2, 7), make_ratio(5, 8)}) {
    auto s = simulate_queue(mechanical(gamma, 100000, 4));
    CHECK(s.admitted_fraction == doctest::Approx(to_double(gamma)).epsilon(1e-4));
  }
}

TEST_CASE("simulation is bitwise reproducible") {
  auto cfg = mechanical(make_ratio(1, 3), 20000, 99);
  auto a = simulate_queue(cfg);
  auto b = simulate_queue(cfg);
  CHECK(a.mean_cost == b.mean_cost);
  CHECK(a.max_queue == b.max_queue);
  auto gaps1 = interarrival_times(99, 1.0, 100);
  auto gaps2 = interarrival_times(99, 1.0, 100);
  CHECK(gaps1 == gaps2);
  CHECK(interarrival_times(100, 1.0, 100) != gaps1);
}

TEST_CASE("exponential gaps have the configured mean") {
  auto gaps = interarrival_times(3, 2.5, 200000);
  double sum = 0, lowest = gaps[0];
  for (double g : gaps) sum += g, lowest = std::min(lowest, g);
  CHECK(lowest >= 0);
  CHECK(sum / gaps.size() == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("invalid configurations are rejected") {
  auto cfg = mechanical(make_ratio(1, 3), 10, 1);
  cfg.service_time = 0;
  CHECK_THROWS_AS(simulate_queue(cfg), std::invalid_argument);
  cfg = mechanical(make_ratio(1, 3), 10, 1, -1.0);
  CHECK_THROWS_AS(simulate_queue(cfg), std::invalid_argument);
  cfg = mechanical(make_ratio(1, 3), 0, 1);
  CHECK_THROWS_AS(simulate_queue(cfg), std::invalid_argument);
  cfg = mechanical(make_ratio(1, 3), 10, 1);
  CHECK_THROWS_AS(simulate_queue(cfg, Word::parse("001")), std::invalid_argument);
}

TEST_CASE("shuffles preserve the 1-count and depend on the seed") {
  Word w = words::mechanical_word(make_ratio(1, 3), 300);
  Word a = shuffled(w, 1);
  CHECK(a.one_length() == w.one_length());
  CHECK(a != w);
  CHECK(shuffled(w, 1) == a);
  CHECK(shuffled(w, 2) != a);
}

TEST_CASE("mechanical admission beats random admission with the same count") {
  auto cfg = mechanical(make_ratio(1, 3), 20000, 17);
  auto cmp = compare_with_shuffled(cfg, 50, 1000);
  CHECK(cmp.competitors.size() == 50);
  CHECK(cmp.reference_is_best());
  for (const auto& c : cmp.competitors) CHECK(c.admitted_fraction == cmp.reference.admitted_fraction);
}

TEST_CASE("configs from json and csv rows") {
  auto j = nlohmann::json::parse(R"({"mean_interarrival": 1.0, "service_time": 2.0, "horizon": 500,
                                     "seeds": [1, 2, 3], "admission": {"gamma": "1/3"}})");
  auto cfgs = configs_from_json(j);
  REQUIRE(cfgs.size() == 3);
  CHECK(cfgs[2].seed == 3);
  std::ostringstream os;
  write_csv_header(os);
  write_csv_row(os, simulate_queue(cfgs[0]));
  auto text = os.str();
  CHECK(text.rfind("seed,gamma,horizon,mean_cost,max_queue,admitted_fraction\r\n1,1/3,500,", 0) == 0);

  auto bad = nlohmann::json::parse(R"({"mean_interarrival": 0, "service_time": 2.0, "horizon": 5,
                                       "admission": {"word": "01"}})");
  CHECK_THROWS_AS(configs_from_json(bad), std::invalid_argument);
}
