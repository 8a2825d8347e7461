#pragma once

// Two-piece heap (Tetris) model.  A piece occupies a set of columns with a
// lower and an upper contour; it falls until it touches the heap, so a drop
// is a (max, +) linear map of the column heights.

#include "sturmlab/numeric.hpp"
#include "sturmlab/words.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace sturm::heaps {

struct Piece {
  std::vector<std::size_t> columns;
  std::vector<Ratio> lower;  // per entry of `columns`
  std::vector<Ratio> upper;
};

struct HeapModel {
  std::size_t num_columns = 0;
  Piece piece0, piece1;

  const Piece& piece(std::uint8_t symbol) const { return symbol ? piece1 : piece0; }
  /// Throws std::invalid_argument on a malformed model: bad columns,
  /// upper < lower, lower contour not resting at 0, uncovered columns.
  void validate() const;

  /// {"num_columns": 3, "pieces": [{"columns": [0,1], "lower": [0,0],
  /// "upper": [2,1]}, {...}]}; contour values are numbers or "p/q" strings.
  static HeapModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Shipped models.  The default one makes neither pure schedule optimal;
/// in the mirror-symmetric one alternation wins; in the flat one piece 0
/// alone is best.
HeapModel default_model();
HeapModel symmetric_model();
HeapModel flat_piece0_model();

using Heights = std::vector<Ratio>;

Heights drop(const Heights& h, const Piece& p);

/// Max-plus matrix entry; nullopt is -infinity.
using MaxPlus = std::optional<Ratio>;
using MaxPlusMatrix = std::vector<std::vector<MaxPlus>>;

/// M with drop(h, p) = M (x) h.
MaxPlusMatrix drop_matrix(const HeapModel& m, std::uint8_t symbol);
/// The operator of the word w: M_{w_n} (x) ... (x) M_{w_1}.
MaxPlusMatrix word_matrix(const HeapModel& m, const words::Word& w);
MaxPlusMatrix multiply(const MaxPlusMatrix& a, const MaxPlusMatrix& b);
Heights max_plus_apply(const MaxPlusMatrix& a, const Heights& h);

/// Maximum cycle mean (Karp); throws if the graph has no cycle.
Ratio max_cycle_mean(const MaxPlusMatrix& a);

Heights heights_after(const words::Word& w, const HeapModel& m);
/// Max column height after dropping w from the flat floor; h(empty) = 0.
Ratio heap_height(const words::Word& w, const HeapModel& m);

struct MinRate {
  std::size_t n = 0;
  Ratio min_height;
  Ratio min_rate;  // min_height / n
  std::vector<words::Word> argmin;  // lexicographic
  bool argmin_has_balanced() const;
};

/// Exact minimum of h(w)/n over all 2^n words.  Throws past `bound`.
MinRate min_rate_exhaustive(const HeapModel& m, std::size_t n, std::size_t bound = 20);

/// lim h(w^k)/(k|w|): the maximum cycle mean of the word's operator over |w|.
Ratio cycle_rate(const words::Word& w, const HeapModel& m);

struct BalancedSchedule {
  Ratio ratio;  // p/q
  words::Word word;
  Ratio rate;
  /// Largest multiple of q not above the exhaustive bound used, with the
  /// exhaustive minimum there.
  std::size_t check_n = 0;
  Ratio exhaustive_rate;
  bool matches_exhaustive() const { return exhaustive_rate == rate; }
};

/// Minimizes cycle_rate over the balanced words of every ratio p/q with
/// q <= q_max (ties to smaller q, then smaller p), then cross-checks the
/// winner against min_rate_exhaustive at the largest multiple of q that is
/// at most exhaustive_n.
BalancedSchedule best_balanced_schedule(const HeapModel& m, std::size_t q_max, std::size_t exhaustive_n = 16);

/// n, min_rate, argmin_words (space separated), balanced_flag
void write_scan_csv_header(std::ostream& os);
void write_scan_csv_row(std::ostream& os, const MinRate& r);

}  // namespace sturm::heaps
