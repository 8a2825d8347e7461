#include "sturmlab/heaps.hpp"

#include "sturmlab/csv.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sturm::heaps {

using words::Word;

namespace {

Ratio json_ratio(const nlohmann::json& v) {
  if (v.is_string()) return parse_ratio(v.get<std::string>());
  if (v.is_number_integer()) return Ratio(v.get<long long>());
  return parse_ratio(v.dump());
}

Piece piece_from_json(const nlohmann::json& j) {
  Piece p;
  p.columns = j.at("columns").get<std::vector<std::size_t>>();
  for (const auto& v : j.at("lower")) p.lower.push_back(json_ratio(v));
  for (const auto& v : j.at("upper")) p.upper.push_back(json_ratio(v));
  return p;
}

nlohmann::json piece_to_json(const Piece& p) {
  nlohmann::json lower = nlohmann::json::array(), upper = nlohmann::json::array();
  for (const auto& r : p.lower) lower.push_back(format_ratio(r));
  for (const auto& r : p.upper) upper.push_back(format_ratio(r));
  return {{"columns", p.columns}, {"lower", lower}, {"upper", upper}};
}

void validate_piece(const Piece& p, std::size_t num_columns, const char* name) {
  const std::string who = std::string("heap model ") + name + ": ";
  if (p.columns.empty()) throw std::invalid_argument(who + "no columns");
  if (p.lower.size() != p.columns.size() || p.upper.size() != p.columns.size())
    throw std::invalid_argument(who + "contours must list one value per column");
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < p.columns.size(); ++i) {
    if (p.columns[i] >= num_columns) throw std::invalid_argument(who + "column index out of range");
    if (!seen.insert(p.columns[i]).second) throw std::invalid_argument(who + "repeated column");
    if (p.lower[i] < 0) throw std::invalid_argument(who + "negative lower contour");
    if (p.upper[i] < p.lower[i]) throw std::invalid_argument(who + "upper contour below lower contour");
  }
  if (*std::min_element(p.lower.begin(), p.lower.end()) != 0)
    throw std::invalid_argument(who + "lower contour must touch 0");
}

Piece make_piece(std::vector<std::size_t> cols, std::vector<long> lower, std::vector<long> upper) {
  Piece p{std::move(cols), {}, {}};
  for (long v : lower) p.lower.emplace_back(v);
  for (long v : upper) p.upper.emplace_back(v);
  return p;
}

}  // namespace

void HeapModel::validate() const {
  if (num_columns == 0) throw std::invalid_argument("heap model needs at least one column");
  validate_piece(piece0, num_columns, "piece 0");
  validate_piece(piece1, num_columns, "piece 1");
  std::vector<bool> covered(num_columns, false);
  for (auto c : piece0.columns) covered[c] = true;
  for (auto c : piece1.columns) covered[c] = true;
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw std::invalid_argument("heap model: every column must belong to some piece");
}

HeapModel HeapModel::from_json(const nlohmann::json& j) {
  HeapModel m;
  m.num_columns = j.at("num_columns").get<std::size_t>();
  const auto& pieces = j.at("pieces");
  if (!pieces.is_array() || pieces.size() != 2) throw std::invalid_argument("heap model needs exactly two pieces");
  m.piece0 = piece_from_json(pieces[0]);
  m.piece1 = piece_from_json(pieces[1]);
  m.validate();
  return m;
}

nlohmann::json HeapModel::to_json() const {
  return {{"num_columns", num_columns}, {"pieces", {piece_to_json(piece0), piece_to_json(piece1)}}};
}

HeapModel default_model() {
  return {3, make_piece({0, 1}, {0, 0}, {2, 1}), make_piece({1, 2}, {2, 0}, {3, 3})};
}

HeapModel symmetric_model() {
  return {3, make_piece({0, 1}, {0, 0}, {2, 1}), make_piece({1, 2}, {0, 0}, {1, 2})};
}

HeapModel flat_piece0_model() {
  return {3, make_piece({0, 1, 2}, {0, 0, 0}, {1, 1, 1}), make_piece({0, 1, 2}, {0, 0, 0}, {2, 2, 2})};
}

Heights drop(const Heights& h, const Piece& p) {
  Ratio level = h.at(p.columns[0]) - p.lower[0];
  for (std::size_t i = 1; i < p.columns.size(); ++i) level = std::max(level, Ratio(h.at(p.columns[i]) - p.lower[i]));
  Heights out = h;
  for (std::size_t i = 0; i < p.columns.size(); ++i) out[p.columns[i]] = level + p.upper[i];
  return out;
}

MaxPlusMatrix drop_matrix(const HeapModel& m, std::uint8_t symbol) {
  const Piece& p = m.piece(symbol);
  MaxPlusMatrix a(m.num_columns, std::vector<MaxPlus>(m.num_columns));
  for (std::size_t c = 0; c < m.num_columns; ++c) a[c][c] = Ratio(0);
  for (std::size_t i = 0; i < p.columns.size(); ++i) {
    a[p.columns[i]][p.columns[i]].reset();
    for (std::size_t j = 0; j < p.columns.size(); ++j) a[p.columns[i]][p.columns[j]] = p.upper[i] - p.lower[j];
  }
  return a;
}

MaxPlusMatrix multiply(const MaxPlusMatrix& a, const MaxPlusMatrix& b) {
  const std::size_t n = a.size();
  MaxPlusMatrix c(n, std::vector<MaxPlus>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j]) continue;
        Ratio v = *a[i][k] + *b[k][j];
        if (!c[i][j] || v > *c[i][j]) c[i][j] = v;
      }
    }
  return c;
}

Heights max_plus_apply(const MaxPlusMatrix& a, const Heights& h) {
  Heights out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    MaxPlus best;
    for (std::size_t j = 0; j < h.size(); ++j)
      if (a[i][j] && (!best || *a[i][j] + h[j] > *best)) best = *a[i][j] + h[j];
    if (!best) throw std::domain_error("max-plus product has an empty row");
    out[i] = *best;
  }
  return out;
}

MaxPlusMatrix word_matrix(const HeapModel& m, const Word& w) {
  MaxPlusMatrix acc(m.num_columns, std::vector<MaxPlus>(m.num_columns));
  for (std::size_t c = 0; c < m.num_columns; ++c) acc[c][c] = Ratio(0);
  const MaxPlusMatrix step[2] = {drop_matrix(m, 0), drop_matrix(m, 1)};
  for (std::size_t i = 0; i < w.size(); ++i) acc = multiply(step[w[i]], acc);
  return acc;
}

Ratio max_cycle_mean(const MaxPlusMatrix& a) {
  // Karp with an implicit source joined to every node: D[k][v] is the best
  // weight of a length-k walk ending at v.  Edge j -> i carries a[i][j].
  const std::size_t n = a.size();
  std::vector<std::vector<MaxPlus>> D(n + 1, std::vector<MaxPlus>(n));
  for (std::size_t v = 0; v < n; ++v) D[0][v] = Ratio(0);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j] && D[k - 1][j]) {
          Ratio v = *D[k - 1][j] + *a[i][j];
          if (!D[k][i] || v > *D[k][i]) D[k][i] = v;
        }
  std::optional<Ratio> best;
  for (std::size_t v = 0; v < n; ++v) {
    if (!D[n][v]) continue;
    std::optional<Ratio> worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (!D[k][v]) continue;
      Ratio mean = (*D[n][v] - *D[k][v]) / Ratio(n - k);
      if (!worst || mean < *worst) worst = mean;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  if (!best) throw std::domain_error("max-plus matrix has no cycle");
  return *best;
}

Heights heights_after(const Word& w, const HeapModel& m) {
  Heights h(m.num_columns, Ratio(0));
  for (std::size_t i = 0; i < w.size(); ++i) h = drop(h, m.piece(w[i]));
  return h;
}

Ratio heap_height(const Word& w, const HeapModel& m) {
  Heights h = heights_after(w, m);
  return *std::max_element(h.begin(), h.end());
}

bool MinRate::argmin_has_balanced() const {
  return std::any_of(argmin.begin(), argmin.end(), [](const Word& w) { return words::is_balanced(w); });
}

namespace {

struct Search {
  const HeapModel& model;
  std::size_t n;
  std::vector<std::uint8_t> path;
  std::optional<Ratio> best;
  std::vector<Word> argmin;

  void run(const Heights& h) {
    if (path.size() == n) {
      Ratio top = *std::max_element(h.begin(), h.end());
      if (!best || top < *best) {
        best = top;
        argmin.clear();
      }
      if (top == *best) argmin.emplace_back(path);
      return;
    }
    for (std::uint8_t s = 0; s < 2; ++s) {
      path.push_back(s);
      run(drop(h, model.piece(s)));
      path.pop_back();
    }
  }
};

}  // namespace

MinRate min_rate_exhaustive(const HeapModel& m, std::size_t n, std::size_t bound) {
  if (n < 1) throw std::invalid_argument("exhaustive heap search needs n >= 1");
  if (n > bound)
    throw std::invalid_argument("exhaustive heap search limited to n <= " + std::to_string(bound) +
                                "; use the periodic-schedule search (best_balanced_schedule) beyond that");
  m.validate();
  Search s{m, n, {}, std::nullopt, {}};
  s.run(Heights(m.num_columns, Ratio(0)));
  return {n, *s.best, *s.best / Ratio(n), std::move(s.argmin)};
}

Ratio cycle_rate(const Word& w, const HeapModel& m) {
  if (w.empty()) throw std::invalid_argument("cycle rate of the empty word");
  return max_cycle_mean(word_matrix(m, w)) / Ratio(w.size());
}

BalancedSchedule best_balanced_schedule(const HeapModel& m, std::size_t q_max, std::size_t exhaustive_n) {
  if (q_max < 1) throw std::invalid_argument("balanced schedule search needs q_max >= 1");
  m.validate();
  std::optional<BalancedSchedule> best;
  for (std::size_t q = 1; q <= q_max; ++q)
    for (std::size_t p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Word w = q == 1 ? Word(std::vector<std::uint8_t>{static_cast<std::uint8_t>(p)})
                      : words::balanced_orbit(p, q).representative();
      Ratio rate = cycle_rate(w, m);
      if (!best || rate < best->rate) best = BalancedSchedule{Ratio(p, q), w, rate, 0, Ratio(0)};
    }
  const std::size_t q = best->word.size();
  if (exhaustive_n >= q) {
    best->check_n = exhaustive_n - exhaustive_n % q;
    best->exhaustive_rate = min_rate_exhaustive(m, best->check_n, std::max<std::size_t>(20, best->check_n)).min_rate;
  }
  return *best;
}

void write_scan_csv_header(std::ostream& os) {
  csv::write_row(os, {"n", "min_rate", "argmin_words", "balanced_flag"});
}

void write_scan_csv_row(std::ostream& os, const MinRate& r) {
  std::string words;
  for (const auto& w : r.argmin) words += (words.empty() ? "" : " ") + w.str();
  csv::write_row(os, {std::to_string(r.n), format_ratio(r.min_rate), words, r.argmin_has_balanced() ? "true" : "false"});
}

}  // namespace sturm::heaps
