#include "sturmlab/multimodular.hpp"

#include <deque>
#include <sstream>

namespace sturm::multimodular {

namespace {

std::string describe(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

Point add(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

UndefinedPointError::UndefinedPointError(Point p)
    : std::domain_error("lattice function undefined at " + describe(p)), point_(std::move(p)) {}

LatticeFunction::LatticeFunction(std::size_t arity, Evaluator evaluator, std::string name)
    : arity_(arity), evaluator_(std::move(evaluator)), name_(std::move(name)) {
  if (arity_ == 0) throw std::invalid_argument("lattice function arity must be positive");
  if (!evaluator_) throw std::invalid_argument("lattice function needs an evaluator");
}

LatticeFunction LatticeFunction::tabulated(std::size_t arity, std::map<Point, double> table, std::string name) {
  for (const auto& [p, _] : table)
    if (p.size() != arity) throw std::invalid_argument("table point " + describe(p) + " has wrong arity");
  return LatticeFunction(
      arity,
      [table = std::move(table)](std::span<const int> u) -> std::optional<double> {
        auto it = table.find(Point(u.begin(), u.end()));
        if (it == table.end()) return std::nullopt;
        return it->second;
      },
      std::move(name));
}

std::optional<double> LatticeFunction::try_eval(std::span<const int> u) const {
  if (u.size() != arity_) throw std::invalid_argument("lattice point has wrong arity");
  return evaluator_(u);
}

double LatticeFunction::operator()(std::span<const int> u) const {
  auto v = try_eval(u);
  if (!v) throw UndefinedPointError(Point(u.begin(), u.end()));
  return *v;
}

std::vector<Point> multimodular_basis(std::size_t m) {
  if (m == 0) throw std::invalid_argument("basis dimension must be positive");
  std::vector<Point> f(m + 1, Point(m, 0));
  f[0][0] = -1;
  for (std::size_t i = 1; i < m; ++i) {
    f[i][i - 1] = 1;
    f[i][i] = -1;
  }
  f[m][m - 1] = 1;
  return f;
}

MultimodularReport check_multimodular(const LatticeFunction& J, const Box& box, double tolerance) {
  const std::size_t m = J.arity();
  if (box.lo.size() != m || box.hi.size() != m) throw std::invalid_argument("box dimension differs from arity");
  for (std::size_t i = 0; i < m; ++i)
    if (box.lo[i] > box.hi[i]) throw std::invalid_argument("empty box");

  const auto basis = multimodular_basis(m);
  MultimodularReport report;
  Point u = box.lo;
  while (true) {
    const double ju = J(u);
    for (std::size_t v = 0; v < basis.size(); ++v)
      for (std::size_t w = v + 1; w < basis.size(); ++w) {
        Point uv = add(u, basis[v]);
        Point uw = add(u, basis[w]);
        Point uvw = add(uv, basis[w]);
        double lhs = J(uv) + J(uw);
        double rhs = ju + J(uvw);
        ++report.checked;
        if (lhs < rhs - tolerance) {
          report.holds = false;
          report.violations.push_back({u, v, w, lhs, rhs});
        }
      }
    // odometer over the box
    std::size_t i = 0;
    while (i < m && u[i] == box.hi[i]) u[i] = box.lo[i], ++i;
    if (i == m) break;
    ++u[i];
  }
  return report;
}

double window_average(const LatticeFunction& J, const words::Word& x, std::size_t n) {
  const std::size_t m = J.arity();
  if (n == 0) throw std::invalid_argument("window average over zero windows");
  if (x.size() < n + m - 1) throw std::invalid_argument("sequence too short for the requested windows");
  std::vector<Point> windows;
  windows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point win(m);
    for (std::size_t j = 0; j < m; ++j) win[j] = x[k + j];
    windows.push_back(std::move(win));
  }
  double sum = 0;
  for (const auto& win : windows) sum += J(win);
  return sum / static_cast<double>(n);
}

double window_average_streaming(const LatticeFunction& J, const words::Word& x, std::size_t n) {
  const std::size_t m = J.arity();
  if (n == 0) throw std::invalid_argument("window average over zero windows");
  if (x.size() < n + m - 1) throw std::invalid_argument("sequence too short for the requested windows");
  std::deque<int> window;
  Point scratch(m);
  double sum = 0;
  for (std::size_t i = 0; i < n + m - 1; ++i) {
    window.push_back(x[i]);
    if (window.size() > m) window.pop_front();
    if (window.size() == m) {
      std::copy(window.begin(), window.end(), scratch.begin());
      sum += J(scratch);
    }
  }
  return sum / static_cast<double>(n);
}

BinaryWindowTable::BinaryWindowTable(const LatticeFunction& J) : arity_(J.arity()) {
  if (arity_ > 20) throw std::invalid_argument("binary window table limited to arity 20");
  values_.resize(std::size_t{1} << arity_);
  Point u(arity_);
  for (std::uint32_t mask = 0; mask < values_.size(); ++mask) {
    for (std::size_t j = 0; j < arity_; ++j) u[j] = (mask >> (arity_ - 1 - j)) & 1u;
    values_[mask] = J(u);
  }
}

double BinaryWindowTable::cyclic_average(std::span<const std::uint8_t> w) const {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("cyclic average of the empty word");
  const std::uint32_t full = (std::uint32_t{1} << arity_) - 1;
  std::uint32_t mask = 0;
  for (std::size_t j = 0; j + 1 < arity_; ++j) mask = (mask << 1) | w[j % n];
  double sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mask = ((mask << 1) | w[(k + arity_ - 1) % n]) & full;
    sum += values_[mask];
  }
  return sum / static_cast<double>(n);
}

}  // namespace sturm::multimodular
