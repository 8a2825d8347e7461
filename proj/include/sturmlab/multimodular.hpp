#pragma once

// Multimodularity on Z^m and sliding-window time averages of 0-1 sequences.

#include "sturmlab/words.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sturm::multimodular {

using Point = std::vector<int>;

class UndefinedPointError : public std::domain_error {
 public:
  explicit UndefinedPointError(Point p);
  const Point& point() const { return point_; }

 private:
  Point point_;
};

/// J : Z^m -> R.  The evaluator may be partial (returns nullopt off its
/// domain), e.g. when tabulated on a box.
class LatticeFunction {
 public:
  using Evaluator = std::function<std::optional<double>(std::span<const int>)>;

  LatticeFunction(std::size_t arity, Evaluator evaluator, std::string name = {});
  static LatticeFunction tabulated(std::size_t arity, std::map<Point, double> table, std::string name = {});

  std::size_t arity() const { return arity_; }
  const std::string& name() const { return name_; }
  std::optional<double> try_eval(std::span<const int> u) const;
  /// Throws UndefinedPointError off the domain.
  double operator()(std::span<const int> u) const;

 private:
  std::size_t arity_;
  Evaluator evaluator_;
  std::string name_;
};

/// f_0 = -e_1, f_i = e_i - e_{i+1} (1 <= i < m), f_m = e_m.
std::vector<Point> multimodular_basis(std::size_t m);

/// Inclusive integer box lo <= u <= hi.
struct Box {
  Point lo;
  Point hi;
};

struct Violation {
  Point u;
  std::size_t v = 0;  // basis indices, v < w
  std::size_t w = 0;
  double lhs = 0;  // J(u+f_v) + J(u+f_w)
  double rhs = 0;  // J(u) + J(u+f_v+f_w)
};

struct MultimodularReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<Violation> violations;
};

/// Checks J(u+v) + J(u+w) >= J(u) + J(u+v+w) for every u in the box and
/// every pair v != w of basis vectors, reporting all violations.  The
/// evaluator must be defined one basis step around the box.
MultimodularReport check_multimodular(const LatticeFunction& J, const Box& box, double tolerance = 1e-12);

/// (1/n) sum_{k=1}^{n} J(x_k, ..., x_{k+m-1}); x must hold n + m - 1 symbols.
double window_average(const LatticeFunction& J, const words::Word& x, std::size_t n);

/// Same quantity, accumulated in one pass over a rolling window.
double window_average_streaming(const LatticeFunction& J, const words::Word& x, std::size_t n);

/// J tabulated on {0,1}^m, for fast scans over many binary words.  Windows
/// are indexed by the bitmask x_k x_{k+1} ... x_{k+m-1} read big-endian.
class BinaryWindowTable {
 public:
  explicit BinaryWindowTable(const LatticeFunction& J);

  std::size_t arity() const { return arity_; }
  double at(std::uint32_t mask) const { return values_[mask]; }
  /// Average over the |w| windows of the periodic word w w w ...
  double cyclic_average(std::span<const std::uint8_t> w) const;

 private:
  std::size_t arity_;
  std::vector<double> values_;
};

}  // namespace sturm::multimodular
