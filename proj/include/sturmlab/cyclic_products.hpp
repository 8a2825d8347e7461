#pragma once

// Binary values of cyclic shifts and their product over a whole orbit.

#include "sturmlab/numeric.hpp"
#include "sturmlab/words.hpp"

#include <iosfwd>
#include <vector>

namespace sturm::cyclic {

/// Big-endian binary value: b(w) = sum_k w_k 2^{m-k}.
BigInt binary_value(const words::Word& w);

struct OrbitProductReport {
  words::Orbit orbit;
  BigInt product;
  /// b of w, rot_1 w, ..., rot_{m-1} w (left rotations of the input word).
  std::vector<BigInt> factors;
};

/// B(w): product of b over all |w| cyclic shifts, w itself included.
OrbitProductReport orbit_product(const words::Word& w);

struct OrbitProductRow {
  OrbitProductReport report;
  bool is_balanced = false;
  bool is_argmax = false;
};

struct ProductMaximizationReport {
  std::size_t p = 0, q = 0;
  std::vector<OrbitProductRow> rows;  // one per orbit of W_{p,q}, sorted
  words::Orbit balanced;
  BigInt max_value;
  std::vector<words::Orbit> argmax;
  /// The argmax is unique and is the balanced orbit.
  bool passed = false;
};

/// Exhaustive scan of B over W_{p,q}; requires 1 <= p < q, gcd(p, q) = 1.
ProductMaximizationReport check_product_maximizer(std::size_t p, std::size_t q);

void write_csv_header(std::ostream& os);
/// representative, factors (space separated), product, is_balanced, is_argmax
void write_csv_rows(std::ostream& os, const ProductMaximizationReport& r);

}  // namespace sturm::cyclic
