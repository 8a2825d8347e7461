#include "sturmlab/cyclic_products.hpp"

#include "sturmlab/csv.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sturm::cyclic {

BigInt binary_value(const words::Word& w) {
  BigInt v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v <<= 1;
    if (w[i]) v += 1;
  }
  return v;
}

OrbitProductReport orbit_product(const words::Word& w) {
  if (w.empty()) throw std::invalid_argument("orbit product of the empty word");
  OrbitProductReport r{words::Orbit(w), BigInt(1), {}};
  r.factors.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    r.factors.push_back(binary_value(w.rotated(k)));
    r.product *= r.factors.back();
  }
  return r;
}

ProductMaximizationReport check_product_maximizer(std::size_t p, std::size_t q) {
  if (!(1 <= p && p < q)) throw std::invalid_argument("product maximizer needs 1 <= p < q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("product maximizer needs coprime p and q");

  ProductMaximizationReport out{p, q, {}, words::balanced_orbit(p, q), BigInt(0), {}, false};
  for (const auto& orbit : words::enumerate_orbits(p, q)) {
    OrbitProductRow row{orbit_product(orbit.representative()), orbit.is_balanced(), false};
    if (row.report.product > out.max_value) {
      out.max_value = row.report.product;
      out.argmax.assign(1, orbit);
    } else if (row.report.product == out.max_value) {
      out.argmax.push_back(orbit);
    }
    out.rows.push_back(std::move(row));
  }
  for (auto& row : out.rows) row.is_argmax = row.report.product == out.max_value;
  out.passed = out.argmax.size() == 1 && out.argmax.front() == out.balanced;
  return out;
}

void write_csv_header(std::ostream& os) {
  csv::write_row(os, {"representative", "factors", "product", "is_balanced", "is_argmax"});
}

void write_csv_rows(std::ostream& os, const ProductMaximizationReport& r) {
  for (const auto& row : r.rows) {
    std::string factors;
    for (const auto& f : row.report.factors) factors += (factors.empty() ? "" : " ") + f.str();
    csv::write_row(os, {row.report.orbit.representative().str(), factors, row.report.product.str(),
                        row.is_balanced ? "true" : "false", row.is_argmax ? "true" : "false"});
  }
}

}  // namespace sturm::cyclic
