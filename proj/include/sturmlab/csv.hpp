#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sturm::csv {

/// One RFC 4180 record; fields containing separators, quotes or line breaks
/// are quoted.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

std::string quote(const std::string& field);

/// Shortest decimal form that reads back as the same double.
std::string format_double(double x);

}  // namespace sturm::csv
