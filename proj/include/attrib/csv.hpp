#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace attrib::csv {

/// RFC 4180 records: quoted fields may hold commas, doubled quotes and newlines.
/// A UTF-8 byte-order mark before the first field is dropped.
std::vector<std::vector<std::string>> read(std::istream& in);

/// Quotes a field when it holds a comma, quote, or line break.
std::string escape(std::string_view field);

}  // namespace attrib::csv
