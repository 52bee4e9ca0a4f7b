#pragma once

#include <iosfwd>
#include <string>

#include "pidf/dataset.hpp"

namespace pidf {

// Comma-separated, mandatory header, '.' decimal point, no quoting. Blank
// trailing lines are ignored; CRLF line endings are accepted. Throws
// DataError on unreadable input.
RawTable parse_csv(std::istream& in);
RawTable read_csv(const std::string& path);

// Header is the feature names followed by the target name. Values use the
// shortest representation that round-trips exactly. write_csv throws
// ConfigError when the path cannot be opened for writing.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::string& path);

std::string format_number(double value);

}  // namespace pidf
