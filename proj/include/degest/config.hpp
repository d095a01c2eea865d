#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace degest {

/// Flat key=value config text: '#' comment lines, blank lines ignored,
/// later duplicates win. Command-line flags override these values.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace degest
