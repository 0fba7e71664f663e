#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace polyaurn {

/// Shortest round-trip decimal form of `value`; locale-independent, so
/// output files are byte-stable across runs and machines.
inline std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

}  // namespace polyaurn
