#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "entroflow/errors.hpp"

namespace entroflow {

/// Shared x*ln(x) kernel with the convention 0*ln(0) = 0. Every entropy in
/// the library goes through this so the zero-mass convention is uniform.
inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw validation_error("not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// FNV-1a 64-bit hash, used for scenario provenance fingerprints.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace entroflow
