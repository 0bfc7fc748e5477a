#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace melsweep {

// Shortest round-trip decimal form, locale independent. Used everywhere a
// float reaches an output file so reruns are byte-identical.
std::string format_double(double value);

std::string trim(std::string_view s);
std::vector<std::string> split_csv_line(std::string_view line);

// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace melsweep
