#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gprobe {

/// Text precision for 32-bit vector components; round-trips every float.
inline constexpr int kFloatDigits = 9;

std::string format_float(float value);
/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

/// Strict numeric parsing: the whole field must be consumed and the value must
/// be finite. Errors carry the line number.
float parse_float(std::string_view field, std::size_t line);
double parse_double(std::string_view field, std::size_t line);
long long parse_int(std::string_view field, std::size_t line);

std::vector<std::string_view> split(std::string_view text, char sep);

void append_floats(std::string& out, std::span<const float> values, char sep);
std::vector<float> parse_float_list(std::string_view field, char sep, std::size_t line);

/// std::getline that also strips a trailing '\r'.
bool read_line(std::istream& in, std::string& line);

}  // namespace gprobe
