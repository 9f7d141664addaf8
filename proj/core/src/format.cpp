#include "gprobe/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "gprobe/error.hpp"

namespace gprobe {
namespace {

template <class T>
T parse_real(std::string_view field, std::size_t line) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line, "invalid number '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "non-finite value '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_float(float value) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, kFloatDigits);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  // Avoid printing "-0.00".
  if (value == 0.0) value = 0.0;
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  (void)ec;
  std::string out(buf, ptr);
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

float parse_float(std::string_view field, std::size_t line) {
  return parse_real<float>(field, line);
}

double parse_double(std::string_view field, std::size_t line) {
  return parse_real<double>(field, line);
}

long long parse_int(std::string_view field, std::size_t line) {
  long long value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line, "invalid integer '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

void append_floats(std::string& out, std::span<const float> values, char sep) {
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(sep);
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), values[i],
                                   std::chars_format::general, kFloatDigits);
    (void)ec;
    out.append(buf, ptr);
  }
}

std::vector<float> parse_float_list(std::string_view field, char sep, std::size_t line) {
  std::vector<float> values;
  if (field.empty()) return values;
  for (std::string_view part : split(field, sep)) values.push_back(parse_float(part, line));
  return values;
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace gprobe
