#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gprobe {

enum class Gender { Uter, Neuter };

/// Class coding used by every probe: Uter = 1, Neuter = 0.
constexpr int label_of(Gender g) noexcept { return g == Gender::Uter ? 1 : 0; }
constexpr Gender gender_of_label(int label) noexcept {
  return label == 1 ? Gender::Uter : Gender::Neuter;
}

std::string_view to_string(Gender g) noexcept;
std::optional<Gender> parse_gender(std::string_view text) noexcept;

/// p(uter), p(neuter) over a set of nouns.
struct ClassDistribution {
  double p_uter = 0.5;
  double p_neuter = 0.5;

  static ClassDistribution from_counts(std::size_t uter, std::size_t neuter);
  /// Throws ArgumentError unless both are in [0,1] and sum to 1 within 1e-12.
  static ClassDistribution from_p_uter(double p_uter);
  void validate() const;

  friend bool operator==(const ClassDistribution&, const ClassDistribution&) = default;
};

}  // namespace gprobe
