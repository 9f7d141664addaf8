#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gprobe/gender.hpp"

namespace gprobe {

/// One token occurrence at one layer of a contextual model.
struct ContextualRecord {
  std::size_t sentence_id = 0;
  std::size_t token_index = 0;  // 0-based within the sentence
  std::string token;
  std::string lemma;
  std::optional<Gender> gold_gender;  // nullopt is written as `none`
  int layer = 0;
  std::vector<float> vector;

  friend bool operator==(const ContextualRecord&, const ContextualRecord&) = default;
};

/// Contents of a gpdump v1 file.
struct ContextualDump {
  std::size_t dim = 0;
  std::vector<int> layers;  // declared layer set, in header order
  std::vector<ContextualRecord> records;

  friend bool operator==(const ContextualDump&, const ContextualDump&) = default;
};

/// gpdump v1:
///   #gpdump v1 dim=<d> layers=<l0,l1,...>
///   sentence_id \t token_index \t token \t lemma \t gold_gender \t layer \t v1,...,vd
ContextualDump read_dump(std::istream& in);

/// Validates every record against the declared dim/layers before writing.
void write_dump(std::ostream& out, const ContextualDump& dump);

}  // namespace gprobe
