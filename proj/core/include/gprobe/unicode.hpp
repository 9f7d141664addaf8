#pragma once

#include <string>
#include <string_view>

namespace gprobe {

/// Lowercases (locale-independent full case mapping) and applies Unicode NFC.
/// Used for lemma keys and embedding lookups so both sides agree.
std::string normalize_token(std::string_view utf8);

/// NFC only, no case change.
std::string nfc(std::string_view utf8);

/// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);

bool is_letter(char32_t cp);
char32_t to_lower(char32_t cp);
bool is_space(char32_t cp);

}  // namespace gprobe
