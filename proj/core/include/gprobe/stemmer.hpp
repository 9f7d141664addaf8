#pragma once

#include <string>
#include <string_view>

namespace gprobe {

/// Snowball Swedish stemmer (the current published algorithm, including the
/// `et` condition and the `öst` ending rule). Input is a lowercase UTF-8
/// word; characters outside the Swedish alphabet pass through untouched.
std::string stem_swedish(std::string_view word);
std::u32string stem_swedish(std::u32string word);

}  // namespace gprobe
