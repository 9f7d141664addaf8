#include "gprobe/stemmer.hpp"

#include <algorithm>
#include <array>

#include "gprobe/unicode.hpp"

namespace gprobe {
namespace {

constexpr std::u32string_view kVowels = U"aeiouyäåö";
constexpr std::u32string_view kSEnding = U"bcdfghjklmnoprtvy";
constexpr std::u32string_view kOstEnding = U"iklnprtuv";

bool in(std::u32string_view group, char32_t c) { return group.find(c) != std::u32string_view::npos; }

enum Action { kDelete, kSEndingRule, kEtRule, kReplace };

struct Suffix {
  std::u32string_view text;
  int action;
};

// Step 1 endings.
constexpr std::array<Suffix, 38> kMainSuffixes{{
    {U"a", kDelete},      {U"arna", kDelete},   {U"erna", kDelete},   {U"heterna", kDelete},
    {U"orna", kDelete},   {U"ad", kDelete},     {U"e", kDelete},      {U"ade", kDelete},
    {U"ande", kDelete},   {U"arne", kDelete},   {U"are", kDelete},    {U"aste", kDelete},
    {U"en", kDelete},     {U"anden", kDelete},  {U"aren", kDelete},   {U"heten", kDelete},
    {U"ern", kDelete},    {U"ar", kDelete},     {U"er", kDelete},     {U"heter", kDelete},
    {U"or", kDelete},     {U"s", kSEndingRule}, {U"as", kDelete},     {U"arnas", kDelete},
    {U"ernas", kDelete},  {U"ornas", kDelete},  {U"es", kDelete},     {U"ades", kDelete},
    {U"andes", kDelete},  {U"ens", kDelete},    {U"arens", kDelete},  {U"hetens", kDelete},
    {U"erns", kDelete},   {U"at", kDelete},     {U"et", kEtRule},     {U"andet", kDelete},
    {U"het", kDelete},    {U"ast", kDelete},
}};

constexpr std::array<std::u32string_view, 7> kConsonantPairs{U"dd", U"gd", U"nn", U"dt",
                                                             U"gt", U"kt", U"tt"};

constexpr std::array<Suffix, 5> kOtherSuffixes{{
    {U"ig", kDelete}, {U"lig", kDelete}, {U"els", kDelete}, {U"fullt", kReplace}, {U"öst", kReplace},
}};

// Stems ending in one of these keep a following `et`.
constexpr std::array<std::u32string_view, 21> kEtExceptions{
    U"fab", U"h",    U"pak",  U"rak", U"stak", U"kom", U"iet", U"cit", U"dit", U"alit", U"ilit",
    U"mit", U"nit",  U"pit",  U"rit", U"sit",  U"tit", U"uit", U"ivit", U"kvit", U"xit"};

bool ends_with_at(const std::u32string& w, std::size_t end, std::u32string_view s, std::size_t lower) {
  return end >= lower + s.size() && std::u32string_view(w).substr(end - s.size(), s.size()) == s;
}

// Longest suffix from `table` lying entirely in [lower, w.size()).
template <std::size_t N>
const Suffix* longest_suffix(const std::u32string& w, const std::array<Suffix, N>& table,
                             std::size_t lower) {
  const Suffix* best = nullptr;
  for (const auto& s : table) {
    if ((!best || s.text.size() > best->text.size()) && ends_with_at(w, w.size(), s.text, lower)) {
      best = &s;
    }
  }
  return best;
}

// Start of R1: after the first non-vowel following a vowel, but at least 3.
std::size_t region1(const std::u32string& w) {
  const std::size_t n = w.size();
  if (n < 3) return n;
  std::size_t i = 0;
  while (i < n && !in(kVowels, w[i])) ++i;
  if (i == n) return n;
  ++i;
  while (i < n && in(kVowels, w[i])) ++i;
  if (i == n) return n;
  ++i;
  return std::max<std::size_t>(i, 3);
}

// An `et` ending at [pos, pos+2) may be removed when preceded by
// vowel + non-vowel with at least one more letter before them, and the text
// before it does not end in an exception stem.
bool et_condition(const std::u32string& w, std::size_t pos) {
  if (pos < 3) return false;
  if (in(kVowels, w[pos - 1]) || !in(kVowels, w[pos - 2])) return false;
  return std::none_of(kEtExceptions.begin(), kEtExceptions.end(),
                      [&](std::u32string_view e) { return ends_with_at(w, pos, e, 0); });
}

void main_suffix(std::u32string& w, std::size_t p1) {
  const Suffix* s = longest_suffix(w, kMainSuffixes, p1);
  if (!s) return;
  const std::size_t start = w.size() - s->text.size();
  switch (s->action) {
    case kDelete:
      w.erase(start);
      break;
    case kSEndingRule:
      if (ends_with_at(w, start, U"et", 0) && et_condition(w, start - 2)) {
        w.erase(start - 2);
      } else if (start > 0 && in(kSEnding, w[start - 1])) {
        w.erase(start);
      }
      break;
    case kEtRule:
      if (et_condition(w, start)) w.erase(start);
      break;
    default:
      break;
  }
}

void consonant_pair(std::u32string& w, std::size_t p1) {
  for (auto pair : kConsonantPairs) {
    if (ends_with_at(w, w.size(), pair, p1)) {
      w.pop_back();
      return;
    }
  }
}

void other_suffix(std::u32string& w, std::size_t p1) {
  const Suffix* s = longest_suffix(w, kOtherSuffixes, p1);
  if (!s) return;
  const std::size_t start = w.size() - s->text.size();
  if (s->text == U"fullt") {
    w.pop_back();
  } else if (s->text == U"öst") {
    if (start > 0 && in(kOstEnding, w[start - 1])) w.pop_back();
  } else {
    w.erase(start);
  }
}

}  // namespace

std::u32string stem_swedish(std::u32string word) {
  const std::size_t p1 = region1(word);
  main_suffix(word, p1);
  consonant_pair(word, p1);
  other_suffix(word, p1);
  return word;
}

std::string stem_swedish(std::string_view word) { return to_utf8(stem_swedish(to_u32(word))); }

}  // namespace gprobe
