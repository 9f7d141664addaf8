#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "gprobe/conllu.hpp"
#include "gprobe/error.hpp"
#include "gprobe/random.hpp"

namespace gprobe {
namespace {

constexpr const char* kHundRow = "3\thunden\thund\tNOUN\t_\tDefinite=Def|Gender=Com|Number=Sing\t0\troot\t_\t_";

std::string sentence_with(const std::string& row) {
  return "# sent_id = 1\n1\tjag\tjag\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
         "2\tser\tse\tVERB\t_\t_\t0\troot\t_\t_\n" +
         row + "\n\n";
}

TEST(Conllu, HundRowFixture) {
  std::istringstream in(sentence_with(kHundRow));
  const ParseResult r = parse_conllu(in, ParseMode::Strict);
  ASSERT_EQ(r.sentences.size(), 1u);
  ASSERT_EQ(r.sentences[0].size(), 3u);
  const Token& t = r.sentences[0][2];
  EXPECT_EQ(t.id, 3);
  EXPECT_EQ(t.form, "hunden");
  EXPECT_EQ(t.lemma, "hund");
  EXPECT_EQ(t.upos, "NOUN");
  const std::map<std::string, std::string> expected{
      {"Definite", "Def"}, {"Gender", "Com"}, {"Number", "Sing"}};
  EXPECT_EQ(t.feats, expected);
}

TEST(Conllu, UnderscoreFeatsIsEmpty) {
  EXPECT_TRUE(parse_feats("_").empty());
  std::istringstream in(sentence_with("3\thus\thus\tNOUN\t_\t_\t2\tobj\t_\t_"));
  const ParseResult r = parse_conllu(in, ParseMode::Strict);
  EXPECT_TRUE(r.sentences.at(0).at(2).feats.empty());
}

TEST(Conllu, NineColumnsIsErrorAtThatLine) {
  std::istringstream in(sentence_with("3\thus\thus\tNOUN\t_\t_\t2\tobj\t_"));
  try {
    parse_conllu(in, ParseMode::Strict);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Conllu, LenientSkipsAndCountsBadRows) {
  std::istringstream in(sentence_with("3\thus\thus\tNOUN\t_\t_\t2\tobj\t_") +
                        sentence_with(kHundRow));
  const ParseResult r = parse_conllu(in, ParseMode::Lenient);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].line, 4u);
  ASSERT_EQ(r.sentences.size(), 2u);
  EXPECT_EQ(r.sentences[0].size(), 2u);
  EXPECT_EQ(r.sentences[1].size(), 3u);
  EXPECT_EQ(r.rows, 5u);
}

TEST(Conllu, MultiwordRangesAndEmptyNodesAreExcluded) {
  const std::string text =
      "1-2\tdet's\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdet\tdet\tPRON\t_\t_\t0\troot\t_\t_\n"
      "2\tär\tvara\tAUX\t_\t_\t1\tcop\t_\t_\n"
      "2.1\tär\tvara\tAUX\t_\t_\t_\t_\t1:cop\t_\n\n";
  std::istringstream in(text);
  const ParseResult r = parse_conllu(in, ParseMode::Strict);
  ASSERT_EQ(r.sentences.size(), 1u);
  EXPECT_EQ(r.sentences[0].size(), 2u);
}

TEST(Conllu, StrictRejectsNonConsecutiveIds) {
  std::istringstream in("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n\n");
  EXPECT_THROW(parse_conllu(in, ParseMode::Strict), ParseError);
}

TEST(Conllu, MalformedFeatsEntry) {
  std::istringstream in(sentence_with("3\thus\thus\tNOUN\t_\tGender\t2\tobj\t_\t_"));
  EXPECT_THROW(parse_conllu(in, ParseMode::Strict), ParseError);
}

TEST(Conllu, MissingFinalBlankLineStillClosesSentence) {
  std::istringstream in("1\ta\ta\tX\t_\t_\t0\troot\t_\t_");
  EXPECT_EQ(parse_conllu(in).sentences.size(), 1u);
}

TEST(Conllu, EmptyInput) {
  std::istringstream in("");
  const ParseResult r = parse_conllu(in);
  EXPECT_TRUE(r.sentences.empty());
  EXPECT_TRUE(r.skipped.empty());
}

TEST(Conllu, FixtureTreebankParsesStrictly) {
  std::ifstream in(testing::fixture("sv_mini.conllu"));
  const ParseResult r = parse_conllu(in, ParseMode::Strict);
  EXPECT_EQ(r.sentences.size(), 16u);
  EXPECT_TRUE(r.skipped.empty());
}

// Property: ids of syntactic words in every parsed sentence run 1..n.
TEST(ConlluProperty, IdsAreConsecutiveFromOne) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t sentences = 1 + rng.below(5);
    for (std::size_t s = 0; s < sentences; ++s) {
      text += "# sent_id = " + std::to_string(s) + "\n";
      const std::size_t n = 1 + rng.below(12);
      for (std::size_t i = 1; i <= n; ++i) {
        if (rng.uniform() < 0.15 && i < n) {
          text += std::to_string(i) + "-" + std::to_string(i + 1) + "\tx\t_\t_\t_\t_\t_\t_\t_\t_\n";
        }
        text += std::to_string(i) + "\tw" + std::to_string(i) + "\tw\tNOUN\t_\tGender=Com\t0\tdep\t_\t_\n";
        if (rng.uniform() < 0.1) text += std::to_string(i) + ".1\te\te\tX\t_\t_\t_\t_\t_\t_\n";
      }
      text += "\n";
    }
    std::istringstream in(text);
    const ParseResult r = parse_conllu(in, ParseMode::Strict);
    ASSERT_EQ(r.sentences.size(), sentences);
    for (const auto& sentence : r.sentences) {
      for (std::size_t i = 0; i < sentence.size(); ++i) {
        ASSERT_EQ(sentence[i].id, static_cast<int>(i) + 1);
        ASSERT_FALSE(sentence[i].form.empty());
        ASSERT_FALSE(sentence[i].lemma.empty());
      }
    }
  }
}

}  // namespace
}  // namespace gprobe
