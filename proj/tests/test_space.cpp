#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace zipshift;

namespace {

const char* kSftFixtures[] = {"abc3.json", "full2.json", "sigma_f.json", "sigma_g.json", "primed4.json",
                              "disconnected.json", "classical.json", "twostep.json"};
const char* kAllFixtures[] = {"abc3.json", "full2.json", "sigma_f.json", "sigma_g.json", "primed4.json",
                              "disconnected.json", "classical.json", "twostep.json", "even.json", "sofic6.json"};

SpaceDefinition def_of(const std::string& json) { return parse_space_definition(json); }

std::string abc3_with(const std::string& phi, const std::string& forbidden = R"(["1 1", "1 3", "2 1", "3 3"])") {
  return R"({"alphabet_a": ["a", "b"], "alphabet_a_prime": ["1", "2", "3"], "n": 1, "kind": "sft", "phi": )" +
         phi + R"(, "forbidden": )" + forbidden + "}";
}

}  // namespace

TEST(SpaceValidation, AcceptsFixtures) {
  for (const char* name : kAllFixtures) EXPECT_NO_THROW(oracle::load(name)) << name;
}

TEST(SpaceValidation, RejectsBadDefinitions) {
  // phi not onto
  EXPECT_THROW(ZipShiftSpace(def_of(abc3_with(R"({"1": "a", "2": "a", "3": "a"})"))), InvalidSpace);
  // phi missing an admissible word
  EXPECT_THROW(ZipShiftSpace(def_of(abc3_with(R"({"1": "a", "2": "b"})"))), InvalidSpace);
  // forbidden word of length 1
  EXPECT_THROW(ZipShiftSpace(def_of(abc3_with(R"({"1": "a", "2": "b", "3": "b"})", R"(["1"])"))), InvalidSpace);
  // alphabets overlapping without being identical
  EXPECT_THROW(ZipShiftSpace(def_of(
                   R"({"alphabet_a": ["a", "1"], "alphabet_a_prime": ["1", "2"], "n": 1, "kind": "full",
                       "phi": {"1": "a", "2": "1"}})")),
               InvalidSpace);
}

TEST(SpaceValidation, StoredForbiddenSetHasNoSuperwords) {
  auto sp = parse_space(abc3_with(R"({"1": "a", "2": "b", "3": "b"})", R"(["1 1", "2 1 1", "1 3", "2 1", "3 3"])"));
  EXPECT_EQ(sp.forbidden().size(), 4u);
  EXPECT_EQ(sp.step(), 1u);
}

TEST(Language, ThreeLetterPairs) {
  auto sp = oracle::load("abc3.json");
  std::vector<std::string> got;
  for (const Word& w : language(sp, 2, Side::Aprime)) got.push_back(format_word(sp.a_prime(), w, ""));
  EXPECT_EQ(got, (std::vector<std::string>{"12", "22", "23", "31", "32"}));
}

TEST(Language, FullShiftAndEvenShift) {
  auto full = oracle::load("full2.json");
  EXPECT_EQ(language(full, 1, Side::Aprime).size(), 2u);
  auto even = oracle::load("even.json");
  auto three = language(even, 3, Side::Aprime);
  Word w101 = parse_word(even.a_prime(), "1 0 1");
  Word w1001 = parse_word(even.a_prime(), "1 0 0 1");
  EXPECT_EQ(std::count(three.begin(), three.end(), w101), 0);
  EXPECT_FALSE(even.admits(w101));
  EXPECT_TRUE(even.admits(w1001));
}

TEST(Language, MatchesBruteForceOnEverySide) {
  for (const char* name : kAllFixtures) {
    auto sp = oracle::load(name);
    const auto& def = sp.definition();
    for (std::size_t k = 1; k <= 5; ++k) {
      EXPECT_EQ(language(sp, k, Side::Aprime), oracle::words(def, k)) << name << " k=" << k;
      std::set<Word> a_words;
      for (const Word& u : oracle::words(def, k + sp.n() - 1)) a_words.insert(phi_extend(sp.tm(), u));
      auto got = language(sp, k, Side::A);
      EXPECT_EQ(std::set<Word>(got.begin(), got.end()), a_words) << name << " k=" << k;
    }
    for (std::size_t k = 2; k <= 4; ++k) {
      std::set<MixedWord> expected;
      for (std::size_t l = 1; l < k; ++l)
        for (const Word& v : oracle::words(def, k + sp.n() - 1)) {
          Word img = phi_extend(sp.tm(), v);
          expected.insert(MixedWord{Word(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(l)),
                                    Word(v.begin() + static_cast<std::ptrdiff_t>(l), v.begin() + static_cast<std::ptrdiff_t>(k))});
        }
      auto got = language_mixed(sp, k);
      EXPECT_EQ(std::set<MixedWord>(got.begin(), got.end()), expected) << name << " k=" << k;
    }
  }
}

TEST(Language, ClosedUnderSubwords) {
  for (const char* name : kAllFixtures) {
    auto sp = oracle::load(name);
    for (std::size_t k = 2; k <= 5; ++k) {
      auto shorter = language(sp, k - 1, Side::Aprime);
      std::set<Word> small(shorter.begin(), shorter.end());
      for (const Word& w : language(sp, k, Side::Aprime)) {
        EXPECT_TRUE(small.count(Word(w.begin() + 1, w.end())));
        EXPECT_TRUE(small.count(Word(w.begin(), w.end() - 1)));
      }
    }
  }
}

TEST(Matrices, ThreeLetter) {
  auto sp = oracle::load("abc3.json");
  MatrixSet m = build_matrices(sp);
  EXPECT_EQ(m.K, 1u);
  EXPECT_EQ(m.aprime_adj, (BinaryMatrix{{0, 1, 0}, {0, 1, 1}, {1, 1, 0}}));
  EXPECT_EQ(m.a_words, (std::vector<Word>{{0}, {1}}));
  // a a never occurs: the only a-letter 1 is followed by 2.
  EXPECT_EQ(m.a_adj, (BinaryMatrix{{0, 1}, {1, 1}}));
  EXPECT_EQ(m.t, (BinaryMatrix{{0, 1, 0}, {1, 1, 1}}));
}

TEST(Matrices, FullShiftAllOnesAndSoficRejected) {
  auto full = oracle::load("full2.json");
  MatrixSet m = build_matrices(full);
  EXPECT_EQ(m.aprime_adj, (BinaryMatrix{{1, 1}, {1, 1}}));
  EXPECT_THROW(build_matrices(oracle::load("even.json")), NotFiniteType);
}

TEST(Matrices, TransitionEntriesAreMixedAdmissibility) {
  for (const char* name : kSftFixtures) {
    auto sp = oracle::load(name);
    MatrixSet m = build_matrices(sp);
    for (std::size_t r = 0; r < m.a_words.size(); ++r)
      for (std::size_t c = 0; c < m.aprime_words.size(); ++c) {
        bool expect = false;
        for (const Word& v : oracle::words(sp.definition(), m.a_words[r].size() + m.aprime_words[c].size() + sp.n() - 1)) {
          Word img = phi_extend(sp.tm(), v);
          if (std::equal(m.a_words[r].begin(), m.a_words[r].end(), img.begin()) &&
              std::equal(m.aprime_words[c].begin(), m.aprime_words[c].end(), v.begin() + static_cast<std::ptrdiff_t>(m.a_words[r].size())))
            expect = true;
        }
        EXPECT_EQ(m.t[r][c] == 1, expect) << name;
      }
  }
}

TEST(Irreducible, Examples) {
  auto ex = oracle::load("abc3.json");
  auto rep = is_irreducible(ex);
  EXPECT_TRUE(rep.irreducible);
  EXPECT_EQ(rep.witnesses.size(), 9u);
  for (const auto& [x, y, w] : rep.witnesses) {
    ASSERT_GE(w.size(), 2u);
    EXPECT_EQ(w.front(), x);
    EXPECT_EQ(w.back(), y);
    EXPECT_TRUE(oracle::admits(ex.definition(), w));
  }
  EXPECT_TRUE(is_irreducible(oracle::load("full2.json")).irreducible);
  auto dis = is_irreducible(oracle::load("disconnected.json"));
  EXPECT_FALSE(dis.irreducible);
  ASSERT_TRUE(dis.disconnected.has_value());
  EXPECT_EQ(*dis.disconnected, (std::pair<Symbol, Symbol>{0, 1}));
}

TEST(Irreducible, AgreesWithStrongConnectivity) {
  for (const char* name : kAllFixtures) {
    auto sp = oracle::load(name);
    EXPECT_EQ(is_irreducible(sp).irreducible, strongly_connected(sp.graph())) << name;
  }
}

TEST(CountPeriodic, Examples) {
  EXPECT_EQ(count_periodic(oracle::load("sigma_f.json"), 2), 16u);
  auto ex = oracle::load("abc3.json");
  EXPECT_EQ(count_periodic(ex, 1), 1u);
  EXPECT_EQ(count_periodic(ex, 2), 3u);
  EXPECT_THROW(count_periodic(oracle::load("even.json"), 2), NotFiniteType);
}

TEST(CountPeriodic, MatchesBruteForceCycles) {
  for (const char* name : kSftFixtures) {
    auto sp = oracle::load(name);
    if (sp.a_prime().size() > 4) continue;
    for (std::size_t m = 1; m <= 6; ++m)
      EXPECT_EQ(count_periodic(sp, m), oracle::cycles(sp.definition(), m).size()) << name << " m=" << m;
  }
}
