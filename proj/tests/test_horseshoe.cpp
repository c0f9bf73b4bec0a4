#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"

using namespace zipshift;

namespace {

Rational pow(Rational r, std::size_t k) {
  Rational out = 1;
  while (k--) out *= r;
  return out;
}

Rect depth_rect(const HorseshoeModel& m, const Word& future) { return decode(m, ItineraryCode{{}, future}); }

// all words of the given length over n letters
std::vector<Word> all_words(std::size_t n, std::size_t length) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (Symbol s = 0; s < n; ++s) {
        Word v = w;
        v.push_back(s);
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(HorseshoeModel, Parameters) {
  HorseshoeModel one(1, Rational(1));
  EXPECT_EQ(one.branches().size(), 2u);
  EXPECT_EQ(one.delta(), 3);
  EXPECT_EQ(one.delta_prime(), Rational(1, 3));
  HorseshoeModel two(2, Rational(1, 2));
  EXPECT_EQ(two.branches().size(), 4u);
  EXPECT_EQ(two.delta(), Rational(9, 2));
  EXPECT_EQ(two.delta_prime(), Rational(4, 9));
  for (std::size_t N = 1; N <= 4; ++N)
    for (Rational eps : {Rational(1, 7), Rational(1), Rational(5, 2)}) {
      HorseshoeModel m(N, eps);
      EXPECT_EQ(m.delta() * m.delta_prime(), Rational(static_cast<long>(N)));
      for (std::size_t b = 0; b < m.branches().size(); ++b)
        for (std::size_t c = b + 1; c < m.branches().size(); ++c)
          EXPECT_TRUE(disjoint(m.branch_rect(b), m.branch_rect(c)));
    }
  EXPECT_THROW(HorseshoeModel(0, Rational(1)), GeometryError);
  EXPECT_THROW(HorseshoeModel(2, Rational(0)), GeometryError);
}

TEST(HorseshoeModel, BranchesMapOntoHorizontalRectangles) {
  HorseshoeModel m(2, Rational(1, 2));
  for (std::size_t b = 0; b < m.branches().size(); ++b) {
    Rect v = m.branch_rect(b);
    Rect h = m.h_rect(m.letter_of(b));
    Point2 lo = m.apply(b, {v.x.lo, v.y.lo});
    Point2 hi = m.apply(b, {v.x.hi, v.y.hi});
    EXPECT_EQ(std::min(lo.x, hi.x), 0);
    EXPECT_EQ(std::max(lo.x, hi.x), 1);
    EXPECT_EQ(std::min(lo.y, hi.y), h.y.lo);
    EXPECT_EQ(std::max(lo.y, hi.y), h.y.hi);
    // zero branches keep orientation, one branches flip it
    EXPECT_EQ(lo.x == 0, m.branches()[b].zero);
  }
}

TEST(HorseshoeModel, EveryPointHasNPreimages) {
  for (std::size_t N : {1, 2, 3}) {
    HorseshoeModel m(N, Rational(1, 2));
    for (std::size_t letter : {0, 1}) {
      Rect h = m.h_rect(letter);
      for (int i = 0; i <= 6; ++i) {
        Point2 p{Rational(i, 6), h.y.lo + h.y.length() * Rational(i + 1, 9)};
        std::size_t count = 0;
        for (std::size_t b = 0; b < m.branches().size(); ++b) {
          if (m.letter_of(b) != letter) continue;
          Point2 q = m.unapply(b, p);
          EXPECT_EQ(m.branch_of(q), b);
          EXPECT_EQ(m.apply(q), p);
          ++count;
        }
        EXPECT_EQ(count, N);
      }
    }
  }
}

TEST(CodePoint, FixedPointAndTwoCycle) {
  HorseshoeModel m(1, Rational(1));
  Point2 fixed = periodic_point(m, {0});
  EXPECT_EQ(m.apply(fixed), fixed);
  for (std::size_t k : {1, 3, 6}) {
    auto c = code_point(m, fixed, k);
    EXPECT_EQ(c.future, Word(k, 0));
    EXPECT_EQ(c.past, Word(k, 0));
  }
  Point2 p = periodic_point(m, {0, 1});
  EXPECT_NE(m.apply(p), p);
  EXPECT_EQ(m.apply(m.apply(p)), p);
  auto c = code_point(m, p, 4);
  EXPECT_EQ(c.future, (Word{0, 1, 0, 1}));
  EXPECT_EQ(c.past, (Word{0, 1, 0, 1}));  // n_{-1} = b
  EXPECT_EQ(format_code(m, c), "a b a b ; 0_1 1_1 0_1 1_1");
}

TEST(CodePoint, EscapesOutsideTheBranches) {
  HorseshoeModel m(1, Rational(1));
  try {
    code_point(m, {Rational(1, 2), Rational(1, 2)}, 3);
    FAIL();
  } catch (const EscapedSquare& e) {
    EXPECT_EQ(e.index(), 0);
  }
  EXPECT_THROW(m.apply(Point2{Rational(0), Rational(1, 2)}), EscapedSquare);
}

TEST(Decode, DepthZeroIsTheBranch) {
  HorseshoeModel m(2, Rational(1, 2));
  for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(depth_rect(m, {static_cast<Symbol>(b)}), m.branch_rect(b));
}

TEST(Decode, NestedWithExactWidths) {
  HorseshoeModel m(2, Rational(1, 2));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Symbol> letter(0, 3), ab(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    ItineraryCode code;
    Rect prev{{0, 1}, {0, 1}};
    for (std::size_t k = 1; k <= 5; ++k) {
      code.future.push_back(letter(rng));
      code.past.insert(code.past.begin(), ab(rng));
      Rect r = decode(m, code);
      EXPECT_EQ(r.x.length(), pow(1 / m.delta(), k));
      EXPECT_EQ(r.y.length(), pow(m.delta_prime(), k));
      EXPECT_TRUE(prev.x.lo <= r.x.lo && r.x.hi <= prev.x.hi);
      EXPECT_TRUE(prev.y.lo <= r.y.lo && r.y.hi <= prev.y.hi);
      EXPECT_LT(r.x.length(), prev.x.length());
      prev = r;
      // the centre codes back to the same window
      Point2 c{(r.x.lo + r.x.hi) / 2, (r.y.lo + r.y.hi) / 2};
      auto again = code_point(m, c, k);
      EXPECT_EQ(again.future, code.future);
      EXPECT_EQ(again.past, code.past);
    }
  }
}

TEST(Decode, AllDepthTwoCodesRealizableAndDisjoint) {
  HorseshoeModel m(2, Rational(1, 2));
  std::vector<Rect> rects;
  for (const Word& w : all_words(4, 2)) rects.push_back(depth_rect(m, w));
  EXPECT_EQ(rects.size(), 16u);
  for (std::size_t i = 0; i < rects.size(); ++i)
    for (std::size_t j = i + 1; j < rects.size(); ++j) EXPECT_TRUE(disjoint(rects[i], rects[j]));
}

TEST(Periodic, CountIsTwoNToTheM) {
  for (std::size_t N : {1, 2}) {
    HorseshoeModel m(N, Rational(1, 2));
    for (std::size_t len = 1; len <= 4; ++len) {
      std::set<std::pair<Rational, Rational>> found;
      for (const Word& w : all_words(2 * N, len)) {
        Point2 p = periodic_point(m, w);
        Point2 q = p;
        for (std::size_t i = 0; i < len; ++i) q = m.apply(q);
        ASSERT_EQ(q, p);
        EXPECT_EQ(code_point(m, p, len).future, w);
        found.insert({p.x, p.y});
      }
      std::size_t expected = 1;
      for (std::size_t i = 0; i < len; ++i) expected *= 2 * N;
      EXPECT_EQ(found.size(), expected);
    }
  }
}

TEST(Conjugacy, NoViolations) {
  auto one = verify_conjugacy(HorseshoeModel(1, Rational(1)), coding_space(1), 6, 100);
  EXPECT_TRUE(one.ok()) << (one.violations.empty() ? "" : one.violations[0]);
  EXPECT_EQ(one.samples, 100u);
  auto two = verify_conjugacy(HorseshoeModel(2, Rational(1, 2)), coding_space(2), 5, 100, 3);
  EXPECT_TRUE(two.ok()) << (two.violations.empty() ? "" : two.violations[0]);
}

TEST(Conjugacy, CorruptedPhiIsReported) {
  SpaceDefinition def = coding_definition(2);
  // 0_1 and 1_1 trade images; phi stays onto
  def.phi[Word{0}] = 1;
  def.phi[Word{1}] = 0;
  auto report = verify_conjugacy(HorseshoeModel(2, Rational(1, 2)), ZipShiftSpace(def), 4, 50);
  EXPECT_FALSE(report.ok());
  EXPECT_GT(report.window_mismatches, 0u);
  EXPECT_FALSE(report.violations.empty());
}

TEST(StableString, Examples) {
  EXPECT_EQ(stable_string("0"), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(stable_string("0'"), (std::vector<std::string>{"0'", "1'"}));
  EXPECT_EQ(stable_string("00"), (std::vector<std::string>{"00", "10", "11", "01"}));
  EXPECT_EQ(stable_string("10′1′"),
            (std::vector<std::string>{"00′0′", "10′0′", "11′0′", "01′0′", "01′1′", "11′1′", "10′1′", "00′1′"}));
  EXPECT_THROW(stable_string("02"), BadLetter);
  EXPECT_THROW(stable_string(""), BadLetter);
}

TEST(StableString, ContainsWOnceAndIsAdjacentGeometrically) {
  HorseshoeModel m(2, Rational(1, 2));
  auto letter = [](char c, bool primed) -> Symbol { return (c == '1' ? 1 : 0) + (primed ? 2 : 0); };
  auto parse = [&](const std::string& s) {
    Word w;
    for (std::size_t i = 0; i < s.size(); ++i) {
      bool primed = i + 1 < s.size() && s[i + 1] == '\'';
      w.push_back(letter(s[i], primed));
      if (primed) ++i;
    }
    // chain words are written n_{k-1} .. n_0
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (std::size_t k = 1; k <= 3; ++k)
    for (const Word& raw : all_words(4, k)) {
      std::string w;
      for (Symbol s : raw) w += std::string(s % 2 ? "1" : "0") + (s >= 2 ? "'" : "");
      auto chain = stable_string(w);
      ASSERT_EQ(chain.size(), std::size_t{1} << k);
      EXPECT_EQ(std::count(chain.begin(), chain.end(), w), 1);
      EXPECT_EQ(std::set<std::string>(chain.begin(), chain.end()).size(), chain.size());
      // consecutive strips are neighbours among the chain's strips, in x order
      std::vector<Rect> rects;
      for (const auto& s : chain) rects.push_back(depth_rect(m, parse(s)));
      std::vector<std::size_t> order(rects.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rects[a].x.lo < rects[b].x.lo; });
      std::vector<std::size_t> rank(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        long step = static_cast<long>(rank[i + 1]) - static_cast<long>(rank[i]);
        EXPECT_EQ(std::abs(step), 1) << w << " at " << i;
        EXPECT_EQ(rects[i].y, rects[i + 1].y);
      }
    }
}
