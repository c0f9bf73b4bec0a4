#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace zipshift;

namespace {

BlockCodeSpec code(const std::string& name) { return load_code(oracle::fixture(name)); }

EpPoint pt(const ZipShiftSpace& sp, const std::string& text) { return parse_point(sp, text); }

std::vector<EpPoint> samples(const ZipShiftSpace& sp, std::uint64_t seed, int count = 50) {
  std::mt19937_64 rng(seed);
  std::vector<EpPoint> out;
  for (int i = 0; i < count; ++i) out.push_back(random_point(sp, rng));
  return out;
}

}  // namespace

TEST(Codes, IdentityCode) {
  for (const char* name : {"abc3.json", "even.json", "twostep.json"}) {
    auto sp = oracle::load(name);
    BlockCode id(identity_code(sp));
    ASSERT_TRUE(id.valid()) << id.validation().failure;
    for (const auto& x : samples(sp, 1, 20)) EXPECT_EQ(apply_code(id, x), x);
    EXPECT_TRUE(check_commutation(id.spec(), 50).ok);
    auto inv = invert_code(id.spec(), 2);
    ASSERT_TRUE(inv.inverse) << inv.reason;
    EXPECT_EQ(inv.inverse->window, 1u);
  }
}

TEST(Codes, LetterRename) {
  BlockCode swap(code("swap.json"));
  ASSERT_TRUE(swap.valid()) << swap.validation().failure;
  const auto& sp = swap.spec().source;
  EXPECT_EQ(apply_code(swap, pt(sp, "(a b)* a ; 0 0 (1)*")), pt(sp, "(b a)* b ; 1 1 (0)*"));
  auto inv = invert_code(swap.spec(), 2);
  ASSERT_TRUE(inv.inverse);
  EXPECT_EQ(inv.inverse->window, 1u);
  EXPECT_EQ(inv.inverse->psi_plus, swap.spec().psi_plus);
}

TEST(Codes, CollapseOntoTheFullShift) {
  BlockCode c(code("collapse.json"));
  ASSERT_TRUE(c.valid()) << c.validation().failure;
  const auto& src = c.spec().source;
  const auto& dst = c.spec().target;
  EXPECT_EQ(apply_code(c, pt(src, "(a b)* ; 3 4 (1)*")), pt(dst, "(a b)* ; 0 1 (0)*"));
  for (const auto& x : samples(src, 2)) {
    EXPECT_EQ(apply_code(c, shift(src, x)), shift(dst, apply_code(c, x)));
    EXPECT_TRUE(is_admissible(dst, apply_code(c, x)));
  }
  auto report = check_commutation(c.spec(), 200);
  EXPECT_TRUE(report.ok) << report.reason;
  EXPECT_GE(report.checked, 200u);
  // 2 to 1 on letters, so no inverse
  EXPECT_FALSE(invert_code(c.spec(), 2).inverse);
}

TEST(Codes, CorruptedTableIsCaught) {
  BlockCodeSpec bad = code("collapse.json");
  auto& entry = bad.psi_minus.begin()->second;
  entry = entry == 0 ? 1 : 0;
  EXPECT_FALSE(validate_code(bad).valid);
  EXPECT_FALSE(BlockCode(bad).valid());
  EXPECT_THROW(apply_code(BlockCode(bad), random_point(bad.source, *std::make_unique<std::mt19937_64>(1))),
               InvalidCode);
  auto report = check_commutation(bad, 50);
  EXPECT_FALSE(report.ok);
  ASSERT_TRUE(report.counterexample);
  const EpPoint& x = *report.counterexample;
  EXPECT_NE(apply_code_unchecked(bad, shift(bad.source, x)), shift(bad.target, apply_code_unchecked(bad, x)));

  BlockCodeSpec bad_plus = code("collapse.json");
  bad_plus.psi_plus.begin()->second = 1;
  EXPECT_FALSE(validate_code(bad_plus).valid);
  EXPECT_FALSE(check_commutation(bad_plus, 50).ok);

  BlockCodeSpec partial = code("collapse.json");
  partial.psi_plus.erase(partial.psi_plus.begin());
  EXPECT_FALSE(validate_code(partial).valid);
}

TEST(Codes, PeriodsMapToDivisors) {
  BlockCode c(code("collapse.json"));
  for (std::size_t k = 1; k <= 4; ++k)
    for (const auto& p : periodic_points(c.spec().source, k)) {
      EpPoint y = apply_code(c, p.point);
      EXPECT_EQ(shift_k(c.spec().target, y, k), y);
    }
  BlockCode swap(code("swap.json"));
  for (std::size_t k = 1; k <= 6; ++k)
    for (const auto& p : periodic_points(swap.spec().source, k)) {
      auto q = as_periodic(swap.spec().target, apply_code(swap, p.point));
      ASSERT_TRUE(q);
      // repeats need not be primitive, compare least periods
      EXPECT_EQ(q->period(), as_periodic(swap.spec().source, p.point)->period());
    }
}

TEST(HigherBlock, OneIsIsomorphic) {
  auto sp = oracle::load("abc3.json");
  HigherBlock h(sp, 1);
  for (std::size_t k = 1; k <= 5; ++k)
    EXPECT_EQ(language(h.target(), k, Side::Aprime).size(), language(sp, k, Side::Aprime).size());
  for (const auto& x : samples(sp, 3, 20)) EXPECT_EQ(h.inverse(h.forward(x)), x);
}

TEST(HigherBlock, FullShiftTwoBlocksIsDeBruijn) {
  auto sp = oracle::load("full2.json");
  HigherBlock h(sp, 2);
  const auto& t = h.target();
  EXPECT_EQ(t.a_prime().size(), 4u);
  for (std::size_t k = 1; k <= 5; ++k) {
    auto words = language(t, k, Side::Aprime);
    EXPECT_EQ(words.size(), std::size_t{1} << (k + 1));
    for (const auto& w : words)
      for (std::size_t i = 0; i + 1 < w.size(); ++i) EXPECT_EQ(h.aprime_block(w[i])[1], h.aprime_block(w[i + 1])[0]);
  }
  EpPoint y = h.forward(pt(sp, "(a)* ; (0 1)*"));
  EXPECT_EQ(format_word(t.a_prime(), y.right_period(), " "), "[01] [10]");
  EXPECT_TRUE(y.right_transient().empty());
}

TEST(HigherBlock, RoundTripAndCommutation) {
  for (const char* name : {"abc3.json", "even.json", "twostep.json", "full2.json"}) {
    auto sp = oracle::load(name);
    for (std::size_t N : {2, 3}) {
      HigherBlock h(sp, N);
      for (const auto& x : samples(sp, 4, 30)) {
        EpPoint y = h.forward(x);
        EXPECT_TRUE(is_admissible(h.target(), y)) << name << " N=" << N;
        EXPECT_EQ(h.inverse(y), x) << name;
        EXPECT_EQ(h.forward(shift(sp, x)), shift(h.target(), y)) << name;
      }
      BlockCode as_code(h.code());
      ASSERT_TRUE(as_code.valid()) << name << " " << as_code.validation().failure;
      for (const auto& x : samples(sp, 5, 10)) EXPECT_EQ(apply_code(as_code, x), h.forward(x));
    }
  }
}

TEST(HigherBlock, InverseSearchFindsTheFirstLetterCode) {
  auto sp = oracle::load("abc3.json");
  HigherBlock h(sp, 2);
  auto inv = invert_code(h.code(), 2);
  ASSERT_TRUE(inv.inverse) << inv.reason;
  EXPECT_LE(inv.inverse->window, 2u);
  BlockCode back(*inv.inverse);
  ASSERT_TRUE(back.valid());
  for (const auto& x : samples(sp, 6)) EXPECT_EQ(apply_code(back, h.forward(x)), x);
}

TEST(HigherPower, Examples) {
  auto sp = oracle::load("full2.json");
  HigherPower one(sp, 1);
  for (const auto& x : samples(sp, 7, 20)) EXPECT_EQ(one.inverse(one.forward(x)), x);

  HigherPower three(sp, 3);
  EpPoint fixed = three.forward(pt(sp, "(a)* ; (0)*"));
  EXPECT_EQ(format_word(three.target().a_prime(), fixed.right_period(), " "), "[000]");
  EXPECT_EQ(shift(three.target(), fixed), fixed);

  HigherPower two(sp, 2);
  EpPoint p = two.forward(pt(sp, "(a b)* ; (0 1)*"));
  EXPECT_EQ(format_word(two.target().a_prime(), p.right_period(), " "), "[01]");
  EXPECT_EQ(shift(two.target(), p), p);
}

TEST(HigherPower, ConjugatesTheNthIterate) {
  for (const char* name : {"abc3.json", "even.json", "full2.json"}) {
    auto sp = oracle::load(name);
    for (std::size_t N : {2, 3}) {
      HigherPower hp(sp, N);
      for (const auto& x : samples(sp, 8, 30)) {
        EpPoint y = hp.forward(x);
        EXPECT_TRUE(is_admissible(hp.target(), y)) << name;
        EXPECT_EQ(hp.inverse(y), x) << name;
        EXPECT_EQ(hp.forward(shift_k(sp, x, N)), shift(hp.target(), y)) << name << " N=" << N;
      }
    }
  }
}
