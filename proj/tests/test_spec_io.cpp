#include <gtest/gtest.h>

#include <fstream>

#include "oracles.hpp"

using namespace zipshift;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_space(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

const char* kAbc3 =
    R"({"alphabet_a": ["a", "b"], "alphabet_a_prime": ["1", "2", "3"], "n": 1, "kind": "sft",
        "phi": {"1": "a", "2": "b", "3": "b"}, "forbidden": ["1 1", "1 3", "2 1", "3 3"]})";

}  // namespace

TEST(SpecIo, ParsesEveryKind) {
  auto sft = parse_space(kAbc3);
  EXPECT_EQ(sft.kind(), SpaceKind::Sft);
  EXPECT_EQ(sft.forbidden().size(), 4u);
  EXPECT_EQ(oracle::load("full2.json").kind(), SpaceKind::Full);
  auto even = oracle::load("even.json");
  EXPECT_EQ(even.kind(), SpaceKind::Sofic);
  EXPECT_EQ(even.definition().presentation.edges.size(), 3u);
  EXPECT_EQ(even.n(), 2u);
}

TEST(SpecIo, ErrorsNameTheJsonPath) {
  EXPECT_NE(error_of("{").find("invalid JSON"), std::string::npos);
  EXPECT_EQ(error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "n": 1, "kind": "full",
                         "phi": {"1": "a"}, "colour": 3})"),
            "$: unknown key 'colour'");
  EXPECT_EQ(error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "kind": "full", "phi": {"1": "a"}})"),
            "$: missing key 'n'");
  EXPECT_EQ(error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "n": 1, "kind": "full", "phi": {"1": "z"}})"),
            "$.phi[\"1\"]: unknown symbol 'z'");
  EXPECT_EQ(error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "n": -1, "kind": "full", "phi": {}})"),
            "$.n: expected a non-negative integer");
  std::string bad_kind =
      error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "n": 1, "kind": "weird", "phi": {"1": "a"}})");
  EXPECT_EQ(bad_kind.rfind("$.kind", 0), 0u) << bad_kind;
  std::string bad_edge = error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1"], "n": 1, "kind": "sofic",
      "phi": {"1": "a"}, "graph": {"vertices": ["A"], "edges": [["A", "B", "1"]]}})");
  EXPECT_EQ(bad_edge.rfind("$.graph.edges[0]", 0), 0u) << bad_edge;
  std::string bad_forbidden = error_of(R"({"alphabet_a": ["a"], "alphabet_a_prime": ["1", "2"], "n": 1,
      "kind": "sft", "phi": {"1": "a", "2": "a"}, "forbidden": ["1 9"]})");
  EXPECT_EQ(bad_forbidden.rfind("$.forbidden[0]", 0), 0u) << bad_forbidden;
}

TEST(SpecIo, InvalidSpacesSurfaceAsParseErrors) {
  // valid JSON, but phi is not onto
  std::string why = error_of(R"({"alphabet_a": ["a", "b"], "alphabet_a_prime": ["1"], "n": 1, "kind": "full",
                                 "phi": {"1": "a"}})");
  EXPECT_NE(why.find("onto"), std::string::npos) << why;
}

TEST(SpecIo, LoadSpaceNamesTheFile) {
  auto path = std::filesystem::temp_directory_path() / "zipshift_bad_space.json";
  std::ofstream(path) << R"({"alphabet_a": ["a"]})";
  try {
    load_space(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(load_space("/nonexistent/space.json"), Error);
}

TEST(SpecIo, SpaceRoundTrip) {
  for (const char* name : {"abc3.json", "full2.json", "even.json", "sofic6.json", "twostep.json", "primed4.json"}) {
    auto sp = oracle::load(name);
    std::string text = space_to_json(sp.definition());
    auto again = parse_space(text);
    EXPECT_EQ(space_to_json(again.definition()), text) << name;
    EXPECT_EQ(again.definition().phi, sp.definition().phi) << name;
    for (std::size_t k = 1; k <= 4; ++k)
      EXPECT_EQ(language(again, k, Side::Aprime), language(sp, k, Side::Aprime)) << name;
  }
}

TEST(SpecIo, CodesResolveRelativePathsAndRoundTrip) {
  auto spec = load_code(oracle::fixture("collapse.json"));
  EXPECT_EQ(spec.source.a_prime().size(), 4u);
  EXPECT_EQ(spec.target.a_prime().size(), 2u);
  EXPECT_EQ(spec.window, 1u);
  EXPECT_EQ(spec.psi_minus.size(), 8u);
  auto again = parse_code(code_to_json(spec));
  EXPECT_EQ(again.psi_plus, spec.psi_plus);
  EXPECT_EQ(again.psi_minus, spec.psi_minus);
  EXPECT_EQ(code_to_json(again), code_to_json(spec));

  try {
    parse_code(R"({"source": "full2.json", "target": "full2.json", "window": 1,
                   "psi_plus": {"0": "0", "1": "1"}, "psi_minus": {"a 0": "a"}})",
               oracle::fixture("."));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("$.psi_minus[\"a 0\"]", 0), 0u) << e.what();
  }
}
