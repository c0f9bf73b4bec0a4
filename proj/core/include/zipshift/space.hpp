#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "zipshift/graph.hpp"
#include "zipshift/symbols.hpp"

namespace zipshift {

enum class SpaceKind { Full, Sft, Sofic };

struct SpaceDefinition {
  Alphabet a;
  Alphabet a_prime;
  std::size_t n = 1;
  std::map<Word, Symbol> phi;
  SpaceKind kind = SpaceKind::Full;
  std::vector<Word> forbidden;  // Sft only
  EdgeGraph presentation;       // Sofic only
  std::size_t window = 0;       // vertex label length, 0 picks the default
};

class ZipShiftSpace {
 public:
  ZipShiftSpace() = default;
  // Validates the definition; throws InvalidSpace.
  explicit ZipShiftSpace(SpaceDefinition def);

  const Alphabet& a() const { return state_->def.a; }
  const Alphabet& a_prime() const { return state_->def.a_prime; }
  const TransitionMap& tm() const { return state_->tm; }
  std::size_t n() const { return state_->tm.n(); }
  SpaceKind kind() const { return state_->def.kind; }
  const SpaceDefinition& definition() const { return state_->def; }
  // Forbidden words after dropping superwords, sorted.
  const std::vector<Word>& forbidden() const { return state_->forbidden; }
  // Memory of the A' side: longest forbidden word length - 1 (0 for full shifts).
  std::size_t step() const { return state_->step; }
  const LabeledGraph& graph() const { return state_->graph; }
  const LabeledGraph& backward_graph() const { return state_->backward; }
  // True when A and A' carry the same names (classical shift embedded).
  bool classical() const { return state_->def.a == state_->def.a_prime; }
  bool valid() const { return state_ != nullptr; }

  bool admits(std::span<const Symbol> aprime_word) const;
  bool admits_a(std::span<const Symbol> a_word) const;
  // left is written left to right ending at index -1, right starts at index 0.
  bool admits_mixed(std::span<const Symbol> left, std::span<const Symbol> right) const;

  // Vertices from which a walk spells `right` (prefix-compatible when short).
  std::vector<std::size_t> vertices_reading(std::span<const Symbol> right) const;

 private:
  struct State {
    SpaceDefinition def;
    TransitionMap tm;
    std::vector<Word> forbidden;
    std::size_t step = 0;
    LabeledGraph graph;
    LabeledGraph backward;
  };
  std::shared_ptr<const State> state_;
};

enum class Side { A, Aprime };

struct MixedWord {
  Word left;   // A letters, ending at index -1
  Word right;  // A' letters, starting at index 0
  auto operator<=>(const MixedWord&) const = default;
};

std::vector<Word> language(const ZipShiftSpace& space, std::size_t k, Side side);
// Admissible blocks of length k with at least one letter on each side of the boundary.
std::vector<MixedWord> language_mixed(const ZipShiftSpace& space, std::size_t k);

using BinaryMatrix = std::vector<std::vector<int>>;

struct MatrixSet {
  std::size_t K = 1;
  std::size_t N = 1;
  std::vector<Word> aprime_words;  // row/column order of aprime_adj
  std::vector<Word> a_words;       // row/column order of a_adj, rows of t
  BinaryMatrix aprime_adj;
  BinaryMatrix a_adj;
  BinaryMatrix t;  // rows a_words, columns aprime_words
  // Minimal A-side forbidden words found up to length N+1 while deriving N.
  std::vector<Word> a_forbidden;
};

// Throws NotFiniteType for sofic spaces.
MatrixSet build_matrices(const ZipShiftSpace& space);

struct IrreducibilityReport {
  bool irreducible = false;
  // Per ordered pair (x, y) a full connecting word x ... y, when irreducible.
  std::vector<std::tuple<Symbol, Symbol, Word>> witnesses;
  // First pair (in symbol order) with no connecting word.
  std::optional<std::pair<Symbol, Symbol>> disconnected;
};

IrreducibilityReport is_irreducible(const ZipShiftSpace& space);

// Points of period m (not necessarily least). Throws NotFiniteType for sofic
// spaces and std::overflow_error past 64 bits.
std::uint64_t count_periodic(const ZipShiftSpace& space, std::size_t m);

}  // namespace zipshift
