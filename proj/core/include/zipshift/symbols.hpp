#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zipshift {

// Letters are indices into an Alphabet. Which alphabet a Word belongs to is
// carried by context (left side = A, right side = A').
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr Symbol kNoSymbol = static_cast<Symbol>(-1);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(Symbol s) const;
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Symbol> find(std::string_view name) const;
  // Throws UnknownSymbol.
  Symbol at(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

bool valid_symbol_name(std::string_view name);

// "1 2 2" style rendering and parsing of pure words.
std::string format_word(const Alphabet& alphabet, std::span<const Symbol> w,
                        std::string_view sep = " ");
Word parse_word(const Alphabet& alphabet, std::string_view text);

// The factor map phi_n from admissible n-words over A' onto A.
class TransitionMap {
 public:
  TransitionMap() = default;
  TransitionMap(std::size_t n, std::map<Word, Symbol> table, std::size_t a_size);

  std::size_t n() const { return n_; }
  const std::map<Word, Symbol>& table() const { return table_; }
  std::size_t a_size() const { return a_size_; }

  std::optional<Symbol> lookup(std::span<const Symbol> window) const;
  // Throws UndefinedWindow.
  Symbol operator()(std::span<const Symbol> window) const;

 private:
  std::size_t n_ = 0;
  std::map<Word, Symbol> table_;
  std::size_t a_size_ = 0;
};

// Output letter i is phi applied to w[i .. i+n). Throws UndefinedWindow.
Word phi_extend(const TransitionMap& tm, std::span<const Symbol> w);

// Domain words mapped to a, in lexicographic order. Throws UnknownSymbol.
std::vector<Word> phi_preimages(const TransitionMap& tm, Symbol a);

}  // namespace zipshift
