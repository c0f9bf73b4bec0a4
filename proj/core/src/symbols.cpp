#include "zipshift/symbols.hpp"

#include <sstream>

#include "zipshift/errors.hpp"

namespace zipshift {

bool valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == '(' || c == ')' || c == ';' || c == '*' || c == ' ' || c == '\t' || c == '\n' ||
        c == '\r')
      return false;
  }
  return true;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_symbol_name(names_[i]))
      throw InvalidSpace("invalid symbol name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second)
      throw InvalidSpace("duplicate symbol '" + names_[i] + "'");
  }
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= names_.size()) throw UnknownSymbol("symbol index " + std::to_string(s) + " out of range");
  return names_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  auto s = find(name);
  if (!s) throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
  return *s;
}

std::string format_word(const Alphabet& alphabet, std::span<const Symbol> w, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += alphabet.name(w[i]);
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::istringstream in{std::string(text)};
  Word w;
  std::string tok;
  while (in >> tok) w.push_back(alphabet.at(tok));
  return w;
}

TransitionMap::TransitionMap(std::size_t n, std::map<Word, Symbol> table, std::size_t a_size)
    : n_(n), table_(std::move(table)), a_size_(a_size) {
  if (n_ == 0) throw InvalidSpace("transition window n must be positive");
  for (const auto& [w, a] : table_) {
    if (w.size() != n_) throw InvalidSpace("phi entry of wrong length");
    if (a >= a_size_) throw InvalidSpace("phi value outside A");
  }
}

std::optional<Symbol> TransitionMap::lookup(std::span<const Symbol> window) const {
  if (window.size() != n_) return std::nullopt;
  auto it = table_.find(Word(window.begin(), window.end()));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

Symbol TransitionMap::operator()(std::span<const Symbol> window) const {
  auto a = lookup(window);
  if (!a) {
    std::string msg = "phi undefined on window";
    for (Symbol s : window) msg += " " + std::to_string(s);
    throw UndefinedWindow(msg);
  }
  return *a;
}

Word phi_extend(const TransitionMap& tm, std::span<const Symbol> w) {
  Word out;
  if (w.size() < tm.n()) return out;
  out.reserve(w.size() - tm.n() + 1);
  for (std::size_t i = 0; i + tm.n() <= w.size(); ++i) out.push_back(tm(w.subspan(i, tm.n())));
  return out;
}

std::vector<Word> phi_preimages(const TransitionMap& tm, Symbol a) {
  if (a >= tm.a_size()) throw UnknownSymbol("symbol index " + std::to_string(a) + " not in A");
  std::vector<Word> out;
  for (const auto& [w, b] : tm.table())
    if (b == a) out.push_back(w);
  return out;
}

}  // namespace zipshift
