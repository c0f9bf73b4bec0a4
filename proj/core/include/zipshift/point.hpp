#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "zipshift/rational.hpp"
#include "zipshift/symbols.hpp"

namespace zipshift {

class ZipShiftSpace;

// One side of a point read outward from the boundary: prefix, then cycle forever.
struct Tail {
  Word prefix;
  Word cycle;

  Symbol at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
  }
  // Tail starting k letters further out.
  Tail drop(std::size_t k) const;
  // Primitive cycle, prefix as short as possible.
  void canonicalize();

  auto operator<=>(const Tail&) const = default;
};

// Eventually periodic bi-infinite point, always stored canonically.
// left.at(k) is x_{-1-k}; right.at(i) is x_i.
class EpPoint {
 public:
  EpPoint() = default;
  // Throws std::invalid_argument on an empty cycle.
  EpPoint(Tail left, Tail right);

  // Layout of the text grammar: left side written left to right.
  static EpPoint from_parts(Word left_period, Word left_transient, Word right_transient,
                            Word right_period);

  // f must be defined for -(left_pre + left_per) <= i < right_pre + right_per and
  // be periodic beyond the preperiods on each side.
  static EpPoint from_function(const std::function<Symbol(std::int64_t)>& f,
                               std::size_t left_pre, std::size_t left_per,
                               std::size_t right_pre, std::size_t right_per);

  Symbol at(std::int64_t i) const;
  const Tail& left() const { return left_; }
  const Tail& right() const { return right_; }

  Word left_period() const;
  Word left_transient() const;
  const Word& right_transient() const { return right_.prefix; }
  const Word& right_period() const { return right_.cycle; }

  auto operator<=>(const EpPoint&) const = default;

 private:
  Tail left_;
  Tail right_;
};

// Grammar: "(" sym+ ")*" sym* ";" sym* "(" sym+ ")*". Throws ParseError.
EpPoint parse_point(const Alphabet& a, const Alphabet& a_prime, std::string_view text);
EpPoint parse_point(const ZipShiftSpace& space, std::string_view text);
std::string format_point(const Alphabet& a, const Alphabet& a_prime, const EpPoint& x);
std::string format_point(const ZipShiftSpace& space, const EpPoint& x);

EpPoint shift(const ZipShiftSpace& space, const EpPoint& x);
EpPoint shift_k(const ZipShiftSpace& space, const EpPoint& x, std::size_t k);

// 2^-exponent, or 0 when exponent is empty (points agree).
struct MetricValue {
  std::optional<std::uint64_t> exponent;

  Rational value() const;
  bool operator==(const MetricValue&) const = default;
  std::strong_ordering operator<=>(const MetricValue& other) const;
};

struct PointMetrics {
  MetricValue d;
  MetricValue d_plus;
  MetricValue d_minus;
  Rational d_pm;
};

// First index k >= 0 with a.at(k) != b.at(k).
std::optional<std::size_t> first_difference(const Tail& a, const Tail& b);
PointMetrics metrics(const EpPoint& s, const EpPoint& t);

struct AdmissibilityReport {
  bool admissible = false;
  std::string diagnostic;
  explicit operator bool() const { return admissible; }
};

AdmissibilityReport is_admissible(const ZipShiftSpace& space, const EpPoint& x);

struct SampleOptions {
  std::size_t max_transient = 4;
};

// Random admissible point: a random walk on the presentation closed into cycles
// on both sides, with the left side taken as the phi image of the history.
EpPoint random_point(const ZipShiftSpace& space, std::mt19937_64& rng,
                     const SampleOptions& options = {});

}  // namespace zipshift
