#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zipshift/rational.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

struct Rect {
  Interval x;
  Interval y;
  bool operator==(const Rect&) const = default;
};

struct Point2 {
  Rational x;
  Rational y;
  bool operator==(const Point2&) const = default;
};

bool disjoint(const Rect& r, const Rect& s);

// One vertical branch rectangle V = strip x [0,1]. Zero branches map onto H_a
// preserving horizontal orientation, one branches onto H_b reversing it.
struct Branch {
  std::size_t fold = 1;  // 1..N
  bool zero = true;
  Interval strip;
};

// Piecewise affine N-to-1 horseshoe on the unit square. Branch index b is the
// A' letter of the coding space: 0_1, 1_1, 0_2, 1_2, ...
class HorseshoeModel {
 public:
  // Throws GeometryError unless N >= 1 and epsilon > 0.
  HorseshoeModel(std::size_t N, Rational epsilon);

  std::size_t N() const { return N_; }
  const Rational& epsilon() const { return epsilon_; }
  const Rational& delta() const { return delta_; }
  const Rational& delta_prime() const { return delta_prime_; }
  const Rational& gap() const { return gap_; }
  const std::vector<Branch>& branches() const { return branches_; }
  Rect branch_rect(std::size_t b) const;
  // letter 0 is a, 1 is b.
  Rect h_rect(std::size_t letter) const;
  std::size_t letter_of(std::size_t b) const { return branches_[b].zero ? 0 : 1; }
  std::size_t branch_index(std::size_t fold, bool zero) const { return 2 * (fold - 1) + (zero ? 0 : 1); }

  Rational x_map(std::size_t b, const Rational& x) const;
  Rational x_unmap(std::size_t b, const Rational& x) const;
  Rational y_map(std::size_t letter, const Rational& y) const;
  Rational y_unmap(std::size_t letter, const Rational& y) const;
  Interval x_unmap(std::size_t b, const Interval& I) const;
  Interval y_map(std::size_t letter, const Interval& I) const;

  std::optional<std::size_t> branch_of(const Point2& p) const;
  std::optional<std::size_t> h_of(const Point2& p) const;
  Point2 apply(const Point2& p) const;  // throws EscapedSquare(0)
  Point2 apply(std::size_t b, const Point2& p) const;
  Point2 unapply(std::size_t b, const Point2& p) const;

 private:
  std::size_t N_;
  Rational epsilon_;
  Rational delta_;
  Rational delta_prime_;
  Rational gap_;
  Rational h_low_[2];
  std::vector<Branch> branches_;
};

// A={a,b}, A'={0_1,1_1,...,0_N,1_N}, phi_1 sends zero letters to a and one letters to b.
SpaceDefinition coding_definition(std::size_t N);
ZipShiftSpace coding_space(std::size_t N);

// past is n_{-k} .. n_{-1} over {a,b} written left to right, future n_0 .. over A'.
struct ItineraryCode {
  Word past;
  Word future;
  auto operator<=>(const ItineraryCode&) const = default;
};

std::string format_code(const HorseshoeModel& model, const ItineraryCode& code);

// Forward letters of f^i(p) for i < k, backward letters of f^{-(i-1)}(p) for
// i = 1..k, taking the pre-image through fold branch_choices[i-1] (1..N).
ItineraryCode code_point(const HorseshoeModel& model, const Point2& p, std::size_t k,
                         const std::vector<std::size_t>& branch_choices);
ItineraryCode code_point(const HorseshoeModel& model, const Point2& p, std::size_t k);

// Closed rectangle of all points carrying the code. Throws Unrealizable.
Rect decode(const HorseshoeModel& model, const ItineraryCode& code);

// Exact point of period m with forward letters word repeated.
Point2 periodic_point(const HorseshoeModel& model, const Word& word);

struct ConjugacyReport {
  std::size_t samples = 0;
  std::size_t window_mismatches = 0;
  std::size_t overlaps = 0;
  std::size_t preimage_violations = 0;
  std::vector<std::string> violations;  // first few, human readable
  bool ok() const { return window_mismatches == 0 && overlaps == 0 && preimage_violations == 0; }
};

ConjugacyReport verify_conjugacy(const HorseshoeModel& model, const ZipShiftSpace& space,
                                 std::size_t depth, std::size_t samples, std::uint64_t seed = 0);

// N = 2 only. Letters 0 1 0' 1' (the prime may also be written U+2032).
// Throws BadLetter.
std::vector<std::string> stable_string(std::string_view w);

}  // namespace zipshift
