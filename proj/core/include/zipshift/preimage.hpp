#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zipshift/point.hpp"

namespace zipshift {

class ZipShiftSpace;

// What a backward walk reads from each edge u -> v: the sofic A letter, or the
// first A' letter of label(u) (the history letter one step further out).
enum class TrackLabel { Sofic, First };

// viable[v] is true iff some infinite backward walk from v reads `label`.
// Decided on the product of the presentation with the tail's lasso automaton.
std::vector<bool> backward_viable(const ZipShiftSpace& space, const Tail& label,
                                  TrackLabel track = TrackLabel::Sofic);

// Vertices v whose label starts the right tail and from which a forward walk reads it.
std::vector<std::size_t> right_states(const ZipShiftSpace& space, const Tail& right);

bool left_viability(const ZipShiftSpace& space, std::span<const std::size_t> start_vertices,
                    const Tail& left_label);

// Some A' history lifts the left side and continues into the right side.
bool is_liftable(const ZipShiftSpace& space, const EpPoint& x);

// The bi-infinite A' sequence (history ; right) is a walk of the presentation.
bool history_admissible(const ZipShiftSpace& space, const Tail& history, const Tail& right);

// Deterministic history z_{-1}, z_{-2}, ... of x: smallest letters first along
// viable walks. Empty when x is not liftable.
std::optional<Tail> canonical_lift(const ZipShiftSpace& space, const EpPoint& x);

struct LabelClassification {
  enum class Kind { Delay, LeftClosing, Distinguishable, SoficLeftClosing, Branching };
  Kind kind = Kind::Branching;
  // Delay: d. LeftClosing / SoficLeftClosing: path length. Distinguishable: d_L.
  std::size_t depth = 0;
  std::size_t multiplicity = 0;
  // Distinguishable only: true for L (from the first step), false for d_L.
  bool from_start = false;
  // Branching, or a result that was only checked up to d_max.
  bool depth_limited = false;
  // Vertex sequences v_0, v_{-1}, ..., listed when there are at most 64 paths.
  std::vector<std::vector<std::size_t>> witness_paths;
};

std::string describe(const LabelClassification& c);

struct PreimageResult {
  LabelClassification classification;
  std::vector<EpPoint> points;  // ordered by the letter at index 0
};

PreimageResult preimages(const ZipShiftSpace& space, const EpPoint& x, std::size_t d_max = 32);

// All y with shift_k(y) = x, ordered by their first k right letters.
std::vector<EpPoint> preimages_k(const ZipShiftSpace& space, const EpPoint& x, std::size_t k,
                                 std::size_t d_max = 32);

}  // namespace zipshift
