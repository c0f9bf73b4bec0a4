#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zipshift/point.hpp"

namespace zipshift {

class ZipShiftSpace;

struct PeriodicPoint {
  Word repeat;  // p_0 .. p_{m-1}
  EpPoint point;
  std::size_t period() const { return repeat.size(); }
};

// Throws std::invalid_argument if the repetition is not admissible.
PeriodicPoint make_periodic(const ZipShiftSpace& space, Word repeat);
// Recovers the repeat from a purely periodic point; empty if x is not periodic.
std::optional<PeriodicPoint> as_periodic(const ZipShiftSpace& space, const EpPoint& x);

// Every admissible m-cycle, ordered by repeat word. Throws NotFiniteType for sofic spaces.
std::vector<PeriodicPoint> periodic_points(const ZipShiftSpace& space, std::size_t m);
// Same enumeration without the finite-type restriction.
std::vector<PeriodicPoint> periodic_cycles(const ZipShiftSpace& space, std::size_t m);

// p, shift(p), ..., distinct points only.
std::vector<EpPoint> orbit(const ZipShiftSpace& space, const PeriodicPoint& p);

std::vector<EpPoint> pre_periodic_points(const ZipShiftSpace& space, const PeriodicPoint& p,
                                         std::size_t level, std::size_t d_max = 32);

// Tail agreement with the orbit of p. index is the merge index: for the stable
// side t_n = q_n for n >= index, for the unstable side t_{-n} = q_{-n} for
// n >= index (index >= 1), where q = shift^phase(p).
struct TailMatch {
  bool member = false;
  std::size_t index = 0;
  std::size_t phase = 0;
};

struct Membership {
  TailMatch stable_global;
  TailMatch stable_special;
  TailMatch unstable_global;
  TailMatch unstable_special;
};

Membership stable_unstable_membership(const ZipShiftSpace& space, const PeriodicPoint& p,
                                      const EpPoint& t);

struct HomoclinicDatum {
  PeriodicPoint p;
  EpPoint x;
  std::size_t n_x = 1;        // x_{-n} agrees with the orbit of p for n >= n_x
  std::size_t n_prime_x = 0;  // x_n agrees with the orbit of p for n >= n_prime_x
  std::size_t unstable_phase = 0;
  std::size_t stable_phase = 0;
};

// Throws std::invalid_argument unless x is homoclinic to the orbit of p and not on it.
HomoclinicDatum make_homoclinic_datum(const ZipShiftSpace& space, const PeriodicPoint& p,
                                      const EpPoint& x);

// One backward branch of the orbit of x: the history z_{-1}, z_{-2}, ... used
// to build the points before x. Positions beyond n_x follow the history of p.
struct HomoclinicOrbit {
  std::size_t pinned_phase = 0;
  Word choices;  // z_{-1} .. z_{-(n_x-1)}
  Tail history;  // z_{-1}, z_{-2}, ...
  auto operator<=>(const HomoclinicOrbit&) const = default;
};

struct HomoclinicResult {
  std::vector<HomoclinicOrbit> orbits;
  // Sum over free positions of |phi^-1(x_t)|, the classical bound on the count.
  std::size_t sum_bound = 0;
  bool exceeds_sum_bound = false;
};

HomoclinicResult homoclinic_orbits(const ZipShiftSpace& space, const HomoclinicDatum& datum);

// O(i) for any integer i: shift_i(x) for i >= 0, the chosen pre-image chain otherwise.
EpPoint orbit_point(const ZipShiftSpace& space, const HomoclinicDatum& datum,
                    const HomoclinicOrbit& orbit, std::int64_t i);

// y is in the special stable set of p and the special unstable set of q.
bool heteroclinic_check(const ZipShiftSpace& space, const PeriodicPoint& p,
                        const PeriodicPoint& q, const EpPoint& y);

}  // namespace zipshift
