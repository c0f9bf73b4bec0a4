#include "zipshift/orbits.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "zipshift/errors.hpp"
#include "zipshift/preimage.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

namespace {

std::size_t mod(std::int64_t a, std::size_t m) {
  std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

Tail periodic_history(const Word& repeat) {
  return Tail{{}, Word(repeat.rbegin(), repeat.rend())};
}

// Smallest k with a.at(i) == b.at(i) for all i >= k.
std::optional<std::size_t> merge_index(const Tail& a, const Tail& b) {
  std::size_t start = std::max(a.prefix.size(), b.prefix.size());
  std::size_t period = std::lcm(a.cycle.size(), b.cycle.size());
  for (std::size_t i = start; i < start + period; ++i)
    if (a.at(i) != b.at(i)) return std::nullopt;
  std::size_t k = start;
  while (k > 0 && a.at(k - 1) == b.at(k - 1)) --k;
  return k;
}

}  // namespace

PeriodicPoint make_periodic(const ZipShiftSpace& space, Word repeat) {
  if (repeat.empty()) throw std::invalid_argument("empty periodic word");
  Tail right{{}, repeat};
  if (!history_admissible(space, periodic_history(repeat), right))
    throw std::invalid_argument("periodic word '" + format_word(space.a_prime(), repeat) + "' is not admissible");
  const std::size_t m = repeat.size(), n = space.n();
  auto f = [&](std::int64_t i) -> Symbol {
    if (i >= 0) return repeat[mod(i, m)];
    Word w;
    for (std::size_t r = 0; r < n; ++r) w.push_back(repeat[mod(i + static_cast<std::int64_t>(r), m)]);
    return space.tm()(w);
  };
  EpPoint point = EpPoint::from_function(f, 0, m, 0, m);
  return PeriodicPoint{std::move(repeat), std::move(point)};
}

std::optional<PeriodicPoint> as_periodic(const ZipShiftSpace& space, const EpPoint& x) {
  if (!x.right().prefix.empty()) return std::nullopt;
  try {
    PeriodicPoint p = make_periodic(space, x.right().cycle);
    if (p.point == x) return p;
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

std::vector<PeriodicPoint> periodic_cycles(const ZipShiftSpace& space, std::size_t m) {
  std::vector<PeriodicPoint> out;
  if (m == 0) return out;
  for (const Word& w : language(space, m, Side::Aprime)) {
    if (!history_admissible(space, periodic_history(w), Tail{{}, w})) continue;
    out.push_back(make_periodic(space, w));
  }
  return out;
}

std::vector<PeriodicPoint> periodic_points(const ZipShiftSpace& space, std::size_t m) {
  if (space.kind() == SpaceKind::Sofic) throw NotFiniteType("periodic_points needs a full shift or an SFT");
  return periodic_cycles(space, m);
}

std::vector<EpPoint> orbit(const ZipShiftSpace& space, const PeriodicPoint& p) {
  std::vector<EpPoint> out;
  EpPoint q = p.point;
  for (std::size_t i = 0; i < p.period(); ++i) {
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    q = shift(space, q);
  }
  return out;
}

std::vector<EpPoint> pre_periodic_points(const ZipShiftSpace& space, const PeriodicPoint& p,
                                         std::size_t level, std::size_t d_max) {
  auto cycle = orbit(space, p);
  std::set<EpPoint> on_orbit(cycle.begin(), cycle.end());
  std::set<EpPoint> found;
  for (std::size_t k = 1; k <= level; ++k)
    for (const EpPoint& q : cycle)
      for (EpPoint& y : preimages_k(space, q, k * p.period(), d_max))
        if (!on_orbit.count(y)) found.insert(std::move(y));
  return {found.begin(), found.end()};
}

Membership stable_unstable_membership(const ZipShiftSpace& space, const PeriodicPoint& p,
                                      const EpPoint& t) {
  Membership result;
  EpPoint q = p.point;
  for (std::size_t phase = 0; phase < p.period(); ++phase) {
    if (auto k = merge_index(t.right(), q.right())) {
      TailMatch match{true, *k, phase};
      if (!result.stable_global.member || *k < result.stable_global.index) result.stable_global = match;
      if (*k == 0 && !result.stable_special.member) result.stable_special = match;
    }
    if (auto k = merge_index(t.left(), q.left())) {
      TailMatch match{true, *k + 1, phase};
      if (!result.unstable_global.member || *k + 1 < result.unstable_global.index) result.unstable_global = match;
      if (*k == 0 && !result.unstable_special.member) result.unstable_special = match;
    }
    q = shift(space, q);
  }
  return result;
}

HomoclinicDatum make_homoclinic_datum(const ZipShiftSpace& space, const PeriodicPoint& p,
                                      const EpPoint& x) {
  for (const EpPoint& q : orbit(space, p))
    if (q == x) throw std::invalid_argument("point lies on the periodic orbit");
  Membership m = stable_unstable_membership(space, p, x);
  if (!m.stable_global.member || !m.unstable_global.member)
    throw std::invalid_argument("point is not homoclinic to the periodic orbit");
  HomoclinicDatum d{p, x, m.unstable_global.index, m.stable_global.index, m.unstable_global.phase,
                    m.stable_global.phase};
  return d;
}

HomoclinicResult homoclinic_orbits(const ZipShiftSpace& space, const HomoclinicDatum& datum) {
  HomoclinicResult result;
  const Word& w = datum.p.repeat;
  const std::size_t m = w.size(), n = space.n();
  const auto nx = static_cast<std::int64_t>(datum.n_x);
  const EpPoint& x = datum.x;
  const auto& tm = space.tm();
  const std::size_t free_count = datum.n_x - 1;

  for (std::size_t j = 1; j < datum.n_x; ++j) {
    Symbol target = x.at(-static_cast<std::int64_t>(j));
    std::set<Symbol> firsts;
    for (const auto& [word, value] : tm.table())
      if (value == target) firsts.insert(word[0]);
    result.sum_bound += firsts.size();
  }

  std::set<Tail> seen;
  for (std::size_t s = 0; s < m; ++s) {
    // z_j for j <= -n_x follows the history of p with phase s.
    auto pinned = [&](std::int64_t j) { return w[mod(j + static_cast<std::int64_t>(s), m)]; };
    bool phase_ok = true;
    for (std::int64_t j = -nx - static_cast<std::int64_t>(n) + 1, k = 0; k < static_cast<std::int64_t>(m); --j, ++k) {
      Word win;
      for (std::size_t r = 0; r < n; ++r) win.push_back(pinned(j + static_cast<std::int64_t>(r)));
      auto v = tm.lookup(win);
      if (!v || *v != x.at(j)) phase_ok = false;
    }
    if (!phase_ok) continue;

    // choice[i] is z_{-(i+1)}.
    Word choice(free_count, 0);
    auto z = [&](std::int64_t j) -> Symbol {
      if (j >= 0) return x.at(j);
      if (j <= -nx) return pinned(j);
      return choice[static_cast<std::size_t>(-j - 1)];
    };
    auto window_ok = [&](std::int64_t j) {
      Word win;
      for (std::size_t r = 0; r < n; ++r) win.push_back(z(j + static_cast<std::int64_t>(r)));
      auto v = tm.lookup(win);
      return v && *v == x.at(j);
    };
    // Assign z_{-n_x+1} .. z_{-1} in increasing index; check each window once it is complete.
    std::function<void(std::int64_t)> assign = [&](std::int64_t j) {
      if (j == 0) {
        for (std::int64_t k = -static_cast<std::int64_t>(n) + 1; k < 0; ++k)
          if (k > -nx - static_cast<std::int64_t>(n) && !window_ok(k)) return;
        Tail history{choice, {}};
        for (std::size_t k = 0; k < m; ++k) history.cycle.push_back(pinned(-nx - static_cast<std::int64_t>(k)));
        Tail canon = history;
        canon.canonicalize();
        if (seen.count(canon)) return;
        if (!history_admissible(space, history, x.right())) return;
        seen.insert(canon);
        result.orbits.push_back(HomoclinicOrbit{s, choice, canon});
        return;
      }
      for (Symbol c = 0; c < space.a_prime().size(); ++c) {
        choice[static_cast<std::size_t>(-j - 1)] = c;
        std::int64_t k = j - static_cast<std::int64_t>(n) + 1;
        if (k < 0 && !window_ok(k)) continue;
        assign(j + 1);
      }
    };
    if (free_count == 0) assign(0);
    else assign(-nx + 1);
  }
  std::sort(result.orbits.begin(), result.orbits.end());
  result.exceeds_sum_bound = result.orbits.size() > result.sum_bound;
  return result;
}

EpPoint orbit_point(const ZipShiftSpace& space, const HomoclinicDatum& datum,
                    const HomoclinicOrbit& orbit, std::int64_t i) {
  if (i >= 0) return shift_k(space, datum.x, static_cast<std::size_t>(i));
  auto k = static_cast<std::size_t>(-i);
  Tail right = datum.x.right();
  Word prefix;
  for (std::size_t r = k; r-- > 0;) prefix.push_back(orbit.history.at(r));
  prefix.insert(prefix.end(), right.prefix.begin(), right.prefix.end());
  return EpPoint(datum.x.left().drop(k), Tail{prefix, right.cycle});
}

bool heteroclinic_check(const ZipShiftSpace& space, const PeriodicPoint& p, const PeriodicPoint& q,
                        const EpPoint& y) {
  return stable_unstable_membership(space, p, y).stable_special.member &&
         stable_unstable_membership(space, q, y).unstable_special.member;
}

}  // namespace zipshift
