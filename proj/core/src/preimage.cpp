#include "zipshift/preimage.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "zipshift/space.hpp"

namespace zipshift {

namespace {

// Product of the presentation with the lasso automaton of a tail. Node
// (v, p) means: at vertex v, still to read label.at(p), label.at(p+1), ...
struct Product {
  const LabeledGraph& g;
  const Tail& label;
  bool forward;
  TrackLabel track;
  std::size_t positions;

  Product(const LabeledGraph& graph, const Tail& l, bool fwd, TrackLabel t)
      : g(graph), label(l), forward(fwd), track(t), positions(l.prefix.size() + l.cycle.size()) {}

  std::size_t node(std::size_t v, std::size_t p) const { return v * positions + p; }
  std::size_t next(std::size_t p) const { return p + 1 < positions ? p + 1 : label.prefix.size(); }
  Symbol read(std::size_t p) const { return p < label.prefix.size() ? label.prefix[p] : label.cycle[p - label.prefix.size()]; }

  Symbol edge_letter(std::size_t e) const {
    const auto& edge = g.edges()[e];
    if (forward) return edge.first;
    return track == TrackLabel::Sofic ? edge.sofic : g.label(edge.from)[0];
  }
  std::size_t neighbour(std::size_t e) const { return forward ? g.edges()[e].to : g.edges()[e].from; }
  std::span<const std::size_t> steps(std::size_t v) const { return forward ? g.out_edges(v) : g.in_edges(v); }

  // Greatest fixpoint: nodes with an infinite matching walk.
  std::vector<bool> viable() const {
    std::size_t count = g.vertex_count() * positions;
    std::vector<std::vector<std::size_t>> preds(count);
    std::vector<std::size_t> succ(count, 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (std::size_t p = 0; p < positions; ++p) {
        Symbol want = read(p);
        for (std::size_t e : steps(v)) {
          if (edge_letter(e) != want) continue;
          std::size_t to = node(neighbour(e), next(p));
          ++succ[node(v, p)];
          preds[to].push_back(node(v, p));
        }
      }
    std::vector<bool> alive(count, true);
    std::deque<std::size_t> queue;
    for (std::size_t n = 0; n < count; ++n)
      if (succ[n] == 0) queue.push_back(n);
    while (!queue.empty()) {
      std::size_t n = queue.front();
      queue.pop_front();
      if (!alive[n]) continue;
      alive[n] = false;
      for (std::size_t m : preds[n])
        if (alive[m] && --succ[m] == 0) queue.push_back(m);
    }
    return alive;
  }
};

std::vector<EpPoint> candidate_preimages(const ZipShiftSpace& space, const EpPoint& x) {
  std::vector<EpPoint> out;
  std::size_t n = space.n();
  Symbol target = x.at(-1);
  Tail left = x.left().drop(1);
  for (Symbol t = 0; t < space.a_prime().size(); ++t) {
    Word window{t};
    for (std::size_t i = 0; i + 1 < n; ++i) window.push_back(x.right().at(i));
    auto image = space.tm().lookup(window);
    if (!image || *image != target) continue;
    Tail right = x.right();
    right.prefix.insert(right.prefix.begin(), t);
    EpPoint y(left, right);
    if (is_liftable(space, y)) out.push_back(std::move(y));
  }
  return out;
}

const std::uint64_t kCap = std::uint64_t(1) << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kCap, a + b); }

}  // namespace

std::vector<bool> backward_viable(const ZipShiftSpace& space, const Tail& label, TrackLabel track) {
  Product prod(space.graph(), label, false, track);
  auto alive = prod.viable();
  std::vector<bool> out(space.graph().vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = alive[prod.node(v, 0)];
  return out;
}

std::vector<std::size_t> right_states(const ZipShiftSpace& space, const Tail& right) {
  const LabeledGraph& g = space.graph();
  std::size_t ell = g.window();
  Tail rest = right.drop(ell);
  Product prod(g, rest, true, TrackLabel::First);
  auto alive = prod.viable();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    bool match = true;
    for (std::size_t i = 0; i < ell && match; ++i) match = g.label(v)[i] == right.at(i);
    if (match && alive[prod.node(v, 0)]) out.push_back(v);
  }
  return out;
}

bool left_viability(const ZipShiftSpace& space, std::span<const std::size_t> start_vertices,
                    const Tail& left_label) {
  auto viable = backward_viable(space, left_label, TrackLabel::Sofic);
  return std::any_of(start_vertices.begin(), start_vertices.end(),
                     [&](std::size_t v) { return viable[v]; });
}

bool is_liftable(const ZipShiftSpace& space, const EpPoint& x) {
  auto starts = right_states(space, x.right());
  return !starts.empty() && left_viability(space, starts, x.left());
}

bool history_admissible(const ZipShiftSpace& space, const Tail& history, const Tail& right) {
  auto starts = right_states(space, right);
  if (starts.empty()) return false;
  auto viable = backward_viable(space, history, TrackLabel::First);
  return std::any_of(starts.begin(), starts.end(), [&](std::size_t v) { return viable[v]; });
}

std::optional<Tail> canonical_lift(const ZipShiftSpace& space, const EpPoint& x) {
  const LabeledGraph& g = space.graph();
  Product prod(g, x.left(), false, TrackLabel::Sofic);
  auto alive = prod.viable();
  auto starts = right_states(space, x.right());
  std::optional<std::size_t> v0;
  for (std::size_t v : starts)
    if (alive[prod.node(v, 0)]) {
      v0 = v;
      break;
    }
  if (!v0) return std::nullopt;
  std::map<std::size_t, std::size_t> seen;  // node -> step index
  Word letters;
  std::size_t v = *v0, p = 0;
  while (true) {
    std::size_t here = prod.node(v, p);
    auto [it, fresh] = seen.emplace(here, letters.size());
    if (!fresh) {
      std::size_t c = it->second;
      Tail history{Word(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(c)),
                   Word(letters.begin() + static_cast<std::ptrdiff_t>(c), letters.end())};
      history.canonicalize();
      return history;
    }
    Symbol want = prod.read(p);
    std::size_t np = prod.next(p);
    std::optional<std::pair<Symbol, std::size_t>> best;
    for (std::size_t e : g.in_edges(v)) {
      if (g.edges()[e].sofic != want) continue;
      std::size_t u = g.edges()[e].from;
      if (!alive[prod.node(u, np)]) continue;
      std::pair<Symbol, std::size_t> key{g.label(u)[0], u};
      if (!best || key < *best) best = key;
    }
    letters.push_back(best->first);
    v = best->second;
    p = np;
  }
}

std::string describe(const LabelClassification& c) {
  using K = LabelClassification::Kind;
  std::string out;
  switch (c.kind) {
    case K::Delay:
      out = "delay " + std::to_string(c.depth);
      break;
    case K::LeftClosing:
      out = "left-closing length " + std::to_string(c.depth) + " multiplicity " +
            std::to_string(c.multiplicity);
      break;
    case K::SoficLeftClosing:
      out = "sofic-left-closing length " + std::to_string(c.depth) + " multiplicity " +
            std::to_string(c.multiplicity);
      break;
    case K::Distinguishable:
      out = c.from_start ? "L-distinguishable" : "dL-distinguishable " + std::to_string(c.depth);
      break;
    case K::Branching:
      out = "branching";
      break;
  }
  if (c.depth_limited) out += " (searched to depth limit)";
  return out;
}

namespace {

LabelClassification classify(const ZipShiftSpace& space, const EpPoint& x, std::size_t multiplicity,
                             std::size_t d_max) {
  using K = LabelClassification::Kind;
  const LabeledGraph& g = space.graph();
  std::size_t V = g.vertex_count();
  std::size_t L = space.a_prime().size();
  auto starts = right_states(space, x.right());
  // count[(v * V + start) * L + t]: label paths from `start` now at v whose first step read t.
  auto idx = [&](std::size_t v, std::size_t s, std::size_t t) { return (v * V + s) * L + t; };
  std::vector<std::uint64_t> count(V * V * L, 0);
  std::vector<std::size_t> active;  // indices with nonzero counts
  Symbol first = x.at(-1);
  for (std::size_t s : starts)
    for (std::size_t e : g.in_edges(s)) {
      if (g.edges()[e].sofic != first) continue;
      std::size_t u = g.edges()[e].from;
      std::size_t i = idx(u, s, g.label(u)[0]);
      if (count[i] == 0) active.push_back(i);
      count[i] = sat_add(count[i], 1);
    }

  LabelClassification c;
  c.multiplicity = multiplicity;
  std::vector<bool> disjoint_at(d_max + 1, false);
  std::optional<std::size_t> closing_depth;
  for (std::size_t d = 1; d <= d_max; ++d) {
    std::uint64_t total = 0;
    std::set<std::size_t> start_set, end_set;
    std::map<std::size_t, std::set<std::size_t>> ends_by_letter;
    for (std::size_t i : active) {
      total = sat_add(total, count[i]);
      std::size_t t = i % L, s = (i / L) % V, v = i / (L * V);
      start_set.insert(s);
      end_set.insert(v);
      ends_by_letter[t].insert(v);
    }
    if (total == 1) {
      c.kind = K::Delay;
      c.depth = d;
      break;
    }
    if (!closing_depth && total >= 2 && multiplicity >= 2 && start_set.size() == 1 && end_set.size() == 1)
      closing_depth = d;
    bool disjoint = ends_by_letter.size() >= 2;
    std::set<std::size_t> unioned;
    std::size_t sum = 0;
    for (auto& [t, vs] : ends_by_letter) {
      sum += vs.size();
      unioned.insert(vs.begin(), vs.end());
    }
    disjoint = disjoint && unioned.size() == sum;
    disjoint_at[d] = disjoint;
    if (closing_depth) break;
    if (d == d_max) break;
    // Extend every path one step further out, reading x_{-(d+1)}.
    Symbol want = x.at(-static_cast<std::int64_t>(d) - 1);
    std::vector<std::uint64_t> next(count.size(), 0);
    std::vector<std::size_t> next_active;
    for (std::size_t i : active) {
      std::size_t t = i % L, s = (i / L) % V, v = i / (L * V);
      for (std::size_t e : g.in_edges(v)) {
        if (g.edges()[e].sofic != want) continue;
        std::size_t j = idx(g.edges()[e].from, s, t);
        if (next[j] == 0) next_active.push_back(j);
        next[j] = sat_add(next[j], count[i]);
      }
    }
    count.swap(next);
    active.swap(next_active);
  }

  if (c.kind != K::Delay) {
    if (closing_depth) {
      c.kind = space.kind() == SpaceKind::Sofic ? K::SoficLeftClosing : K::LeftClosing;
      c.depth = *closing_depth;
    } else if (space.kind() == SpaceKind::Sofic && disjoint_at[d_max]) {
      std::size_t d = d_max;
      while (d > 1 && disjoint_at[d - 1]) --d;
      c.kind = K::Distinguishable;
      c.depth = d;
      c.from_start = d == 1;
      c.depth_limited = true;
    } else {
      c.kind = K::Branching;
      c.depth_limited = true;
    }
  }

  if (c.kind == K::Delay || c.kind == K::LeftClosing || c.kind == K::SoficLeftClosing) {
    // Witness paths of the deciding depth, listed only when few.
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> path;
    bool too_many = false;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
      if (too_many) return;
      path.push_back(v);
      if (path.size() == c.depth + 1) {
        paths.push_back(path);
        if (paths.size() > 64) too_many = true;
      } else {
        Symbol want = x.at(-static_cast<std::int64_t>(path.size()));
        for (std::size_t e : g.in_edges(v))
          if (g.edges()[e].sofic == want) walk(g.edges()[e].from);
      }
      path.pop_back();
    };
    for (std::size_t s : starts) walk(s);
    if (!too_many) c.witness_paths = std::move(paths);
  }
  return c;
}

}  // namespace

PreimageResult preimages(const ZipShiftSpace& space, const EpPoint& x, std::size_t d_max) {
  PreimageResult result;
  result.points = candidate_preimages(space, x);
  result.classification = classify(space, x, result.points.size(), std::max<std::size_t>(d_max, 1));
  return result;
}

std::vector<EpPoint> preimages_k(const ZipShiftSpace& space, const EpPoint& x, std::size_t k,
                                 std::size_t) {
  std::vector<EpPoint> frontier{x};
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<EpPoint> next;
    for (const auto& y : frontier) {
      auto pts = candidate_preimages(space, y);
      next.insert(next.end(), pts.begin(), pts.end());
    }
    frontier.swap(next);
  }
  auto key = [k](const EpPoint& y) {
    Word w;
    for (std::size_t i = 0; i < k; ++i) w.push_back(y.right().at(i));
    return w;
  };
  std::stable_sort(frontier.begin(), frontier.end(),
                   [&](const EpPoint& a, const EpPoint& b) { return key(a) < key(b); });
  return frontier;
}

}  // namespace zipshift
