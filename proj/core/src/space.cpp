#include "zipshift/space.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "zipshift/errors.hpp"

namespace zipshift {

namespace {

bool contains_factor(const Word& w, const Word& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

std::vector<Word> prune_superwords(std::vector<Word> forbidden) {
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  std::vector<Word> kept;
  for (const auto& w : forbidden) {
    bool redundant = false;
    for (const auto& f : forbidden)
      if (&f != &w && f.size() < w.size() && contains_factor(w, f)) redundant = true;
    if (!redundant) kept.push_back(w);
  }
  return kept;
}

// Vertex graph on the window-words avoiding F (all words when F is empty).
LabeledGraph block_graph(std::size_t letters, std::size_t window, const std::vector<Word>& forbidden) {
  auto ends_forbidden = [&](const Word& w) {
    for (const auto& f : forbidden)
      if (f.size() <= w.size() && std::equal(f.rbegin(), f.rend(), w.rbegin())) return true;
    return false;
  };
  std::vector<Word> labels;
  Word w;
  std::function<void()> grow = [&] {
    if (w.size() == window) {
      labels.push_back(w);
      return;
    }
    for (Symbol s = 0; s < letters; ++s) {
      w.push_back(static_cast<Symbol>(s));
      if (!ends_forbidden(w)) grow();
      w.pop_back();
    }
  };
  grow();
  std::map<Word, std::size_t> id;
  for (std::size_t i = 0; i < labels.size(); ++i) id.emplace(labels[i], i);
  std::vector<LabeledEdge> edges;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    Word next(labels[u].begin() + 1, labels[u].end());
    for (Symbol s = 0; s < letters; ++s) {
      Word ext = labels[u];
      ext.push_back(s);
      if (ends_forbidden(ext)) continue;
      next.push_back(s);
      auto it = id.find(next);
      if (it != id.end()) edges.push_back({u, it->second, s, kNoSymbol});
      next.pop_back();
    }
  }
  return trim_essential(LabeledGraph(window, std::move(labels), std::move(edges)));
}

std::string word_text(const Alphabet& alphabet, const Word& w) { return format_word(alphabet, w); }

}  // namespace

ZipShiftSpace::ZipShiftSpace(SpaceDefinition def) {
  auto state = std::make_shared<State>();
  const Alphabet& a = def.a;
  const Alphabet& ap = def.a_prime;
  if (a.empty() || ap.empty()) throw InvalidSpace("alphabets must be non-empty");
  if (!(a == ap)) {
    for (const auto& name : a.names())
      if (ap.find(name))
        throw InvalidSpace("alphabets must be disjoint or identical; '" + name + "' is in both");
  }
  if (def.n == 0) throw InvalidSpace("n must be positive");
  for (const auto& [w, s] : def.phi) {
    if (w.size() != def.n) throw InvalidSpace("phi key '" + word_text(ap, w) + "' has length != n");
    for (Symbol c : w)
      if (c >= ap.size()) throw InvalidSpace("phi key uses a symbol outside A'");
    if (s >= a.size()) throw InvalidSpace("phi value outside A");
  }
  state->tm = TransitionMap(def.n, def.phi, a.size());

  std::size_t window = std::max<std::size_t>(def.n > 1 ? def.n - 1 : 1, 1);
  LabeledGraph graph;
  switch (def.kind) {
    case SpaceKind::Full:
      if (!def.forbidden.empty()) throw InvalidSpace("a full space takes no forbidden words");
      window = std::max(window, def.window);
      graph = block_graph(ap.size(), window, {});
      break;
    case SpaceKind::Sft: {
      for (const auto& f : def.forbidden) {
        if (f.size() < 2) throw InvalidSpace("forbidden words must have length >= 2");
        for (Symbol c : f)
          if (c >= ap.size()) throw InvalidSpace("forbidden word uses a symbol outside A'");
      }
      state->forbidden = prune_superwords(def.forbidden);
      for (const auto& f : state->forbidden) state->step = std::max(state->step, f.size() - 1);
      window = std::max({window, state->step, def.window});
      graph = block_graph(ap.size(), window, state->forbidden);
      break;
    }
    case SpaceKind::Sofic: {
      const EdgeGraph& p = def.presentation;
      if (p.vertex_names.empty()) throw InvalidSpace("sofic presentation has no vertices");
      for (const auto& e : p.edges) {
        if (e.from >= p.vertex_names.size() || e.to >= p.vertex_names.size())
          throw InvalidSpace("sofic presentation edge endpoint out of range");
        if (e.label >= ap.size()) throw InvalidSpace("sofic edge label outside A'");
      }
      window = std::max(window, def.window);
      graph = lift_window(vertex_like(p), window);
      break;
    }
  }
  if (graph.vertex_count() == 0) throw InvalidSpace("the space is empty");

  std::vector<Word> domain = labeled_graph_words(graph, def.n);
  for (const auto& w : domain)
    if (!def.phi.count(w)) throw InvalidSpace("phi undefined on admissible word '" + word_text(ap, w) + "'");
  std::set<Word> admissible(domain.begin(), domain.end());
  std::vector<bool> hit(a.size(), false);
  for (const auto& [w, s] : def.phi) {
    if (!admissible.count(w))
      throw InvalidSpace("phi defined on inadmissible word '" + word_text(ap, w) + "'");
    hit[s] = true;
  }
  for (Symbol s = 0; s < a.size(); ++s)
    if (!hit[s]) throw InvalidSpace("phi is not onto: '" + a.name(s) + "' is never hit");

  state->graph = attach_sofic_labels(graph, state->tm);
  state->backward = backward(state->graph);
  state->def = std::move(def);
  state_ = std::move(state);
}

std::vector<std::size_t> ZipShiftSpace::vertices_reading(std::span<const Symbol> right) const {
  const LabeledGraph& g = graph();
  std::size_t ell = g.window();
  std::vector<std::size_t> out;
  std::size_t head = std::min(ell, right.size());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!std::equal(right.begin(), right.begin() + head, g.label(v).begin())) continue;
    std::vector<std::size_t> states{v};
    for (std::size_t i = ell; i < right.size() && !states.empty(); ++i) {
      std::set<std::size_t> next;
      for (std::size_t u : states)
        for (std::size_t e : g.out_edges(u))
          if (g.edges()[e].first == right[i]) next.insert(g.edges()[e].to);
      states.assign(next.begin(), next.end());
    }
    if (!states.empty()) out.push_back(v);
  }
  return out;
}

bool ZipShiftSpace::admits(std::span<const Symbol> aprime_word) const {
  return aprime_word.empty() || !vertices_reading(aprime_word).empty();
}

bool ZipShiftSpace::admits_mixed(std::span<const Symbol> left, std::span<const Symbol> right) const {
  const LabeledGraph& g = graph();
  std::vector<std::size_t> states;
  if (right.empty()) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) states.push_back(v);
  } else {
    states = vertices_reading(right);
  }
  for (std::size_t k = 0; k < left.size() && !states.empty(); ++k) {
    Symbol letter = left[left.size() - 1 - k];
    std::set<std::size_t> prev;
    for (std::size_t v : states)
      for (std::size_t e : g.in_edges(v))
        if (g.edges()[e].sofic == letter) prev.insert(g.edges()[e].from);
    states.assign(prev.begin(), prev.end());
  }
  return !states.empty();
}

bool ZipShiftSpace::admits_a(std::span<const Symbol> a_word) const { return admits_mixed(a_word, {}); }

std::vector<Word> language(const ZipShiftSpace& space, std::size_t k, Side side) {
  const LabeledGraph& g = space.graph();
  if (side == Side::Aprime) return labeled_graph_words(g, k);
  std::set<Word> words;
  Word w;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (w.size() == k) {
      words.insert(w);
      return;
    }
    for (std::size_t e : g.out_edges(v)) {
      w.push_back(g.edges()[e].sofic);
      walk(g.edges()[e].to);
      w.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) walk(v);
  return {words.begin(), words.end()};
}

std::vector<MixedWord> language_mixed(const ZipShiftSpace& space, std::size_t k) {
  const LabeledGraph& g = space.graph();
  std::size_t ell = g.window();
  std::set<MixedWord> words;
  for (std::size_t i = 1; i < k; ++i) {
    std::size_t j = k - i;
    std::size_t extra = j > ell ? j - ell : 0;
    Word left, right;
    // Walk i edges to reach v_0, then `extra` more edges for the right letters.
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t v, std::size_t step) {
      if (step == i) {
        right.assign(g.label(v).begin(), g.label(v).begin() + std::min(j, ell));
      }
      if (step == i + extra) {
        words.insert({left, right});
        return;
      }
      for (std::size_t e : g.out_edges(v)) {
        const auto& edge = g.edges()[e];
        if (step < i) left.push_back(edge.sofic);
        else right.push_back(edge.first);
        walk(edge.to, step + 1);
        if (step < i) left.pop_back();
        else right.pop_back();
      }
    };
    for (std::size_t v = 0; v < g.vertex_count(); ++v) walk(v, 0);
  }
  return {words.begin(), words.end()};
}

MatrixSet build_matrices(const ZipShiftSpace& space) {
  if (space.kind() == SpaceKind::Sofic)
    throw NotFiniteType("matrices need a full or finite-type space; this space is sofic");
  MatrixSet m;
  m.K = std::max<std::size_t>(1, space.step());
  m.aprime_words = language(space, m.K, Side::Aprime);
  auto aprime_next = language(space, m.K + 1, Side::Aprime);
  std::set<Word> aprime_ok(aprime_next.begin(), aprime_next.end());
  auto adjacency = [](const std::vector<Word>& words, const std::set<Word>& longer) {
    BinaryMatrix mat(words.size(), std::vector<int>(words.size(), 0));
    for (std::size_t r = 0; r < words.size(); ++r)
      for (std::size_t c = 0; c < words.size(); ++c) {
        const Word& v = words[r];
        const Word& w = words[c];
        if (!std::equal(v.begin() + 1, v.end(), w.begin())) continue;
        Word joined = v;
        joined.push_back(w.back());
        mat[r][c] = longer.count(joined) ? 1 : 0;
      }
    return mat;
  };
  m.aprime_adj = adjacency(m.aprime_words, aprime_ok);

  // Minimal forbidden A-words up to length K + n give the A-side step N.
  std::size_t limit = m.K + space.n();
  std::vector<std::set<Word>> beta(limit + 1);
  for (std::size_t j = 1; j <= limit; ++j) {
    auto words = language(space, j, Side::A);
    beta[j] = std::set<Word>(words.begin(), words.end());
  }
  std::size_t longest = 0;
  for (std::size_t j = 2; j <= limit; ++j) {
    for (const Word& u : beta[j - 1]) {
      for (Symbol s = 0; s < space.a().size(); ++s) {
        Word w = u;
        w.push_back(s);
        if (beta[j].count(w)) continue;
        if (!beta[j - 1].count(Word(w.begin() + 1, w.end()))) continue;
        m.a_forbidden.push_back(w);
        longest = std::max(longest, j);
      }
    }
  }
  std::sort(m.a_forbidden.begin(), m.a_forbidden.end());
  m.N = longest > 1 ? longest - 1 : 1;
  m.a_words.assign(beta[m.N].begin(), beta[m.N].end());
  m.a_adj = adjacency(m.a_words, beta[m.N + 1]);

  m.t.assign(m.a_words.size(), std::vector<int>(m.aprime_words.size(), 0));
  for (std::size_t r = 0; r < m.a_words.size(); ++r)
    for (std::size_t c = 0; c < m.aprime_words.size(); ++c)
      m.t[r][c] = space.admits_mixed(m.a_words[r], m.aprime_words[c]) ? 1 : 0;
  return m;
}

IrreducibilityReport is_irreducible(const ZipShiftSpace& space) {
  const LabeledGraph& g = space.graph();
  IrreducibilityReport report;
  const std::size_t none = static_cast<std::size_t>(-1);
  std::size_t letters = space.a_prime().size();
  for (Symbol x = 0; x < letters; ++x) {
    for (Symbol y = 0; y < letters; ++y) {
      // Breadth-first search over walks of at least one edge starting at a vertex reading x.
      std::vector<std::size_t> parent(g.vertex_count(), none);
      std::vector<bool> from_source(g.vertex_count(), false);
      std::deque<std::size_t> queue;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.label(v)[0] != x) continue;
        for (std::size_t e : g.out_edges(v)) {
          std::size_t w = g.edges()[e].to;
          if (parent[w] != none) continue;
          parent[w] = v;
          from_source[w] = true;
          queue.push_back(w);
        }
      }
      std::size_t found = none;
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        if (g.label(v)[0] == y) {
          found = v;
          break;
        }
        for (std::size_t e : g.out_edges(v)) {
          std::size_t w = g.edges()[e].to;
          if (parent[w] != none) continue;
          parent[w] = v;
          queue.push_back(w);
        }
      }
      if (found == none) {
        report.irreducible = false;
        report.witnesses.clear();
        report.disconnected = std::make_pair(x, y);
        return report;
      }
      Word word{g.label(found)[0]};
      std::size_t v = found;
      while (!from_source[v]) {
        v = parent[v];
        word.push_back(g.label(v)[0]);
      }
      word.push_back(g.label(parent[v])[0]);
      std::reverse(word.begin(), word.end());
      report.witnesses.emplace_back(x, y, std::move(word));
    }
  }
  report.irreducible = true;
  return report;
}

std::uint64_t count_periodic(const ZipShiftSpace& space, std::size_t m) {
  if (space.kind() == SpaceKind::Sofic)
    throw NotFiniteType("periodic counting by trace needs a full or finite-type space");
  if (m == 0) throw std::invalid_argument("period must be positive");
  const LabeledGraph& g = space.graph();
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    std::vector<std::uint64_t> count(g.vertex_count(), 0);
    count[s] = 1;
    for (std::size_t step = 0; step < m; ++step) {
      std::vector<std::uint64_t> next(g.vertex_count(), 0);
      for (const auto& e : g.edges()) {
        if (count[e.from] == 0) continue;
        if (__builtin_add_overflow(next[e.to], count[e.from], &next[e.to]))
          throw std::overflow_error("periodic point count exceeds 64 bits");
      }
      count.swap(next);
    }
    if (__builtin_add_overflow(total, count[s], &total))
      throw std::overflow_error("periodic point count exceeds 64 bits");
  }
  return total;
}

}  // namespace zipshift
