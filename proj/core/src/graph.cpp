#include "zipshift/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "zipshift/errors.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

LabeledGraph::LabeledGraph(std::size_t window, std::vector<Word> labels,
                           std::vector<LabeledEdge> edges, bool reversed)
    : window_(window),
      labels_(std::move(labels)),
      edges_(std::move(edges)),
      out_(labels_.size()),
      in_(labels_.size()),
      reversed_(reversed) {
  std::stable_sort(edges_.begin(), edges_.end(), [](const LabeledEdge& x, const LabeledEdge& y) {
    return std::tie(x.from, x.to, x.first, x.sofic) < std::tie(y.from, y.to, y.first, y.sofic);
  });
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].from >= labels_.size() || edges_[e].to >= labels_.size())
      throw InvalidSpace("edge endpoint out of range");
    out_[edges_[e].from].push_back(e);
    in_[edges_[e].to].push_back(e);
  }
}

bool LabeledGraph::has_sofic_labels() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const LabeledEdge& e) { return e.sofic != kNoSymbol; });
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
  auto key = [](const LabeledEdge& e) { return std::tie(e.from, e.to, e.first, e.sofic); };
  if (window_ != other.window_ || labels_ != other.labels_ || reversed_ != other.reversed_ ||
      edges_.size() != other.edges_.size())
    return false;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (key(edges_[i]) != key(other.edges_[i])) return false;
  return true;
}

namespace {

// Alive flags after repeatedly removing sources and sinks.
template <class EdgeList>
std::vector<bool> essential_vertices(std::size_t count, const EdgeList& edges) {
  std::vector<bool> alive(count, true);
  std::vector<std::size_t> indeg(count, 0), outdeg(count, 0);
  for (const auto& e : edges) {
    ++outdeg[e.from];
    ++indeg[e.to];
  }
  std::vector<std::vector<std::size_t>> out(count), in(count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[edges[i].from].push_back(i);
    in[edges[i].to].push_back(i);
  }
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < count; ++v)
    if (indeg[v] == 0 || outdeg[v] == 0) queue.push_back(v);
  std::vector<bool> edge_alive(edges.size(), true);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (!alive[v]) continue;
    alive[v] = false;
    for (std::size_t e : out[v]) {
      if (!edge_alive[e]) continue;
      edge_alive[e] = false;
      std::size_t w = edges[e].to;
      if (alive[w] && --indeg[w] == 0) queue.push_back(w);
    }
    for (std::size_t e : in[v]) {
      if (!edge_alive[e]) continue;
      edge_alive[e] = false;
      std::size_t u = edges[e].from;
      if (alive[u] && --outdeg[u] == 0) queue.push_back(u);
    }
  }
  return alive;
}

std::vector<std::size_t> renumbering(const std::vector<bool>& alive) {
  std::vector<std::size_t> id(alive.size(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v]) id[v] = next++;
  return id;
}

}  // namespace

LabeledGraph trim_essential(const LabeledGraph& g) {
  auto alive = essential_vertices(g.vertex_count(), g.edges());
  auto id = renumbering(alive);
  std::vector<Word> labels;
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v]) labels.push_back(g.label(v));
  std::vector<LabeledEdge> edges;
  for (const auto& e : g.edges())
    if (alive[e.from] && alive[e.to]) edges.push_back({id[e.from], id[e.to], e.first, e.sofic});
  return LabeledGraph(g.window(), std::move(labels), std::move(edges), g.reversed());
}

EdgeGraph trim_essential(const EdgeGraph& g) {
  auto alive = essential_vertices(g.vertex_names.size(), g.edges);
  auto id = renumbering(alive);
  EdgeGraph out;
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v]) out.vertex_names.push_back(g.vertex_names[v]);
  for (const auto& e : g.edges)
    if (alive[e.from] && alive[e.to]) out.edges.push_back({id[e.from], id[e.to], e.label});
  return out;
}

namespace {

// Out-splits every vertex with parallel edges into as many copies as its
// largest group of parallel edges; copy c keeps the c-th edge of each group.
EdgeGraph split_parallel(const EdgeGraph& g) {
  std::size_t count = g.vertex_names.size();
  std::vector<std::size_t> copies(count, 1);
  std::vector<std::size_t> assigned(g.edges.size(), 0);  // copy index of the source
  for (std::size_t v = 0; v < count; ++v) {
    std::map<std::size_t, std::size_t> seen;  // target -> edges so far
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].from != v) continue;
      assigned[e] = seen[g.edges[e].to]++;
      copies[v] = std::max(copies[v], assigned[e] + 1);
    }
  }
  std::vector<std::size_t> first_copy(count, 0);
  EdgeGraph out;
  for (std::size_t v = 0; v < count; ++v) {
    first_copy[v] = out.vertex_names.size();
    for (std::size_t c = 0; c < copies[v]; ++c)
      out.vertex_names.push_back(copies[v] == 1 ? g.vertex_names[v]
                                                : g.vertex_names[v] + "_" + std::to_string(c + 1));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    std::size_t from = first_copy[edge.from] + assigned[e];
    for (std::size_t c = 0; c < copies[edge.to]; ++c)
      out.edges.push_back({from, first_copy[edge.to] + c, edge.label});
  }
  return out;
}

}  // namespace

LabeledGraph vertex_like(const EdgeGraph& presentation) {
  EdgeGraph split = split_parallel(presentation);
  std::vector<Word> labels;
  labels.reserve(split.edges.size());
  for (const auto& e : split.edges) labels.push_back({e.label});
  std::vector<std::vector<std::size_t>> leaving(split.vertex_names.size());
  for (std::size_t e = 0; e < split.edges.size(); ++e) leaving[split.edges[e].from].push_back(e);
  std::vector<LabeledEdge> edges;
  for (std::size_t e = 0; e < split.edges.size(); ++e)
    for (std::size_t f : leaving[split.edges[e].to])
      edges.push_back({e, f, split.edges[f].label, kNoSymbol});
  return trim_essential(LabeledGraph(1, std::move(labels), std::move(edges)));
}

LabeledGraph lift_window(const LabeledGraph& g, std::size_t window) {
  if (window < g.window()) throw InvalidSpace("cannot lower the window of a presentation");
  if (window == g.window()) return g;
  std::size_t steps = window - g.window();
  // A lifted vertex is a walk: start vertex followed by `steps` edge ids.
  std::map<std::vector<std::size_t>, std::size_t> id;
  std::vector<std::vector<std::size_t>> walks;
  std::vector<Word> labels;
  std::vector<std::size_t> walk;
  Word label;
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (walk.size() == steps + 1) {
      id.emplace(walk, walks.size());
      walks.push_back(walk);
      labels.push_back(label);
      return;
    }
    for (std::size_t e : g.out_edges(v)) {
      walk.push_back(e);
      label.push_back(g.edges()[e].first);
      extend(g.edges()[e].to);
      walk.pop_back();
      label.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    walk = {v};
    label = g.label(v);
    extend(v);
  }
  std::vector<LabeledEdge> edges;
  for (std::size_t p = 0; p < walks.size(); ++p) {
    const auto& w = walks[p];
    std::size_t end = g.edges()[w.back()].to;
    for (std::size_t e : g.out_edges(end)) {
      std::vector<std::size_t> next;
      next.push_back(g.edges()[w[1]].to);
      next.insert(next.end(), w.begin() + 2, w.end());
      next.push_back(e);
      auto it = id.find(next);
      if (it != id.end()) edges.push_back({p, it->second, g.edges()[e].first, kNoSymbol});
    }
  }
  return trim_essential(LabeledGraph(window, std::move(labels), std::move(edges), g.reversed()));
}

LabeledGraph attach_sofic_labels(const LabeledGraph& g, const TransitionMap& tm) {
  if (g.window() + 1 < tm.n()) throw InvalidSpace("presentation window too short for phi");
  std::vector<LabeledEdge> edges = g.edges();
  for (auto& e : edges) {
    Word w = g.label(e.from);
    w.push_back(e.first);
    w.resize(tm.n());
    e.sofic = tm(w);
  }
  return LabeledGraph(g.window(), g.labels(), std::move(edges), g.reversed());
}

LabeledGraph build_labeled_graph(const ZipShiftSpace& space, std::size_t window) {
  if (window == 0 || window == space.graph().window()) return space.graph();
  return attach_sofic_labels(lift_window(space.graph(), window), space.tm());
}

LabeledGraph backward(const LabeledGraph& g) {
  std::vector<LabeledEdge> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) edges.push_back({e.to, e.from, e.first, e.sofic});
  return LabeledGraph(g.window(), g.labels(), std::move(edges), !g.reversed());
}

bool strongly_connected(const LabeledGraph& g) {
  std::size_t count = g.vertex_count();
  if (count == 0) return false;
  auto reach = [&](bool forward) {
    std::vector<bool> seen(count, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : forward ? g.out_edges(v) : g.in_edges(v)) {
        std::size_t w = forward ? g.edges()[e].to : g.edges()[e].from;
        if (!seen[w]) {
          seen[w] = true;
          ++visited;
          stack.push_back(w);
        }
      }
    }
    return visited == count;
  };
  return reach(true) && reach(false);
}

std::vector<Word> edge_graph_words(const EdgeGraph& g, std::size_t length) {
  std::set<Word> words;
  std::vector<std::vector<std::size_t>> leaving(g.vertex_names.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) leaving[g.edges[e].from].push_back(e);
  Word w;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (w.size() == length) {
      words.insert(w);
      return;
    }
    for (std::size_t e : leaving[v]) {
      w.push_back(g.edges[e].label);
      walk(g.edges[e].to);
      w.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertex_names.size(); ++v) walk(v);
  return {words.begin(), words.end()};
}

std::vector<Word> labeled_graph_words(const LabeledGraph& g, std::size_t length) {
  std::set<Word> words;
  if (length == 0) return {Word{}};
  Word w;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    w.push_back(g.label(v)[0]);
    if (w.size() == length) {
      words.insert(w);
    } else {
      for (std::size_t e : g.out_edges(v)) walk(g.edges()[e].to);
    }
    w.pop_back();
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) walk(v);
  return {words.begin(), words.end()};
}

namespace {

std::string joined_names(const Alphabet& alphabet, const Word& w) {
  bool single = std::all_of(w.begin(), w.end(),
                            [&](Symbol s) { return alphabet.name(s).size() == 1; });
  return format_word(alphabet, w, single ? "" : ".");
}

std::string dot_id(const std::string& raw) {
  bool plain = std::all_of(raw.begin(), raw.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  });
  if (plain) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string export_dot(const LabeledGraph& g, const Alphabet& a, const Alphabet& a_prime) {
  std::ostringstream out;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    names.push_back(dot_id("v" + std::to_string(v) + "_" + joined_names(a_prime, g.label(v))));
  out << "digraph G {\n";
  for (const auto& name : names) out << "  " << name << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << names[e.from] << " -> " << names[e.to] << " [label=\""
        << a_prime.name(e.first) << "/" << (e.sofic == kNoSymbol ? "?" : a.name(e.sofic))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace zipshift
