#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zipshift/symbols.hpp"

namespace zipshift {

class ZipShiftSpace;

// Edge-labeled graph over A' as written in a sofic space spec.
struct EdgeGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Symbol label;
  };
  std::vector<std::string> vertex_names;
  std::vector<Edge> edges;
};

struct LabeledEdge {
  std::size_t from;
  std::size_t to;
  Symbol first;  // A' letter appended by the edge
  Symbol sofic;  // A letter, phi_n of the window starting at the source vertex
};

// Vertex-labeled presentation. A bi-infinite walk v_j spells the A' history
// z with label(v_j) = z_j .. z_{j+window-1}; edge u -> v appends last(label(v)).
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::size_t window, std::vector<Word> labels, std::vector<LabeledEdge> edges,
               bool reversed = false);

  std::size_t window() const { return window_; }
  std::size_t vertex_count() const { return labels_.size(); }
  const Word& label(std::size_t v) const { return labels_[v]; }
  const std::vector<Word>& labels() const { return labels_; }
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  // Edge ids leaving / entering v in the stored direction.
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_[v]; }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_[v]; }
  bool reversed() const { return reversed_; }
  bool has_sofic_labels() const;

  bool operator==(const LabeledGraph& other) const;

 private:
  std::size_t window_ = 0;
  std::vector<Word> labels_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  bool reversed_ = false;
};

// Drops vertices that lie on no bi-infinite walk and renumbers the rest in order.
LabeledGraph trim_essential(const LabeledGraph& g);
EdgeGraph trim_essential(const EdgeGraph& g);

// Splits vertices with parallel equal-endpoint edges, then passes to the edge
// graph. The result has window 1 and no sofic labels yet.
LabeledGraph vertex_like(const EdgeGraph& presentation);

// Re-labels vertices by the paths of length window - g.window() leaving them.
LabeledGraph lift_window(const LabeledGraph& g, std::size_t window);

// Fills sofic labels from phi. Requires g.window() + 1 >= tm.n().
LabeledGraph attach_sofic_labels(const LabeledGraph& g, const TransitionMap& tm);

// The space's own presentation, optionally lifted to a larger window.
LabeledGraph build_labeled_graph(const ZipShiftSpace& space, std::size_t window = 0);

LabeledGraph backward(const LabeledGraph& g);

bool strongly_connected(const LabeledGraph& g);

// Words of the given length read along walks of the edge graph; brute force.
std::vector<Word> edge_graph_words(const EdgeGraph& g, std::size_t length);
// Words of the given length spelled by first letters of vertices along walks.
std::vector<Word> labeled_graph_words(const LabeledGraph& g, std::size_t length);

std::string export_dot(const LabeledGraph& g, const Alphabet& a, const Alphabet& a_prime);

}  // namespace zipshift
