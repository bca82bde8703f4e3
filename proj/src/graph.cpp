#include "deadzone/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "deadzone/angle.hpp"
#include "deadzone/errors.hpp"

namespace deadzone {

// ---------------------------------------------------------------------------
// DirectedGraph

DirectedGraph::DirectedGraph(int n) : n_(n) {
  if (n < 1) throw PreconditionError("graph needs at least one vertex");
  words_.assign((edge_slots() + 63) / 64, 0);
}

DirectedGraph::DirectedGraph(int n, std::span<const std::pair<int, int>> edges)
    : DirectedGraph(n) {
  for (auto [j, k] : edges) add_edge(j, k);
}

DirectedGraph DirectedGraph::complete(int n) {
  DirectedGraph g(n);
  for (std::size_t b = 0; b < g.edge_slots(); ++b) g.words_[b >> 6] |= std::uint64_t{1} << (b & 63);
  return g;
}

std::pair<int, int> DirectedGraph::edge_from_index(std::size_t idx) {
  const std::size_t pair = idx / 2;
  int hi = 1;
  while (static_cast<std::size_t>(hi + 1) * hi / 2 <= pair) ++hi;
  const int lo = static_cast<int>(pair - static_cast<std::size_t>(hi) * (hi - 1) / 2);
  return (idx % 2 == 0) ? std::pair{lo, hi} : std::pair{hi, lo};
}

void DirectedGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw PreconditionError("vertex " + std::to_string(v + 1) + " out of range for n = " +
                            std::to_string(n_));
  }
}

void DirectedGraph::add_edge(int j, int k) {
  check_vertex(j);
  check_vertex(k);
  if (j == k) throw PreconditionError("self-loops are not allowed");
  const std::size_t b = edge_index(j, k);
  words_[b >> 6] |= std::uint64_t{1} << (b & 63);
}

void DirectedGraph::remove_edge(int j, int k) {
  check_vertex(j);
  check_vertex(k);
  if (j == k) return;
  const std::size_t b = edge_index(j, k);
  words_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::pair<int, int>> DirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t b = 0; b < edge_slots(); ++b) {
    if ((words_[b >> 6] >> (b & 63)) & 1u) out.push_back(edge_from_index(b));
  }
  return out;
}

bool DirectedGraph::is_undirected() const {
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k)
      if (has_edge(j, k) != has_edge(k, j)) return false;
  return true;
}

bool DirectedGraph::is_subgraph_of(const DirectedGraph& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

DirectedGraph DirectedGraph::reversed() const {
  DirectedGraph r(n_);
  for (auto [j, k] : edges()) r.add_edge(k, j);
  return r;
}

Eigen::MatrixXd DirectedGraph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (auto [j, k] : edges()) a(j, k) = 1.0;
  return a;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw PreconditionError("images do not form a permutation");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(int n, std::span<const std::vector<int>> cycles) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      im[static_cast<std::size_t>(cyc[i] - 1)] = cyc[(i + 1) % cyc.size()] - 1;
    }
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) inv[static_cast<std::size_t>(images_[k])] = static_cast<int>(k);
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw PreconditionError("permutation size mismatch");
  std::vector<int> im(b.images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[k] = a(b(static_cast<int>(k)));
  return Permutation(std::move(im));
}

std::vector<Permutation> symmetric_group(int n) {
  if (n < 1 || n > 8) throw PreconditionError("symmetric group enumeration is capped at n = 8");
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Families and symmetry

DirectedGraph standard_graph(GraphFamily family, int n, std::span<const int> labels) {
  DirectedGraph g(n);
  std::vector<int> p;
  p.reserve(labels.size());
  for (int l : labels) {
    if (l < 1 || l > n) throw PreconditionError("vertex label " + std::to_string(l) + " out of range");
    if (std::find(p.begin(), p.end(), l - 1) != p.end()) {
      throw PreconditionError("repeated vertex label " + std::to_string(l));
    }
    p.push_back(l - 1);
  }
  const std::size_t r = p.size();
  switch (family) {
    case GraphFamily::Complete:
      return DirectedGraph::complete(n);
    case GraphFamily::Empty:
      return g;
    case GraphFamily::Path:
    case GraphFamily::UndirectedPath:
    case GraphFamily::Cycle:
    case GraphFamily::UndirectedCycle: {
      const bool undirected =
          family == GraphFamily::UndirectedPath || family == GraphFamily::UndirectedCycle;
      const bool closed = family == GraphFamily::Cycle || family == GraphFamily::UndirectedCycle;
      if (closed && r < 2) throw PreconditionError("a cycle needs at least two vertices");
      for (std::size_t q = 0; q + 1 < r; ++q) {
        g.add_edge(p[q], p[q + 1]);
        if (undirected) g.add_edge(p[q + 1], p[q]);
      }
      if (closed) {
        g.add_edge(p[r - 1], p[0]);
        if (undirected) g.add_edge(p[0], p[r - 1]);
      }
      return g;
    }
    case GraphFamily::CompleteOn:
      for (int a : p)
        for (int b : p)
          if (a != b) g.add_edge(a, b);
      return g;
  }
  return g;
}

DirectedGraph apply_permutation(const Permutation& gamma, const DirectedGraph& h) {
  if (gamma.size() != h.order()) throw PreconditionError("permutation and graph sizes differ");
  DirectedGraph out(h.order());
  for (auto [j, k] : h.edges()) out.add_edge(gamma(j), gamma(k));
  return out;
}

std::vector<Permutation> graph_isotropy(const DirectedGraph& h, std::span<const Permutation> group) {
  std::vector<Permutation> out;
  for (const auto& g : group)
    if (apply_permutation(g, h) == h) out.push_back(g);
  return out;
}

std::vector<Permutation> automorphisms(const DirectedGraph& a) {
  const auto all = symmetric_group(a.order());
  return graph_isotropy(a, all);
}

std::vector<Permutation> point_isotropy(const Eigen::VectorXd& theta,
                                        std::span<const Permutation> group, double tol) {
  std::vector<Permutation> out;
  for (const auto& g : group) {
    if (g.size() != theta.size()) throw PreconditionError("permutation and point sizes differ");
    bool fixed = true;
    for (int k = 0; k < g.size() && fixed; ++k) {
      fixed = circular_distance(theta(g(k)), theta(k)) <= tol;
    }
    if (fixed) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connectivity

namespace {

std::vector<int> bfs_parents(const DirectedGraph& h, int root, bool undirected) {
  const int n = h.order();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  parent[static_cast<std::size_t>(root)] = -1;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w = 0; w < n; ++w) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      if (h.has_edge(v, w) || (undirected && h.has_edge(w, v))) {
        parent[static_cast<std::size_t>(w)] = v;
        q.push(w);
      }
    }
  }
  return parent;
}

bool reaches_all(const std::vector<int>& parent) {
  return std::none_of(parent.begin(), parent.end(), [](int p) { return p == -2; });
}

}  // namespace

std::optional<DivergingTree> spanning_diverging_tree(const DirectedGraph& h) {
  for (int r = 0; r < h.order(); ++r) {
    auto parent = bfs_parents(h, r, false);
    if (reaches_all(parent)) return DivergingTree{r, std::move(parent)};
  }
  return std::nullopt;
}

Connectivity connectivity_class(const DirectedGraph& h) {
  bool strong = true;
  for (int r = 0; r < h.order() && strong; ++r) strong = reaches_all(bfs_parents(h, r, false));
  if (strong) return Connectivity::Strongly;
  if (reaches_all(bfs_parents(h, 0, true))) return Connectivity::Weakly;
  return Connectivity::Disconnected;
}

const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Strongly: return "strongly";
    case Connectivity::Weakly: return "weakly";
    case Connectivity::Disconnected: return "disconnected";
  }
  return "?";
}

std::vector<std::vector<int>> weak_components(const DirectedGraph& h) {
  const int n = h.order();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < n; ++v) {
    if (label[static_cast<std::size_t>(v)] >= 0) continue;
    const auto parent = bfs_parents(h, v, true);
    std::vector<int> block;
    for (int w = 0; w < n; ++w) {
      if (parent[static_cast<std::size_t>(w)] != -2) {
        label[static_cast<std::size_t>(w)] = static_cast<int>(out.size());
        block.push_back(w);
      }
    }
    out.push_back(std::move(block));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectra

Eigen::MatrixXd laplacian(const DirectedGraph& h) {
  Eigen::MatrixXd l = -h.adjacency();
  l.diagonal() = h.adjacency().colwise().sum().transpose();
  return l;
}

int zero_eigenvalue_multiplicity(const Eigen::MatrixXd& m, double rel_tol) {
  const Eigen::VectorXd c = characteristic_polynomial(m);
  const double scale = c.cwiseAbs().maxCoeff();
  int mult = 0;
  while (mult < c.size() - 1 && std::abs(c(mult)) < rel_tol * scale) ++mult;
  return mult;
}

// ---------------------------------------------------------------------------
// Three-vertex encodings

int graph_number(const DirectedGraph& h) {
  if (h.order() != 3) throw PreconditionError("graph number is defined for n = 3 only");
  return static_cast<int>(h.words()[0] & 63u);
}

DirectedGraph graph_from_number(int nu) {
  if (nu < 0 || nu > 63) throw PreconditionError("graph number must lie in [0, 63]");
  DirectedGraph g(3);
  for (std::size_t b = 0; b < 6; ++b) {
    if ((nu >> b) & 1) {
      auto [j, k] = DirectedGraph::edge_from_index(b);
      g.add_edge(j, k);
    }
  }
  return g;
}

Rgb graph_color(const DirectedGraph& h) {
  if (h.order() != 3) throw PreconditionError("graph colour is defined for n = 3 only");
  // Weights in thirds of a channel: forward edges follow 1→2→3→1.
  // Channel 0 = cyan {1,2}, 1 = magenta {1,3}, 2 = yellow {2,3}.
  struct Slot { int j, k, channel, thirds; };
  static constexpr std::array<Slot, 6> kSlots{{
      {0, 1, 0, 1}, {1, 0, 0, 2},
      {2, 0, 1, 1}, {0, 2, 1, 2},
      {1, 2, 2, 1}, {2, 1, 2, 2},
  }};
  std::array<int, 3> thirds{0, 0, 0};
  for (const auto& s : kSlots)
    if (h.has_edge(s.j, s.k)) thirds[static_cast<std::size_t>(s.channel)] += s.thirds;
  std::array<double, 3> cmy{};
  for (std::size_t c = 0; c < 3; ++c) cmy[c] = std::min(thirds[c], 3) / 3.0;
  return {1.0 - cmy[0], 1.0 - cmy[1], 1.0 - cmy[2]};
}

}  // namespace deadzone
