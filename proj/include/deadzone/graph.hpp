#ifndef DEADZONE_GRAPH_HPP
#define DEADZONE_GRAPH_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace deadzone {

/// Directed graph without self-loops on vertices 0..n-1.
///
/// Edges live in a bitset of n(n-1) bits. Bit order walks the vertex pairs
/// {i < j} in colex order ({0,1}, {0,2}, {1,2}, {0,3}, ...) and, within a
/// pair, (i,j) before (j,i). For n = 3 the bitset read little-endian is the
/// graph number.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int n);
  DirectedGraph(int n, std::span<const std::pair<int, int>> edges);

  static DirectedGraph complete(int n);
  static DirectedGraph empty(int n) { return DirectedGraph(n); }

  int order() const { return n_; }
  std::size_t edge_slots() const { return static_cast<std::size_t>(n_) * (n_ - 1); }

  static std::size_t edge_index(int j, int k) {
    const int lo = j < k ? j : k;
    const int hi = j < k ? k : j;
    const std::size_t pair = static_cast<std::size_t>(hi) * (hi - 1) / 2 + lo;
    return 2 * pair + (j < k ? 0 : 1);
  }
  static std::pair<int, int> edge_from_index(std::size_t idx);

  bool has_edge(int j, int k) const {
    if (j == k) return false;
    const std::size_t b = edge_index(j, k);
    return (words_[b >> 6] >> (b & 63)) & 1u;
  }
  void add_edge(int j, int k);
  void remove_edge(int j, int k);
  void set_edge(int j, int k, bool present) {
    if (present) add_edge(j, k); else remove_edge(j, k);
  }

  void clear_edges() { std::fill(words_.begin(), words_.end(), 0); }
  /// Sets the edge with canonical bit `idx`, without range checks.
  void set_bit(std::size_t idx) { words_[idx >> 6] |= std::uint64_t{1} << (idx & 63); }

  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;
  bool is_undirected() const;
  bool is_subgraph_of(const DirectedGraph& other) const;
  DirectedGraph reversed() const;

  /// A(j,k) = 1 iff (j,k) is an edge.
  Eigen::MatrixXd adjacency() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;
  friend std::strong_ordering operator<=>(const DirectedGraph& a, const DirectedGraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Bijection of {0..n-1}; maps k to images[k].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// From 1-based cycle notation, e.g. {{1,2,3}} for 1→2→3→1.
  static Permutation from_cycles(int n, std::span<const std::vector<int>> cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[static_cast<std::size_t>(k)]; }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const;
  /// (a * b)(k) = a(b(k)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All n! permutations in lexicographic order; n ≤ 8.
std::vector<Permutation> symmetric_group(int n);

enum class GraphFamily {
  Complete,
  Empty,
  Path,
  Cycle,
  UndirectedPath,
  UndirectedCycle,
  CompleteOn,
};

/// Standard family embedded on n vertices; `labels` are 1-based.
DirectedGraph standard_graph(GraphFamily family, int n, std::span<const int> labels = {});

/// Edge set {(γ(j), γ(k))}.
DirectedGraph apply_permutation(const Permutation& gamma, const DirectedGraph& h);

/// Elements of `group` fixing h setwise.
std::vector<Permutation> graph_isotropy(const DirectedGraph& h, std::span<const Permutation> group);

/// Automorphism group of a structural graph (exhaustive, n ≤ 8).
std::vector<Permutation> automorphisms(const DirectedGraph& a);

/// Elements γ of `group` with θ_{γ(k)} = θ_k on the circle for every k.
std::vector<Permutation> point_isotropy(const Eigen::VectorXd& theta,
                                        std::span<const Permutation> group, double tol = 1e-12);

struct DivergingTree {
  int root = -1;
  std::vector<int> parent;  ///< parent[root] = -1
};

/// Some vertex reaching every other vertex along directed edges; the BFS tree
/// from the first such root.
std::optional<DivergingTree> spanning_diverging_tree(const DirectedGraph& h);
inline bool has_spanning_diverging_tree(const DirectedGraph& h) {
  return spanning_diverging_tree(h).has_value();
}

enum class Connectivity { Strongly, Weakly, Disconnected };
Connectivity connectivity_class(const DirectedGraph& h);
const char* to_string(Connectivity c);

/// Vertex blocks of the weakly connected components, each sorted, ordered by
/// smallest vertex.
std::vector<std::vector<int>> weak_components(const DirectedGraph& h);

/// L(j,k) = −A(j,k) for j ≠ k, L(k,k) = Σ_{l≠k} A(l,k); columns sum to zero.
Eigen::MatrixXd laplacian(const DirectedGraph& h);

/// Coefficients c_0..c_n of det(λI − M) = Σ c_i λ^i (c_n = 1), by the
/// Faddeev–LeVerrier recurrence.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> characteristic_polynomial(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = m.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(n + 1);
  c(n) = Scalar(1);
  Mat mk = Mat::Zero(n, n);
  Mat am(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk.diagonal().array() += c(n - k + 1);
    am.noalias() = m * mk;
    c(n - k) = -am.trace() / Scalar(k);
    mk = am;
  }
  return c;
}

/// Algebraic multiplicity of eigenvalue 0: trailing coefficients of the
/// characteristic polynomial with |c| < rel_tol · max|c|. Intended for n ≤ 12.
int zero_eigenvalue_multiplicity(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

/// ν(H) = A12 + 2A21 + 4A13 + 8A31 + 16A23 + 32A32 (1-based); requires n = 3.
int graph_number(const DirectedGraph& h);
DirectedGraph graph_from_number(int nu);

struct Rgb {
  double r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Colour of a subgraph of K_3. Pair {1,2} drives cyan, {1,3} magenta, {2,3}
/// yellow. Edges along the cycle orientation 1→2→3→1 add 1/3 of the channel,
/// the reverse direction 2/3; channels clamp at 1 and RGB = 1 − CMY.
Rgb graph_color(const DirectedGraph& h);

}  // namespace deadzone

#endif  // DEADZONE_GRAPH_HPP
