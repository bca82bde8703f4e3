#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "deadzone/effective.hpp"
#include "deadzone/errors.hpp"
#include "support.hpp"

using namespace deadzone;
using testing::Rng;

namespace {

DirectedGraph edges(int n, std::initializer_list<std::pair<int, int>> one_based) {
  DirectedGraph h(n);
  for (auto [j, k] : one_based) h.add_edge(j - 1, k - 1);
  return h;
}

// Live zone [−π/4, π/2], everything else dead.
CouplingFunction two_oscillator_coupling() {
  const double a = kPi / 4;
  return CouplingFunction::piecewise({BumpProfile(0.0, CircleArc(-a, 3 * a), 0.0, 1.0)});
}

CouplingFunction random_coupling(Rng& rng) {
  if (testing::uniform_int(rng, 0, 3) == 0) {
    return CouplingFunction::kuramoto_sakaguchi(
        {testing::uniform(rng, 0.0, kTwoPi), testing::uniform(rng, 0.1, 3.0), 5e-3, 1.3});
  }
  return testing::random_piecewise(rng);
}

// θ with coordinates drawn from a small pool, so ties (and isotropy) are common.
Eigen::VectorXd symmetric_theta(Rng& rng, int n) {
  const int pool = testing::uniform_int(rng, 1, n);
  std::vector<double> values(static_cast<std::size_t>(pool));
  for (auto& v : values) v = testing::uniform(rng, 0.0, kTwoPi);
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t(k) = values[static_cast<std::size_t>(testing::uniform_int(rng, 0, pool - 1))];
  return t;
}

bool is_independent(const DirectedGraph& h, const std::vector<int>& block) {
  for (int j : block) {
    for (int k : block) {
      if (h.has_edge(j, k)) return false;
    }
  }
  return true;
}

// Brute-force search for a colouring of the vertices by `parts` colours with
// no edge inside a colour class.
bool has_partition(const DirectedGraph& h, int parts) {
  const int n = h.order();
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= parts;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int v = 0; v < n; ++v) {
      colour[v] = c % parts;
      c /= parts;
    }
    bool ok = true;
    for (auto [j, k] : h.edges()) ok = ok && colour[j] != colour[k];
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("special points") {
  CHECK(splay_point(3).isApprox(Eigen::Vector3d(0, kTwoPi / 3, 2 * kTwoPi / 3)));
  CHECK(splay_point(2).isApprox(Eigen::Vector2d(0, kPi)));
  CHECK(sync_point(4, 1.0) == Eigen::Vector4d::Constant(1.0));
  CHECK_THROWS_AS(splay_point(1), PreconditionError);
}

TEST_CASE("two-oscillator table") {
  // Edge (j,k) needs θ_j − θ_k live. With θ = (0, c) the edge (2,1) carries c
  // and (1,2) carries −c, so c ∈ (a, 2a) leaves only (2,1).
  const auto net = all_to_all(2, two_oscillator_coupling());
  const double a = kPi / 4;
  const auto k2 = DirectedGraph::complete(2);
  const auto only21 = edges(2, {{2, 1}});
  const auto only12 = edges(2, {{1, 2}});
  const auto none = DirectedGraph::empty(2);
  CHECK(effective_graph(net, Eigen::Vector2d(0, kPi / 8)) == k2);
  CHECK(effective_graph(net, Eigen::Vector2d(0, -kPi / 8)) == k2);
  CHECK(effective_graph(net, Eigen::Vector2d(0, 3 * kPi / 8)) == only21);
  CHECK(effective_graph(net, Eigen::Vector2d(0, -3 * kPi / 8)) == only12);
  CHECK(effective_graph(net, Eigen::Vector2d(0, 0.9 * kPi)) == none);
  CHECK(effective_graph(net, Eigen::Vector2d(0, -0.9 * kPi)) == none);
  CHECK(region_membership(net, Eigen::Vector2d(0, 3 * kPi / 8), only21));
  CHECK(a == kPi / 4);
}

TEST_CASE("dead-zone endpoints count as dead") {
  // Live zone (0.25, 1.25); both endpoints are exact in binary.
  const auto net = all_to_all(2, CouplingFunction::piecewise({BumpProfile(0.5, CircleArc(0.25, 1.0), 0.0, 1.0)}));
  CHECK(effective_graph(net, Eigen::Vector2d(0, 1.25)) == DirectedGraph::empty(2));
  CHECK(effective_graph(net, Eigen::Vector2d(0, 0.25)) == DirectedGraph::empty(2));
  CHECK(effective_graph(net, Eigen::Vector2d(0, 0.5)) == edges(2, {{2, 1}}));
}

TEST_CASE("effective graph basics") {
  const auto no_dz = testing::ks(1.0, 0.0);
  Rng rng(21);
  const auto a = testing::random_graph(rng, 4);
  const StructuralNetwork net{a, 1.0, no_dz};
  for (int i = 0; i < 20; ++i) CHECK(effective_graph(net, testing::random_theta(rng, 4)) == a);

  const auto zero_dead = testing::single_dead_zone(-0.5, 0.5);
  CHECK(effective_graph(all_to_all(3, zero_dead), sync_point(3, 2.0)) == DirectedGraph::empty(3));
  CHECK_THROWS_AS(effective_graph(net, Eigen::Vector3d::Zero()), PreconditionError);
}

TEST_CASE("effective graph agrees with the oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 2, 7);
    const StructuralNetwork net{testing::random_graph(rng, n, 0.7), 1.0, random_coupling(rng)};
    for (int i = 0; i < 20; ++i) {
      const Eigen::VectorXd t = testing::random_theta(rng, n);
      CHECK(effective_graph(net, t) == testing::oracle_effective(net, t));
    }
  }
}

TEST_CASE("equivariance under node permutations") {
  Rng rng(23);
  auto check = [&](int n, int points, bool exhaustive) {
    const auto group = symmetric_group(n);
    const auto net = all_to_all(n, random_coupling(rng));
    for (int i = 0; i < points; ++i) {
      const Eigen::VectorXd t = testing::random_theta(rng, n);
      const DirectedGraph h = effective_graph(net, t);
      if (exhaustive) {
        for (const auto& g : group) CHECK(effective_graph(net, permute_point(g, t)) == apply_permutation(g, h));
      } else {
        const auto& g = group[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(group.size()) - 1))];
        CHECK(effective_graph(net, permute_point(g, t)) == apply_permutation(g, h));
      }
    }
  };
  for (int trial = 0; trial < 10; ++trial) check(3, 200, true);
  for (int trial = 0; trial < 10; ++trial) check(4, 200, false);
}

TEST_CASE("point isotropy is contained in graph isotropy") {
  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const int n = testing::uniform_int(rng, 2, 5);
    const auto group = symmetric_group(n);
    const auto net = all_to_all(n, random_coupling(rng));
    const Eigen::VectorXd t = i % 2 ? symmetric_theta(rng, n) : testing::random_theta(rng, n);
    const auto point = point_isotropy(t, group);
    const auto graph = graph_isotropy(effective_graph(net, t), group);
    for (const auto& g : point) CHECK(std::find(graph.begin(), graph.end(), g) != graph.end());
  }
}

TEST_CASE("synchrony gives the empty or the complete graph") {
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    const int n = testing::uniform_int(rng, 2, 6);
    const auto net = all_to_all(n, random_coupling(rng));
    const auto h = effective_graph(net, sync_point(n, testing::uniform(rng, 0.0, kTwoPi)));
    CHECK((h == DirectedGraph::empty(n) || h == DirectedGraph::complete(n)));
  }
}

TEST_CASE("equal spacing falls into one of four cases") {
  Rng rng(26);
  const int n = 6;
  std::array<int, 4> seen{};
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_piecewise(rng);
    const auto net = all_to_all(n, g);
    const double a = testing::uniform(rng, 0.01, kTwoPi / n - 0.01);
    Eigen::VectorXd t(n);
    for (int k = 0; k < n; ++k) t(k) = k * a;
    const auto h = effective_graph(net, t);
    const bool up = testing::oracle_live(g, a);
    const bool down = testing::oracle_live(g, kTwoPi - a);
    DirectedGraph forward(n), backward(n);  // P_{1..N} and P_{N..1}
    for (int k = 0; k + 1 < n; ++k) {
      forward.add_edge(k, k + 1);
      backward.add_edge(k + 1, k);
    }
    if (up && !down) {
      ++seen[0];
      CHECK(backward.is_subgraph_of(h));
      CHECK_FALSE(forward.is_subgraph_of(h));
    } else if (!up && down) {
      ++seen[1];
      CHECK(forward.is_subgraph_of(h));
      CHECK_FALSE(backward.is_subgraph_of(h));
    } else if (up && down) {
      ++seen[2];
      CHECK(forward.is_subgraph_of(h));
      CHECK(backward.is_subgraph_of(h));
    } else {
      ++seen[3];
      const int parts = (n + 1) / 2;
      for (int b = 0; b < parts; ++b) {
        std::vector<int> block{2 * b};
        if (2 * b + 1 < n) block.push_back(2 * b + 1);
        CHECK(is_independent(h, block));
      }
      CHECK(has_partition(h, parts));
    }
  }
  MESSAGE("case counts " << seen[0] << " " << seen[1] << " " << seen[2] << " " << seen[3]);
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("predicted splay cycles") {
  SUBCASE("three oscillators") {
    // Edge (k, k+1) carries −2π/3, which is live here; −4π/3 = 2π/3 is dead.
    const auto g = testing::single_dead_zone(kPi / 2, 5 * kPi / 6);
    const auto cycles = predict_splay_cycles(g, 3);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == edges(3, {{1, 2}, {2, 3}, {3, 1}}));
  }
  SUBCASE("n divides N") {
    const auto g = testing::single_dead_zone(kPi / 4, 3 * kPi / 4);
    auto cycles = predict_splay_cycles(g, 4);
    // Steps 1 and 2 are live; step 2 gives the two 2-cycles.
    CHECK(std::find(cycles.begin(), cycles.end(), edges(4, {{1, 3}, {3, 1}})) != cycles.end());
    CHECK(std::find(cycles.begin(), cycles.end(), edges(4, {{2, 4}, {4, 2}})) != cycles.end());
  }
  SUBCASE("prime N gives Hamiltonian cycles") {
    Rng rng(27);
    for (int i = 0; i < 20; ++i) {
      for (const auto& c : predict_splay_cycles(testing::random_piecewise(rng), 5)) {
        CHECK(c.edge_count() == 5);
        CHECK(connectivity_class(c) == Connectivity::Strongly);
      }
    }
  }
}

TEST_CASE("splay cycles are contained in the effective graph") {
  Rng rng(28);
  for (int i = 0; i < 100; ++i) {
    const int n = testing::uniform_int(rng, 3, 6);
    const auto g = testing::random_piecewise(rng);
    const auto h = effective_graph(all_to_all(n, g), splay_point(n));
    for (const auto& c : predict_splay_cycles(g, n)) {
      CHECK(c.is_subgraph_of(h));
      CHECK(connectivity_class(c) != Connectivity::Weakly);
    }
  }
}

TEST_CASE("five-oscillator splay is empty or strongly connected") {
  Rng rng(29);
  int empty = 0;
  for (int i = 0; i < 50; ++i) {
    const auto h = effective_graph(all_to_all(5, random_coupling(rng)), splay_point(5));
    const bool ok = h == DirectedGraph::empty(5) || connectivity_class(h) == Connectivity::Strongly;
    CHECK(ok);
    empty += h.edge_count() == 0;
  }
  const auto dead = testing::single_dead_zone(0.5, kTwoPi - 0.5);
  CHECK(effective_graph(all_to_all(5, dead), splay_point(5)) == DirectedGraph::empty(5));
  CHECK(predict_splay_cycles(dead, 5).empty());
}

TEST_CASE("skew-product classification") {
  const auto g = testing::single_dead_zone(kPi / 3, 5 * kPi / 3);  // live only near 0
  SUBCASE("empty effective graph") {
    const auto net = all_to_all(3, g);
    const auto rep = skew_product_check(net, Eigen::Vector3d(0, 2.0, 4.0), {0}, {1, 2});
    CHECK(rep.structure == CutStructure::Product);
    CHECK(rep.consistent);
  }
  SUBCASE("single forward edge") {
    StructuralNetwork net{edges(3, {{1, 2}}), 1.0, g};
    const auto rep = skew_product_check(net, Eigen::Vector3d(0, 0.3, 3.0), {0}, {1, 2});
    CHECK(rep.graph == edges(3, {{1, 2}}));
    CHECK(rep.structure == CutStructure::SkewV1ToV2);
    CHECK(rep.consistent);
    const auto back = skew_product_check(net, Eigen::Vector3d(0, 0.3, 3.0), {1, 2}, {0});
    CHECK(back.structure == CutStructure::SkewV2ToV1);
  }
  SUBCASE("complete graph") {
    const auto net = all_to_all(3, testing::ks(1.0, 0.0));
    CHECK(skew_product_check(net, Eigen::Vector3d(0, 1, 2), {0, 2}, {1}).structure == CutStructure::Coupled);
  }
  SUBCASE("errors") {
    const auto net = all_to_all(3, g);
    CHECK_THROWS_AS(skew_product_check(net, Eigen::Vector3d(0, kPi / 3, 3.0), {0}, {1, 2}), BoundaryError);
    CHECK_THROWS_AS(skew_product_check(net, Eigen::Vector3d(0, 2.0, 4.0), {0}, {1}), PreconditionError);
    CHECK_THROWS_AS(skew_product_check(net, Eigen::Vector3d(0, 2.0, 4.0), {0, 1}, {1, 2}), PreconditionError);
  }
}

TEST_CASE("Jacobian sparsity matches the effective graph") {
  Rng rng(30);
  int checked = 0;
  while (checked < 200) {
    const int n = testing::uniform_int(rng, 3, 6);
    const StructuralNetwork net{testing::random_graph(rng, n, 0.7), 1.0, testing::random_piecewise(rng)};
    const Eigen::VectorXd t = testing::random_theta(rng, n);
    std::vector<int> v1, v2;
    for (int k = 0; k < n; ++k) (k == 0 || testing::uniform_int(rng, 0, 1) ? v1 : v2).push_back(k);
    if (v2.empty()) v2.push_back(v1.back()), v1.pop_back();
    SkewProductReport rep;
    try {
      rep = skew_product_check(net, t, v1, v2);
    } catch (const BoundaryError&) {
      continue;
    }
    ++checked;
    CHECK(rep.consistent);
    // Independent classification from the Jacobian's off-diagonal blocks.
    bool fwd = false, bwd = false;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        const double entry = std::abs(rep.jacobian(k, j));
        const double slope = std::abs(net.coupling.deriv(t(j) - t(k)));
        const bool present = rep.graph.has_edge(j, k);
        if (!present) CHECK(entry < 1e-8);
        if (present && slope > 2e-8) CHECK(entry >= 1e-8);
        const bool j1 = std::find(v1.begin(), v1.end(), j) != v1.end();
        const bool k1 = std::find(v1.begin(), v1.end(), k) != v1.end();
        if (present && j1 && !k1) fwd = true;
        if (present && !j1 && k1) bwd = true;
      }
    }
    const auto expect = fwd && bwd ? CutStructure::Coupled
                        : fwd      ? CutStructure::SkewV1ToV2
                        : bwd      ? CutStructure::SkewV2ToV1
                                   : CutStructure::Product;
    CHECK(rep.structure == expect);
  }
}

TEST_CASE("raster of the torus") {
  SUBCASE("no dead zone gives K3 everywhere") {
    const auto grid = raster_cir(all_to_all(3, testing::ks(1.0, 0.0)), 20);
    CHECK(std::all_of(grid.nu.begin(), grid.nu.end(), [](std::uint8_t v) { return v == 63; }));
  }
  SUBCASE("splay cell") {
    const auto net = all_to_all(3, testing::single_dead_zone(5 * kPi / 6, 7 * kPi / 6));
    CHECK(graph_number(effective_graph(net, splay_point(3))) == 63);
    const int r = 300;
    const auto grid = raster_cir(net, r);
    const int i = static_cast<int>(r / 3.0);
    CHECK(grid.at(i, i) == 63);
    CHECK(grid.at(0, 0) == 63);
  }
  SUBCASE("symmetric dead zone gives undirected graphs") {
    // 151 keeps every cell centre off the arc endpoints 5π/6 and 7π/6.
    const auto grid = raster_cir(all_to_all(3, testing::ks(kPi, kPi / 6)), 151);
    for (auto v : grid.nu) CHECK(graph_from_number(v).is_undirected());
  }
  SUBCASE("cells use their centre point") {
    Rng rng(31);
    const auto net = all_to_all(3, testing::random_piecewise(rng));
    const auto grid = raster_cir(net, 40);
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        const double p1 = (i + 0.5) * kTwoPi / 40, p2 = (j + 0.5) * kTwoPi / 40;
        CHECK(grid.at(i, j) == graph_number(testing::oracle_effective(net, Eigen::Vector3d(0, p1, p1 + p2))));
      }
    }
  }
  SUBCASE("deterministic") {
    const auto net = all_to_all(3, testing::ks(1.0, 0.5));
    CHECK(raster_cir(net, 97).nu == raster_cir(net, 97).nu);
  }
  CHECK_THROWS_AS(raster_cir(all_to_all(3, testing::ks(1.0, 0.5)), 1), PreconditionError);
  CHECK_THROWS_AS(raster_cir(all_to_all(4, testing::ks(1.0, 0.5)), 10), PreconditionError);
}

TEST_CASE("catalogs") {
  const auto no_dz = all_to_all(3, testing::ks(1.0, 0.0));
  CHECK(catalog_realised(no_dz, GridSampler{30}) == std::set<DirectedGraph>{DirectedGraph::complete(3)});
  CHECK(catalog_mask(catalog_realised(no_dz, GridSampler{30})) == (std::uint64_t{1} << 63));

  const auto sym = all_to_all(3, testing::ks(kPi, kPi / 6));
  for (const auto& h : catalog_realised(sym, GridSampler{200})) CHECK(h.is_undirected());

  const auto random = catalog_realised(sym, RandomSampler{20000, 7});
  CHECK(random == catalog_realised(sym, RandomSampler{20000, 7}));
  for (const auto& h : random) CHECK(h.is_undirected());

  const auto n4 = catalog_realised(all_to_all(4, testing::ks(1.0, 0.5)), GridSampler{12});
  for (const auto& h : n4) CHECK(h.order() == 4);
}
