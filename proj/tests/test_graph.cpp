#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "privgraph/experiments.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/laplacian.hpp"
#include "privgraph/rng.hpp"

using namespace privgraph;

namespace {

graph unit_triangle() {
  graph g(3);
  g.set_weight(0, 1, 1);
  g.set_weight(0, 2, 1);
  g.set_weight(1, 2, 1);
  return g;
}

graph random_test_graph(int n, rng& r) {
  weight_law law;
  law.kind = weight_law_kind::uniform;
  law.value = 3.0;
  const int64_t max_m = slot_count(n);
  const int64_t m = std::min<int64_t>(max_m, n - 1 + r.uniform_below(n));
  return random_connected_graph(n, m, law, r);
}

}  // namespace

TEST_CASE("pair index is lexicographic and symmetric") {
  CHECK(edge_index(0, 1, 4) == 0);
  CHECK(edge_index(2, 3, 4) == 5);
  CHECK(edge_index(3, 1, 4) == 4);
  CHECK(edge_index(1, 3, 4) == edge_index(3, 1, 4));
  CHECK(slot_count(1) == 0);
  CHECK(slot_count(2) == 1);
  CHECK(slot_count(4) == 6);
  CHECK(slot_count(200) == 19900);
}

TEST_CASE("pair index round-trips through endpoints up to n = 200") {
  const int n = 200;
  for (edge_id id = 0; id < slot_count(n); ++id) {
    auto [u, v] = edge_endpoints(id, n);
    CHECK(u < v);
    CHECK(v < n);
    CHECK(edge_index(u, v, n) == id);
  }
}

TEST_CASE("pair index rejects self-loops and out-of-range vertices") {
  CHECK_THROWS_AS(edge_index(1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(edge_index(0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(edge_index(-1, 2, 4), std::invalid_argument);
}

TEST_CASE("absent slots read zero, stored zeros are distinct") {
  graph g(4);
  g.set_weight(0, 1, 2.5);
  g.set_weight(2, 3, 0.0);
  CHECK(g.weight(0, 1) == 2.5);
  CHECK(g.weight(1, 0) == 2.5);
  CHECK(g.weight(0, 2) == 0.0);
  CHECK(g.has_slot(2, 3));
  CHECK_FALSE(g.has_slot(0, 2));
  CHECK(g.stored().size() == 2);
  CHECK(g.positive_count() == 1);
  CHECK(g.weight_l1() == 2.5);
  CHECK(g.max_weight() == 2.5);
  CHECK_FALSE(g.has_negative());
}

TEST_CASE("plain set_weight rejects negative values, the signed setter keeps them") {
  graph g(3);
  CHECK_THROWS_AS(g.set_weight(0, 1, -1.0), std::invalid_argument);
  g.set_weight_signed(0, 1, -1.5);
  CHECK(g.weight(0, 1) == -1.5);
  CHECK(g.has_negative());
  CHECK(g.weight_l1() == 1.5);  // magnitudes, not signed sums
  CHECK(g.positive_count() == 0);
}

TEST_CASE("unweighted degree counts stored slots, explicit zeros included") {
  CHECK(unit_triangle().max_unweighted_degree() == 2);

  graph star(5);
  for (int v = 1; v < 5; ++v) star.set_weight(0, v, 1);
  CHECK(star.max_unweighted_degree() == 4);

  CHECK(graph(3).max_unweighted_degree() == 0);

  // A stored zero-weight slot is part of the topology and counts.
  graph g(3);
  g.set_weight(0, 1, 0.0);
  CHECK(g.max_unweighted_degree() == 1);
  CHECK(g.unweighted_degrees() == std::vector<int>{1, 1, 0});
}

TEST_CASE("weighted degrees sum incident weights") {
  graph g(3);
  g.set_weight(0, 1, 2);
  g.set_weight(1, 2, 3);
  const auto d = g.weighted_degrees();
  CHECK(d[0] == doctest::Approx(2).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(5).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("laplacian matches degree minus adjacency") {
  graph e(2);
  e.set_weight(0, 1, 1);
  const Eigen::MatrixXd le = laplacian(e);
  CHECK(le(0, 0) == doctest::Approx(1));
  CHECK(le(0, 1) == doctest::Approx(-1));
  CHECK(le(1, 0) == doctest::Approx(-1));
  CHECK(le(1, 1) == doctest::Approx(1));

  const Eigen::MatrixXd lt = laplacian(unit_triangle());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(lt(i, j) == doctest::Approx(i == j ? 2.0 : -1.0));
    }
  }

  CHECK(laplacian(graph(3)).isZero(0.0));
}

TEST_CASE("laplacian rows sum to zero and the matrix is positive semidefinite") {
  rng r(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(r.uniform_below(10));
    const graph g = random_test_graph(n, r);
    const Eigen::MatrixXd l = laplacian(g);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const double row_tol = 1e-9 * (1 + g.weight_l1());
    CHECK((l * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() <= row_tol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * l.diagonal().maxCoeff());
  }
}

TEST_CASE("cut values on the unit triangle") {
  const graph g = unit_triangle();
  CHECK(cut_value(g, {{0}, {1, 2}}) == doctest::Approx(2).epsilon(1e-12));
  CHECK(cut_value(g, {{0}, {1}}) == doctest::Approx(1).epsilon(1e-12));
  CHECK(cut_value(g, {{0}, {}}) == 0.0);
  CHECK(boundary_value(g, {0}) == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("cut value equals the bilinear form on indicator vectors") {
  rng r(11);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 3 + static_cast<int>(r.uniform_below(8));
    const graph g = random_test_graph(n, r);
    const Eigen::MatrixXd l = laplacian(g);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n), t = Eigen::VectorXd::Zero(n);
    cut_query q;
    for (int v = 0; v < n; ++v) {
      switch (r.uniform_below(3)) {
        case 1: q.s.push_back(v); s[v] = 1; break;
        case 2: q.t.push_back(v); t[v] = 1; break;
        default: break;
      }
    }
    const double quadratic = -s.dot(l * t);
    CHECK(std::abs(cut_value(g, q) - quadratic) <= 1e-9 * (1 + g.weight_l1()));
  }
}

TEST_CASE("boundary values of two disjoint sets combine into their cut") {
  // 2 * cut(S, T) = boundary(S) + boundary(T) - boundary(S or T)
  rng r(17);
  for (int n : {6, 8}) {
    const graph g = random_test_graph(n, r);
    int64_t assignments = 1;
    for (int i = 0; i < n; ++i) assignments *= 3;
    for (int64_t code = 0; code < assignments; ++code) {
      cut_query q;
      std::vector<int> both;
      int64_t rest = code;
      for (int v = n - 1; v >= 0; --v) {
        const int digit = static_cast<int>(rest % 3);
        rest /= 3;
        if (digit == 1) { q.s.push_back(v); both.push_back(v); }
        if (digit == 2) { q.t.push_back(v); both.push_back(v); }
      }
      if (q.s.empty() || q.t.empty()) continue;
      const double lhs = 2 * cut_value(g, q);
      const double rhs = boundary_value(g, q.s) + boundary_value(g, q.t) -
                         boundary_value(g, both);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + g.weight_l1()));
    }
  }
}

TEST_CASE("cut query validation") {
  CHECK_THROWS_AS(validate_cut_query({{0, 1}, {1}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_cut_query({{0}, {3}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_cut_query({{0, 0}, {1}}, 3), std::invalid_argument);
  CHECK_NOTHROW(validate_cut_query({{}, {}}, 3));
  CHECK_THROWS_AS(boundary_value(unit_triangle(), {}), std::invalid_argument);
}

TEST_CASE("spectral norm of the laplacian difference") {
  rng r(5);
  const graph g = unit_triangle();
  CHECK(spectral_norm_diff(g, g, r) <= 1e-9);

  graph a(2), b(2);
  a.set_weight(0, 1, 3);
  b.set_weight(0, 1, 1);
  CHECK(spectral_norm_diff(a, b, r) == doctest::Approx(4).epsilon(1e-9));

  CHECK(spectral_norm_diff(g, graph(3), r) == doctest::Approx(3).epsilon(1e-9));
}

TEST_CASE("spectral gap value and connectivity flag") {
  const gap_result k5 = spectral_gap(complete_graph(5, 1));
  CHECK(k5.connected);
  CHECK(k5.value == doctest::Approx(5).epsilon(1e-9));

  graph e(2);
  e.set_weight(0, 1, 1);
  const gap_result single = spectral_gap(e);
  CHECK(single.connected);
  CHECK(single.value == doctest::Approx(2).epsilon(1e-9));

  graph two(4);
  two.set_weight(0, 1, 1);
  two.set_weight(2, 3, 1);
  const gap_result split = spectral_gap(two);
  CHECK_FALSE(split.connected);
  CHECK(split.value == doctest::Approx(2).epsilon(1e-9));

  const gap_result empty = spectral_gap(graph(3));
  CHECK_FALSE(empty.connected);
  CHECK(empty.value == 0.0);
}

TEST_CASE("adding unit weight to one slot raises the gap by at most two") {
  rng r(303);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(r.uniform_below(10));
    const graph g = random_test_graph(n, r);
    const edge_id slot = r.uniform_below(g.slots());
    graph bumped(n);
    for (const auto& [id, w] : g.stored()) bumped.set_weight_by_id(id, w);
    bumped.set_weight_by_id(slot, g.weight_by_id(slot) + 1.0);
    const double before = spectral_gap(g).value;
    const double after = spectral_gap(bumped).value;
    CHECK(after - before >= -1e-9);
    CHECK(after - before <= 2 + 1e-6);
  }
}

TEST_CASE("graph_sum adds weight vectors coordinatewise") {
  const graph g = unit_triangle();
  const graph same = graph_sum(g, graph(3));
  CHECK(same.stored() == g.stored());

  graph a(3), b(3);
  a.set_weight(0, 1, 1);
  b.set_weight(0, 1, 1);
  CHECK(graph_sum(a, b).weight(0, 1) == 2.0);

  graph c(3), d(3);
  c.set_weight(0, 1, 1);
  d.set_weight(1, 2, 4);
  const graph u = graph_sum(c, d);
  CHECK(u.weight(0, 1) == 1.0);
  CHECK(u.weight(1, 2) == 4.0);
  CHECK(u.stored().size() == 2);

  CHECK_THROWS_AS(graph_sum(graph(3), graph(4)), std::invalid_argument);
}

TEST_CASE("complete_graph fills every slot") {
  const graph k4 = complete_graph(4, 0.25);
  CHECK(static_cast<int64_t>(k4.stored().size()) == slot_count(4));
  for (const auto& [id, w] : k4.stored()) CHECK(w == 0.25);
}

TEST_CASE("connectivity tracks strictly positive weights only") {
  graph path(3);
  path.set_weight(0, 1, 1);
  path.set_weight(1, 2, 1);
  CHECK(is_connected(path));

  graph broken(3);
  broken.set_weight(0, 1, 1);
  broken.set_weight(1, 2, 0.0);  // explicit zero does not carry the walk
  CHECK_FALSE(is_connected(broken));

  CHECK(is_connected(graph(1)));
  CHECK_FALSE(is_connected(graph(2)));
}
