#include <doctest.h>

#include <cmath>

#include "dkbench/errors.hpp"
#include "dkbench/metrics.hpp"
#include "oracles.hpp"

using namespace dkbench;

TEST_CASE("density on fixed graphs") {
  CHECK(density(oracle::triangle()) == doctest::Approx(1.0).epsilon(1e-15));
  // K4 minus one edge: 5 edges over C(4,2) = 6 slots
  CHECK(density(oracle::k4_minus_edge()) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(density(oracle::edgeless_n(3)) == 0.0);
  CHECK_THROWS_AS(density(oracle::edgeless_n(1)), UndefinedMetricError);
}

TEST_CASE("transitivity on fixed graphs") {
  CHECK(transitivity(oracle::triangle()) == doctest::Approx(1.0));
  CHECK(transitivity(oracle::star_n(3)) == doctest::Approx(0.0));
  CHECK(transitivity(oracle::k4_minus_edge()) == doctest::Approx(0.75));
  CHECK_THROWS_AS(transitivity(oracle::edgeless_n(3)), UndefinedMetricError);
}

TEST_CASE("avg clustering on fixed graphs") {
  CHECK(avg_clustering(oracle::triangle()) == doctest::Approx(1.0));
  CHECK(avg_clustering(oracle::path3()) == doctest::Approx(0.0));
  CHECK(avg_clustering(oracle::k4_minus_edge()) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("assortativity on fixed graphs") {
  CHECK(degree_assortativity(oracle::star_n(3)) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(degree_assortativity(oracle::cycle_n(4)), UndefinedMetricError);
  // two disjoint edges: all degrees equal 1
  const Graph two = oracle::from_edges({{"a", "b"}, {"c", "d"}});
  CHECK_THROWS_AS(degree_assortativity(two), UndefinedMetricError);
}

TEST_CASE("avg path length on fixed graphs") {
  CHECK(avg_path_length(oracle::triangle()) == doctest::Approx(1.0));
  CHECK(avg_path_length(oracle::path3()) == doctest::Approx(4.0 / 3.0));
  const Graph two = oracle::from_edges({{"a", "b"}, {"c", "d"}});
  CHECK(avg_path_length(two) == doctest::Approx(1.0));
  CHECK_THROWS_AS(avg_path_length(oracle::edgeless_n(2)), UndefinedMetricError);
}

TEST_CASE("degree-1 percentage on fixed graphs") {
  CHECK(degree_one_pct(oracle::star_n(4)) == doctest::Approx(80.0));
  CHECK(degree_one_pct(oracle::triangle()) == doctest::Approx(0.0));
  CHECK(degree_one_pct(oracle::from_edges({{"a", "b"}})) == doctest::Approx(100.0));
}

TEST_CASE("metrics match brute-force oracles on random small graphs") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);  // 2..8 nodes
    const double p = 0.1 + 0.8 * static_cast<double>(seed % 9) / 8.0;
    const Graph g = oracle::random_graph(n, p, seed * 977 + 13);
    const oracle::Dense d(g);

    auto check = [&](std::optional<double> expected, auto&& fn) {
      if (expected) {
        CHECK(std::abs(fn() - *expected) <= 1e-12);
      } else {
        CHECK_THROWS_AS((void)fn(), UndefinedMetricError);
      }
      ++checked;
    };
    check(oracle::density(d), [&] { return density(g); });
    check(oracle::transitivity(d), [&] { return transitivity(g); });
    check(oracle::avg_clustering(d), [&] { return avg_clustering(g); });
    check(oracle::assortativity(d), [&] { return degree_assortativity(g); });
    check(oracle::avg_path_length(d), [&] { return avg_path_length(g); });
    check(oracle::degree_one_pct(d), [&] { return degree_one_pct(g); });
  }
  CHECK(checked == 120 * 6);
}

TEST_CASE("parallel avg_path_length equals the serial sweep") {
  const Graph g = oracle::random_graph(300, 0.02, 7);
  CHECK(avg_path_length(g, 4) == avg_path_length(g, 1));
}

TEST_CASE("compute_metrics reports undefined values as nulls with reasons") {
  const GraphMetricsRow row = compute_metrics(oracle::cycle_n(5));
  CHECK(row.density.value.has_value());
  CHECK(row.transitivity.value.has_value());
  CHECK_FALSE(row.assortativity.value.has_value());
  CHECK(row.assortativity.reason == "zero-degree-variance");
  CHECK(row.n_nodes == 5);
  CHECK(row.n_edges == 5);
}
