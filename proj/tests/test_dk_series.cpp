#include <doctest.h>

#include "dkbench/dk_series.hpp"
#include "dkbench/errors.hpp"
#include "oracles.hpp"

using namespace dkbench;

TEST_CASE("0K extraction") {
  CHECK(extract_0k(oracle::triangle()) == doctest::Approx(2.0));
  CHECK(extract_0k(oracle::star_n(4)) == doctest::Approx(8.0 / 5.0));
  CHECK(extract_0k(oracle::edgeless_n(3)) == doctest::Approx(0.0));
}

TEST_CASE("1K extraction") {
  CHECK(extract_1k(oracle::triangle()) == DegreeDistribution{{2, 3}});
  CHECK(extract_1k(oracle::path3()) == DegreeDistribution{{1, 2}, {2, 1}});
  CHECK(extract_1k(oracle::star_n(3)) == DegreeDistribution{{1, 3}, {3, 1}});
}

TEST_CASE("2K extraction") {
  CHECK(extract_2k(oracle::path3()) ==
        JointDegreeDistribution{{{1, 2}, 2}});
  CHECK(extract_2k(oracle::triangle()) ==
        JointDegreeDistribution{{{2, 2}, 3}});
  CHECK(extract_2k(oracle::star_n(3)) ==
        JointDegreeDistribution{{{1, 3}, 3}});
}

TEST_CASE("clustering spectrum extraction") {
  CHECK(extract_cspec(oracle::triangle()) == ClusteringSpectrum{{2, 1.0}});
  CHECK(extract_cspec(oracle::path3()) == ClusteringSpectrum{{2, 0.0}});
  const auto spec = extract_cspec(oracle::k4_minus_edge());
  REQUIRE(spec.size() == 2);
  CHECK(spec.at(2) == doctest::Approx(1.0));
  CHECK(spec.at(3) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("JDD marginals recover the degree-weighted 1K distribution") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Graph g = oracle::random_graph(30, 0.15, seed);
    const auto dd = extract_1k(g);
    const auto jdd = extract_2k(g);

    std::int64_t total = 0;
    std::map<int, std::int64_t> marginal;
    for (const auto& [pair, count] : jdd) {
      total += count;
      marginal[pair.first] += count;
      marginal[pair.second] += count;  // diagonal entries count twice
    }
    CHECK(total == g.n_edges());
    for (const auto& [k, cnt] : dd) {
      const std::int64_t expect = static_cast<std::int64_t>(k) * cnt;
      const auto it = marginal.find(k);
      CHECK((it == marginal.end() ? 0 : it->second) == expect);
    }
  }
}

TEST_CASE("distance helpers") {
  const auto a = extract_2k(oracle::path_n(5));
  const auto b = extract_2k(oracle::cycle_n(5));
  CHECK(jdd_l1(a, a) == 0);
  CHECK(jdd_l1(a, b) == jdd_l1(b, a));
  CHECK(jdd_l1(a, b) > 0);

  const Graph g = oracle::k4_minus_edge();
  const auto spec = extract_cspec(g);
  CHECK(cspec_weighted_l1(spec, spec, extract_1k(g), g.n_nodes()) == 0.0);
  ClusteringSpectrum shifted = spec;
  shifted[2] = 0.0;  // two degree-2 nodes out of four -> weight 1/2
  CHECK(cspec_weighted_l1(spec, shifted, extract_1k(g), g.n_nodes()) ==
        doctest::Approx(0.5));
}

TEST_CASE("dK target serialization round trip") {
  const Graph g = oracle::random_graph(25, 0.2, 9);
  for (DkLevel level : {DkLevel::OneK, DkLevel::TwoK, DkLevel::TwoFiveK}) {
    const DkTarget t = extract_target(g, level);
    CHECK(dk_target_from_json(dk_target_to_json(t)) == t);
  }
  CHECK_THROWS_AS(extract_target(g, DkLevel::GS), ParamError);
}

TEST_CASE("level names parse both ways") {
  for (DkLevel level : {DkLevel::GS, DkLevel::OneK, DkLevel::TwoK, DkLevel::TwoFiveK}) {
    CHECK(dk_level_from_string(to_string(level)) == level);
  }
  CHECK_THROWS_AS(dk_level_from_string("3K"), ParamError);
}
