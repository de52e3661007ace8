#include <doctest.h>

#include <algorithm>
#include <set>

#include "dkbench/attack.hpp"
#include "dkbench/errors.hpp"
#include "dkbench/overlap.hpp"
#include "oracles.hpp"

using namespace dkbench;

TEST_CASE("generate_pairs enumerates the labeled cross product") {
  const Graph g_san = oracle::from_edges({{"a", "b"}});
  const Graph g_aux = oracle::from_edges({{"a", "c"}});
  PairCounts counts;
  const auto pairs = generate_pairs(g_san, g_aux, 2, 3,
                                    FeatureLayout::ConcatAbsDiff, std::nullopt,
                                    0, &counts);
  CHECK(pairs.size() == 4);
  CHECK(counts.total == 4);
  CHECK(counts.identical == 1);
  int identical_seen = 0;
  for (const auto& ex : pairs) {
    const bool same_label = g_san.label(ex.san_node) == g_aux.label(ex.aux_node);
    CHECK(ex.identical == same_label);
    identical_seen += ex.identical ? 1 : 0;
  }
  CHECK(identical_seen == 1);
}

TEST_CASE("disjoint node sets produce no identical pairs") {
  const Graph g_san = oracle::from_edges({{"a", "b"}});
  const Graph g_aux = oracle::from_edges({{"x", "y"}});
  PairCounts counts;
  generate_pairs(g_san, g_aux, 2, 2, FeatureLayout::ConcatAbsDiff, std::nullopt,
                 0, &counts);
  CHECK(counts.identical == 0);
}

TEST_CASE("pair cap draws distinct pairs from the full product") {
  const Graph g_san = oracle::random_graph(13, 0.3, 1);
  const Graph g_aux = oracle::random_graph(11, 0.3, 2);
  PairCounts counts;
  const auto pairs = generate_pairs(g_san, g_aux, 2, 4,
                                    FeatureLayout::ConcatAbsDiff,
                                    std::int64_t{10}, 7, &counts);
  CHECK(pairs.size() == 10);
  std::set<std::pair<int, int>> seen;
  for (const auto& ex : pairs) seen.emplace(ex.san_node, ex.aux_node);
  CHECK(seen.size() == 10);

  // every capped pair appears in the exhaustive enumeration with equal labels
  const auto full = generate_pairs(g_san, g_aux, 2, 4,
                                   FeatureLayout::ConcatAbsDiff, std::nullopt,
                                   7, nullptr);
  for (const auto& ex : pairs) {
    const auto it = std::find_if(full.begin(), full.end(), [&](const auto& f) {
      return f.san_node == ex.san_node && f.aux_node == ex.aux_node;
    });
    REQUIRE(it != full.end());
    CHECK(it->identical == ex.identical);
    CHECK(it->features == ex.features);
  }
}

TEST_CASE("reservoir returns the whole stream when undersized") {
  const auto s = reservoir_sample_indices(3, 5, 1);
  CHECK(s.size() == 3);
  const auto all = reservoir_sample_indices(4, 4, 9);
  std::set<std::size_t> uniq(all.begin(), all.end());
  CHECK(uniq == std::set<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("reservoir inclusion is uniform over many trials") {
  const int trials = 100000;
  int counts[4] = {0, 0, 0, 0};
  for (int t = 0; t < trials; ++t) {
    for (auto idx : reservoir_sample_indices(4, 2, 1000 + t)) ++counts[idx];
  }
  for (int i = 0; i < 4; ++i) {
    const double freq = static_cast<double>(counts[i]) / trials;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.03));
  }
}

TEST_CASE("SMOTE interpolates between minority neighbors") {
  const std::vector<std::vector<double>> minority = {{0.0, 0.0}, {2.0, 2.0}};
  const auto synth = smote(minority, 1, 40, 5);
  REQUIRE(synth.size() == 40);
  for (const auto& pt : synth) {
    CHECK(pt[0] == doctest::Approx(pt[1]).epsilon(1e-12));  // on the diagonal
    CHECK(pt[0] >= 0.0);
    CHECK(pt[0] <= 2.0);
  }
}

TEST_CASE("SMOTE degenerates to duplication for a single point") {
  const auto synth = smote({{3.0, -1.0}}, 5, 7, 2);
  REQUIRE(synth.size() == 7);
  for (const auto& pt : synth) CHECK(pt == std::vector<double>{3.0, -1.0});
}

TEST_CASE("SMOTE with zero requests returns nothing") {
  CHECK(smote({{1.0}}, 1, 0, 3).empty());
}

TEST_CASE("SMOTE synthetics are convex combinations of two minority points") {
  Rng rng(4);
  std::vector<std::vector<double>> minority;
  for (int i = 0; i < 12; ++i) {
    minority.push_back({rng.real01() * 10, rng.real01() * 10, rng.real01()});
  }
  const auto synth = smote(minority, 3, 200, 11);
  for (const auto& pt : synth) {
    bool witnessed = false;
    for (std::size_t a = 0; a < minority.size() && !witnessed; ++a) {
      for (std::size_t b = 0; b < minority.size() && !witnessed; ++b) {
        if (a == b) continue;
        // recover u from the first differing coordinate, then verify all
        double u = -1.0;
        bool ok = true;
        for (std::size_t f = 0; f < pt.size(); ++f) {
          const double den = minority[b][f] - minority[a][f];
          if (std::abs(den) > 1e-12) {
            const double cand = (pt[f] - minority[a][f]) / den;
            if (u < 0) {
              u = cand;
            } else if (std::abs(cand - u) > 1e-9) {
              ok = false;
              break;
            }
          } else if (std::abs(pt[f] - minority[a][f]) > 1e-9) {
            ok = false;
            break;
          }
        }
        witnessed = ok && u >= -1e-12 && u <= 1.0 + 1e-12;
      }
    }
    CHECK(witnessed);
  }
}

namespace {

PairSource vector_source(std::vector<PairExample> pairs) {
  return [pairs = std::move(pairs)](const PairVisitor& visit) {
    for (const auto& ex : pairs) visit(PairExample(ex));
  };
}

std::vector<PairExample> synthetic_population(int n_pos, int n_neg) {
  Rng rng(31);
  std::vector<PairExample> out;
  for (int i = 0; i < n_pos; ++i) {
    PairExample ex;
    ex.san_node = i;
    ex.aux_node = i;
    ex.identical = true;
    ex.features = {rng.real01(), rng.real01() + 1.0};
    out.push_back(std::move(ex));
  }
  for (int i = 0; i < n_neg; ++i) {
    PairExample ex;
    ex.san_node = i;
    ex.aux_node = i + 1000;
    ex.identical = false;
    ex.features = {rng.real01() + 2.0, rng.real01()};
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

TEST_CASE("balanced samples equalize train classes via SMOTE") {
  SampleParams p;
  p.ell = 3;
  p.sample_size = 40;
  p.holdout_frac = 0.3;
  p.seed = 17;
  const auto sets = build_balanced_samples(
      vector_source(synthetic_population(10, 1000)), p);
  REQUIRE(sets.size() == 3);
  std::set<std::uint64_t> seeds;
  for (const auto& s : sets) {
    seeds.insert(s.seed);
    std::int64_t pos = 0, neg = 0;
    for (const auto& pt : s.train) (pt.positive ? pos : neg) += 1;
    CHECK(pos == neg);
    CHECK_FALSE(s.test.empty());
    // raw positives cannot exceed the population's 10
    std::int64_t test_pos = 0;
    for (const auto& ex : s.test) test_pos += ex.identical ? 1 : 0;
    CHECK(test_pos >= 1);
    CHECK(test_pos <= 10);
  }
  CHECK(seeds.size() == 3);  // distinct per-sample seeds
}

TEST_CASE("already balanced input needs no synthetic points") {
  SampleParams p;
  p.ell = 1;
  p.sample_size = 20;
  p.holdout_frac = 0.5;
  p.seed = 23;
  const auto sets =
      build_balanced_samples(vector_source(synthetic_population(10, 10)), p);
  REQUIRE(sets.size() == 1);
  // with equal classes and a stratified split, SMOTE adds nothing:
  // train size equals the raw train draw
  std::int64_t pos = 0, neg = 0;
  for (const auto& pt : sets[0].train) (pt.positive ? pos : neg) += 1;
  CHECK(pos == neg);
  CHECK(sets[0].train.size() + sets[0].test.size() == 20);
}

TEST_CASE("too few positives raises a sampling error naming the deficit") {
  SampleParams p;
  p.ell = 1;
  p.sample_size = 20;
  p.seed = 5;
  try {
    build_balanced_samples(vector_source(synthetic_population(1, 50)), p);
    FAIL("expected SamplingError");
  } catch (const SamplingError& e) {
    CHECK(std::string(e.what()).find("identical pairs") != std::string::npos);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("evaluation matches hand-computed confusion matrices") {
  const EvalResult perfect = eval_from_counts(5, 0, 5, 0);
  CHECK(perfect.f1 == doctest::Approx(1.0));
  CHECK(perfect.precision == doctest::Approx(1.0));
  CHECK(perfect.recall == doctest::Approx(1.0));

  const EvalResult blind = eval_from_counts(0, 0, 7, 3);
  CHECK(blind.recall == doctest::Approx(0.0));
  CHECK(blind.f1 == doctest::Approx(0.0));

  // precision 1/2, recall 1 -> harmonic mean 2/3
  const EvalResult mixed = eval_from_counts(3, 3, 4, 0);
  CHECK(mixed.precision == doctest::Approx(0.5));
  CHECK(mixed.recall == doctest::Approx(1.0));
  CHECK(mixed.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("evaluate runs a forest over labeled pairs") {
  // forest that always answers positive
  Forest f;
  DecisionTree yes;
  yes.nodes.push_back({-1, 0.0, -1, -1, true});
  f.trees = {yes};

  std::vector<PairExample> test;
  PairExample pos;
  pos.identical = true;
  pos.features = {0.0};
  PairExample neg;
  neg.identical = false;
  neg.features = {0.0};
  test = {pos, pos, neg};
  const EvalResult r = evaluate(f, test);
  CHECK(r.tp == 2);
  CHECK(r.fp == 1);
  CHECK(r.recall == doctest::Approx(1.0));
  CHECK(r.precision == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(evaluate(f, {}), ParamError);
}
