#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "dkbench/graph.hpp"

namespace dkbench {

enum class DkLevel { GS, OneK, TwoK, TwoFiveK };

std::string to_string(DkLevel level);
DkLevel dk_level_from_string(std::string_view s);

// degree -> number of nodes with that degree
using DegreeDistribution = std::map<int, std::int64_t>;

// unordered degree pair {k, k'} stored as (min, max) -> number of edges
// joining a degree-k node to a degree-k' node; {k, k} edges counted once
using JointDegreeDistribution = std::map<std::pair<int, int>, std::int64_t>;

// degree k (>= 2, present in the graph) -> mean local clustering of degree-k nodes
using ClusteringSpectrum = std::map<int, double>;

double extract_0k(const Graph& g);  // average degree
DegreeDistribution extract_1k(const Graph& g);
JointDegreeDistribution extract_2k(const Graph& g);
ClusteringSpectrum extract_cspec(const Graph& g);

// L1 distance over the union of JDD entries.
std::int64_t jdd_l1(const JointDegreeDistribution& a,
                    const JointDegreeDistribution& b);

// Weighted L1: sum over degrees of w_k * |a(k) - b(k)| with w_k the fraction
// of nodes of degree k; missing entries count as 0.
double cspec_weighted_l1(const ClusteringSpectrum& a, const ClusteringSpectrum& b,
                         const DegreeDistribution& dd, std::int64_t n_nodes);

struct DkTarget {
  DkLevel level = DkLevel::OneK;
  DegreeDistribution dd;
  JointDegreeDistribution jdd;  // filled for 2K and 2.5K
  ClusteringSpectrum cspec;     // filled for 2.5K

  bool operator==(const DkTarget&) const = default;
};

DkTarget extract_target(const Graph& g, DkLevel level);

std::string dk_target_to_json(const DkTarget& t);
DkTarget dk_target_from_json(const std::string& text);

}  // namespace dkbench
