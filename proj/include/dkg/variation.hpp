#pragma once

#include <functional>
#include <vector>

#include "dkg/field.hpp"

namespace dkg {

struct VariationResult {
  double value = 0.0;
  std::vector<int> partition;  // strictly increasing sample indices
};

// sup over partitions of sum |u_{t_j} - u_{t_{j-1}}|^p, then ^{1/p}. The
// optimum always contains both endpoints, so the O(n^2) longest-path DP runs
// from sample 0 to sample n-1; chain sums accumulate left to right.
VariationResult p_variation(int n, double p, const std::function<double(int, int)>& dist);
VariationResult p_variation(const std::vector<Field>& seq, double p);

// Pairwise L^2 distances ||u_j - u_i|| (symmetric, zero diagonal).
std::vector<double> distance_matrix(const std::vector<Field>& seq);

}  // namespace dkg
