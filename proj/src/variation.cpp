#include "dkg/variation.hpp"

#include <cmath>

#include "dkg/kernels.hpp"

namespace dkg {

VariationResult p_variation(int n, double p, const std::function<double(int, int)>& dist) {
  if (n < 1) throw UsageError("p_variation: empty sequence");
  if (p < 1) throw UsageError("p_variation: p must be >= 1");
  VariationResult r;
  if (n == 1) {
    r.partition = {0};
    return r;
  }
  std::vector<double> best(n, 0.0);
  std::vector<int> prev(n, -1);
  for (int j = 1; j < n; ++j) {
    double b = -1.0;
    for (int i = 0; i < j; ++i) {
      double c = best[i] + std::pow(dist(i, j), p);
      if (c > b) {
        b = c;
        prev[j] = i;
      }
    }
    best[j] = b;
  }
  for (int j = n - 1; j >= 0; j = prev[j]) r.partition.insert(r.partition.begin(), j);
  r.value = std::pow(best[n - 1], 1.0 / p);
  return r;
}

std::vector<double> distance_matrix(const std::vector<Field>& seq) {
  const int n = int(seq.size());
  std::vector<double> D(std::size_t(n) * n, 0.0);
  if (n == 0) return D;
  const double w = seq[0].rep == Rep::physical ? seq[0].grid.cell() : seq[0].grid.volume();
  const std::size_t len = seq[0].data.size();
  for (int i = 0; i < n; ++i) {
    require_same_shape(seq[i], seq[0], "distance_matrix");
    for (int j = i + 1; j < n; ++j) {
      const cplx* a = seq[i].data.data();
      const cplx* b = seq[j].data.data();
      double s = default_exec() == Exec::omp
                     ? detail::sum_range<true>(len, [&](std::size_t k) { return std::norm(b[k] - a[k]); })
                     : detail::sum_range<false>(len, [&](std::size_t k) { return std::norm(b[k] - a[k]); });
      D[i * n + j] = D[j * n + i] = std::sqrt(s * w);
    }
  }
  return D;
}

VariationResult p_variation(const std::vector<Field>& seq, double p) {
  auto D = distance_matrix(seq);
  const int n = int(seq.size());
  return p_variation(n, p, [&](int i, int j) { return D[i * n + j]; });
}

}  // namespace dkg
