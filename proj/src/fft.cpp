#include "dkg/fft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <map>
#include <mutex>
#include <tuple>

#include "dkg/kernels.hpp"

namespace dkg {

namespace {

std::mutex plan_mutex;

struct PlanCache {
  std::map<std::tuple<int, int, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan get_plan(int n, int sign, int threads) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  static bool threads_ready = false;
  if (!threads_ready) {
    fftw_init_threads();
    threads_ready = true;
  }
  auto key = std::make_tuple(n, sign, threads);
  auto it = cache().plans.find(key);
  if (it != cache().plans.end()) return it->second;
  fftw_plan_with_nthreads(threads);
  std::vector<cplx> scratch(std::size_t(n) * n * n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_3d(n, n, n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache().plans[key] = plan;
  return plan;
}

}  // namespace

void fft3(cplx* data, int n, int sign) {
  int threads = default_exec() == Exec::omp ? exec_threads() : 1;
  fftw_plan plan = get_plan(n, sign, threads);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace dkg

namespace dkg {

void fft_time(cplx* data, int nt, std::size_t howmany, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  int n[1] = {nt};
  fftw_plan_with_nthreads(1);
  fftw_plan plan = fftw_plan_many_dft(1, n, int(howmany), p, nullptr, int(howmany), 1, p, nullptr, int(howmany), 1,
                                      sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace dkg
