#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace lplab::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int m, FftDirection direction) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(m, direction == FftDirection::forward ? 0 : 1);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(m) * m * m;
    std::vector<Complex> scratch(count);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft_3d(m, m, m, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft3d(std::vector<Complex>& data, int m, FftDirection direction) {
  const std::size_t count = static_cast<std::size_t>(m) * m * m;
  if (data.size() != count) throw InputError("fft3d: buffer size does not match m^3");
  fftw_plan plan = plan_cache().get(m, direction);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

int fft_friendly_size(int target) {
  int m = target < 2 ? 2 : target;
  if (m % 2 != 0) ++m;
  for (;; m += 2) {
    int r = m;
    for (int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace lplab::detail
