#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace afd::detail {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run(CVector& data, int rank, std::size_t size, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    const int n = static_cast<int>(size);
    plan = rank == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE)
                     : fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void fft_forward(CVector& data) { run(data, 1, data.size(), FFTW_FORWARD); }
void fft_inverse(CVector& data) { run(data, 1, data.size(), FFTW_BACKWARD); }
void fft_forward_2d(CVector& data, std::size_t size) { run(data, 2, size, FFTW_FORWARD); }
void fft_inverse_2d(CVector& data, std::size_t size) { run(data, 2, size, FFTW_BACKWARD); }

}  // namespace afd::detail
