#include "nmrenv/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "nmrenv/error.hpp"

namespace nmrenv::fft {

namespace {
// The FFTW planner is not thread-safe; execution with the new-array API is.
std::mutex planner_mutex;
}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::span<Complex> data, Direction dir) {
    if (data.empty()) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace nmrenv::fft
