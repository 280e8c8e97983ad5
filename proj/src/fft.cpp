#include "hartree/fft.hpp"

#include <fftw3.h>

#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hartree {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
    return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

FftPlan::FftPlan(std::vector<int> shape) : shape_(std::move(shape)) {
    size_ = std::accumulate(shape_.begin(), shape_.end(), std::size_t{1},
                            std::multiplies<>());
    std::vector<std::complex<double>> scratch(size_);
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int rank = static_cast<int>(shape_.size());
    auto* buf = as_fftw(scratch);
    forward_ = fftw_plan_dft(rank, shape_.data(), buf, buf, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft(rank, shape_.data(), buf, buf, FFTW_BACKWARD, flags);
    if (forward_ == nullptr || backward_ == nullptr) {
        throw std::runtime_error("FFTW failed to create a plan");
    }
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::forward(std::span<std::complex<double>> data) const {
    if (data.size() != size_) throw std::invalid_argument("FftPlan::forward: size mismatch");
    fftw_execute_dft(static_cast<fftw_plan>(forward_), as_fftw(data), as_fftw(data));
}

void FftPlan::backward(std::span<std::complex<double>> data) const {
    if (data.size() != size_) throw std::invalid_argument("FftPlan::backward: size mismatch");
    fftw_execute_dft(static_cast<fftw_plan>(backward_), as_fftw(data), as_fftw(data));
}

}  // namespace hartree
