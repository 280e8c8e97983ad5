#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hartree {

/// In-place complex FFT of a fixed row-major shape, backed by FFTW.
///
/// Plans are created once (planner calls are serialized internally) and may
/// then be executed concurrently on distinct buffers. The backward transform
/// is unnormalized, matching FFTW.
class FftPlan {
public:
    explicit FftPlan(std::vector<int> shape);
    ~FftPlan();

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void forward(std::span<std::complex<double>> data) const;
    void backward(std::span<std::complex<double>> data) const;

    std::size_t size() const { return size_; }
    const std::vector<int>& shape() const { return shape_; }

private:
    std::vector<int> shape_;
    std::size_t size_ = 0;
    void* forward_ = nullptr;
    void* backward_ = nullptr;
};

}  // namespace hartree
