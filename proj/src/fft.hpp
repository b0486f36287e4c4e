#pragma once

// Thin RAII wrappers over FFTW real transforms. Plans use FFTW_ESTIMATE so the
// chosen algorithm, and therefore every output bit, is reproducible run to run.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tdflow::detail {

class RealFft {
public:
    /// 1D (ny == 0) or 2D row-major (nx rows of ny) real transform pair.
    RealFft(std::size_t nx, std::size_t ny = 0);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::span<double> real() noexcept { return {real_, real_size_}; }
    std::span<std::complex<double>> spectrum() noexcept {
        return {reinterpret_cast<std::complex<double>*>(spec_), spec_size_};
    }

    void forward() { fftw_execute(forward_); }
    /// Unnormalised inverse: forward followed by backward scales by the transform size.
    void backward() { fftw_execute(backward_); }

private:
    std::size_t real_size_;
    std::size_t spec_size_;
    double* real_ = nullptr;
    fftw_complex* spec_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace tdflow::detail
