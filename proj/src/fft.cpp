#include "fft.hpp"

#include <new>

namespace tdflow::detail {

RealFft::RealFft(std::size_t nx, std::size_t ny) {
    const bool two_d = ny != 0;
    real_size_ = two_d ? nx * ny : nx;
    spec_size_ = two_d ? nx * (ny / 2 + 1) : nx / 2 + 1;
    real_ = fftw_alloc_real(real_size_);
    spec_ = fftw_alloc_complex(spec_size_);
    if (real_ == nullptr || spec_ == nullptr) {
        fftw_free(real_);
        fftw_free(spec_);
        throw std::bad_alloc();
    }
    const int inx = static_cast<int>(nx);
    const int iny = static_cast<int>(ny);
    if (two_d) {
        forward_ = fftw_plan_dft_r2c_2d(inx, iny, real_, spec_, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_2d(inx, iny, spec_, real_, FFTW_ESTIMATE);
    } else {
        forward_ = fftw_plan_dft_r2c_1d(inx, real_, spec_, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_1d(inx, spec_, real_, FFTW_ESTIMATE);
    }
}

RealFft::~RealFft() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
}

}  // namespace tdflow::detail
