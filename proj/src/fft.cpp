#include "fft.hpp"

#include <algorithm>
#include <new>

namespace qfho::detail {

Fft::Fft(std::size_t n) : n_(n) {
    buffer_ = fftw_alloc_complex(n_);
    if (buffer_ == nullptr) throw std::bad_alloc();
    const int len = static_cast<int>(n_);
    forward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
}

void Fft::forward(std::vector<std::complex<double>>& data) {
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer_);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(forward_);
    std::copy(raw, raw + n_, data.begin());
}

void Fft::backward(std::vector<std::complex<double>>& data) {
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer_);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(backward_);
    std::copy(raw, raw + n_, data.begin());
}

}  // namespace qfho::detail
