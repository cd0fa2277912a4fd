#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace qfho::detail {

// In-place complex FFT of fixed length backed by FFTW. Unnormalized in both
// directions. Plan creation is not thread safe.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::vector<std::complex<double>>& data);
    void backward(std::vector<std::complex<double>>& data);

    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    fftw_complex* buffer_;
    fftw_plan forward_;
    fftw_plan backward_;
};

}  // namespace qfho::detail
