#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace qgi::numeric::detail {

/// In-place 1-D complex transform pair over an owned, FFTW-aligned buffer.
/// Unnormalised in both directions. Plans use FFTW_ESTIMATE so reruns are
/// bit-identical.
class FftBuffer {
public:
    explicit FftBuffer(std::size_t n);
    ~FftBuffer();
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    std::span<std::complex<double>> data() noexcept { return {data_, n_}; }
    std::size_t size() const noexcept { return n_; }

    void forward() noexcept { fftw_execute(forward_); }
    void backward() noexcept { fftw_execute(backward_); }

private:
    std::size_t n_;
    std::complex<double>* data_;
    fftw_plan forward_;
    fftw_plan backward_;
};

/// Angular wavenumbers 2 pi j / L in FFTW's output ordering.
double wavenumber(std::size_t j, std::size_t n, double length) noexcept;

}  // namespace qgi::numeric::detail
