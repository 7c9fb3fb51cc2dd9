#include "fft.hpp"

#include <mutex>
#include <new>
#include <numbers>

namespace qgi::numeric::detail {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
    data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (data_ == nullptr) throw std::bad_alloc();
    auto* raw = reinterpret_cast<fftw_complex*>(data_);
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftBuffer::~FftBuffer() {
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }
    fftw_free(data_);
}

double wavenumber(std::size_t j, std::size_t n, double length) noexcept {
    const double index = j < n / 2 ? static_cast<double>(j)
                                   : static_cast<double>(j) - static_cast<double>(n);
    return 2.0 * std::numbers::pi * index / length;
}

}  // namespace qgi::numeric::detail
