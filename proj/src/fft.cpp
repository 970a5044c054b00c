#include "hfsplit/fft.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/kernels.hpp"

#include <cstring>
#include <fftw3.h>
#include <mutex>

namespace hfsplit {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0)
        throw ValidationError("FftPlan: length must be positive");
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_complex* buf = fftw_alloc_complex(n);
    if (!buf)
        throw NumericalError("FftPlan: allocation failed");
    buf_ = buf;
    // FFTW_ESTIMATE keeps planning deterministic run-to-run.
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
    if (!buf_ && !fwd_ && !inv_)
        return;
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd_)
        fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (inv_)
        fftw_destroy_plan(static_cast<fftw_plan>(inv_));
    if (buf_)
        fftw_free(static_cast<fftw_complex*>(buf_));
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(other.n_), buf_(other.buf_), fwd_(other.fwd_), inv_(other.inv_) {
    other.n_ = 0;
    other.buf_ = nullptr;
    other.fwd_ = nullptr;
    other.inv_ = nullptr;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
    if (this != &other) {
        this->~FftPlan();
        n_ = other.n_;
        buf_ = other.buf_;
        fwd_ = other.fwd_;
        inv_ = other.inv_;
        other.n_ = 0;
        other.buf_ = nullptr;
        other.fwd_ = nullptr;
        other.inv_ = nullptr;
    }
    return *this;
}

void FftPlan::forward(std::span<std::complex<double>> data) {
    if (data.size() != n_)
        throw ValidationError("FftPlan::forward: length mismatch");
    auto* buf = static_cast<fftw_complex*>(buf_);
    std::memcpy(buf, data.data(), n_ * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(fwd_));
    std::memcpy(data.data(), buf, n_ * sizeof(fftw_complex));
}

void FftPlan::inverse(std::span<std::complex<double>> data) {
    if (data.size() != n_)
        throw ValidationError("FftPlan::inverse: length mismatch");
    auto* buf = static_cast<fftw_complex*>(buf_);
    std::memcpy(buf, data.data(), n_ * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(inv_));
    const double scale = 1.0 / static_cast<double>(n_);
    auto* out = reinterpret_cast<std::complex<double>*>(buf);
    for (std::size_t i = 0; i < n_; ++i)
        data[i] = out[i] * scale;
}

void FftPlan::filtered(std::span<std::complex<double>> data,
                       std::span<const std::complex<double>> factors) {
    if (data.size() != n_ || factors.size() != n_)
        throw ValidationError("FftPlan::filtered: length mismatch");
    auto* buf = static_cast<fftw_complex*>(buf_);
    std::memcpy(buf, data.data(), n_ * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(fwd_));
    auto* mid = reinterpret_cast<std::complex<double>*>(buf);
    kernels::apply_factors({mid, n_}, factors);
    fftw_execute(static_cast<fftw_plan>(inv_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i)
        data[i] = mid[i] * scale;
}

} // namespace hfsplit
