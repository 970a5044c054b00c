#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace hfsplit {

// One-dimensional complex FFT of fixed length backed by FFTW.  The object
// owns an aligned workspace and a forward/inverse plan pair; user data is
// copied through the workspace so callers never have to care about FFTW's
// alignment rules.  Forward is unnormalized, inverse scales by 1/n, so
// inverse(forward(u)) == u.
//
// Plan creation and destruction are serialized internally (FFTW's planner
// is not thread-safe); executing transforms on distinct FftPlan objects
// from different threads is safe.
class FftPlan {
  public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    FftPlan(FftPlan&& other) noexcept;
    FftPlan& operator=(FftPlan&& other) noexcept;

    std::size_t size() const { return n_; }

    void forward(std::span<std::complex<double>> data);
    void inverse(std::span<std::complex<double>> data);

    // data <- inverse( factors .* forward(data) ), fused in the workspace.
    void filtered(std::span<std::complex<double>> data,
                  std::span<const std::complex<double>> factors);

  private:
    std::size_t n_ = 0;
    void* buf_ = nullptr; // fftw_complex[n]
    void* fwd_ = nullptr; // fftw_plan
    void* inv_ = nullptr; // fftw_plan
};

} // namespace hfsplit
