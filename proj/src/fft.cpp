#include "nlgpe/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace nlgpe {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int n_dim, int points_per_axis) : n_dim_(n_dim), points_(points_per_axis) {
  if (n_dim != 1 && n_dim != 2) throw std::invalid_argument("Fft: n_dim must be 1 or 2");
  if (points_ < 2) throw std::invalid_argument("Fft: need at least 2 points per axis");
  total_ = n_dim == 1 ? static_cast<size_t>(points_)
                      : static_cast<size_t>(points_) * static_cast<size_t>(points_);
  work_.resize(total_);
  auto* buf = reinterpret_cast<fftw_complex*>(work_.data());
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (n_dim == 1) {
    plan_fwd_ = fftw_plan_dft_1d(points_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_1d(points_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    plan_fwd_ = fftw_plan_dft_2d(points_, points_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_2d(points_, points_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("Fft: plan creation failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Fft::forward(std::vector<std::complex<double>>& data) {
  if (data.size() != total_) throw std::invalid_argument("Fft::forward: size mismatch");
  work_ = data;
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  data = work_;
}

void Fft::inverse(std::vector<std::complex<double>>& data) {
  if (data.size() != total_) throw std::invalid_argument("Fft::inverse: size mismatch");
  work_ = data;
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / static_cast<double>(total_);
  for (size_t i = 0; i < total_; ++i) data[i] = work_[i] * scale;
}

}  // namespace nlgpe
