#pragma once

#include <complex>
#include <vector>

namespace nlgpe {

/// Thin FFTW wrapper for 1D/2D complex transforms on power-of-two grids.
/// Forward is unnormalized; inverse divides by the total point count, so
/// inverse(forward(x)) == x up to roundoff. Plan creation is serialized
/// internally (FFTW planning is not thread-safe).
class Fft {
 public:
  Fft(int n_dim, int points_per_axis);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::vector<std::complex<double>>& data);
  void inverse(std::vector<std::complex<double>>& data);

  int n_dim() const { return n_dim_; }
  int points_per_axis() const { return points_; }
  size_t total() const { return total_; }

 private:
  int n_dim_;
  int points_;
  size_t total_;
  void* plan_fwd_;  // fftw_plan, kept opaque to avoid leaking fftw3.h
  void* plan_inv_;
  std::vector<std::complex<double>> work_;
};

}  // namespace nlgpe
