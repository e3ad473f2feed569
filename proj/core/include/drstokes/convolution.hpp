#pragma once

#include <complex>
#include <string>
#include <vector>

#include "drstokes/grid.hpp"
#include "drstokes/kernels.hpp"

namespace drstokes {

enum class ConvolutionMethod { Direct, Fft };

const char* to_string(ConvolutionMethod m);
/// "direct" or "fft"; throws ParameterError otherwise.
ConvolutionMethod parse_convolution_method(const std::string& s);

/// Discrete free-space convolution with g or B on a fixed grid:
/// (K * u)(x_i) ~ sum_j w(x_i - x_j) u_j h^n, where w is the kernel value at
/// the offset and the cell average of the kernel at offset 0.
///
/// The FFT variant zero-pads every axis to pad_factor times its length, so
/// the circular product equals the linear one. Immutable after construction;
/// apply() allocates its own work arrays and may run concurrently.
class ConvolutionPlan {
 public:
  ConvolutionPlan(GridSpec grid, KernelKind kind, ConvolutionMethod method, int pad_factor = 2,
                  double singular_tol = 1e-10);
  ~ConvolutionPlan();
  ConvolutionPlan(const ConvolutionPlan&) = delete;
  ConvolutionPlan& operator=(const ConvolutionPlan&) = delete;

  const GridSpec& grid() const noexcept { return grid_; }
  KernelKind kind() const noexcept { return kind_; }
  ConvolutionMethod method() const noexcept { return method_; }
  int pad_factor() const noexcept { return pad_; }

  GridFunction apply(const GridFunction& u) const;

 private:
  GridFunction apply_direct(const GridFunction& u) const;
  GridFunction apply_fft(const GridFunction& u) const;

  GridSpec grid_;
  KernelKind kind_;
  ConvolutionMethod method_;
  int pad_;
  // Offsets -(N-1)..(N-1) per axis, row-major, premultiplied by the cell volume.
  std::vector<double> weights_;
  std::vector<int> padded_;
  std::vector<std::complex<double>> spectrum_;
};

}  // namespace drstokes
