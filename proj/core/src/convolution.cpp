#include "drstokes/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "drstokes/errors.hpp"

namespace drstokes {

namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : p(fftw_malloc(bytes)) {
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* p;
};

struct FftwPlan {
  explicit FftwPlan(fftw_plan p) : plan(p) {
    if (!plan) throw Error("FFTW planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  fftw_plan plan;
};

std::size_t product(const std::vector<int>& v) {
  std::size_t p = 1;
  for (int x : v) p *= static_cast<std::size_t>(x);
  return p;
}

std::size_t complex_count(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (std::size_t a = 0; a + 1 < dims.size(); ++a) p *= static_cast<std::size_t>(dims[a]);
  return p * static_cast<std::size_t>(dims.back() / 2 + 1);
}

// Forward real-to-complex transform of a padded real array.
void forward(const std::vector<int>& dims, double* in, fftw_complex* out) {
  fftw_plan p;
  {
    std::lock_guard lock(planner_mutex());
    p = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), in, out, FFTW_ESTIMATE);
  }
  FftwPlan plan(p);
  fftw_execute(plan.plan);
}

void backward(const std::vector<int>& dims, fftw_complex* in, double* out) {
  fftw_plan p;
  {
    std::lock_guard lock(planner_mutex());
    p = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), in, out, FFTW_ESTIMATE);
  }
  FftwPlan plan(p);
  fftw_execute(plan.plan);
}

}  // namespace

const char* to_string(ConvolutionMethod m) { return m == ConvolutionMethod::Direct ? "direct" : "fft"; }

ConvolutionMethod parse_convolution_method(const std::string& s) {
  if (s == "direct") return ConvolutionMethod::Direct;
  if (s == "fft") return ConvolutionMethod::Fft;
  throw ParameterError("unknown kernel method '" + s + "' (expected direct or fft)");
}

ConvolutionPlan::ConvolutionPlan(GridSpec grid, KernelKind kind, ConvolutionMethod method, int pad_factor,
                                 double singular_tol)
    : grid_(std::move(grid)), kind_(kind), method_(method), pad_(pad_factor) {
  grid_.validate();
  const int n = grid_.dim();
  if (n != 2 && n != 3) throw UnsupportedConfiguration("grid convolution is implemented for n = 2, 3 only");
  for (int a = 1; a < n; ++a)
    if (std::abs(grid_.spacing[a] - grid_.spacing[0]) > 1e-12 * grid_.spacing[0])
      throw UnsupportedConfiguration("convolution needs equal spacing on every axis");
  if (method_ == ConvolutionMethod::Fft && pad_ < 2)
    throw ParameterError("kernel.pad_factor must be >= 2 for free-space convolution");

  const double h = grid_.spacing[0];
  const double vol = grid_.cell_volume();
  std::vector<int> span(n);
  for (int a = 0; a < n; ++a) span[a] = 2 * grid_.counts[a] - 1;
  weights_.assign(product(span), 0.0);
  const double center = singular_cell_average(kind_, n, h, singular_tol);
  std::vector<double> x(n);
  for (std::size_t flat = 0; flat < weights_.size(); ++flat) {
    std::size_t rest = flat;
    bool origin = true;
    for (int a = n - 1; a >= 0; --a) {
      const int o = static_cast<int>(rest % span[a]) - (grid_.counts[a] - 1);
      rest /= span[a];
      x[a] = o * h;
      origin = origin && o == 0;
    }
    weights_[flat] = vol * (origin ? center : eval_kernel(kind_, x));
  }

  if (method_ != ConvolutionMethod::Fft) return;
  padded_.resize(n);
  for (int a = 0; a < n; ++a) padded_[a] = pad_ * grid_.counts[a];
  const std::size_t total = product(padded_);
  FftwBuffer in(sizeof(double) * total);
  FftwBuffer out(sizeof(fftw_complex) * complex_count(padded_));
  auto* real = static_cast<double*>(in.p);
  std::fill(real, real + total, 0.0);
  std::vector<int> idx(n);
  for (std::size_t flat = 0; flat < weights_.size(); ++flat) {
    std::size_t rest = flat;
    std::size_t target = 0;
    for (int a = n - 1; a >= 0; --a) {
      const int o = static_cast<int>(rest % span[a]) - (grid_.counts[a] - 1);
      rest /= span[a];
      idx[a] = (o + padded_[a]) % padded_[a];
    }
    for (int a = 0; a < n; ++a) target = target * padded_[a] + idx[a];
    real[target] = weights_[flat];
  }
  forward(padded_, real, static_cast<fftw_complex*>(out.p));
  auto* c = static_cast<fftw_complex*>(out.p);
  spectrum_.resize(complex_count(padded_));
  for (std::size_t k = 0; k < spectrum_.size(); ++k) spectrum_[k] = {c[k][0], c[k][1]};
}

ConvolutionPlan::~ConvolutionPlan() = default;

GridFunction ConvolutionPlan::apply(const GridFunction& u) const {
  if (!(u.grid() == grid_)) throw DimensionMismatch("input grid does not match the convolution plan");
  return method_ == ConvolutionMethod::Direct ? apply_direct(u) : apply_fft(u);
}

GridFunction ConvolutionPlan::apply_direct(const GridFunction& u) const {
  const int n = grid_.dim();
  GridFunction out(grid_);
  std::vector<int> span(n), iu(n), io(n);
  for (int a = 0; a < n; ++a) span[a] = 2 * grid_.counts[a] - 1;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double uj = u[j];
    if (uj == 0) continue;
    grid_.unflatten(j, iu);
    for (std::size_t i = 0; i < out.size(); ++i) {
      grid_.unflatten(i, io);
      std::size_t w = 0;
      for (int a = 0; a < n; ++a) w = w * span[a] + (io[a] - iu[a] + grid_.counts[a] - 1);
      out[i] += weights_[w] * uj;
    }
  }
  return out;
}

GridFunction ConvolutionPlan::apply_fft(const GridFunction& u) const {
  const int n = grid_.dim();
  const std::size_t total = product(padded_);
  FftwBuffer in(sizeof(double) * total);
  FftwBuffer spec(sizeof(fftw_complex) * spectrum_.size());
  auto* real = static_cast<double*>(in.p);
  std::fill(real, real + total, 0.0);
  std::vector<int> idx(n);
  auto padded_index = [&](std::size_t flat) {
    grid_.unflatten(flat, idx);
    std::size_t t = 0;
    for (int a = 0; a < n; ++a) t = t * padded_[a] + idx[a];
    return t;
  };
  for (std::size_t k = 0; k < u.size(); ++k) real[padded_index(k)] = u[k];
  auto* c = static_cast<fftw_complex*>(spec.p);
  forward(padded_, real, c);
  for (std::size_t k = 0; k < spectrum_.size(); ++k) {
    const std::complex<double> v = std::complex<double>(c[k][0], c[k][1]) * spectrum_[k];
    c[k][0] = v.real();
    c[k][1] = v.imag();
  }
  backward(padded_, c, real);
  GridFunction out(grid_);
  const double norm = 1.0 / static_cast<double>(total);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = real[padded_index(k)] * norm;
  return out;
}

}  // namespace drstokes
