#include "ccalc/grid_sup.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

#include "ccalc/error.hpp"

namespace ccalc {

namespace {

// FFTW planning is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
    if (data == nullptr) throw std::bad_alloc();
    std::fill_n(reinterpret_cast<double*>(data), 2 * n, 0.0);
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
  std::size_t size;
};

// In-place backward transform: X[a] <- sum_j X[j] exp(+2 pi i a j / n).
void backward_in_place(FftwBuffer& buf, int rank, const int* dims) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(rank, dims, buf.data, buf.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("FFTW failed to create a plan");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void require_grid(int degree, std::size_t n) {
  if (n == 0 || static_cast<long long>(n) <= degree) {
    throw PreconditionViolation("grid of size " + std::to_string(n) +
                                " cannot resolve degree " + std::to_string(degree));
  }
}

}  // namespace

std::size_t oversampled_grid_size(int degree, std::size_t align) {
  if (align == 0) align = 1;
  const std::size_t d = degree < 0 ? 0 : static_cast<std::size_t>(degree);
  const std::size_t base = std::max<std::size_t>(256, 8 * (d + 1));
  return (base + align - 1) / align * align;
}

std::vector<Complex> grid_values(const UniPoly& f, std::size_t n) {
  require_grid(f.degree(), n);
  FftwBuffer buf(n);
  for (std::size_t s = 0; s < f.coeffs().size(); ++s) {
    buf.data[s][0] = f.coeffs()[s].real();
    buf.data[s][1] = f.coeffs()[s].imag();
  }
  const int dims[1] = {static_cast<int>(n)};
  backward_in_place(buf, 1, dims);
  std::vector<Complex> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = {buf.data[t][0], buf.data[t][1]};
  return out;
}

ComplexMatrix grid_values(const BiPoly& f, std::size_t n) {
  require_grid(f.max_degree(), n);
  FftwBuffer buf(n * n);
  const auto& c = f.coeffs();
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      if (static_cast<std::size_t>(j) >= n || static_cast<std::size_t>(k) >= n) continue;  // zero padding rows
      buf.data[j * n + k][0] = c(j, k).real();
      buf.data[j * n + k][1] = c(j, k).imag();
    }
  }
  const int dims[2] = {static_cast<int>(n), static_cast<int>(n)};
  backward_in_place(buf, 2, dims);
  ComplexMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out(a, b) = {buf.data[a * n + b][0], buf.data[a * n + b][1]};
  return out;
}

double sup_norm(const UniPoly& f, std::size_t align) {
  if (f.is_zero()) return 0.0;
  const auto values = grid_values(f, oversampled_grid_size(f.degree(), align));
  double top = 0.0;
  for (const Complex& v : values) top = std::max(top, std::abs(v));
  return top;
}

double sup_norm(const BiPoly& f, std::size_t align) {
  const int d = f.max_degree();
  if (d < 0) return 0.0;
  return grid_values(f, oversampled_grid_size(d, align)).cwiseAbs().maxCoeff();
}

}  // namespace ccalc
