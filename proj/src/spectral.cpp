#include "gnls/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace gnls {

namespace {

// FFTW's planner is not thread safe; execution on new arrays is. Plans are
// created once per (size, sign) with FFTW_UNALIGNED so any buffer works.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    ComplexVector scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

// Unnormalized in-place DFT: sign -1 forward, +1 backward.
void execute_fft(ComplexVector& data, int sign) {
  fftw_plan plan = PlanCache::instance().get(data.size(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

int mode_in(std::size_t index, std::size_t m) {
  return index < m / 2 ? static_cast<int>(index)
                       : static_cast<int>(index) - static_cast<int>(m);
}

std::size_t index_in(int mode, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  long long i = mode % mm;
  if (i < 0) i += mm;
  return static_cast<std::size_t>(i);
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// GridSpec

void GridSpec::validate() const {
  if (n_modes < 2 || !std::has_single_bit(n_modes))
    throw std::invalid_argument("grid.n_modes must be a power of two >= 2");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw std::invalid_argument("grid.half_length must be positive");
  if (!(dealias_pad >= 1.0) || !std::isfinite(dealias_pad))
    throw std::invalid_argument("grid.dealias_pad must be >= 1");
}

double GridSpec::dxi() const { return std::numbers::pi / half_length; }

double GridSpec::x(std::size_t j) const {
  return -half_length + dx() * static_cast<double>(j);
}

double GridSpec::xi(int mode) const { return dxi() * mode; }

double GridSpec::xi_max() const { return dxi() * static_cast<double>(n_modes / 2); }

int GridSpec::mode_at(std::size_t index) const { return mode_in(index, n_modes); }

std::size_t GridSpec::index_of(int mode) const {
  if (mode < min_mode() || mode > max_mode())
    throw std::out_of_range("mode outside the grid band");
  return index_in(mode, n_modes);
}

// ---------------------------------------------------------------------------
// Fields

SpatialField::SpatialField(const GridSpec& grid) : SpatialField(grid, ComplexVector(grid.n_modes)) {}

SpatialField::SpatialField(const GridSpec& grid, ComplexVector samples)
    : grid_(grid), samples_(std::move(samples)) {
  grid_.validate();
  if (samples_.size() != grid_.n_modes)
    throw std::invalid_argument("SpatialField: sample count does not match grid");
}

double SpatialField::l2_norm() const {
  double sum = 0.0;
  for (const auto& z : samples_) sum += std::norm(z);
  return std::sqrt(sum * grid_.dx());
}

double SpatialField::max_abs() const {
  double m = 0.0;
  for (const auto& z : samples_) m = std::max(m, std::abs(z));
  return m;
}

SpatialField SpatialField::from_function(const GridSpec& grid,
                                         const std::function<Complex(double)>& fn) {
  ComplexVector samples(grid.n_modes);
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = fn(grid.x(j));
  return SpatialField(grid, std::move(samples));
}

SpectralField::SpectralField(const GridSpec& grid) : SpectralField(grid, ComplexVector(grid.n_modes)) {}

SpectralField::SpectralField(const GridSpec& grid, ComplexVector coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  grid_.validate();
  if (coeffs_.size() != grid_.n_modes)
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (const auto& z : coeffs_) sum += std::norm(z);
  return std::sqrt(sum);
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

SpectralField SpectralField::multiplied(const std::function<Complex(double)>& symbol) const {
  SpectralField out(*this);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] *= symbol(grid_.xi(grid_.mode_at(i)));
  return out;
}

SpectralField SpectralField::conjugate() const {
  // conj(u) has coefficients conj(c_{-k}); the Nyquist mode -n/2 has no
  // partner on the grid and maps to itself.
  SpectralField out(grid_);
  for (int k = grid_.min_mode(); k <= grid_.max_mode(); ++k) {
    const int partner = (k == grid_.min_mode()) ? k : -k;
    out.mode(k) = std::conj(mode(partner));
  }
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& z : coeffs_) z *= scale;
  return *this;
}

SpectralField SpectralField::single_mode(const GridSpec& grid, int k, Complex value) {
  SpectralField out(grid);
  out.mode(k) = value;
  return out;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex scale, SpectralField a) { return a *= scale; }

Complex inner(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner: grid mismatch");
  Complex sum{0.0, 0.0};
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) sum += std::conj(ca[i]) * cb[i];
  return sum;
}

// ---------------------------------------------------------------------------
// Transforms

ComplexVector padded_samples(const SpectralField& f, std::size_t m) {
  const GridSpec& grid = f.grid();
  if (m < grid.n_modes) throw std::invalid_argument("padded_samples: m < n_modes");
  ComplexVector buf(m, Complex{0.0, 0.0});
  for (int k = grid.min_mode(); k <= grid.max_mode(); ++k)
    buf[index_in(k, m)] = parity(k) * f.mode(k);
  execute_fft(buf, FFTW_BACKWARD);
  const double scale = 1.0 / std::sqrt(2.0 * grid.half_length);
  for (auto& z : buf) z *= scale;
  return buf;
}

ComplexVector padded_spectrum(const GridSpec& grid, std::span<const Complex> samples) {
  const std::size_t m = samples.size();
  ComplexVector buf(samples.begin(), samples.end());
  execute_fft(buf, FFTW_FORWARD);
  const double scale = std::sqrt(2.0 * grid.half_length) / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) buf[i] *= scale * parity(mode_in(i, m));
  return buf;
}

SpectralField from_padded_samples(const GridSpec& grid, std::span<const Complex> samples) {
  const std::size_t m = samples.size();
  if (m < grid.n_modes) throw std::invalid_argument("from_padded_samples: m < n_modes");
  const ComplexVector full = padded_spectrum(grid, samples);
  SpectralField out(grid);
  for (int k = grid.min_mode(); k <= grid.max_mode(); ++k) out.mode(k) = full[index_in(k, m)];
  return out;
}

SpectralField to_spectral(const SpatialField& u) {
  return from_padded_samples(u.grid(), u.samples());
}

SpatialField to_spatial(const SpectralField& f) {
  return SpatialField(f.grid(), padded_samples(f, f.grid().n_modes));
}

std::size_t dealiased_size(const GridSpec& grid, int degree) {
  const double n = static_cast<double>(grid.n_modes);
  const double ratio = std::max(grid.dealias_pad, 0.5 * (degree + 1));
  auto m = static_cast<std::size_t>(std::ceil(ratio * n));
  m += m % 2;
  return std::max(m, grid.n_modes);
}

void require_odd_power(int p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("nonlinearity power p must be an odd integer >= 3");
}

SpectralField nonlinearity(const SpectralField& u, int p) {
  require_odd_power(p);
  const std::size_t m = dealiased_size(u.grid(), p);
  ComplexVector fine = padded_samples(u, m);
  const int half = (p - 1) / 2;
  for (auto& z : fine) {
    const double r2 = std::norm(z);
    double w = 1.0;
    for (int i = 0; i < half; ++i) w *= r2;
    z *= w;
  }
  return from_padded_samples(u.grid(), fine);
}

SpatialField nonlinearity(const SpatialField& u, int p) {
  return to_spatial(nonlinearity(to_spectral(u), p));
}

SpectralField product(const SpectralField& u, const SpectralField& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("product: grid mismatch");
  const std::size_t m = dealiased_size(u.grid(), 2);
  ComplexVector a = padded_samples(u, m);
  const ComplexVector b = padded_samples(v, m);
  for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
  return from_padded_samples(u.grid(), a);
}

double integrate_abs_power(const SpectralField& u, int q) {
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("integrate_abs_power: q must be even");
  const std::size_t m = dealiased_size(u.grid(), q);
  const ComplexVector fine = padded_samples(u, m);
  const double dx = 2.0 * u.grid().half_length / static_cast<double>(m);
  double sum = 0.0;
  for (const auto& z : fine) {
    const double r2 = std::norm(z);
    double w = 1.0;
    for (int i = 0; i < q / 2; ++i) w *= r2;
    sum += w;
  }
  return sum * dx;
}

SpectralField free_evolution(const SpectralField& f, double t) {
  if (t == 0.0) return f;
  return f.multiplied([t](double xi) { return std::polar(1.0, -xi * xi * t); });
}

}  // namespace gnls
