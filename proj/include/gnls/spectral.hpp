#pragma once

// Periodic truncation of the real line, unitary discrete Fourier transform,
// dealiased polynomial nonlinearities and the free Schrodinger propagator.
//
// Convention: on [-L, L) with n collocation points x_j = -L + 2Lj/n and
// frequencies xi_k = pi k / L, k in [-n/2, n/2),
//
//     u(x)  = (2L)^{-1/2} sum_k c_k exp(i xi_k x)
//     c_k   = sqrt(dx / n) sum_j u_j exp(-i xi_k x_j),      dx = 2L / n
//
// so that sum_k |c_k|^2 = dx sum_j |u_j|^2 and c_k ~ (2L)^{-1/2} * (continuous
// transform of u at xi_k). Discrete norms approximate L^2(R) norms.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gnls {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct GridSpec {
  std::size_t n_modes = 1024;
  double half_length = 32.0;
  // Zero-padding ratio for products. Polynomial nonlinearities of degree p
  // always pad by at least (p + 1) / 2 regardless of this value.
  double dealias_pad = 2.0;

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;

  double dx() const { return 2.0 * half_length / static_cast<double>(n_modes); }
  double dxi() const;
  double x(std::size_t j) const;
  double xi(int mode) const;
  /// Largest |xi_k| on the grid (the Nyquist frequency).
  double xi_max() const;

  int min_mode() const { return -static_cast<int>(n_modes / 2); }
  int max_mode() const { return static_cast<int>(n_modes / 2) - 1; }

  /// Storage is in FFT order: index i holds mode i for i < n/2, else i - n.
  int mode_at(std::size_t index) const;
  std::size_t index_of(int mode) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Samples u(x_j) at the collocation points.
class SpatialField {
 public:
  explicit SpatialField(const GridSpec& grid);
  SpatialField(const GridSpec& grid, ComplexVector samples);

  const GridSpec& grid() const { return grid_; }
  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Complex& operator[](std::size_t j) const { return samples_[j]; }
  Complex& operator[](std::size_t j) { return samples_[j]; }

  /// Trapezoid (periodic) approximation of the L^2 norm.
  double l2_norm() const;
  double max_abs() const;

  static SpatialField from_function(const GridSpec& grid,
                                    const std::function<Complex(double)>& fn);

 private:
  GridSpec grid_;
  ComplexVector samples_;
};

/// Fourier coefficients c_k in FFT storage order.
class SpectralField {
 public:
  explicit SpectralField(const GridSpec& grid);
  SpectralField(const GridSpec& grid, ComplexVector coeffs);

  const GridSpec& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex mode(int k) const { return coeffs_[grid_.index_of(k)]; }
  Complex& mode(int k) { return coeffs_[grid_.index_of(k)]; }

  double l2_norm() const;
  double max_abs() const;

  /// Multiplies every coefficient by symbol(xi_k).
  SpectralField multiplied(const std::function<Complex(double)>& symbol) const;
  SpectralField conjugate() const;  // transform of the complex conjugate

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);

  static SpectralField single_mode(const GridSpec& grid, int k, Complex value);

 private:
  GridSpec grid_;
  ComplexVector coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex scale, SpectralField a);

/// Hermitian inner product sum_k conj(a_k) b_k = int conj(a) b dx.
Complex inner(const SpectralField& a, const SpectralField& b);

SpectralField to_spectral(const SpatialField& u);
SpatialField to_spatial(const SpectralField& f);

/// Evaluates f at the m equispaced points of the padded grid on [-L, L)
/// (m >= n_modes). No information is lost or invented.
ComplexVector padded_samples(const SpectralField& f, std::size_t m);
/// Projects m padded samples back onto the modes retained by `grid`.
SpectralField from_padded_samples(const GridSpec& grid, std::span<const Complex> samples);
/// Full spectrum of m padded samples, returned in FFT order of length m.
ComplexVector padded_spectrum(const GridSpec& grid, std::span<const Complex> samples);

/// Padded grid size on which every product of `degree` fields from `grid`
/// is computed without aliasing into the retained modes.
std::size_t dealiased_size(const GridSpec& grid, int degree);

/// Rejects p unless it is an odd integer >= 3.
void require_odd_power(int p);

/// |u|^{p-1} u, exactly dealiased: equals the degree-p convolution of the
/// retained modes truncated back to the grid.
SpectralField nonlinearity(const SpectralField& u, int p);
SpatialField nonlinearity(const SpatialField& u, int p);

/// Exact product of two fields truncated to the common grid.
SpectralField product(const SpectralField& u, const SpectralField& v);

/// int |u|^q dx for even q, exact on the discrete band (no aliasing).
double integrate_abs_power(const SpectralField& u, int q);

/// e^{i t Delta}: multiplies c_k by exp(-i xi_k^2 t).
SpectralField free_evolution(const SpectralField& f, double t);

}  // namespace gnls
