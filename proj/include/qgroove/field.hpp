#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qgroove/fft.hpp"
#include "qgroove/grid.hpp"

namespace qgroove {

/// Complex amplitude on a uniform 1D grid or on the outer product of two 1D
/// grids (row-major, axis 0 slowest). Keeps the last computed total
/// probability for norm bookkeeping.
class WaveField {
 public:
  explicit WaveField(const Grid1D& axis)
      : axis0_(axis), amp_(static_cast<std::size_t>(axis.size())) {}

  WaveField(const Grid1D& axis0, const Grid1D& axis1)
      : axis0_(axis0),
        axis1_(axis1),
        amp_(static_cast<std::size_t>(axis0.size()) * axis1.size()) {}

  int rank() const { return axis1_ ? 2 : 1; }

  const Grid1D& axis(int d) const {
    if (d == 0) return axis0_;
    if (d == 1 && axis1_) return *axis1_;
    throw std::out_of_range("WaveField::axis");
  }

  int size() const { return static_cast<int>(amp_.size()); }

  std::complex<double>* data() { return amp_.data(); }
  const std::complex<double>* data() const { return amp_.data(); }

  std::complex<double>& operator()(int i) { return amp_[i]; }
  const std::complex<double>& operator()(int i) const { return amp_[i]; }

  std::complex<double>& operator()(int i, int j) { return amp_[std::size_t(i) * axis(1).size() + j]; }
  const std::complex<double>& operator()(int i, int j) const {
    return amp_[std::size_t(i) * axis(1).size() + j];
  }

  double cell_volume() const {
    double v = axis0_.spacing();
    if (axis1_) v *= axis1_->spacing();
    return v;
  }

  double total_probability() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    last_norm_ = s * cell_volume();
    return last_norm_;
  }

  /// Last value computed by total_probability()/normalize().
  double tracked_norm() const { return last_norm_; }

  void normalize() {
    const double n = total_probability();
    if (!(n > 0.0)) throw std::runtime_error("WaveField::normalize: zero norm");
    const double s = 1.0 / std::sqrt(n);
    for (auto& a : amp_) a *= s;
    last_norm_ = 1.0;
  }

 private:
  Grid1D axis0_;
  std::optional<Grid1D> axis1_;
  ComplexArray amp_;
  mutable double last_norm_ = 0.0;
};

/// Normalized Gaussian exp[-(omega/2 hbar)(x-center)^2] exp(i momentum x / hbar),
/// the transverse ground state of a well of frequency omega. The packet must
/// fit: center at least six standard deviations from both grid edges.
inline WaveField gaussian_packet(const Grid1D& grid, double center, double width_omega,
                                 double hbar, double momentum = 0.0) {
  if (!(width_omega > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("gaussian_packet: omega and hbar must be positive");
  }
  const double sigma = std::sqrt(hbar / (2.0 * width_omega));
  if (center - 6.0 * sigma < grid.x_min() || center + 6.0 * sigma > grid.x_max()) {
    throw std::invalid_argument("gaussian_packet: packet does not fit 6 sigma inside the grid");
  }
  WaveField f(grid);
  const double alpha = width_omega / (2.0 * hbar);
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.point(j);
    const double u = x - center;
    f(j) = std::polar(std::exp(-alpha * u * u), momentum * x / hbar);
  }
  f.normalize();
  return f;
}

/// psi(x0, x1) = a(x0) b(x1); not normalized.
inline WaveField outer_product(const WaveField& a, const WaveField& b) {
  WaveField f(a.axis(0), b.axis(0));
  for (int i = 0; i < a.axis(0).size(); ++i) {
    for (int j = 0; j < b.axis(0).size(); ++j) f(i, j) = a(i) * b(j);
  }
  return f;
}

inline std::complex<double> inner_product(const WaveField& a, const WaveField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: size mismatch");
  std::complex<double> s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::conj(a(i)) * b(i);
  return s * a.cell_volume();
}

struct LeftRightSplit {
  double left = 0.0;
  double right = 0.0;
};

/// Probability mass in x < 0 vs x >= 0 along axis 0 (the x = 0 grid line
/// counts as right). For 2D fields the other axis is integrated over.
inline LeftRightSplit probability_left_right(const WaveField& f) {
  LeftRightSplit out;
  const int n0 = f.axis(0).size();
  const int n1 = f.rank() == 2 ? f.axis(1).size() : 1;
  for (int i = 0; i < n0; ++i) {
    double row = 0.0;
    for (int j = 0; j < n1; ++j) row += std::norm(f.data()[std::size_t(i) * n1 + j]);
    (f.axis(0).point(i) < 0.0 ? out.left : out.right) += row;
  }
  out.left *= f.cell_volume();
  out.right *= f.cell_volume();
  return out;
}

struct QuadrantSplit {
  double same = 0.0;
  double different = 0.0;
};

/// Two-particle quadrant masses: "same" collects sign(x1) == sign(x2)
/// (zero counting as positive), "different" the complement.
inline QuadrantSplit quadrant_probabilities(const WaveField& f) {
  if (f.rank() != 2) throw std::invalid_argument("quadrant_probabilities: need a 2D field");
  QuadrantSplit out;
  const int n0 = f.axis(0).size();
  const int n1 = f.axis(1).size();
  for (int i = 0; i < n0; ++i) {
    const bool ri = f.axis(0).point(i) >= 0.0;
    for (int j = 0; j < n1; ++j) {
      const bool rj = f.axis(1).point(j) >= 0.0;
      const double m = std::norm(f(i, j));
      (ri == rj ? out.same : out.different) += m;
    }
  }
  out.same *= f.cell_volume();
  out.different *= f.cell_volume();
  return out;
}

inline double centroid(const WaveField& f) {
  if (f.rank() != 1) throw std::invalid_argument("centroid: need a 1D field");
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += f.axis(0).point(j) * std::norm(f(j));
  return s * f.cell_volume() / f.total_probability();
}

inline double variance(const WaveField& f) {
  if (f.rank() != 1) throw std::invalid_argument("variance: need a 1D field");
  const double mu = centroid(f);
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) {
    const double u = f.axis(0).point(j) - mu;
    s += u * u * std::norm(f(j));
  }
  return s * f.cell_volume() / f.tracked_norm();
}

/// Mass in the outermost two cells of every edge.
inline double boundary_tail_mass(const WaveField& f) {
  double s = 0.0;
  const int n0 = f.axis(0).size();
  if (f.rank() == 1) {
    for (int j : {0, 1, n0 - 2, n0 - 1}) s += std::norm(f(j));
  } else {
    const int n1 = f.axis(1).size();
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        if (i <= 1 || i >= n0 - 2 || j <= 1 || j >= n1 - 2) s += std::norm(f(i, j));
      }
    }
  }
  return s * f.cell_volume();
}

/// max |psi(x1,x2) - s psi(x2,x1)| with s = +1 (symmetric) or -1 (antisymmetric).
inline double exchange_parity_defect(const WaveField& f, int exchange_sign) {
  if (f.rank() != 2 || !(f.axis(0) == f.axis(1))) {
    throw std::invalid_argument("exchange_parity_defect: need a square 2D field");
  }
  double worst = 0.0;
  const int n = f.axis(0).size();
  const double s = exchange_sign >= 0 ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      worst = std::max(worst, std::abs(f(i, j) - s * f(j, i)));
    }
  }
  return worst;
}

/// d psi / dx by spectral differentiation (1D).
inline WaveField spectral_derivative(const WaveField& f) {
  if (f.rank() != 1) throw std::invalid_argument("spectral_derivative: need a 1D field");
  WaveField out = f;
  const int n = out.size();
  SpectralTransform fft(out.data(), n);
  fft.forward();
  for (int j = 0; j < n; ++j) {
    out(j) *= std::complex<double>(0.0, out.axis(0).wavenumber(j)) / double(n);
  }
  fft.backward();
  return out;
}

/// Probability mass with wavenumber below k_threshold along the given axis.
inline double momentum_mass_below(const WaveField& f, int axis, double k_threshold) {
  WaveField tmp = f;
  const int n0 = tmp.axis(0).size();
  const int n1 = tmp.rank() == 2 ? tmp.axis(1).size() : 1;
  SpectralTransform fft(tmp.data(), n0, tmp.rank() == 2 ? n1 : 0);
  fft.forward();
  double below = 0.0, total = 0.0;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      const double m = std::norm(tmp.data()[std::size_t(i) * n1 + j]);
      const double k = axis == 0 ? tmp.axis(0).wavenumber(i) : tmp.axis(1).wavenumber(j);
      total += m;
      if (k < k_threshold) below += m;
    }
  }
  return total > 0.0 ? below / total : 0.0;
}

}  // namespace qgroove
