#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgroove {

/// Uniform periodic grid on [x_min, x_max): points x_j = x_min + j dx,
/// wavenumbers in standard DFT ordering with k_max = pi/dx.
class Grid1D {
 public:
  Grid1D(int n_points, double x_min, double x_max)
      : n_(n_points), x_min_(x_min), x_max_(x_max) {
    if (n_ < 64 || (n_ & (n_ - 1)) != 0) {
      throw std::invalid_argument("Grid1D: n_points must be a power of two >= 64");
    }
    if (!(x_max > x_min)) {
      throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    }
  }

  int size() const { return n_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double length() const { return x_max_ - x_min_; }
  double spacing() const { return length() / n_; }

  double point(int j) const { return x_min_ + j * spacing(); }

  double wavenumber(int j) const {
    const double dk = 2.0 * std::numbers::pi / length();
    return (j < n_ / 2) ? j * dk : (j - n_) * dk;
  }

  bool operator==(const Grid1D& o) const {
    return n_ == o.n_ && x_min_ == o.x_min_ && x_max_ == o.x_max_;
  }

 private:
  int n_;
  double x_min_;
  double x_max_;
};

}  // namespace qgroove
