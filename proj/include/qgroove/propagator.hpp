#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgroove/field.hpp"
#include "qgroove/potential.hpp"

namespace qgroove {

enum class Splitting { lie, strang };

struct PropagationConfig {
  double dt = 1e-3;
  double t_start = 0.0;
  double t_end = 1.0;
  Splitting splitting = Splitting::strang;
  double hbar = 6.0;
  int snapshot_stride = 100;
  double tail_abort_threshold = 1e-4;

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("PropagationConfig: dt must be positive");
    if (!(t_end > t_start)) throw std::invalid_argument("PropagationConfig: t_end must exceed t_start");
    if (snapshot_stride < 1) throw std::invalid_argument("PropagationConfig: snapshot_stride >= 1");
    if (!(hbar > 0.0)) throw std::invalid_argument("PropagationConfig: hbar must be positive");
  }

  int step_count() const { return static_cast<int>(std::llround((t_end - t_start) / dt)); }
};

struct ParaxialConfig {
  double p0 = 30.0;  // longitudinal momentum; sweep velocity is p0 (m = 1)

  void validate() const {
    if (!(p0 > 0.0)) throw std::invalid_argument("ParaxialConfig: p0 must be positive");
  }
};

/// Observation hook: called with (step_index, time, field) in position space
/// after every snapshot_stride steps and at the final step. Step 0 is the
/// initial state.
using Observer = std::function<void(int step, double t, const WaveField&)>;

namespace detail {

inline void apply_phase(std::complex<double>* a, const std::complex<double>* phase, int n) {
  for (int i = 0; i < n; ++i) a[i] *= phase[i];
}

// Row x column phase product for separable 2D factors: a[i,j] *= r[i]*c[j].
inline void apply_phase_outer(std::complex<double>* a, const std::complex<double>* row,
                              const std::complex<double>* col, int n0, int n1) {
  for (int i = 0; i < n0; ++i) {
    const std::complex<double> ri = row[i];
    std::complex<double>* line = a + std::size_t(i) * n1;
    for (int j = 0; j < n1; ++j) line[j] *= ri * col[j];
  }
}

inline ComplexArray kinetic_phase_1d(const Grid1D& g, double hbar, double dt, double scale) {
  ComplexArray p(g.size());
  for (int j = 0; j < g.size(); ++j) {
    const double k = g.wavenumber(j);
    p[j] = std::polar(scale, -hbar * k * k * 0.5 * dt);
  }
  return p;
}

}  // namespace detail

/// Split-operator stepper for one field (1D or 2D). The kinetic factor acts
/// in k-space; the potential factor is supplied per step as a phase pass on
/// the position-space amplitudes. Consecutive kinetic half-steps are merged
/// between observations, so a Strang step costs two transforms amortized.
class SplitStepper {
 public:
  /// fill_potential_phase(t, field): multiply field amplitudes in place by
  /// exp(-i U dt / hbar) for the potential at time t.
  using PotentialPhase = std::function<void(double t, WaveField&)>;

  SplitStepper(WaveField& field, const PropagationConfig& cfg)
      : field_(field),
        cfg_(cfg),
        fft_(field.data(), field.axis(0).size(), field.rank() == 2 ? field.axis(1).size() : 0) {
    cfg.validate();
    const int n = field.size();
    const double inv_n = 1.0 / n;
    if (field.rank() == 1) {
      half_k_ = detail::kinetic_phase_1d(field.axis(0), cfg.hbar, 0.5 * cfg.dt, 1.0);
      full_k_ = detail::kinetic_phase_1d(field.axis(0), cfg.hbar, cfg.dt, 1.0);
      for (auto& v : half_k_) v *= inv_n;
      for (auto& v : full_k_) v *= inv_n;
    } else {
      const auto h0 = detail::kinetic_phase_1d(field.axis(0), cfg.hbar, 0.5 * cfg.dt, 1.0);
      const auto h1 = detail::kinetic_phase_1d(field.axis(1), cfg.hbar, 0.5 * cfg.dt, 1.0);
      const int n0 = field.axis(0).size(), n1 = field.axis(1).size();
      half_k_.resize(n);
      full_k_.resize(n);
      for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
          const std::complex<double> h = h0[i] * h1[j] * inv_n;
          half_k_[std::size_t(i) * n1 + j] = h;
          full_k_[std::size_t(i) * n1 + j] = h * h0[i] * h1[j];
        }
      }
    }
  }

  /// Advance by cfg.step_count() steps, observing every snapshot_stride steps.
  /// The 1/N normalization of the inverse transform is folded into the kinetic
  /// phases, so every factor applied is unitary and norm drift stays at the
  /// rounding floor.
  void run(const PotentialPhase& potential, const Observer& observe = {}) {
    const int n_steps = cfg_.step_count();
    const int n = field_.size();
    if (observe) observe(0, cfg_.t_start, field_);
    int step = 0;
    while (step < n_steps) {
      const int block = std::min(cfg_.snapshot_stride, n_steps - step);
      if (cfg_.splitting == Splitting::strang) {
        fft_.forward();
        detail::apply_phase(field_.data(), half_k_.data(), n);
        for (int i = 0; i < block; ++i) {
          fft_.backward();
          const double t_mid = cfg_.t_start + (step + i + 0.5) * cfg_.dt;
          potential(t_mid, field_);
          fft_.forward();
          detail::apply_phase(field_.data(), (i + 1 < block ? full_k_ : half_k_).data(), n);
        }
        fft_.backward();
        // every kinetic phase array carries the 1/N of the backward transform
        // that follows it, so the state is correctly normalized here
      } else {
        for (int i = 0; i < block; ++i) {
          const double t_step = cfg_.t_start + (step + i) * cfg_.dt;
          potential(t_step, field_);
          fft_.forward();
          detail::apply_phase(field_.data(), full_k_.data(), n);
          fft_.backward();
        }
      }
      step += block;
      const double t_now = cfg_.t_start + step * cfg_.dt;
      if (boundary_tail_mass(field_) > cfg_.tail_abort_threshold) {
        throw std::runtime_error("propagation aborted: boundary tail mass exceeded " +
                                 std::to_string(cfg_.tail_abort_threshold) + " at t = " +
                                 std::to_string(t_now));
      }
      if (observe) observe(step, t_now, field_);
    }
  }

 private:
  WaveField& field_;
  PropagationConfig cfg_;
  SpectralTransform fft_;
  ComplexArray half_k_;
  ComplexArray full_k_;
};

/// One split-operator step (Eq.-level operation; drivers below loop blocks).
inline WaveField step(const WaveField& field, const SplitStepper::PotentialPhase& potential,
                      const PropagationConfig& cfg, double t) {
  WaveField out = field;
  PropagationConfig one = cfg;
  one.t_start = t;
  one.t_end = t + cfg.dt;
  one.snapshot_stride = 1;
  one.tail_abort_threshold = 2.0;  // a single step never aborts
  SplitStepper stepper(out, one);
  stepper.run(potential);
  return out;
}

/// Magnitude of the leading Lie splitting error, the commutator term
/// (dt^2 omega^2 / 4) <x p + p x> / hbar evaluated on the current field.
inline double step_error_estimate(const WaveField& field, double omega, const PropagationConfig& cfg) {
  if (field.rank() != 1) throw std::invalid_argument("step_error_estimate: need a 1D field");
  const WaveField dpsi = spectral_derivative(field);
  std::complex<double> xp = 0.0;
  for (int j = 0; j < field.size(); ++j) {
    const double x = field.axis(0).point(j);
    xp += std::conj(field(j)) * x * std::complex<double>(0.0, -cfg.hbar) * dpsi(j);
  }
  xp *= field.cell_volume();
  const double sym = 2.0 * xp.real();  // <xp + px> = 2 Re<xp>
  return std::abs(cfg.dt * cfg.dt * omega * omega / 4.0 * sym / cfg.hbar);
}

/// Phase pass for a static 1D potential sampled on the grid.
inline SplitStepper::PotentialPhase static_potential_phase(std::vector<double> u, double dt,
                                                           double hbar) {
  ComplexArray phase(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) phase[j] = std::polar(1.0, -u[j] * dt / hbar);
  return [phase = std::move(phase)](double, WaveField& f) {
    detail::apply_phase(f.data(), phase.data(), f.size());
  };
}

/// Phase pass for the paraxial sweep U(x, t p0) of a single particle.
inline SplitStepper::PotentialPhase paraxial_potential_phase(const ChannelPotential& channel,
                                                             const ParaxialConfig& par,
                                                             const Grid1D& grid, double dt,
                                                             double hbar) {
  return [channel, p0 = par.p0, grid, dt, hbar](double t, WaveField& f) {
    const double d = channel.separation(t * p0);
    const int n = grid.size();
    for (int j = 0; j < n; ++j) {
      f(j) *= std::polar(1.0, -channel.frozen_value(grid.point(j), d) * dt / hbar);
    }
  };
}

/// Phase pass for two particles in the paraxial sweep:
/// U(x1, t p0) + U(x2, t p0) + V(|x1 - x2|). The channel factor is separable
/// and rebuilt each step; the pair factor is fixed and precomputed per
/// distinct |x1 - x2| value.
inline SplitStepper::PotentialPhase pair_potential_phase(const ChannelPotential& channel,
                                                         const PairInteraction* interaction,
                                                         const ParaxialConfig& par,
                                                         const Grid1D& grid, double dt,
                                                         double hbar) {
  const int n = grid.size();
  ComplexArray pair_by_offset(2 * n - 1, std::complex<double>(1.0, 0.0));
  if (interaction) {
    for (int o = -(n - 1); o <= n - 1; ++o) {
      const double r = std::abs(o) * grid.spacing();
      pair_by_offset[o + n - 1] = std::polar(1.0, -(*interaction)(r)*dt / hbar);
    }
  }
  return [channel, p0 = par.p0, grid, dt, hbar, n,
          pair = std::move(pair_by_offset)](double t, WaveField& f) {
    const double d = channel.separation(t * p0);
    ComplexArray axis_phase(n);
    for (int j = 0; j < n; ++j) {
      axis_phase[j] = std::polar(1.0, -channel.frozen_value(grid.point(j), d) * dt / hbar);
    }
    for (int i = 0; i < n; ++i) {
      const std::complex<double> pi = axis_phase[i];
      std::complex<double>* line = f.data() + std::size_t(i) * n;
      const std::complex<double>* pline = pair.data() + (i + n - 1);
      for (int j = 0; j < n; ++j) line[j] *= pi * axis_phase[j] * pline[-j];
    }
  };
}

/// Snapshot record for probability time series.
struct ProbabilityRecord {
  std::vector<double> times;
  std::vector<double> first;   // P_left or P_same
  std::vector<double> second;  // P_right or P_diff
};

/// Single-particle paraxial splitter run. Returns the left/right probability
/// time series; the field is evolved in place.
inline ProbabilityRecord propagate_paraxial_single(WaveField& field, const ChannelPotential& channel,
                                                   const ParaxialConfig& par,
                                                   const PropagationConfig& cfg,
                                                   const Observer& extra_observer = {}) {
  par.validate();
  ProbabilityRecord rec;
  SplitStepper stepper(field, cfg);
  stepper.run(paraxial_potential_phase(channel, par, field.axis(0), cfg.dt, cfg.hbar),
              [&](int step, double t, const WaveField& f) {
                const auto lr = probability_left_right(f);
                rec.times.push_back(t);
                rec.first.push_back(lr.left);
                rec.second.push_back(lr.right);
                if (extra_observer) extra_observer(step, t, f);
              });
  return rec;
}

enum class PlaneFrame {
  lab,       // static U(x, z), packet carries the longitudinal momentum phase
  comoving,  // U(x, zeta + t p0), packet at rest in zeta (Galilean gauge)
};

/// Full 2D single-particle propagation over (x, z) or (x, zeta). Both frames
/// integrate both kinetic terms; they differ only by the exact Galilean
/// phase transformation.
inline ProbabilityRecord propagate_2d_single(WaveField& field, const ChannelPotential& channel,
                                             PlaneFrame frame, const ParaxialConfig& par,
                                             const PropagationConfig& cfg,
                                             const Observer& extra_observer = {}) {
  if (field.rank() != 2) throw std::invalid_argument("propagate_2d_single: need a 2D field");
  par.validate();
  const Grid1D& gx = field.axis(0);
  const Grid1D& gz = field.axis(1);
  SplitStepper::PotentialPhase phase;
  if (frame == PlaneFrame::lab) {
    ComplexArray ph(std::size_t(gx.size()) * gz.size());
    for (int i = 0; i < gx.size(); ++i) {
      for (int j = 0; j < gz.size(); ++j) {
        ph[std::size_t(i) * gz.size() + j] =
            std::polar(1.0, -channel.value(gx.point(i), gz.point(j)) * cfg.dt / cfg.hbar);
      }
    }
    phase = [ph = std::move(ph)](double, WaveField& f) {
      detail::apply_phase(f.data(), ph.data(), f.size());
    };
  } else {
    phase = [&channel, &gx, &gz, p0 = par.p0, dt = cfg.dt, hbar = cfg.hbar](double t, WaveField& f) {
      const int n1 = gz.size();
      std::vector<double> d(n1);
      for (int j = 0; j < n1; ++j) d[j] = channel.separation(gz.point(j) + t * p0);
      for (int i = 0; i < gx.size(); ++i) {
        const double x = gx.point(i);
        std::complex<double>* line = f.data() + std::size_t(i) * n1;
        for (int j = 0; j < n1; ++j) {
          line[j] *= std::polar(1.0, -channel.frozen_value(x, d[j]) * dt / hbar);
        }
      }
    };
  }
  ProbabilityRecord rec;
  SplitStepper stepper(field, cfg);
  stepper.run(phase, [&](int step, double t, const WaveField& f) {
    const auto lr = probability_left_right(f);
    rec.times.push_back(t);
    rec.first.push_back(lr.left);
    rec.second.push_back(lr.right);
    if (extra_observer) extra_observer(step, t, f);
  });
  return rec;
}

/// Two-particle paraxial propagation over (x1, x2) with optional pair
/// interaction. Records quadrant probabilities at every snapshot.
inline ProbabilityRecord propagate_paraxial_pair(WaveField& field, const ChannelPotential& channel,
                                                 const PairInteraction* interaction,
                                                 const ParaxialConfig& par,
                                                 const PropagationConfig& cfg,
                                                 const Observer& extra_observer = {}) {
  if (field.rank() != 2) throw std::invalid_argument("propagate_paraxial_pair: need a 2D field");
  par.validate();
  ProbabilityRecord rec;
  SplitStepper stepper(field, cfg);
  stepper.run(pair_potential_phase(channel, interaction, par, field.axis(0), cfg.dt, cfg.hbar),
              [&](int step, double t, const WaveField& f) {
                const auto q = quadrant_probabilities(f);
                rec.times.push_back(t);
                rec.first.push_back(q.same);
                rec.second.push_back(q.different);
                if (extra_observer) extra_observer(step, t, f);
              });
  return rec;
}

/// True when the channel separation at the start of the sweep is within
/// `tolerance` of its asymptote; reported runs warn when this fails.
inline bool paraxial_start_decoupled(const ChannelPotential& channel, const ParaxialConfig& par,
                                     double t_start, double tolerance = 1e-6) {
  const double gap = ChannelPotential::asymptotic_gap + channel.d0 -
                     channel.separation(t_start * par.p0);
  return std::abs(gap) < tolerance;
}

}  // namespace qgroove
