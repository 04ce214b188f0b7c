#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qgroove/analytic.hpp"
#include "qgroove/field.hpp"
#include "qgroove/potential.hpp"
#include "qgroove/propagator.hpp"
#include "qgroove/spectrum.hpp"

namespace qgroove {

struct TwoParticleState {
  Statistics statistics;
  WaveField field;
};

/// Symmetrized/antisymmetrized product of the two incoming packets
/// exp[-(omega/2 hbar)(x -+ (1 + d0/2))^2], one per channel, renormalized.
inline TwoParticleState build_initial(const Grid1D& grid, Statistics stats,
                                      const ChannelPotential& channel, double hbar) {
  const double center = 1.0 + 0.5 * channel.d0;
  const WaveField left = gaussian_packet(grid, -center, channel.omega, hbar);
  const WaveField right = gaussian_packet(grid, +center, channel.omega, hbar);
  WaveField f(grid, grid);
  const double sign = stats == Statistics::boson ? 1.0 : -1.0;
  for (int i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < grid.size(); ++j) {
      f(i, j) = left(i) * right(j) + sign * left(j) * right(i);
    }
  }
  const double nrm = f.total_probability();
  if (nrm < 1e-6) {
    throw std::invalid_argument(
        "build_initial: packet overlap degenerates the antisymmetrized state");
  }
  f.normalize();
  return {stats, std::move(f)};
}

struct StatisticsRun {
  std::vector<double> times;
  std::vector<double> p_same;
  std::vector<double> p_diff;
  bool plateau_ok = false;     // P_same variation < 0.01 over the last 10%
  bool start_decoupled = true; // separation within 1e-6 of asymptote at t_start
  double max_parity_defect = 0.0;
  WaveField final_field;

  double final_p_same() const { return p_same.back(); }
  double final_p_diff() const { return p_diff.back(); }

  /// First time P_same >= P_diff, if any.
  std::optional<double> first_crossing() const {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (p_same[i] >= p_diff[i]) return times[i];
    }
    return std::nullopt;
  }

  /// First interior local maximum of P_same(t) above `floor`: the time the
  /// first completed flip is visible in the series.
  std::optional<double> first_flip_peak(double floor = 0.05) const {
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
      if (p_same[i] > floor && p_same[i] >= p_same[i - 1] && p_same[i] > p_same[i + 1]) {
        return times[i];
      }
    }
    return std::nullopt;
  }
};

/// Paraxial two-particle run: sweeps the channel past the pair, applying the
/// (optional) effective interaction, and records quadrant probabilities.
/// Exchange parity is monitored against the input statistics.
inline StatisticsRun run_statistics_experiment(const TwoParticleState& state,
                                               const ChannelPotential& channel,
                                               const PairInteraction* interaction,
                                               const ParaxialConfig& par,
                                               const PropagationConfig& cfg) {
  cfg.validate();
  WaveField field = state.field;
  StatisticsRun out{.final_field = WaveField(field.axis(0), field.axis(1))};
  out.start_decoupled = paraxial_start_decoupled(channel, par, cfg.t_start);
  const int parity_sign = state.statistics == Statistics::boson ? +1 : -1;
  const int n_steps = cfg.step_count();
  const int parity_stride = std::max(1, n_steps / 10);
  int last_parity_check = -parity_stride;
  auto rec = propagate_paraxial_pair(
      field, channel, interaction, par, cfg,
      [&](int step, double, const WaveField& f) {
        if (step - last_parity_check >= parity_stride || step == n_steps) {
          out.max_parity_defect =
              std::max(out.max_parity_defect, exchange_parity_defect(f, parity_sign));
          last_parity_check = step;
        }
      });
  out.times = std::move(rec.times);
  out.p_same = std::move(rec.first);
  out.p_diff = std::move(rec.second);
  out.final_field = std::move(field);

  const double t_span = cfg.t_end - cfg.t_start;
  double lo = 2.0, hi = -1.0;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    if (out.times[i] >= cfg.t_end - 0.1 * t_span) {
      lo = std::min(lo, out.p_same[i]);
      hi = std::max(hi, out.p_same[i]);
    }
  }
  out.plateau_ok = (hi - lo) < 0.01;
  return out;
}

struct SweepPoint {
  InteractionKind kind = InteractionKind::coulomb;
  double v0 = 0.0;
  double epsilon = 1.0;
  double b = 0.25;
  double v_bar_exact = 0.0;
  double v_bar_gaussian = 0.0;
  double omega_split = 0.0;  // Omega from the frozen spectrum
  double abscissa = 0.0;     // |V_bar| / (2 hbar Omega)
  double p_same = 0.0;
  double p_diff = 0.0;
  bool plateau_ok = false;
  bool ok = false;
  std::string error;
};

namespace detail {

template <class Job>
inline void run_pool(int n_workers, int n_jobs, const Job& job) {
  if (n_workers <= 1 || n_jobs <= 1) {
    for (int i = 0; i < n_jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n_jobs; i = next.fetch_add(1)) job(i);
  };
  std::vector<std::thread> pool;
  const int k = std::min(n_workers, n_jobs);
  pool.reserve(k);
  for (int w = 0; w < k; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// One statistics run per V0 value of the given interaction family. Failures
/// of individual points are recorded and the sweep continues. Results come
/// back in the V0 grid order regardless of scheduling.
inline std::vector<SweepPoint> interaction_sweep(
    Statistics stats, InteractionKind kind, double epsilon, double b,
    const std::vector<double>& v0_grid, double interaction_sigma_z,
    const ChannelPotential& channel, const ParaxialConfig& par, const PropagationConfig& cfg,
    const DoubleWellSpectrum& spectrum, int n_workers = 1) {
  const LocalizedPair states = localized_states(spectrum);
  const BellBasis basis = bell_basis(states);
  const double omega = spectrum.omega_split(cfg.hbar);
  std::vector<SweepPoint> out(v0_grid.size());
  detail::run_pool(n_workers, static_cast<int>(v0_grid.size()), [&](int i) {
    SweepPoint& p = out[i];
    p.kind = kind;
    p.v0 = v0_grid[i];
    p.epsilon = epsilon;
    p.b = b;
    p.omega_split = omega;
    try {
      const PairInteraction pair(InteractionPotential(kind, p.v0, epsilon, b),
                                 interaction_sigma_z);
      const MeanInteraction mi = mean_interaction(basis, states, pair, channel.d0);
      p.v_bar_exact = mi.v_bar_exact;
      p.v_bar_gaussian = mi.v_bar_gaussian;
      p.abscissa = std::abs(mi.v_bar_exact) / spectrum.splitting();
      const TwoParticleState initial = build_initial(Grid1D(basis.grid), stats, channel, cfg.hbar);
      const StatisticsRun run =
          run_statistics_experiment(initial, channel, p.v0 == 0.0 ? nullptr : &pair, par, cfg);
      p.p_same = run.final_p_same();
      p.p_diff = run.final_p_diff();
      p.plateau_ok = run.plateau_ok;
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
  });
  return out;
}

struct InteractionFamily {
  InteractionKind kind = InteractionKind::coulomb;
  double epsilon = 1.0;
  double b = 0.25;
  std::string label;
};

struct UniversalityCurve {
  InteractionFamily family;
  std::vector<SweepPoint> points;  // sorted by abscissa
};

/// V0 value that puts the family at the requested |V_bar|/(2 hbar Omega),
/// using the linearity of V_bar in V0.
inline double v0_for_abscissa(const InteractionFamily& fam, double target_abscissa,
                              double interaction_sigma_z, const ChannelPotential& channel,
                              const DoubleWellSpectrum& spectrum, const BellBasis& basis,
                              const LocalizedPair& states) {
  const PairInteraction unit(InteractionPotential(fam.kind, 1.0, fam.epsilon, fam.b),
                             interaction_sigma_z);
  const double v_bar_unit = mean_interaction(basis, states, unit, channel.d0).v_bar_exact;
  if (v_bar_unit == 0.0) throw std::runtime_error("v0_for_abscissa: V_bar vanishes at V0 = 1");
  return target_abscissa * spectrum.splitting() / std::abs(v_bar_unit);
}

/// Bosonic same-channel probability for several interaction families on the
/// common abscissa |V_bar|/(2 hbar Omega). Each family is sampled at the
/// requested abscissa targets (exactly, via the V0 -> V_bar linearity).
inline std::vector<UniversalityCurve> universality_curve(
    const std::vector<InteractionFamily>& families, const std::vector<double>& abscissa_targets,
    double interaction_sigma_z, const ChannelPotential& channel, const ParaxialConfig& par,
    const PropagationConfig& cfg, const DoubleWellSpectrum& spectrum, int n_workers = 1) {
  const LocalizedPair states = localized_states(spectrum);
  const BellBasis basis = bell_basis(states);
  std::vector<UniversalityCurve> out(families.size());
  struct Task {
    int family;
    double v0;
  };
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < families.size(); ++f) {
    out[f].family = families[f];
    for (double a : abscissa_targets) {
      tasks.push_back({static_cast<int>(f),
                       a == 0.0 ? 0.0
                                : v0_for_abscissa(families[f], a, interaction_sigma_z, channel,
                                                  spectrum, basis, states)});
    }
  }
  std::vector<std::vector<SweepPoint>> results(families.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    results[f].resize(abscissa_targets.size());
  }
  detail::run_pool(n_workers, static_cast<int>(tasks.size()), [&](int i) {
    const Task& task = tasks[i];
    const InteractionFamily& fam = families[task.family];
    auto pts = interaction_sweep(Statistics::boson, fam.kind, fam.epsilon, fam.b, {task.v0},
                                 interaction_sigma_z, channel, par, cfg, spectrum, 1);
    results[task.family][i % abscissa_targets.size()] = pts[0];
  });
  for (std::size_t f = 0; f < families.size(); ++f) {
    out[f].points = std::move(results[f]);
    std::sort(out[f].points.begin(), out[f].points.end(),
              [](const SweepPoint& a, const SweepPoint& b2) { return a.abscissa < b2.abscissa; });
  }
  return out;
}

/// Linear interpolation of a family curve at the given abscissa.
inline double curve_value_at(const UniversalityCurve& c, double abscissa) {
  const auto& pts = c.points;
  if (pts.empty()) throw std::runtime_error("curve_value_at: empty curve");
  if (abscissa <= pts.front().abscissa) return pts.front().p_same;
  if (abscissa >= pts.back().abscissa) return pts.back().p_same;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (abscissa <= pts[i].abscissa) {
      const double a0 = pts[i - 1].abscissa, a1 = pts[i].abscissa;
      const double w = (abscissa - a0) / (a1 - a0);
      return (1.0 - w) * pts[i - 1].p_same + w * pts[i].p_same;
    }
  }
  return pts.back().p_same;
}

}  // namespace qgroove
