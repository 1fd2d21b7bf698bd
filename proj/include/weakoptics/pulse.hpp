#pragma once

// Spectral-method wavepacket propagation. Fields are complex envelopes on a
// frequency window around omega_center; the carrier is not represented.
//
// Convention: E(t) = (2 pi)^{-1/2} integral S(omega) exp(-i (omega - omega_c) t) d omega,
// so a spectral phase tau * omega delays the envelope by tau.

#include <weakoptics/weakmeas.hpp>

#include <Eigen/Dense>

#include <optional>

namespace weakoptics {

struct SpectralGrid {
  std::size_t n = 4096;
  double omega_center = 1.0;
  double omega_span = 0.64;

  /// Throws std::invalid_argument unless n is a power of two >= 64 and span > 0.
  void validate() const;

  double d_omega() const { return omega_span / static_cast<double>(n); }
  double d_t() const;
  /// omega_k = center + (k - n/2) d_omega
  double omega(std::size_t k) const;
  /// t_j = (j - n/2) d_t
  double time(std::size_t j) const;
};

class PulseField {
 public:
  static PulseField from_spectral(const SpectralGrid& grid, Eigen::VectorXcd spectral);
  static PulseField from_temporal(const SpectralGrid& grid, Eigen::VectorXcd temporal);

  const SpectralGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& spectral() const { return spectral_; }
  const Eigen::VectorXcd& temporal() const { return temporal_; }
  double time_step() const { return grid_.d_t(); }

  double spectral_energy() const;  ///< sum |S|^2 d_omega
  double temporal_energy() const;  ///< sum |E|^2 d_t
  Eigen::VectorXd intensity() const { return temporal_.cwiseAbs2(); }

 private:
  PulseField(const SpectralGrid& grid, Eigen::VectorXcd spectral, Eigen::VectorXcd temporal)
      : grid_(grid), spectral_(std::move(spectral)), temporal_(std::move(temporal)) {}

  SpectralGrid grid_;
  Eigen::VectorXcd spectral_;
  Eigen::VectorXcd temporal_;
};

/// Unit-energy Gaussian with spectral amplitude exp(-(omega - omega_c)^2 / (4 sigma^2)).
/// Requires omega_span >= 12 sigma_omega.
PulseField gaussian_pulse(const SpectralGrid& grid, double sigma_omega);

/// Arrival time: intensity maximum refined by a parabola through the peak
/// sample and its neighbours (raw maximum at the window edges).
double peak_time(const PulseField& field);

/// First moment of the temporal intensity.
double centroid_time(const PulseField& field);

struct PropagationReport {
  double peak_shift;
  double centroid_shift;
  double energy_transmission;
  std::optional<double> predicted_group_delay;  ///< analytic delay at omega_center
};

struct Propagation {
  PulseField output;
  PropagationReport report;
};

/// Multiplies each spectral bin by T(omega_k, beta) and transforms back.
/// Throws PostselectionNull only if T vanishes over the whole grid.
Propagation propagate(const DispersionModel& model, double beta, const SelectionPair& pair,
                      const PulseField& input, double singular_tol = kDefaultSingularTol);

}  // namespace weakoptics
