#pragma once

// Pre/post-selected transmission T(omega, beta) = <psi_f| exp[i Gamma] |psi_in>
// and the quantities derived from it: phase delay, group delay (the real part
// of the weak value of the flight operator), transmission zeros, and inversion
// of a measured delay back to a crystal angle.

#include <weakoptics/crystal.hpp>
#include <weakoptics/jones.hpp>

#include <optional>
#include <span>
#include <vector>

namespace weakoptics {

inline constexpr double kDefaultSingularTol = 1e-10;
inline constexpr double kDefaultDiffStep = 1e-5;

struct SelectionPair {
  PolarizationState psi_in;
  PolarizationState psi_f;
};

Complexd transfer(const DispersionModel& model, double omega, double beta,
                  const SelectionPair& pair);

/// 1-D phase unwrapping. Successive output differences lie in (-pi, pi] and
/// each output differs from its input by a multiple of 2 pi.
std::vector<double> unwrap(std::span<const double> phases);

struct SpectrumSample {
  double omega;
  Complexd t;
  std::optional<double> phase;  ///< unwrapped arg T; empty when singular
  bool singular;
};

struct PhaseSpectrum {
  std::vector<SpectrumSample> samples;
  /// Some adjacent wrapped phase step reached 0.9 pi: grid likely too coarse.
  bool undersampled = false;
};

/// Unwrapped arg T along an ascending frequency grid. Samples with
/// |T| < singular_tol are gaps: they carry no phase and unwrapping runs
/// straight across them. Throws PostselectionNull if every sample is singular.
PhaseSpectrum phase_spectrum(const DispersionModel& model, double beta, const SelectionPair& pair,
                             std::span<const double> omegas,
                             double singular_tol = kDefaultSingularTol);

enum class DelayMethod { analytic, numeric };

struct DelayOptions {
  DelayMethod method = DelayMethod::analytic;
  double step = kDefaultDiffStep;  ///< central-difference half width for numeric
  double singular_tol = kDefaultSingularTol;
};

/// <psi_f| A U |psi_in> / <psi_f| U |psi_in> with A the flight operator and U
/// the evolution operator. Re = d arg T / d omega, Im = -d ln|T| / d omega.
Complexd weak_flight_value(const DispersionModel& model, double omega, double beta,
                           const SelectionPair& pair, double singular_tol = kDefaultSingularTol);

/// d arg T / d omega, either from the weak value or by central differences of
/// the (locally unwrapped) phase. Throws PostselectionNull near a zero of T.
double group_delay(const DispersionModel& model, double omega, double beta,
                   const SelectionPair& pair, const DelayOptions& opts = {});

struct TransferSample {
  double omega;
  double beta;
  Complexd t;
  double abs_t;
  double arg_t;                       ///< in (-pi, pi]
  std::optional<double> group_delay;  ///< empty at singular points

  bool singular() const { return !group_delay.has_value(); }
};

TransferSample sample_transfer(const DispersionModel& model, double omega, double beta,
                               const SelectionPair& pair, const DelayOptions& opts = {});

std::vector<TransferSample> sweep_angle(const DispersionModel& model, double omega,
                                        std::span<const double> betas, const SelectionPair& pair,
                                        const DelayOptions& opts = {});

std::vector<TransferSample> sweep_frequency(const DispersionModel& model, double beta,
                                            std::span<const double> omegas,
                                            const SelectionPair& pair,
                                            const DelayOptions& opts = {});

/// Row-major samples: at(i, j) is evaluated at (omegas[i], betas[j]).
struct TransferGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<TransferSample> samples;

  const TransferSample& at(std::size_t i, std::size_t j) const { return samples[i * cols + j]; }
};

TransferGrid contour_grid(const DispersionModel& model, std::span<const double> omegas,
                          std::span<const double> betas, const SelectionPair& pair,
                          const DelayOptions& opts = {});

struct Singularity {
  double omega;
  double beta;
  double residual_abs_t;
};

struct SingularitySearch {
  std::size_t omega_scan = 201;
  std::size_t beta_scan = 201;
  double tol = kDefaultSingularTol;
  /// Coarse-grid local minima with |T| below this are refined.
  double promote_below = 0.25;
  /// Refined points closer than this in both coordinates are merged.
  double merge_distance = 1e-6;
};

/// Zeros of T inside the given window, sorted by (omega, beta).
std::vector<Singularity> find_singularities(const DispersionModel& model, Interval omega_range,
                                            Interval beta_range, const SelectionPair& pair,
                                            const SingularitySearch& search = {});

/// d/d beta of the weak flight value at fixed omega.
Complexd weak_flight_value_dbeta(const DispersionModel& model, double omega, double beta,
                                 const SelectionPair& pair,
                                 double singular_tol = kDefaultSingularTol);

inline constexpr std::size_t kBracketScan = 64;

/// Crystal angle inside `bracket` whose analytic group delay equals
/// tau_measured. The bracket must be free of transmission zeros and the delay
/// monotone on it; a delay equal to the extremum of a bracket with a single
/// turning point resolves to that turning point. Throws BadBracket otherwise.
double estimate_beta(const DispersionModel& model, double omega, const SelectionPair& pair,
                     double tau_measured, Interval bracket,
                     double singular_tol = kDefaultSingularTol);

}  // namespace weakoptics
