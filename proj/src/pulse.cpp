#include <weakoptics/errors.hpp>
#include <weakoptics/fft.hpp>
#include <weakoptics/pulse.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace weakoptics {

namespace {

constexpr double kPi = std::numbers::pi;

// (-1)^k, which shifts the zero of frequency and time to index n/2.
void alternate_signs(Eigen::VectorXcd& v) {
  for (Eigen::Index k = 1; k < v.size(); k += 2) v[k] = -v[k];
}

double field_scale(const SpectralGrid& g) { return g.d_omega() / std::sqrt(2.0 * kPi); }

}  // namespace

void SpectralGrid::validate() const {
  if (n < 64 || !is_power_of_two(n)) {
    throw std::invalid_argument("spectral grid size must be a power of two >= 64, got " +
                                std::to_string(n));
  }
  if (!(omega_span > 0) || !std::isfinite(omega_span) || !std::isfinite(omega_center)) {
    throw std::invalid_argument("spectral grid span must be positive and finite");
  }
}

double SpectralGrid::d_t() const { return 2.0 * kPi / omega_span; }

double SpectralGrid::omega(std::size_t k) const {
  return omega_center + (static_cast<double>(k) - static_cast<double>(n / 2)) * d_omega();
}

double SpectralGrid::time(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(n / 2)) * d_t();
}

PulseField PulseField::from_spectral(const SpectralGrid& grid, Eigen::VectorXcd spectral) {
  grid.validate();
  if (static_cast<std::size_t>(spectral.size()) != grid.n) {
    throw std::invalid_argument("spectral array length does not match grid");
  }
  Eigen::VectorXcd temporal = spectral;
  alternate_signs(temporal);
  fft_inplace(temporal, false);
  alternate_signs(temporal);
  temporal *= field_scale(grid);
  return PulseField(grid, std::move(spectral), std::move(temporal));
}

PulseField PulseField::from_temporal(const SpectralGrid& grid, Eigen::VectorXcd temporal) {
  grid.validate();
  if (static_cast<std::size_t>(temporal.size()) != grid.n) {
    throw std::invalid_argument("temporal array length does not match grid");
  }
  Eigen::VectorXcd spectral = temporal;
  alternate_signs(spectral);
  fft_inplace(spectral, true);
  alternate_signs(spectral);
  spectral /= field_scale(grid);
  return PulseField(grid, std::move(spectral), std::move(temporal));
}

double PulseField::spectral_energy() const { return spectral_.squaredNorm() * grid_.d_omega(); }

double PulseField::temporal_energy() const { return temporal_.squaredNorm() * grid_.d_t(); }

PulseField gaussian_pulse(const SpectralGrid& grid, double sigma_omega) {
  grid.validate();
  if (!(sigma_omega > 0) || !std::isfinite(sigma_omega)) {
    throw std::invalid_argument("sigma_omega must be positive");
  }
  if (grid.omega_span < 12.0 * sigma_omega) {
    throw std::invalid_argument("omega_span must be at least 12 * sigma_omega");
  }
  Eigen::VectorXcd s(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double x = grid.omega(k) - grid.omega_center;
    s[k] = std::exp(-x * x / (4.0 * sigma_omega * sigma_omega));
  }
  s /= std::sqrt(s.squaredNorm() * grid.d_omega());
  return PulseField::from_spectral(grid, std::move(s));
}

double peak_time(const PulseField& field) {
  const Eigen::VectorXd y = field.intensity();
  Eigen::Index m = 0;
  const double ymax = y.maxCoeff(&m);
  if (!(ymax > 0)) throw std::invalid_argument("peak_time: field is identically zero");
  const auto& g = field.grid();
  const double tm = g.time(static_cast<std::size_t>(m));
  if (m == 0 || m == y.size() - 1) return tm;
  const double y0 = y[m - 1];
  const double y1 = y[m];
  const double y2 = y[m + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom == 0.0) return tm;
  return tm + 0.5 * (y0 - y2) / denom * g.d_t();
}

double centroid_time(const PulseField& field) {
  const Eigen::VectorXd y = field.intensity();
  const double total = y.sum();
  if (!(total > 0)) throw std::invalid_argument("centroid_time: field is identically zero");
  double moment = 0.0;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    moment += field.grid().time(static_cast<std::size_t>(j)) * y[j];
  }
  return moment / total;
}

Propagation propagate(const DispersionModel& model, double beta, const SelectionPair& pair,
                      const PulseField& input, double singular_tol) {
  const SpectralGrid& g = input.grid();
  model.check_domain(g.omega(0));
  model.check_domain(g.omega(g.n - 1));

  Eigen::VectorXcd out(g.n);
  bool any_live = false;
  for (std::size_t k = 0; k < g.n; ++k) {
    const Complexd t = transfer(model, g.omega(k), beta, pair);
    any_live = any_live || std::abs(t) >= singular_tol;
    out[k] = t * input.spectral()[k];
  }
  if (!any_live) throw PostselectionNull("postselection null across the whole spectral grid");

  PulseField output = PulseField::from_spectral(g, std::move(out));

  PropagationReport report{};
  report.peak_shift = peak_time(output) - peak_time(input);
  report.centroid_shift = centroid_time(output) - centroid_time(input);
  report.energy_transmission = output.spectral().squaredNorm() / input.spectral().squaredNorm();
  try {
    report.predicted_group_delay = group_delay(model, g.omega_center, beta, pair,
                                               {DelayMethod::analytic, kDefaultDiffStep,
                                                singular_tol});
  } catch (const PostselectionNull&) {
    report.predicted_group_delay.reset();
  }
  return {std::move(output), report};
}

}  // namespace weakoptics
