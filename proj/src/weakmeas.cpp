#include <weakoptics/errors.hpp>
#include <weakoptics/weakmeas.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace weakoptics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double principal_arg(Complexd z) {
  const double a = std::arg(z);
  return a == -kPi ? kPi : a;
}

[[noreturn]] void throw_null(double omega, double beta, double abs_t) {
  std::ostringstream os;
  os.precision(17);
  os << "postselection null at omega=" << omega << ", beta=" << beta << " (|T|=" << abs_t << ")";
  throw PostselectionNull(os.str());
}

double numeric_delay(const DispersionModel& model, double omega, double beta,
                     const SelectionPair& pair, const DelayOptions& opts) {
  const double h = opts.step;
  if (!(h > 0)) throw std::invalid_argument("group_delay: difference step must be positive");
  const double stencil[3] = {omega - h, omega, omega + h};
  double args[3];
  for (int k = 0; k < 3; ++k) {
    const Complexd t = transfer(model, stencil[k], beta, pair);
    if (std::abs(t) < opts.singular_tol) throw_null(stencil[k], beta, std::abs(t));
    args[k] = principal_arg(t);
  }
  const std::vector<double> u = unwrap(args);
  return (u[2] - u[0]) / (2.0 * h);
}

}  // namespace

Complexd transfer(const DispersionModel& model, double omega, double beta,
                  const SelectionPair& pair) {
  return matrix_element(pair.psi_f, evolution_operator(model, omega, beta), pair.psi_in);
}

std::vector<double> unwrap(std::span<const double> phases) {
  std::vector<double> out(phases.begin(), phases.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double d = phases[i] - out[i - 1];
    const double turns = std::ceil((d - kPi) / kTwoPi);
    out[i] = phases[i] - kTwoPi * turns;
  }
  return out;
}

PhaseSpectrum phase_spectrum(const DispersionModel& model, double beta, const SelectionPair& pair,
                             std::span<const double> omegas, double singular_tol) {
  PhaseSpectrum result;
  result.samples.reserve(omegas.size());
  std::vector<double> wrapped;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const Complexd t = transfer(model, omegas[i], beta, pair);
    const bool singular = std::abs(t) < singular_tol;
    result.samples.push_back({omegas[i], t, std::nullopt, singular});
    if (!singular) {
      wrapped.push_back(principal_arg(t));
      live.push_back(i);
    }
  }
  if (live.empty()) throw PostselectionNull("postselection null everywhere");

  const std::vector<double> unwrapped = unwrap(wrapped);
  for (std::size_t k = 0; k < live.size(); ++k) {
    result.samples[live[k]].phase = unwrapped[k];
    if (k > 0 && std::abs(unwrapped[k] - unwrapped[k - 1]) >= 0.9 * kPi) {
      result.undersampled = true;
    }
  }
  return result;
}

Complexd weak_flight_value(const DispersionModel& model, double omega, double beta,
                           const SelectionPair& pair, double singular_tol) {
  const JonesMatrixd u = evolution_operator(model, omega, beta);
  const JonesMatrixd a = flight_operator(model, omega, beta);
  const JonesVectord out = u * pair.psi_in.vector();
  const Complexd t = pair.psi_f.vector().dot(out);
  if (std::abs(t) < singular_tol) throw_null(omega, beta, std::abs(t));
  return pair.psi_f.vector().dot(a * out) / t;
}

Complexd weak_flight_value_dbeta(const DispersionModel& model, double omega, double beta,
                                 const SelectionPair& pair, double singular_tol) {
  // Both operators are R(beta) M R(beta)^T, so d/d beta acts as the
  // commutator with the rotation generator J = [[0, -1], [1, 0]].
  JonesMatrixd j;
  j << 0, -1, 1, 0;
  const JonesMatrixd u = evolution_operator(model, omega, beta);
  const JonesMatrixd a = flight_operator(model, omega, beta);
  const JonesMatrixd du = j * u - u * j;
  const JonesMatrixd da = j * a - a * j;

  const auto& f = pair.psi_f.vector();
  const auto& in = pair.psi_in.vector();
  const Complexd t = f.dot(u * in);
  if (std::abs(t) < singular_tol) throw_null(omega, beta, std::abs(t));
  const Complexd w = f.dot(a * u * in) / t;
  const Complexd dn = f.dot((da * u + a * du) * in);
  const Complexd dt = f.dot(du * in);
  return (dn - w * dt) / t;
}

double group_delay(const DispersionModel& model, double omega, double beta,
                   const SelectionPair& pair, const DelayOptions& opts) {
  if (opts.method == DelayMethod::numeric) return numeric_delay(model, omega, beta, pair, opts);
  return weak_flight_value(model, omega, beta, pair, opts.singular_tol).real();
}

TransferSample sample_transfer(const DispersionModel& model, double omega, double beta,
                               const SelectionPair& pair, const DelayOptions& opts) {
  TransferSample s{omega, beta, transfer(model, omega, beta, pair), 0.0, 0.0, std::nullopt};
  s.abs_t = std::abs(s.t);
  s.arg_t = principal_arg(s.t);
  if (s.abs_t >= opts.singular_tol) {
    try {
      s.group_delay = group_delay(model, omega, beta, pair, opts);
    } catch (const PostselectionNull&) {
      // a numeric stencil point fell on a zero
    }
  }
  return s;
}

std::vector<TransferSample> sweep_angle(const DispersionModel& model, double omega,
                                        std::span<const double> betas, const SelectionPair& pair,
                                        const DelayOptions& opts) {
  std::vector<TransferSample> out;
  out.reserve(betas.size());
  for (double b : betas) out.push_back(sample_transfer(model, omega, b, pair, opts));
  return out;
}

std::vector<TransferSample> sweep_frequency(const DispersionModel& model, double beta,
                                            std::span<const double> omegas,
                                            const SelectionPair& pair, const DelayOptions& opts) {
  std::vector<TransferSample> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back(sample_transfer(model, w, beta, pair, opts));
  return out;
}

TransferGrid contour_grid(const DispersionModel& model, std::span<const double> omegas,
                          std::span<const double> betas, const SelectionPair& pair,
                          const DelayOptions& opts) {
  if (omegas.empty() || betas.empty()) throw std::invalid_argument("contour_grid: empty axis");
  TransferGrid g;
  g.rows = omegas.size();
  g.cols = betas.size();
  g.samples.reserve(g.rows * g.cols);
  for (double w : omegas) {
    for (double b : betas) g.samples.push_back(sample_transfer(model, w, b, pair, opts));
  }
  return g;
}

}  // namespace weakoptics
