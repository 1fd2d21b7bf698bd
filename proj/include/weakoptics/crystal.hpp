#pragma once

// Birefringent crystal: dispersion models phi_TE(omega), phi_TM(omega) and the
// evolution / time-of-flight operators they generate at crystal angle beta.
//
// Units are normalized: omega in units of the first half-wave frequency of the
// default model, time in units of its inverse.

#include <weakoptics/jones.hpp>

#include <filesystem>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

namespace weakoptics {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// phi_i(omega) = tau_i * omega + phi0_i.
struct LinearDispersion {
  double tau_te = 10.0 * std::numbers::pi;
  double tau_tm = 9.0 * std::numbers::pi;
  double phi0_te = 0.0;
  double phi0_tm = 0.0;
};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Never overshoots the data between nodes.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return d_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// Phases sampled on a strictly increasing frequency grid.
class TabulatedDispersion {
 public:
  TabulatedDispersion(std::vector<double> omega, std::vector<double> phi_te,
                      std::vector<double> phi_tm);

  const std::vector<double>& omega() const { return te_.knots(); }
  const std::vector<double>& phi_te() const { return te_.values(); }
  const std::vector<double>& phi_tm() const { return tm_.values(); }
  std::size_t size() const { return omega().size(); }

  const MonotoneCubic& te() const { return te_; }
  const MonotoneCubic& tm() const { return tm_; }

 private:
  MonotoneCubic te_;
  MonotoneCubic tm_;
};

struct PhasePair {
  double te;
  double tm;
};

struct DelayPair {
  double te;
  double tm;
};

class DispersionModel {
 public:
  /// tau_te = 10 pi, tau_tm = 9 pi, zero offsets: half-wave at omega = 1, 3, 5, ...
  DispersionModel() = default;
  DispersionModel(const LinearDispersion& linear);  // NOLINT(implicit)
  DispersionModel(TabulatedDispersion tabulated);   // NOLINT(implicit)

  static DispersionModel linear(double tau_te, double tau_tm, double phi0_te = 0.0,
                                double phi0_tm = 0.0);

  bool is_linear() const { return std::holds_alternative<LinearDispersion>(v_); }
  const LinearDispersion* as_linear() const { return std::get_if<LinearDispersion>(&v_); }
  const TabulatedDispersion* as_tabulated() const { return std::get_if<TabulatedDispersion>(&v_); }

  /// Frequencies where the model may be evaluated.
  Interval domain() const;

  /// Throws RangeError when omega lies outside domain().
  void check_domain(double omega) const;

 private:
  std::variant<LinearDispersion, TabulatedDispersion> v_;
};

PhasePair phases(const DispersionModel& model, double omega);

/// d(phi)/d(omega) for each eigenpolarization.
DelayPair group_delays(const DispersionModel& model, double omega);

inline constexpr std::size_t kDefaultHalfWaveScan = 1000;

/// All omega in range with phi_TE - phi_TM = pi (mod 2 pi), ascending.
std::vector<double> half_wave_frequencies(const DispersionModel& model, Interval range,
                                          std::size_t scan = kDefaultHalfWaveScan);

/// exp[i Gamma(omega, beta)] = R(beta) diag(e^{i phi_TE}, e^{i phi_TM}) R(-beta).
JonesMatrixd evolution_operator(const DispersionModel& model, double omega, double beta);

/// A = d Gamma / d omega = R(beta) diag(tau_TE, tau_TM) R(-beta).
JonesMatrixd flight_operator(const DispersionModel& model, double omega, double beta);

/// Reads the `omega,phi_te,phi_tm` CSV format. Throws DataError with the
/// offending line number on malformed input.
DispersionModel load_tabulated(const std::filesystem::path& path);

}  // namespace weakoptics
