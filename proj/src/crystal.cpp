#include <weakoptics/crystal.hpp>
#include <weakoptics/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace weakoptics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_interval(Interval r) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << r.lo << ", " << r.hi << "]";
  return os.str();
}

JonesMatrixd conjugate_diagonal(double beta, Complexd d_te, Complexd d_tm) {
  const JonesMatrixd r = rotation(beta);
  return r * Eigen::DiagonalMatrix<Complexd, 2>(d_te, d_tm) * r.transpose();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

TabulatedDispersion::TabulatedDispersion(std::vector<double> omega, std::vector<double> phi_te,
                                         std::vector<double> phi_tm) {
  if (omega.size() < 2) throw DataError("need at least 2 samples");
  if (phi_te.size() != omega.size() || phi_tm.size() != omega.size()) {
    throw DataError("omega, phi_te and phi_tm must have equal length");
  }
  te_ = MonotoneCubic(omega, std::move(phi_te));
  tm_ = MonotoneCubic(std::move(omega), std::move(phi_tm));
}

DispersionModel::DispersionModel(const LinearDispersion& linear) : v_(linear) {
  if (!std::isfinite(linear.tau_te) || !std::isfinite(linear.tau_tm) ||
      !std::isfinite(linear.phi0_te) || !std::isfinite(linear.phi0_tm)) {
    throw std::invalid_argument("linear dispersion parameters must be finite");
  }
  if (linear.tau_te == linear.tau_tm) {
    throw std::invalid_argument("tau_te equals tau_tm: no birefringence slope");
  }
}

DispersionModel::DispersionModel(TabulatedDispersion tabulated) : v_(std::move(tabulated)) {}

DispersionModel DispersionModel::linear(double tau_te, double tau_tm, double phi0_te,
                                        double phi0_tm) {
  return DispersionModel(LinearDispersion{tau_te, tau_tm, phi0_te, phi0_tm});
}

Interval DispersionModel::domain() const {
  if (const auto* t = as_tabulated()) return {t->omega().front(), t->omega().back()};
  return {0.0, std::numeric_limits<double>::infinity()};
}

void DispersionModel::check_domain(double omega) const {
  const Interval d = domain();
  if (!std::isfinite(omega) || !d.contains(omega)) {
    std::ostringstream os;
    os.precision(17);
    os << "omega " << omega << " outside model range " << fmt_interval(d);
    throw RangeError(os.str(), d.lo, d.hi);
  }
}

PhasePair phases(const DispersionModel& model, double omega) {
  model.check_domain(omega);
  if (const auto* lin = model.as_linear()) {
    return {lin->tau_te * omega + lin->phi0_te, lin->tau_tm * omega + lin->phi0_tm};
  }
  const auto& tab = *model.as_tabulated();
  return {tab.te()(omega), tab.tm()(omega)};
}

DelayPair group_delays(const DispersionModel& model, double omega) {
  model.check_domain(omega);
  if (const auto* lin = model.as_linear()) return {lin->tau_te, lin->tau_tm};
  const auto& tab = *model.as_tabulated();
  return {tab.te().derivative(omega), tab.tm().derivative(omega)};
}

std::vector<double> half_wave_frequencies(const DispersionModel& model, Interval range,
                                          std::size_t scan) {
  if (!(range.hi > range.lo)) throw std::invalid_argument("half_wave_frequencies: empty range");
  model.check_domain(range.lo);
  model.check_domain(range.hi);
  scan = std::max<std::size_t>(scan, 2);

  // g(omega) = phi_TE - phi_TM - pi; roots are where g hits a multiple of 2 pi.
  auto g = [&](double w) {
    const PhasePair p = phases(model, w);
    return p.te - p.tm - std::numbers::pi;
  };

  std::vector<double> grid(scan);
  for (std::size_t i = 0; i < scan; ++i) {
    grid[i] = range.lo + range.width() * static_cast<double>(i) / static_cast<double>(scan - 1);
  }
  grid.back() = range.hi;

  std::vector<double> roots;
  double ga = g(grid[0]);
  for (std::size_t i = 0; i + 1 < scan; ++i) {
    const double a = grid[i];
    const double b = grid[i + 1];
    const double gb = g(b);
    const double kmin = std::ceil(std::min(ga, gb) / kTwoPi);
    const double kmax = std::floor(std::max(ga, gb) / kTwoPi);
    for (double k = kmin; k <= kmax; k += 1.0) {
      const double shift = k * kTwoPi;
      double fa = ga - shift;
      double fb = gb - shift;
      if (fa == 0.0) {
        roots.push_back(a);
        continue;
      }
      if (fb == 0.0) {
        if (i + 2 == scan) roots.push_back(b);
        continue;
      }
      double lo = a;
      double hi = b;
      for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid) - shift;
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (fa < 0)) {
          lo = mid;
          fa = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    ga = gb;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 1e-10) unique.push_back(r);
  }
  return unique;
}

JonesMatrixd evolution_operator(const DispersionModel& model, double omega, double beta) {
  const PhasePair p = phases(model, omega);
  return conjugate_diagonal(beta, std::polar(1.0, p.te), std::polar(1.0, p.tm));
}

JonesMatrixd flight_operator(const DispersionModel& model, double omega, double beta) {
  const DelayPair d = group_delays(model, omega);
  return conjugate_diagonal(beta, d.te, d.tm);
}

DispersionModel load_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dispersion table '" + path.string() + "'");

  std::vector<double> omega, te, tm;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const std::string where = " at line " + std::to_string(lineno);
    if (!have_header) {
      std::string compact;
      for (char c : s) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "omega,phi_te,phi_tm") {
        throw DataError("expected header 'omega,phi_te,phi_tm'" + where);
      }
      have_header = true;
      continue;
    }
    double v[3];
    std::size_t field = 0;
    std::size_t start = 0;
    bool ok = true;
    while (ok) {
      const auto comma = s.find(',', start);
      const auto tok = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
      if (field >= 3 || !parse_double(tok, v[field])) ok = false;
      ++field;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!ok || field != 3) throw DataError("malformed row" + where);
    if (!omega.empty() && !(v[0] > omega.back())) {
      throw DataError("non-increasing omega" + where);
    }
    omega.push_back(v[0]);
    te.push_back(v[1]);
    tm.push_back(v[2]);
  }
  if (!have_header) throw DataError("missing header 'omega,phi_te,phi_tm'");
  if (omega.size() < 2) throw DataError("need at least 2 samples");
  return DispersionModel(TabulatedDispersion(std::move(omega), std::move(te), std::move(tm)));
}

}  // namespace weakoptics
