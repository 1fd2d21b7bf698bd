#include <weakoptics/errors.hpp>
#include <weakoptics/weakmeas.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weakoptics {

namespace {

constexpr double kBetaResolution = 1e-12;

std::string scan_summary(const std::vector<double>& betas, const std::vector<double>& delays,
                         std::size_t nulls) {
  std::ostringstream os;
  os.precision(10);
  os << "scan of " << betas.size() << " points on [" << betas.front() << ", " << betas.back()
     << "]";
  if (nulls) os << ", " << nulls << " null sample(s)";
  if (!delays.empty()) {
    const auto [mn, mx] = std::minmax_element(delays.begin(), delays.end());
    os << ", delay range [" << *mn << ", " << *mx << "]";
  }
  return os.str();
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo >= kBetaResolution; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double estimate_beta(const DispersionModel& model, double omega, const SelectionPair& pair,
                     double tau_measured, Interval bracket, double singular_tol) {
  if (!std::isfinite(bracket.lo) || !std::isfinite(bracket.hi) || !(bracket.hi > bracket.lo)) {
    throw BadBracket("bracket must be a finite interval with lo < hi");
  }
  if (!std::isfinite(tau_measured)) throw BadBracket("measured delay is not finite");

  auto delay = [&](double b) {
    return weak_flight_value(model, omega, b, pair, singular_tol).real();
  };

  std::vector<double> betas(kBracketScan);
  for (std::size_t i = 0; i < kBracketScan; ++i) {
    betas[i] = bracket.lo + bracket.width() * static_cast<double>(i) /
                                static_cast<double>(kBracketScan - 1);
  }
  betas.back() = bracket.hi;

  std::vector<double> delays;
  std::size_t nulls = 0;
  for (double b : betas) {
    if (std::abs(transfer(model, omega, b, pair)) < singular_tol) {
      ++nulls;
      continue;
    }
    delays.push_back(delay(b));
  }
  if (nulls) {
    throw BadBracket("bracket contains a transmission zero: " + scan_summary(betas, delays, nulls));
  }

  // Count direction changes of the sampled delay curve.
  int direction = 0;
  int changes = 0;
  for (std::size_t i = 1; i < delays.size(); ++i) {
    const double d = delays[i] - delays[i - 1];
    const int s = (d > 0) - (d < 0);
    if (s == 0) continue;
    if (direction != 0 && s != direction) ++changes;
    direction = s;
  }
  if (direction == 0) {
    throw BadBracket("delay is constant on the bracket: " + scan_summary(betas, delays, 0));
  }

  if (changes == 0) {
    const double lo = std::min(delays.front(), delays.back());
    const double hi = std::max(delays.front(), delays.back());
    if (tau_measured < lo || tau_measured > hi) {
      std::ostringstream os;
      os.precision(17);
      os << "delay " << tau_measured << " outside the bracket's range: "
         << scan_summary(betas, delays, 0);
      throw BadBracket(os.str());
    }
    return bisect([&](double b) { return delay(b) - tau_measured; }, bracket.lo, bracket.hi);
  }

  if (changes == 1) {
    // A single turning point. Its delay is the only value the bracket maps
    // to one angle; locate it through d(delay)/d(beta) = 0.
    auto slope = [&](double b) {
      return weak_flight_value_dbeta(model, omega, b, pair, singular_tol).real();
    };
    const double s0 = slope(betas.front());
    std::size_t k = 1;
    while (k < betas.size() && (slope(betas[k]) < 0) == (s0 < 0)) ++k;
    if (k < betas.size()) {
      const double turn = bisect(slope, betas[k - 1], betas[k]);
      const double extreme = delay(turn);
      if (std::abs(extreme - tau_measured) <= 1e-9 * std::max(1.0, std::abs(tau_measured))) {
        return turn;
      }
    }
  }
  throw BadBracket("delay is not monotonic on the bracket (possible singularity inside): " +
                   scan_summary(betas, delays, 0));
}

}  // namespace weakoptics
