#include <weakoptics/weakmeas.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace weakoptics {

namespace {

struct Point {
  double omega;
  double beta;
  double f;  // |T|^2
};

std::vector<double> axis(Interval r, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = r.lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = r.lo + r.width() * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  v.back() = r.hi;
  return v;
}

// Compass search on |T|^2, confined to the window. |T| itself has a cone at
// the zero, |T|^2 is a smooth quadratic there.
Point refine(const DispersionModel& model, const SelectionPair& pair, Interval wr, Interval br,
             Point p, double step_omega, double step_beta, double tol) {
  auto f = [&](double w, double b) { return std::norm(transfer(model, w, b, pair)); };
  const double tol2 = tol * tol;
  constexpr double kMinStep = 1e-14;
  constexpr int kMaxIter = 100000;

  for (int it = 0; it < kMaxIter && p.f >= tol2; ++it) {
    if (std::max(step_omega, step_beta) < kMinStep) break;
    const Point trial[4] = {
        {std::min(p.omega + step_omega, wr.hi), p.beta, 0},
        {std::max(p.omega - step_omega, wr.lo), p.beta, 0},
        {p.omega, std::min(p.beta + step_beta, br.hi), 0},
        {p.omega, std::max(p.beta - step_beta, br.lo), 0},
    };
    Point best = p;
    for (Point q : trial) {
      q.f = f(q.omega, q.beta);
      if (q.f < best.f) best = q;
    }
    if (best.f < p.f) {
      p = best;
    } else {
      step_omega *= 0.5;
      step_beta *= 0.5;
    }
  }
  return p;
}

}  // namespace

std::vector<Singularity> find_singularities(const DispersionModel& model, Interval omega_range,
                                            Interval beta_range, const SelectionPair& pair,
                                            const SingularitySearch& search) {
  if (!(omega_range.hi >= omega_range.lo) || !(beta_range.hi >= beta_range.lo)) {
    throw std::invalid_argument("find_singularities: empty range");
  }
  if (!(search.tol > 0)) throw std::invalid_argument("find_singularities: tol must be positive");
  const std::size_t nw = std::max<std::size_t>(search.omega_scan, 2);
  const std::size_t nb = std::max<std::size_t>(search.beta_scan, 2);
  const auto ws = axis(omega_range, nw);
  const auto bs = axis(beta_range, nb);

  Eigen::MatrixXd f(nw, nb);
  for (std::size_t i = 0; i < nw; ++i) {
    for (std::size_t j = 0; j < nb; ++j) f(i, j) = std::norm(transfer(model, ws[i], bs[j], pair));
  }

  const double promote2 = search.promote_below * search.promote_below;
  const double dw = omega_range.width() / static_cast<double>(nw - 1);
  const double db = beta_range.width() / static_cast<double>(nb - 1);

  std::vector<Point> refined;
  for (std::size_t i = 0; i < nw; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const double v = f(i, j);
      if (!(v < promote2)) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ii = static_cast<std::ptrdiff_t>(i) + di;
          const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<std::ptrdiff_t>(nw) ||
              jj >= static_cast<std::ptrdiff_t>(nb)) {
            continue;
          }
          if (f(ii, jj) < v) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      const Point p = refine(model, pair, omega_range, beta_range, {ws[i], bs[j], v}, dw, db,
                             search.tol);
      if (std::sqrt(p.f) < search.tol) refined.push_back(p);
    }
  }

  std::sort(refined.begin(), refined.end(), [](const Point& a, const Point& b) { return a.f < b.f; });
  std::vector<Singularity> out;
  for (const Point& p : refined) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Singularity& s) {
      return std::abs(s.omega - p.omega) <= search.merge_distance &&
             std::abs(s.beta - p.beta) <= search.merge_distance;
    });
    if (!dup) out.push_back({p.omega, p.beta, std::sqrt(p.f)});
  }

  const double eps = search.merge_distance;
  std::sort(out.begin(), out.end(), [eps](const Singularity& a, const Singularity& b) {
    if (std::abs(a.omega - b.omega) > eps) return a.omega < b.omega;
    return a.beta < b.beta;
  });
  return out;
}

}  // namespace weakoptics
