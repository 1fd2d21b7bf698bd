#include <catch_amalgamated.hpp>

#include <weakoptics/fft.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace weakoptics;

namespace {

Eigen::VectorXcd naive_dft(const Eigen::VectorXcd& x) {
  const auto n = x.size();
  Eigen::VectorXcd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ang = -2 * std::numbers::pi * static_cast<double>((j * k) % n) /
                         static_cast<double>(n);
      acc += x[j] * std::polar(1.0, ang);
    }
    y[k] = acc;
  }
  return y;
}

Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("power of two", "[fft]") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(96));
  CHECK_THROWS_AS(fft(Eigen::VectorXcd::Zero(12)), std::invalid_argument);
}

TEST_CASE("fft agrees with the direct sum", "[fft]") {
  std::mt19937_64 rng(1);
  for (Eigen::Index n : {1, 2, 4, 8, 64, 256}) {
    const auto x = random_vector(rng, n);
    const auto err = (fft(x) - naive_dft(x)).cwiseAbs().maxCoeff();
    CHECK(err <= 1e-11 * std::max<double>(1.0, static_cast<double>(n)));
  }
}

TEST_CASE("fft of a delta and a pure tone", "[fft]") {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(16);
  d[0] = 1;
  CHECK((fft(d) - Eigen::VectorXcd::Ones(16)).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::VectorXcd tone(32);
  for (Eigen::Index j = 0; j < 32; ++j) tone[j] = std::polar(1.0, 2 * std::numbers::pi * 5 * j / 32.0);
  const auto f = fft(tone);
  for (Eigen::Index k = 0; k < 32; ++k) CHECK(std::abs(f[k] - (k == 5 ? 32.0 : 0.0)) < 1e-12);
}

TEST_CASE("round trip and Parseval", "[fft][property]") {
  std::mt19937_64 rng(2);
  for (Eigen::Index n : {64, 1024, 4096}) {
    const auto x = random_vector(rng, n);
    const auto y = fft(x);
    CHECK((ifft(y) - x).norm() <= 1e-12 * x.norm());
    CHECK(y.squaredNorm() / static_cast<double>(n) ==
          Catch::Approx(x.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("in place transform is deterministic", "[fft]") {
  std::mt19937_64 rng(3);
  const auto x = random_vector(rng, 512);
  Eigen::VectorXcd a = x, b = x;
  fft_inplace(a, false);
  fft_inplace(b, false);
  CHECK(a == b);
  CHECK(a == fft(x));
}
