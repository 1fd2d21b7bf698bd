#include <catch_amalgamated.hpp>

#include <weakoptics/jones.hpp>

#include <numbers>
#include <random>

using namespace weakoptics;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PolarizationState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  JonesVectord v(Complexd(g(rng), g(rng)), Complexd(g(rng), g(rng)));
  return PolarizationState(JonesVectord(v / v.norm()));
}

}  // namespace

TEST_CASE("basis states", "[jones]") {
  const auto v = basis_state("V");
  CHECK(v.a1() == Complexd(1, 0));
  CHECK(v.a2() == Complexd(0, 0));

  const auto h = basis_state("H");
  CHECK(h.a1() == Complexd(0, 0));
  CHECK(h.a2() == Complexd(1, 0));

  const auto d = basis_state("D45");
  CHECK(d.a1().real() == Approx(0.7071067811865476).margin(1e-16));
  CHECK(d.a2().real() == Approx(0.7071067811865476).margin(1e-16));

  const auto a = basis_state(Basis::A135);
  CHECK(a.a1().real() == Approx(kInvSqrt2).margin(1e-16));
  CHECK(a.a2().real() == Approx(-kInvSqrt2).margin(1e-16));
}

TEST_CASE("unknown basis label names the token", "[jones]") {
  CHECK_THROWS_WITH(basis_state("X45"), Catch::Matchers::ContainsSubstring("X45"));
}

TEST_CASE("linear_state", "[jones]") {
  CHECK(linear_state(0.0) == basis_state("V"));
  const auto q = linear_state(kPi / 2);
  CHECK(std::abs(q.a1()) < 1e-15);
  CHECK(q.a2().real() == Approx(1.0).margin(1e-15));
  const auto d = linear_state(kPi / 4);
  CHECK(d.a1().real() == Approx(0.7071067811865476).margin(1e-16));
  CHECK(d.a2().real() == Approx(0.7071067811865476).margin(1e-16));
  CHECK_THROWS_AS(linear_state(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(linear_state(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("state normalization is validated at construction", "[jones]") {
  // Slightly off: rescaled.
  const PolarizationState s(Complexd(1.0 + 4e-7, 0), Complexd(0, 0));
  CHECK(std::abs(s.vector().norm() - 1.0) < 1e-12);
  // Far off: rejected.
  CHECK_THROWS_AS(PolarizationState(Complexd(1, 0), Complexd(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(PolarizationState(Complexd(std::nan(""), 0), Complexd(0, 0)),
                  std::invalid_argument);
}

TEST_CASE("rotation", "[jones]") {
  CHECK(max_abs_entry(rotation(0.0) - identity()) == 0.0);

  JonesMatrixd quarter;
  quarter << 0, -1, 1, 0;
  CHECK(max_abs_entry(rotation(kPi / 2) - quarter) <= 1e-15);

  CHECK(max_abs_entry(rotation(0.3) * rotation(0.4) - rotation(0.7)) <= 1e-14);
  CHECK_THROWS_AS(rotation(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("inner product", "[jones]") {
  const auto v = basis_state("V");
  const auto h = basis_state("H");
  const auto d = basis_state("D45");
  CHECK(inner(v, v) == Complexd(1, 0));
  CHECK(inner(v, h) == Complexd(0, 0));
  CHECK(inner(v, d).real() == Approx(0.7071067811865476).margin(1e-16));
  CHECK(inner(v, d).imag() == 0.0);

  // conjugate-linear in the bra
  const PolarizationState c(Complexd(0, kInvSqrt2), Complexd(kInvSqrt2, 0));
  CHECK(std::abs(inner(c, v) - Complexd(0, -kInvSqrt2)) < 1e-15);
}

TEST_CASE("apply", "[jones]") {
  const JonesVectord e1(1, 0);
  CHECK(apply_operator(identity(), e1) == e1);
  const JonesVectord flipped = apply_operator(sigma_z(), JonesVectord(0, 1));
  CHECK(flipped == JonesVectord(0, -1));
  const JonesVectord r = apply_operator(rotation(kPi / 4), e1);
  CHECK(r(0).real() == Approx(0.70710678).margin(1e-8));
  CHECK(r(1).real() == Approx(0.70710678).margin(1e-8));
}

TEST_CASE("is_unitary", "[jones]") {
  CHECK(is_unitary(rotation(1.234), 1e-12));

  JonesMatrixd stretch = JonesMatrixd::Zero();
  stretch(0, 0) = 2.0;
  stretch(1, 1) = 1.0;
  CHECK_FALSE(is_unitary(stretch, 1e-12));

  JonesMatrixd phase = JonesMatrixd::Zero();
  phase(0, 0) = std::polar(1.0, 0.7);
  phase(1, 1) = std::polar(1.0, -2.1);
  CHECK(is_unitary(phase, 1e-12));

  CHECK_THROWS_AS(is_unitary(phase, 0.0), std::invalid_argument);
}

TEST_CASE("Pauli algebra", "[jones]") {
  const Complexd i(0, 1);
  CHECK(max_abs_entry(sigma_x() * sigma_y() - i * sigma_z()) == 0.0);
  CHECK(max_abs_entry(sigma_z() * sigma_z() - identity()) == 0.0);
  CHECK(is_hermitian(sigma_y(), 1e-15));
}

TEST_CASE("jones invariants over random draws", "[jones][property]") {
  std::mt19937_64 rng(20031);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  for (int k = 0; k < 1000; ++k) {
    const double beta = angle(rng);
    const JonesMatrixd r = rotation(beta);
    REQUIRE(is_unitary(r, 1e-12));
    REQUIRE(max_abs_entry(rotation(beta + 2 * kPi) - r) <= 1e-12);

    const auto u = random_state(rng);
    const auto v = random_state(rng);
    REQUIRE(std::abs(inner(u, v)) <= 1.0 + 1e-12);
    REQUIRE(std::abs(inner(u, u) - 1.0) <= 1e-12);

    // norm preserved by a random unitary (rotation times phase diagonal)
    JonesMatrixd phase = JonesMatrixd::Zero();
    phase(0, 0) = std::polar(1.0, angle(rng));
    phase(1, 1) = std::polar(1.0, angle(rng));
    const JonesVectord w(Complexd(angle(rng), angle(rng)), Complexd(angle(rng), 0.5));
    const JonesMatrixd unitary = r * phase;
    REQUIRE(std::abs(apply_operator(unitary, w).norm() - w.norm()) <= 1e-12 * w.norm());

    // composition
    const JonesMatrixd m1 = rotation(angle(rng)) * phase;
    const JonesMatrixd m2 = sigma_x() * rotation(angle(rng));
    const JonesMatrixd m21 = m2 * m1;
    const JonesVectord lhs = apply_operator(m2, apply_operator(m1, w));
    REQUIRE((lhs - apply_operator(m21, w)).norm() <= 1e-12 * w.norm());
  }
}

TEST_CASE("single-precision instantiation", "[jones]") {
  const auto d = basis_state<float>(Basis::D45);
  CHECK(std::abs(inner(d, d) - std::complex<float>(1.0f)) < 1e-6f);
  CHECK(is_unitary(rotation(0.5f), 1e-6f));
}
