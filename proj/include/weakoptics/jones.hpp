#pragma once

// Two-dimensional Jones calculus: fully polarized states and 2x2 operators.
// Component order is (z, x): a1 is the amplitude on |1> (vertical, z axis),
// a2 the amplitude on |2> (horizontal, x axis). sigma_z = +1 on |1>.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weakoptics {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using JonesVector = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using JonesMatrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using Complexd = Complex<double>;
using JonesVectord = JonesVector<double>;
using JonesMatrixd = JonesMatrix<double>;

enum class Basis { V, H, D45, A135 };

/// A normalized Jones vector.
///
/// Construction checks |a1|^2 + |a2|^2 against 1: within 1e-6 the vector is
/// rescaled to unit norm, anything further off (or non-finite) is rejected.
template <typename Scalar>
class BasicPolarizationState {
 public:
  using Vector = JonesVector<Scalar>;

  static constexpr Scalar kRenormalizeTolerance = Scalar(1e-6);

  BasicPolarizationState() : v_(Complex<Scalar>(1), Complex<Scalar>(0)) {}

  explicit BasicPolarizationState(const Vector& v) : v_(v) {
    if (!v_.allFinite()) {
      throw std::invalid_argument("polarization state has non-finite components");
    }
    const Scalar n2 = v_.squaredNorm();
    if (std::abs(n2 - Scalar(1)) > kRenormalizeTolerance) {
      throw std::invalid_argument("polarization state is not normalized (|a|^2 = " +
                                  std::to_string(static_cast<double>(n2)) + ")");
    }
    v_ /= std::sqrt(n2);
  }

  BasicPolarizationState(Complex<Scalar> a1, Complex<Scalar> a2)
      : BasicPolarizationState(Vector(a1, a2)) {}

  const Complex<Scalar>& a1() const { return v_(0); }
  const Complex<Scalar>& a2() const { return v_(1); }
  const Vector& vector() const { return v_; }

  bool operator==(const BasicPolarizationState& o) const { return v_ == o.v_; }

 private:
  Vector v_;
};

using PolarizationState = BasicPolarizationState<double>;

template <typename Scalar = double>
BasicPolarizationState<Scalar> basis_state(Basis b) {
  using C = Complex<Scalar>;
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  switch (b) {
    case Basis::V:
      return {C(1), C(0)};
    case Basis::H:
      return {C(0), C(1)};
    case Basis::D45:
      return {C(r), C(r)};
    case Basis::A135:
      return {C(r), C(-r)};
  }
  throw std::invalid_argument("unknown basis");
}

inline Basis parse_basis(std::string_view label) {
  if (label == "V") return Basis::V;
  if (label == "H") return Basis::H;
  if (label == "D45") return Basis::D45;
  if (label == "A135") return Basis::A135;
  throw std::invalid_argument("unknown polarization label '" + std::string(label) +
                              "' (expected V, H, D45 or A135)");
}

template <typename Scalar = double>
BasicPolarizationState<Scalar> basis_state(std::string_view label) {
  return basis_state<Scalar>(parse_basis(label));
}

/// Linear polarization at angle theta from the z axis toward the x axis.
template <typename Scalar = double>
BasicPolarizationState<Scalar> linear_state(Scalar theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("linear_state: angle is not finite");
  return {Complex<Scalar>(std::cos(theta)), Complex<Scalar>(std::sin(theta))};
}

template <typename Scalar = double>
JonesMatrix<Scalar> identity() {
  return JonesMatrix<Scalar>::Identity();
}

template <typename Scalar = double>
JonesMatrix<Scalar> sigma_x() {
  JonesMatrix<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
JonesMatrix<Scalar> sigma_y() {
  using C = Complex<Scalar>;
  JonesMatrix<Scalar> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
JonesMatrix<Scalar> sigma_z() {
  JonesMatrix<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

/// R(beta) = [[cos, -sin], [sin, cos]], rotation in the xz plane.
template <typename Scalar = double>
JonesMatrix<Scalar> rotation(Scalar beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("rotation: angle is not finite");
  const Scalar c = std::cos(beta);
  const Scalar s = std::sin(beta);
  JonesMatrix<Scalar> m;
  m << c, -s, s, c;
  return m;
}

/// <bra|ket>, conjugating the bra.
template <typename Scalar>
Complex<Scalar> inner(const BasicPolarizationState<Scalar>& bra,
                      const BasicPolarizationState<Scalar>& ket) {
  return bra.vector().dot(ket.vector());
}

template <typename Scalar>
Complex<Scalar> inner(const JonesVector<Scalar>& bra, const JonesVector<Scalar>& ket) {
  return bra.dot(ket);
}

template <typename Scalar>
JonesVector<Scalar> apply_operator(const JonesMatrix<Scalar>& m, const JonesVector<Scalar>& v) {
  return m * v;
}

template <typename Scalar>
JonesVector<Scalar> apply_operator(const JonesMatrix<Scalar>& m,
                                   const BasicPolarizationState<Scalar>& v) {
  return m * v.vector();
}

/// <bra| M |ket>
template <typename Scalar>
Complex<Scalar> matrix_element(const BasicPolarizationState<Scalar>& bra,
                               const JonesMatrix<Scalar>& m,
                               const BasicPolarizationState<Scalar>& ket) {
  return bra.vector().dot(m * ket.vector());
}

template <typename Derived>
auto max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool is_unitary(const JonesMatrix<Scalar>& m, Scalar tol) {
  if (!(tol > 0)) throw std::invalid_argument("is_unitary: tolerance must be positive");
  return max_abs_entry(m.adjoint() * m - JonesMatrix<Scalar>::Identity()) <= tol;
}

template <typename Scalar>
bool is_hermitian(const JonesMatrix<Scalar>& m, Scalar tol) {
  if (!(tol > 0)) throw std::invalid_argument("is_hermitian: tolerance must be positive");
  return max_abs_entry(m - m.adjoint()) <= tol;
}

}  // namespace weakoptics
