#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace weakoptics {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey. Sizes must be powers of two.
//   forward:  X_k = sum_j x_j exp(-2 pi i j k / n)
//   inverse:  x_j = (1/n) sum_k X_k exp(+2 pi i j k / n)
void fft_inplace(Eigen::Ref<Eigen::VectorXcd> data, bool inverse = false);

inline Eigen::VectorXcd fft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y = x;
  fft_inplace(y, false);
  return y;
}

inline Eigen::VectorXcd ifft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y = x;
  fft_inplace(y, true);
  return y;
}

}  // namespace weakoptics
