#ifndef LIECR_TEST_HELPERS_HPP
#define LIECR_TEST_HELPERS_HPP

#include <initializer_list>
#include <random>

#include "liecr/lie_algebra.hpp"

namespace liecr::test {

inline Element cvec(std::initializer_list<Complex> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return Element(std::move(v));
}

inline Element random_element(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  return Element(std::move(v));
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

}  // namespace liecr::test

#endif  // LIECR_TEST_HELPERS_HPP
