#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "randcrit/random.hpp"

namespace testing_support {

inline Eigen::MatrixXd random_spd(int d, randcrit::Rng& rng, double ridge = 0.2) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = z(rng);
  return g * g.transpose() / d + ridge * Eigen::MatrixXd::Identity(d, d);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testing_support
