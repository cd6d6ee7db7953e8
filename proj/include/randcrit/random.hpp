#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace randcrit {

using Rng = std::mt19937_64;

// Independent sub-stream for (seed, index). The two words are mixed through
// splitmix64 before seeding so neighbouring indices do not share state.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
// of R's diagonal folded back into Q).
Eigen::MatrixXd random_orthogonal(int m, Rng& rng);

// Running mean / second central moment. merge() is Chan's pairwise update,
// so reducing a fixed list of accumulators in a fixed order is deterministic.
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Moments& o);
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error() const;
};

// Pairwise (tree) reduction of per-chunk accumulators, in chunk order.
Moments reduce_pairwise(std::vector<Moments> parts);

// Number of worker threads to use when the caller passes 0.
unsigned default_threads();

// Runs body(chunk) for chunk in [0, n_chunks) on up to `threads` workers
// (0 = all cores). Results land in slot `chunk`; scheduling never affects
// what a chunk sees.
template <class Body>
auto run_chunks(std::size_t n_chunks, unsigned threads, Body&& body)
    -> std::vector<std::invoke_result_t<Body&, std::size_t>>;

}  // namespace randcrit

#include "randcrit/detail/run_chunks.hpp"
