#pragma once

// Seeded random subspace pairs, optionally with forced shared directions
// (zero principal angles) and forced perpendicular directions (right
// principal angles).

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace gaangle {

struct RandomProblemConfig {
  int min_dimension = 2;
  int max_dimension = 8;
  int max_grade = 4;  // of the lower-grade blade
  int max_grade_difference = 2;
  double shared_fraction = 0.25;
  double perpendicular_fraction = 0.25;
};

struct RandomProblem {
  int n = 0;
  std::vector<std::vector<double>> a_span;  // grade(A) >= grade(B)
  std::vector<std::vector<double>> b_span;
  int forced_shared = 0;
  int forced_perpendicular = 0;
};

namespace detail {

inline std::vector<std::vector<double>> random_frame(std::mt19937_64& rng,
                                                     int n) {
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> frame;
  while (static_cast<int>(frame.size()) < n) {
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : frame) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += f[i] * v[i];
        for (int i = 0; i < n; ++i) v[i] -= c * f[i];
      }
    }
    double len = 0.0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    if (len < 1e-3) continue;
    for (double& x : v) x /= len;
    frame.push_back(std::move(v));
  }
  return frame;
}

// Random combinations of the given directions: same span, skewed basis.
inline std::vector<std::vector<double>> mix(
    std::mt19937_64& rng, const std::vector<std::vector<double>>& dirs) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const std::size_t k = dirs.size();
  const std::size_t n = dirs.front().size();
  std::vector<std::vector<double>> out(k, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      // Diagonally dominant so the mixed set stays well conditioned.
      const double w = (i == j ? 2.0 + uniform(rng) : 0.5 * uniform(rng));
      for (std::size_t x = 0; x < n; ++x) out[i][x] += w * dirs[j][x];
    }
  }
  return out;
}

}  // namespace detail

inline RandomProblem generate_random_problem(std::mt19937_64& rng,
                                             const RandomProblemConfig& cfg) {
  std::uniform_int_distribution<int> dim(cfg.min_dimension, cfg.max_dimension);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  RandomProblem p;
  p.n = dim(rng);
  const int rb = std::uniform_int_distribution<int>(
      1, std::min(cfg.max_grade, p.n))(rng);
  const int q = std::uniform_int_distribution<int>(
      0, std::min(cfg.max_grade_difference, p.n - rb))(rng);
  const int ra = rb + q;

  const double category = unit(rng);
  int shared = 0, perpendicular = 0;
  if (category < cfg.shared_fraction) {
    shared = std::uniform_int_distribution<int>(1, rb)(rng);
  } else if (category < cfg.shared_fraction + cfg.perpendicular_fraction &&
             p.n > ra) {
    const int room = std::min(rb, p.n - ra);
    perpendicular = std::uniform_int_distribution<int>(1, room)(rng);
    if (perpendicular < rb && unit(rng) < 0.5) {
      shared = std::uniform_int_distribution<int>(1, rb - perpendicular)(rng);
    }
  }

  const auto frame = detail::random_frame(rng, p.n);
  std::vector<std::vector<double>> a_dirs(frame.begin(), frame.begin() + ra);
  std::vector<std::vector<double>> b_dirs(frame.begin(), frame.begin() + shared);
  for (int k = 0; k < perpendicular; ++k) b_dirs.push_back(frame[ra + k]);
  while (static_cast<int>(b_dirs.size()) < rb) {
    std::vector<double> v(p.n);
    for (double& x : v) x = uniform(rng);
    b_dirs.push_back(std::move(v));
  }

  p.a_span = detail::mix(rng, a_dirs);
  p.b_span = detail::mix(rng, b_dirs);
  p.forced_shared = shared;
  p.forced_perpendicular = perpendicular;
  return p;
}

}  // namespace gaangle
