#pragma once

// Synthetic training sets shared by the unit and acceptance tests.

#include <cmath>
#include <random>
#include <vector>

#include "credsift/classifier.hpp"

namespace fixtures {

/// Points in [0,1]^dims labelled by the side of the hyperplane sum(x) = dims/2.
/// Points closer than `margin` (in L2) to the plane are redrawn.
inline std::vector<credsift::LabeledExample> separable(std::size_t n, std::size_t dims,
                                                       std::uint64_t seed, double margin = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<credsift::LabeledExample> out;
  const double norm = std::sqrt(static_cast<double>(dims));
  while (out.size() < n) {
    credsift::LabeledExample e;
    double s = 0.0;
    for (std::size_t k = 0; k < dims; ++k) {
      e.features.push_back(u(rng));
      s += e.features.back();
    }
    double dist = (s - 0.5 * static_cast<double>(dims)) / norm;
    if (std::abs(dist) < margin) continue;
    e.label = dist > 0 ? 1 : 0;
    out.push_back(std::move(e));
  }
  return out;
}

/// C1-shaped examples (retweets, favorites, relevant words) where the label
/// depends on the retweet score with weight 0.4 for original posts. Retweeted
/// posts carry high retweet scores that say nothing about credibility, so a
/// model that never sees them during training extrapolates the wrong rule.
inline std::vector<credsift::LabeledExample> retweet_mix(std::size_t n, std::uint64_t seed,
                                                         double retweet_share = 0.4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<credsift::LabeledExample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    credsift::LabeledExample e;
    e.is_retweet = u(rng) < retweet_share;
    double r = e.is_retweet ? 0.5 + 0.5 * u(rng) : 0.5 * u(rng);
    double f = u(rng), w = u(rng);
    double quality = 0.5 * (f + w);
    double signal = e.is_retweet ? 0.6 * quality : 0.6 * quality + 0.4 * r;
    e.label = signal > 0.5 ? 1 : 0;
    e.features = {r, f, w};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fixtures
