#pragma once

#include <cstdint>
#include <random>

#include "sumrule/jacobi.hpp"
#include "sumrule/lns.hpp"

// Seeded random operators and perturbation directions.  The uniform mapping
// is fixed (mt19937_64 output >> 11, scaled), so reports are reproducible
// bit-for-bit for a given seed on any platform.

namespace sumrule {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long uniform_int(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

// Half-line J(r): q_0..q_{r-1} and p_1..p_{r-1} perturbed, rank r drawn
// uniformly in 1..max_rank, |p-1| <= p_dev, |q| <= q_dev.
JacobiOperator random_half_line(Rng& rng, int max_rank, double p_dev, double q_dev);

// Whole-line analogue on sites centered at 0.
JacobiOperator random_whole_line(Rng& rng, int max_rank, double p_dev, double q_dev);

// Direction supported on sites -span..span with entries in [-amp, amp].
PerturbationDirection random_direction(Rng& rng, int span, double amp);

}  // namespace sumrule
