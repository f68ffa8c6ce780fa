#include "sumrule/ensemble.hpp"

namespace sumrule {

JacobiOperator random_half_line(Rng& rng, int max_rank, double p_dev, double q_dev) {
  long r = rng.uniform_int(1, max_rank);
  std::map<long, double> p, q;
  for (long k = 0; k < r; ++k) q[k] = rng.uniform(-q_dev, q_dev);
  for (long k = 1; k < r; ++k) p[k] = 1.0 + rng.uniform(-p_dev, p_dev);
  return JacobiOperator::make(Side::half_line, std::move(p), std::move(q));
}

JacobiOperator random_whole_line(Rng& rng, int max_rank, double p_dev, double q_dev) {
  long r = rng.uniform_int(1, max_rank);
  long lo = -r / 2;
  std::map<long, double> p, q;
  for (long k = lo; k < lo + r; ++k) q[k] = rng.uniform(-q_dev, q_dev);
  for (long k = lo + 1; k < lo + r; ++k) p[k] = 1.0 + rng.uniform(-p_dev, p_dev);
  return JacobiOperator::make(Side::whole_line, std::move(p), std::move(q));
}

PerturbationDirection random_direction(Rng& rng, int span, double amp) {
  PerturbationDirection d;
  for (long i = -span; i <= span; ++i) {
    d.dp[i] = rng.uniform(-amp, amp);
    d.dq[i] = rng.uniform(-amp, amp);
  }
  return d;
}

}  // namespace sumrule
