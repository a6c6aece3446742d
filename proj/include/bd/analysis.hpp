#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bd/sampler.hpp"
#include "bd/stats.hpp"

namespace bd {

// Per-time Monte Carlo estimates with replica standard errors.
struct EstimateSeries {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> std_err;
    std::uint64_t replicas = 0;
};

struct AlphaBeta {
    EstimateSeries alpha;  // E h(t,0)
    EstimateSeries beta;   // E max{max_i h(t,+-e_i), h(t,0)}
};

// One continuous run per replica, observed at the grid times. beta >= alpha
// holds sample-wise (the max dominates the h(t,0) term).
AlphaBeta estimate_alpha_beta(int d, int N, std::span<const double> t_grid,
                              std::uint64_t replicas, std::uint64_t seed);

// One-sided Monte Carlo check of
//   alpha(t+delta) - alpha(t) >= delta e^{-(2d+1)delta} (beta(t) - alpha(t)),
// with a 3-standard-error allowance. Flags insufficient power instead of
// failing when the right side is below the noise floor.
TestReport check_growth_inequality(int d, int N, double t, double delta,
                                   std::uint64_t replicas, std::uint64_t seed);

// Time-averaged E|h(s,e_1) - h(s,0)| over s ~ Uniform[0,t], estimated at t and
// 2t; passes when the ratio of the two averages lies in [0.5, 2].
TestReport l1_bound_check(int d, int N, double t, std::uint64_t replicas,
                          std::uint64_t seed);

// Generates full-box samples, evolves each by `extra_time`, and compares the
// law of the origin gradient delta-g(0) = u(e_1) before vs after.
TestReport stationarity_test(const SamplerParams& params, double extra_time,
                             std::uint64_t replicas, std::uint64_t seed,
                             double tv_threshold = 0.03);

enum class InvarianceMode { Translation, Reflection, SignSymmetry };

// Translation: law of delta-g(x) across central sites vs the origin.
// Reflection: law of u(s(x)) vs u(x) over lattice symmetries.
// Sign symmetry: law of u(x) vs -u(x).
TestReport invariance_test(std::span<const CenteredSample> samples,
                           InvarianceMode mode, int half_window,
                           double tv_threshold = 0.05);

struct CorrelationPoint {
    long distance;
    double correlation;
    double std_err;
};

// Pearson correlation of the first gradient component at site pairs
// (origin, origin + distance * e_1). Descriptive only.
std::vector<CorrelationPoint> correlation_decay(
    std::span<const CenteredSample> samples, std::span<const long> distances);

struct TailProfile {
    Histogram hist;           // delta-g_1 at the site
    double mean = 0.0;
    double second_moment = 0.0;
    double mean_abs = 0.0;
    double log_survival_slope = 0.0;  // fitted on log Pr(|value| >= k)
};

TailProfile tail_profile(std::span<const CenteredSample> samples,
                         const Site& site);

}  // namespace bd
