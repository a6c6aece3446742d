#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bd/lattice.hpp"

namespace bd {

// The gap inequality: returns (max - mean, (1/(2n(n-1))) * sum_{i<j} |x_i - x_j|).
// The first component is always >= the second. Throws for n < 2.
std::pair<double, double> max_mean_gap(std::span<const double> xs);

// Exact integer check of the same inequality via cross-multiplication:
//   (n*max - sum) * 2(n-1) >= sum_{i<j} |x_i - x_j|.
bool max_mean_gap_holds_exact(std::span<const Height> xs);

// Chernoff lower-tail bound e^{(1 - a + ln a) n} for Gamma(n,1), 0 < a < 1.
double gamma_tail_bound(int n, double a);

// Exact Pr(Gamma(n,1) <= x) for integer shape, via the identity with
// Pr(Poisson(x) >= n). Summation only, no incomplete-gamma routine.
double gamma_cdf_integer_shape(int n, double x);

// Pr(K = j) = (Ba)^j / (Ba+1)^{j+1}: the law of the update count in a box of
// B sites by an Exponential(mean a) random time.
double geometric_count_pmf(std::uint64_t box_sites, double a, std::uint64_t j);

// Exact law of the discrete chain after a fixed number of steps, as counts
// over a common power-of-|B| denominator. Probabilities are exact rationals
// count/denominator.
struct ExactLaw {
    std::uint64_t denominator = 1;
    std::map<std::vector<Height>, std::uint64_t> outcomes;  // heights -> count

    double prob(const std::vector<Height>& h) const;
    bool sums_to_one() const;  // exact: counts total the denominator
};

// Enumerates all |B_N|^steps site sequences. Throws if that exceeds the 1e6
// budget.
ExactLaw brute_force_chain_law(int d, int N, int steps);

}  // namespace bd
