#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bd/lattice.hpp"

namespace bd {

// Integer histogram with clipped tails. Values beyond +-clip land in the
// overflow bins, which count toward totals and distances.
struct Histogram {
    long clip = 50;
    std::map<long, std::uint64_t> bins;  // clipped value -> count
    std::uint64_t total = 0;

    void add(Height v);
    static Histogram collect(std::span<const Height> values, long clip = 50);
};

// Half the L1 distance between the normalized histograms.
double total_variation(const Histogram& a, const Histogram& b);

struct TestReport {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    double tv = 0.0;
    std::uint64_t n1 = 0, n2 = 0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

// Regularized upper incomplete gamma Q(s,x); chi-square survival is
// Q(dof/2, stat/2).
double regularized_gamma_q(double s, double x);
double chi_square_sf(double stat, double dof);

// Two-sample chi-square on the union of supports, bins merged greedily until
// every pooled expected count is >= 5. Gates on TV; the p-value is reported as
// a diagnostic.
TestReport two_sample_test(const Histogram& a, const Histogram& b,
                           double tv_threshold = 0.05);

// Goodness of fit of observed category counts against exact probabilities.
// Categories with expected count < 5 are merged into a pooled remainder.
TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> expected_prob,
                          double significance = 0.01);

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinFit linear_fit(std::span<const double> x, std::span<const double> y);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct MeanStderr {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
};
MeanStderr mean_stderr(std::span<const double> xs);

}  // namespace bd
