#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bd/dynamics.hpp"
#include "bd/lattice.hpp"

namespace bd {

// Backward influence set of a site: the sites whose initial heights and events
// can affect the final height at the root, with the exploration step count K,
// the decreasing event times, and the l1 radius.
struct ClusterResult {
    Site root;
    std::vector<Site> sites;       // S(x,P); may include sites outside the box
    std::size_t stop_index = 0;    // K(x,P)
    std::vector<double> times;     // t_1 > t_2 > ... > t_K
    long rho = 0;                  // max l1 distance from root over S
    bool escaped_box = false;      // some member lies outside the box
};

// The backward recursion: t_0 = T, S_0 = {x}; repeatedly take the latest event
// time below t_k at any member site, add that site's neighbors, stop when no
// earlier event exists. Deterministic in P.
ClusterResult explore(const Site& x, const UpdateSchedule& P);

struct StabilizationReport {
    bool cluster_in_box = false;
    bool pass = false;
    Height value = 0;          // common value at x when pass
    std::size_t sets_tested = 0;
};

// Finite form of the locality property: the value of Psi_D(f,P) at x is the
// same for D = S(x,P), for randomly grown supersets, and for the full box.
// If the cluster escapes the box the hypothesis fails and this reports
// cluster_in_box = false rather than throwing.
StabilizationReport stabilization_check(const HeightField& f,
                                        const UpdateSchedule& P, const Site& x,
                                        Rng& rng, int extra_sets = 4);

struct TailPoint {
    double horizon;
    double tail_prob;
    double std_err;
    std::uint64_t exceed = 0;
    std::uint64_t censored = 0;  // cluster reached the box edge (rho >= N)
};

struct TailEstimate {
    double c;
    std::vector<TailPoint> points;
    double slope = 0.0;  // log tail_prob vs T, over points with exceed > 0
    double r2 = 0.0;
    std::size_t fit_points = 0;
};

// Monte Carlo estimate of Pr(rho(0,P) > c*T) over a grid of horizons.
// Boundary escapes are right-censored (counted as rho >= N, hence as
// exceedances whenever c*T < N).
TailEstimate radius_tail(int d, int N, std::span<const double> t_grid,
                         std::uint64_t replicas, double c, std::uint64_t seed);

}  // namespace bd
