#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bd/dynamics.hpp"
#include "bd/lattice.hpp"

namespace bd {

enum class SamplerMode { Geometric, Exponential, Cesaro };

struct SamplerParams {
    int d = 1;
    int box_n = 100;
    SamplerMode mode = SamplerMode::Geometric;
    double p = 0.0;       // geometric success probability, support {0,1,...}
    double a = 0.0;       // exponential mean time
    double t = 0.0;       // cesaro horizon
    std::uint64_t seed = 0;
    std::uint64_t replicas = 1;
    int window = -1;      // output half-width, -1 means full box

    int effective_window() const { return window < 0 ? box_n : window; }
};

enum class ParamVerdict { Valid, OutOfWindow, Degenerate };

struct ParamCheck {
    ParamVerdict verdict = ParamVerdict::Valid;
    double recommended_p = 0.0;  // N^{-(d+1/2)}, log-midpoint of the window
    std::string note;
};

// Geometric mode is valid iff N^{-d-1} <= p <= N^{-d}; exponential mode iff
// 1 <= a <= N. A verdict, never an exception.
ParamCheck validate_params(const SamplerParams& params);

// A re-centered surface: window heights in canonical order with the origin
// entry exactly 0, plus the metadata needed to regenerate or evolve it.
struct CenteredSample {
    int d = 1;
    int box_n = 0;
    int window = 0;
    std::vector<Height> heights;  // (2W+1)^d, lexicographic
    std::uint64_t n_updates = 0;
    double elapsed = 0.0;         // model time, 0 for the discrete chain
    Height raw_origin = 0;        // origin height before re-centering
    std::uint64_t seed = 0;

    Height at_origin() const { return heights[heights.size() / 2]; }
};

// Extract the centered window of a pinned-zero box surface.
CenteredSample make_centered(const HeightField& h, int window);

// Draw n ~ Geometric(p) on {0,1,...}, run the discrete chain for n steps from
// zero, re-center, extract the window.
CenteredSample sample_stationary(const SamplerParams& params, Rng& rng);

// Draw t ~ Exponential(mean a), run the continuous chain to time t,
// re-center. The realized update count is Geometric(1/(|B_N|a + 1)).
// When `record_sites` is set, the deposit order is appended to *site_order
// (used by the coupling checks).
CenteredSample sample_exponential(const SamplerParams& params, Rng& rng,
                                  std::vector<std::size_t>* site_order = nullptr);

// Draw s ~ Uniform[0,t], run the continuous chain to time s, re-center.
CenteredSample sample_cesaro(const SamplerParams& params, Rng& rng);

// Run the continuous dynamics for additional time T on a full-box sample and
// re-center again. Requires window == box_n: the evolution needs every height
// in the box. Throws otherwise.
CenteredSample evolve_further(const CenteredSample& sample, double extra_time,
                              Rng& rng);

// Rebuild the pinned-zero height field of a full-box sample.
HeightField field_from_sample(const CenteredSample& sample);

}  // namespace bd
