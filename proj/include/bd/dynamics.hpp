#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bd/lattice.hpp"
#include "bd/rng.hpp"

namespace bd {

// Poissonian update times on a box over the horizon [0,T]. Per-site lists are
// sorted ascending and all times across all sites are pairwise distinct.
struct UpdateSchedule {
    Box box;
    double horizon = 0.0;
    std::vector<std::vector<double>> per_site;  // [flat site index]

    struct Event {
        double time;
        std::size_t site;
    };

    std::size_t total_events() const;
    // All events of the given sites (default: all), in increasing time order.
    std::vector<Event> merged() const;
    std::vector<Event> merged(std::span<const std::size_t> sites) const;
};

struct ChainConfig {
    Box box;
    Boundary boundary = Boundary::PinnedZero;
    std::uint64_t seed = 0;
};

struct SimResult {
    HeightField field;
    std::uint64_t event_count = 0;
    double elapsed = 0.0;
    std::optional<UpdateSchedule> schedule;
    std::vector<std::size_t> site_order;  // deposit sequence, when retained
    std::vector<HeightField> snapshots;
};

// One ballistic deposition update at flat index `idx`:
//   h(x) <- max( max over 2d neighbors under the boundary convention, h(x)+1 ).
inline void deposit(HeightField& h, std::size_t idx) {
    const Box& box = h.box();
    const std::size_t d2 = 2 * static_cast<std::size_t>(box.dim());
    const std::size_t* nb = box.neighbor_table().data() + idx * d2;
    Height v = h[idx] + 1;
    for (std::size_t k = 0; k < d2; ++k) {
        Height w = h.at_index(nb[k]);
        if (w > v) v = w;
    }
    h[idx] = v;
}

// Site-checked variant (throws if x is outside the box).
HeightField deposit(const HeightField& h, const Site& x);

// Apply deposits at an explicit site sequence. Shared by the discrete and
// continuous runners, which makes their coupling exact by construction.
void run_site_stream(HeightField& h, std::span<const std::size_t> sites);

// The discrete chain: `steps` deposits at iid uniform box sites, pinned-zero
// boundary, starting from all zeros (or `initial` if given). One uniform index
// is consumed per step.
SimResult run_discrete(const ChainConfig& cfg, std::uint64_t steps, Rng& rng,
                       const HeightField* initial = nullptr,
                       bool record_sites = false);

// Rate-1 clocks per site, realized by superposition: per event one exponential
// inter-arrival (rate |B_N|) then one uniform site index, in that order.
// Draws colliding with the previous event time are rejected and re-drawn.
UpdateSchedule generate_schedule(const Box& box, double horizon, Rng& rng);

// Psi_D(f,P): process the events of sites in D in increasing time order.
// Sites outside D are never updated but do enter neighbor maxima. D defaults
// to the whole box.
HeightField apply_schedule(const HeightField& f, const UpdateSchedule& P,
                           std::span<const std::size_t> D);
HeightField apply_schedule(const HeightField& f, const UpdateSchedule& P);

struct ContinuousOptions {
    bool keep_schedule = false;
    bool record_sites = false;
    // Observation times (ascending); observer fires once per entry with the
    // field state at that model time.
    std::vector<double> observe_at;
    std::function<void(double, const HeightField&)> observer;
};

// The continuous-time chain to model time T. Equals
// apply_schedule(zero field, generate_schedule(box,T), full box) event for
// event; implemented as a single streaming pass.
SimResult run_continuous(const ChainConfig& cfg, double horizon, Rng& rng,
                         const ContinuousOptions& opts = {});

}  // namespace bd
