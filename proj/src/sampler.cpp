#include "bd/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace bd {

ParamCheck validate_params(const SamplerParams& params) {
    ParamCheck check;
    const double n = static_cast<double>(params.box_n);
    check.recommended_p =
        params.box_n > 0 ? std::pow(n, -(params.d + 0.5)) : 0.0;
    switch (params.mode) {
        case SamplerMode::Geometric: {
            if (!(params.p > 0.0 && params.p < 1.0) || params.box_n < 1) {
                check.verdict = ParamVerdict::Degenerate;
                check.note = "p must lie in (0,1) with N >= 1";
            } else if (params.p < std::pow(n, -(params.d + 1)) ||
                       params.p > std::pow(n, -params.d)) {
                check.verdict = ParamVerdict::OutOfWindow;
                check.note = "p outside [N^-(d+1), N^-d]";
            }
            break;
        }
        case SamplerMode::Exponential: {
            if (!(params.a > 0.0)) {
                check.verdict = ParamVerdict::Degenerate;
                check.note = "a must be positive";
            } else if (params.a < 1.0 || params.a > n) {
                check.verdict = ParamVerdict::OutOfWindow;
                check.note = "a outside [1, N]";
            }
            break;
        }
        case SamplerMode::Cesaro: {
            if (params.t < 0.0) {
                check.verdict = ParamVerdict::Degenerate;
                check.note = "t must be nonnegative";
            }
            break;
        }
    }
    return check;
}

CenteredSample make_centered(const HeightField& h, int window) {
    const Box& box = h.box();
    if (window > box.half_width())
        throw std::invalid_argument("make_centered: window exceeds box");
    CenteredSample s;
    s.d = box.dim();
    s.box_n = box.half_width();
    s.window = window;
    Height origin = h.at(Site::origin(box.dim()));
    s.raw_origin = origin;
    Box wbox(box.dim(), window);
    s.heights.resize(wbox.size());
    for (std::size_t i = 0; i < wbox.size(); ++i)
        s.heights[i] = h.at(wbox.site_at(i)) - origin;
    return s;
}

CenteredSample sample_stationary(const SamplerParams& params, Rng& rng) {
    if (!(params.p > 0.0 && params.p <= 1.0))
        throw std::invalid_argument("sample_stationary: p outside (0,1]");
    ChainConfig cfg{Box(params.d, params.box_n), Boundary::PinnedZero};
    std::uint64_t n = rng.geometric(params.p);
    SimResult res = run_discrete(cfg, n, rng);
    CenteredSample s = make_centered(res.field, params.effective_window());
    s.n_updates = n;
    return s;
}

CenteredSample sample_exponential(const SamplerParams& params, Rng& rng,
                                  std::vector<std::size_t>* site_order) {
    if (!(params.a > 0.0))
        throw std::invalid_argument("sample_exponential: a <= 0");
    ChainConfig cfg{Box(params.d, params.box_n), Boundary::PinnedZero};
    double t = rng.exponential(params.a);
    ContinuousOptions opts;
    opts.record_sites = site_order != nullptr;
    SimResult res = run_continuous(cfg, t, rng, opts);
    if (site_order) *site_order = std::move(res.site_order);
    CenteredSample s = make_centered(res.field, params.effective_window());
    s.n_updates = res.event_count;
    s.elapsed = t;
    return s;
}

CenteredSample sample_cesaro(const SamplerParams& params, Rng& rng) {
    if (params.t < 0.0)
        throw std::invalid_argument("sample_cesaro: t < 0");
    ChainConfig cfg{Box(params.d, params.box_n), Boundary::PinnedZero};
    double t = rng.uniform() * params.t;
    SimResult res = run_continuous(cfg, t, rng);
    CenteredSample s = make_centered(res.field, params.effective_window());
    s.n_updates = res.event_count;
    s.elapsed = t;
    return s;
}

HeightField field_from_sample(const CenteredSample& sample) {
    if (sample.window != sample.box_n)
        throw std::invalid_argument(
            "field_from_sample: window smaller than box");
    Box box(sample.d, sample.box_n);
    HeightField h(box, Boundary::PinnedZero);
    for (std::size_t i = 0; i < box.size(); ++i) h[i] = sample.heights[i];
    return h;
}

CenteredSample evolve_further(const CenteredSample& sample, double extra_time,
                              Rng& rng) {
    HeightField h = field_from_sample(sample);
    ChainConfig cfg{h.box(), Boundary::PinnedZero};
    UpdateSchedule sched = generate_schedule(h.box(), extra_time, rng);
    HeightField evolved = apply_schedule(h, sched);
    CenteredSample out = make_centered(evolved, sample.window);
    out.n_updates = sample.n_updates + sched.total_events();
    out.elapsed = sample.elapsed + extra_time;
    out.seed = sample.seed;
    return out;
}

}  // namespace bd
