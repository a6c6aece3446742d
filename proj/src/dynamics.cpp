#include "bd/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bd {

std::size_t UpdateSchedule::total_events() const {
    std::size_t n = 0;
    for (const auto& v : per_site) n += v.size();
    return n;
}

std::vector<UpdateSchedule::Event> UpdateSchedule::merged() const {
    std::vector<std::size_t> all(box.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return merged(all);
}

std::vector<UpdateSchedule::Event> UpdateSchedule::merged(
    std::span<const std::size_t> sites) const {
    std::vector<Event> out;
    for (std::size_t s : sites)
        for (double t : per_site[s]) out.push_back({t, s});
    std::sort(out.begin(), out.end(),
              [](const Event& a, const Event& b) { return a.time < b.time; });
    return out;
}

HeightField deposit(const HeightField& h, const Site& x) {
    if (!h.box().contains(x))
        throw std::invalid_argument("deposit: site outside box");
    HeightField out = h;
    deposit(out, h.box().index_of(x));
    return out;
}

void run_site_stream(HeightField& h, std::span<const std::size_t> sites) {
    for (std::size_t s : sites) deposit(h, s);
}

SimResult run_discrete(const ChainConfig& cfg, std::uint64_t steps, Rng& rng,
                       const HeightField* initial, bool record_sites) {
    HeightField h = initial ? *initial : HeightField(cfg.box, cfg.boundary);
    SimResult res{std::move(h)};
    const std::uint64_t n = cfg.box.size();
    if (record_sites) res.site_order.reserve(steps);
    for (std::uint64_t i = 0; i < steps; ++i) {
        std::size_t s = static_cast<std::size_t>(rng.uniform_index(n));
        deposit(res.field, s);
        if (record_sites) res.site_order.push_back(s);
    }
    res.event_count = steps;
    return res;
}

UpdateSchedule generate_schedule(const Box& box, double horizon, Rng& rng) {
    if (horizon < 0) throw std::invalid_argument("generate_schedule: T < 0");
    UpdateSchedule sched{box, horizon,
                         std::vector<std::vector<double>>(box.size())};
    const double rate = static_cast<double>(box.size());
    double t = 0.0;
    while (true) {
        double dt = rng.exponential(1.0 / rate);
        while (dt == 0.0) dt = rng.exponential(1.0 / rate);  // distinctness
        t += dt;
        if (t > horizon) break;
        std::size_t s = static_cast<std::size_t>(rng.uniform_index(box.size()));
        sched.per_site[s].push_back(t);
    }
    return sched;
}

HeightField apply_schedule(const HeightField& f, const UpdateSchedule& P,
                           std::span<const std::size_t> D) {
    if (!(f.box() == P.box))
        throw std::invalid_argument("apply_schedule: box mismatch");
    HeightField h = f;
    for (const auto& ev : P.merged(D)) deposit(h, ev.site);
    return h;
}

HeightField apply_schedule(const HeightField& f, const UpdateSchedule& P) {
    std::vector<std::size_t> all(P.box.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return apply_schedule(f, P, all);
}

SimResult run_continuous(const ChainConfig& cfg, double horizon, Rng& rng,
                         const ContinuousOptions& opts) {
    if (horizon < 0) throw std::invalid_argument("run_continuous: T < 0");
    SimResult res{HeightField(cfg.box, cfg.boundary)};
    if (opts.keep_schedule)
        res.schedule = UpdateSchedule{
            cfg.box, horizon, std::vector<std::vector<double>>(cfg.box.size())};
    const double rate = static_cast<double>(cfg.box.size());
    std::size_t next_obs = 0;
    double t = 0.0;
    while (true) {
        double dt = rng.exponential(1.0 / rate);
        while (dt == 0.0) dt = rng.exponential(1.0 / rate);
        double tn = t + dt;
        while (next_obs < opts.observe_at.size() &&
               opts.observe_at[next_obs] < std::min(tn, horizon)) {
            opts.observer(opts.observe_at[next_obs], res.field);
            ++next_obs;
        }
        if (tn > horizon) break;
        t = tn;
        std::size_t s = static_cast<std::size_t>(rng.uniform_index(cfg.box.size()));
        deposit(res.field, s);
        ++res.event_count;
        if (opts.keep_schedule) res.schedule->per_site[s].push_back(t);
        if (opts.record_sites) res.site_order.push_back(s);
    }
    while (next_obs < opts.observe_at.size()) {
        opts.observer(opts.observe_at[next_obs], res.field);
        ++next_obs;
    }
    res.elapsed = horizon;
    return res;
}

}  // namespace bd
