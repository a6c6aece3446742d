#include "bd/cluster.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "bd/stats.hpp"

namespace bd {

namespace {

struct SiteHash {
    std::size_t operator()(const Site& s) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (Coord c : s.c)
            h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(c))) *
                0x100000001b3ULL;
        return h;
    }
};

struct Candidate {
    double time;
    std::size_t site;  // flat index in the box
    std::size_t pos;   // index of this event in the site's list
    bool operator<(const Candidate& o) const { return time < o.time; }
};

}  // namespace

ClusterResult explore(const Site& x, const UpdateSchedule& P) {
    if (!P.box.contains(x))
        throw std::invalid_argument("explore: root outside box");

    ClusterResult res;
    res.root = x;
    res.sites.push_back(x);

    std::unordered_set<Site, SiteHash> members;
    members.insert(x);

    std::priority_queue<Candidate> heap;
    auto push_latest_before = [&](std::size_t s, double t) {
        const auto& ev = P.per_site[s];
        auto it = std::lower_bound(ev.begin(), ev.end(), t);
        if (it != ev.begin()) {
            std::size_t pos = static_cast<std::size_t>(it - ev.begin()) - 1;
            heap.push({ev[pos], s, pos});
        }
    };

    double t_cur = P.horizon;
    push_latest_before(P.box.index_of(x), t_cur);

    while (!heap.empty()) {
        Candidate c = heap.top();
        heap.pop();
        // Every queued candidate is below the previous t_k, and this one is
        // the maximum, so it is exactly t_{k+1}.
        t_cur = c.time;
        res.times.push_back(t_cur);
        ++res.stop_index;

        if (c.pos > 0)
            heap.push({P.per_site[c.site][c.pos - 1], c.site, c.pos - 1});

        for (Site& nb : neighbors(P.box.site_at(c.site))) {
            if (!members.insert(nb).second) continue;
            res.rho = std::max(res.rho, l1_distance(nb, x));
            if (P.box.contains(nb))
                push_latest_before(P.box.index_of(nb), t_cur);
            else
                res.escaped_box = true;
            res.sites.push_back(std::move(nb));
        }
    }
    return res;
}

StabilizationReport stabilization_check(const HeightField& f,
                                        const UpdateSchedule& P, const Site& x,
                                        Rng& rng, int extra_sets) {
    StabilizationReport rep;
    ClusterResult cl = explore(x, P);
    if (cl.escaped_box) return rep;  // hypothesis S(x,P) subset of box fails
    rep.cluster_in_box = true;

    std::vector<std::size_t> core;
    core.reserve(cl.sites.size());
    for (const Site& s : cl.sites) core.push_back(P.box.index_of(s));

    const std::size_t xi = P.box.index_of(x);
    Height ref = apply_schedule(f, P, core)[xi];
    rep.value = ref;
    rep.sets_tested = 1;

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < P.box.size(); ++i)
        if (std::find(core.begin(), core.end(), i) == core.end())
            rest.push_back(i);

    bool ok = true;
    for (int k = 0; k < extra_sets && ok; ++k) {
        // Random superset: core plus a random fraction of the remaining sites.
        std::vector<std::size_t> D = core;
        for (std::size_t s : rest)
            if (rng.uniform() < 0.5) D.push_back(s);
        ok = apply_schedule(f, P, D)[xi] == ref;
        ++rep.sets_tested;
    }
    if (ok) {
        ok = apply_schedule(f, P)[xi] == ref;  // full box
        ++rep.sets_tested;
    }
    rep.pass = ok;
    return rep;
}

TailEstimate radius_tail(int d, int N, std::span<const double> t_grid,
                         std::uint64_t replicas, double c, std::uint64_t seed) {
    TailEstimate est;
    est.c = c;
    Box box(d, N);
    Site origin = Site::origin(d);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        const double T = t_grid[ti];
        std::uint64_t exceed = 0, censored = 0;
        for (std::uint64_t r = 0; r < replicas; ++r) {
            Rng rng(replica_seed(seed, ti * replicas + r));
            UpdateSchedule P = generate_schedule(box, T, rng);
            ClusterResult cl = explore(origin, P);
            long rho = cl.rho;
            if (cl.escaped_box) {
                ++censored;
                rho = N;  // right-censored lower bound
            }
            if (static_cast<double>(rho) > c * T) ++exceed;
        }
        double p = static_cast<double>(exceed) / static_cast<double>(replicas);
        double se = std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));
        est.points.push_back({T, p, se, exceed, censored});
    }

    std::vector<double> xs, ys;
    for (const TailPoint& pt : est.points)
        if (pt.exceed > 0) {
            xs.push_back(pt.horizon);
            ys.push_back(std::log(pt.tail_prob));
        }
    est.fit_points = xs.size();
    if (xs.size() >= 2) {
        LinFit fit = linear_fit(xs, ys);
        est.slope = fit.slope;
        est.r2 = fit.r2;
    }
    return est;
}

}  // namespace bd
