#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bd/analysis.hpp"
#include "bd/cluster.hpp"
#include "bd/dynamics.hpp"
#include "bd/io.hpp"
#include "bd/oracles.hpp"
#include "bd/sampler.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
    int dim = 1;
    int box_n = 100;
    double p = 0.0;
    double mean_time = 0.0;
    double cesaro_t = 0.0;
    double time = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t replicas = 1000;
    std::uint64_t seed = 1;
    int window = -1;
    std::string out;
    std::string format = "jsonl";
    std::string checkpoint;
    bool force = false;
    double c = 8.0;  // cluster-tail speed knob
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dim", o.dim, "lattice dimension d");
    cmd->add_option("--box-n", o.box_n, "box half-width N");
    cmd->add_option("--p", o.p, "geometric sampler success probability");
    cmd->add_option("--mean-time", o.mean_time, "exponential sampler mean time");
    cmd->add_option("--cesaro-t", o.cesaro_t, "cesaro sampler horizon");
    cmd->add_option("--time", o.time, "continuous-time horizon");
    cmd->add_option("--steps", o.steps, "discrete-chain step count");
    cmd->add_option("--replicas", o.replicas, "replica count");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--window", o.window, "output window half-width");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "output format (jsonl|csv)");
    cmd->add_option("--checkpoint", o.checkpoint, "checkpoint file path");
    cmd->add_flag("--force", o.force, "proceed despite out-of-window parameters");
}

bd::SamplerParams to_params(const CommonOpts& o) {
    bd::SamplerParams params;
    params.d = o.dim;
    params.box_n = o.box_n;
    params.seed = o.seed;
    params.replicas = o.replicas;
    params.window = o.window;
    if (o.p > 0.0) {
        params.mode = bd::SamplerMode::Geometric;
        params.p = o.p;
    } else if (o.mean_time > 0.0) {
        params.mode = bd::SamplerMode::Exponential;
        params.a = o.mean_time;
    } else {
        params.mode = bd::SamplerMode::Cesaro;
        params.t = o.cesaro_t;
    }
    return params;
}

double mode_param(const bd::SamplerParams& p) {
    switch (p.mode) {
        case bd::SamplerMode::Geometric: return p.p;
        case bd::SamplerMode::Exponential: return p.a;
        case bd::SamplerMode::Cesaro: return p.t;
    }
    return 0.0;
}

bd::CenteredSample draw(const bd::SamplerParams& params, bd::Rng& rng) {
    switch (params.mode) {
        case bd::SamplerMode::Geometric: return bd::sample_stationary(params, rng);
        case bd::SamplerMode::Exponential: return bd::sample_exponential(params, rng);
        case bd::SamplerMode::Cesaro: return bd::sample_cesaro(params, rng);
    }
    throw std::logic_error("draw");
}

json report_json(const bd::TestReport& r) {
    return json{{"name", r.name},         {"statistic", r.statistic},
                {"p_value", r.p_value},   {"tv", r.tv},
                {"n1", r.n1},             {"n2", r.n2},
                {"threshold", r.threshold}, {"pass", r.pass},
                {"note", r.note}};
}

int cmd_sample(const CommonOpts& o) {
    bd::SamplerParams params = to_params(o);
    bd::ParamCheck check = bd::validate_params(params);
    if (check.verdict == bd::ParamVerdict::Degenerate) {
        std::cerr << "invalid sampler parameters: " << check.note << "\n";
        return 2;
    }
    if (check.verdict == bd::ParamVerdict::OutOfWindow && !o.force) {
        std::cerr << "parameters outside the validity window (" << check.note
                  << "); recommended p = " << check.recommended_p
                  << ". Pass --force to proceed anyway.\n";
        return 2;
    }

    std::string out = o.out.empty() ? "samples.jsonl" : o.out;
    std::ofstream os(out);
    if (!os) {
        std::cerr << "cannot open " << out << "\n";
        return 1;
    }
    json meta{{"schema_version", bd::kSchemaVersion},
              {"command", "sample"},
              {"d", params.d},
              {"box_n", params.box_n},
              {"mode", bd::mode_name(params.mode)},
              {"param", mode_param(params)},
              {"replicas", o.replicas},
              {"master_seed", o.seed},
              {"window", params.effective_window()},
              {"seed_rule", "replica_seed = splitmix64(master + golden*(i+1))"},
              {"verdict", check.verdict == bd::ParamVerdict::Valid
                              ? "valid"
                              : "out-of-window"}};
    std::ofstream ms(out + ".meta.json");
    ms << meta.dump() << "\n";

    for (std::uint64_t r = 0; r < o.replicas; ++r) {
        std::uint64_t s = bd::replica_seed(o.seed, r);
        bd::Rng rng(s);
        bd::CenteredSample sample = draw(params, rng);
        os << bd::to_json_line(
                  bd::make_record(sample, params.mode, mode_param(params), r, s))
           << "\n";
    }
    return 0;
}

void write_snapshot_rows(std::vector<std::vector<double>>& rows,
                         std::uint64_t step, const bd::HeightField& h) {
    for (std::size_t i = 0; i < h.box().size(); ++i)
        rows.push_back({static_cast<double>(step), static_cast<double>(i),
                        static_cast<double>(h[i])});
}

int cmd_simulate(const CommonOpts& o) {
    if ((o.steps > 0) == (o.time > 0.0)) {
        std::cerr << "specify exactly one of --steps or --time\n";
        return 2;
    }
    bd::Box box(o.dim, o.box_n);
    std::vector<std::vector<double>> rows;

    if (o.time > 0.0) {
        bd::ChainConfig cfg{box, bd::Boundary::PinnedZero, o.seed};
        bd::Rng rng(o.seed);
        bd::SimResult res = bd::run_continuous(cfg, o.time, rng);
        write_snapshot_rows(rows, res.event_count, res.field);
    } else {
        bd::HeightField h(box, bd::Boundary::PinnedZero);
        bd::Rng rng(o.seed);
        std::uint64_t start = 0;
        if (!o.checkpoint.empty()) {
            if (auto cp = bd::read_checkpoint(o.checkpoint)) {
                if (cp->d != o.dim || cp->box_n != o.box_n) {
                    std::cerr << "checkpoint does not match configuration\n";
                    return 2;
                }
                h.data() = cp->heights;
                start = cp->step;
                rng.load_state(cp->rng_state);
            }
        }
        const std::uint64_t stride = std::max<std::uint64_t>(1, o.steps / 10);
        for (std::uint64_t i = start; i < o.steps; ++i) {
            std::size_t s = static_cast<std::size_t>(rng.uniform_index(box.size()));
            bd::deposit(h, s);
            if ((i + 1) % stride == 0 && (i + 1) < o.steps) {
                write_snapshot_rows(rows, i + 1, h);
                if (!o.checkpoint.empty())
                    bd::write_checkpoint(
                        o.checkpoint,
                        {bd::kSchemaVersion, o.dim, o.box_n, i + 1,
                         rng.save_state(), h.data()});
            }
        }
        write_snapshot_rows(rows, o.steps, h);
    }

    std::string out = o.out.empty() ? "trajectory.csv" : o.out;
    std::ofstream os(out);
    bd::write_csv(os, {"step", "site_index", "height"}, rows);
    return 0;
}

int suite_oracles(const CommonOpts& o, json& reports) {
    bool ok = true;
    bd::Rng rng(o.seed);

    // gap inequality on random vectors
    std::uint64_t fails = 0;
    for (int i = 0; i < 100000; ++i) {
        std::size_t n = 2 + rng.uniform_index(9);
        std::vector<bd::Height> xs(n);
        for (auto& v : xs)
            v = static_cast<bd::Height>(rng.uniform_index(2001)) - 1000;
        if (!bd::max_mean_gap_holds_exact(xs)) ++fails;
    }
    reports.push_back({{"name", "gap_inequality"}, {"fails", fails}});
    ok = ok && fails == 0;

    // gamma tail bound dominates the exact CDF
    bool dom = true;
    for (int n = 1; n <= 50; ++n)
        for (int ai = 1; ai <= 9; ++ai) {
            double a = ai / 10.0;
            dom = dom && bd::gamma_cdf_integer_shape(n, a * n) <=
                             bd::gamma_tail_bound(n, a);
        }
    reports.push_back({{"name", "gamma_tail_bound"}, {"pass", dom}});
    ok = ok && dom;

    // discrete chain vs exact enumeration
    for (int steps = 1; steps <= 5; ++steps) {
        bd::ExactLaw law = bd::brute_force_chain_law(1, 1, steps);
        std::vector<double> probs;
        std::map<std::vector<bd::Height>, std::size_t> slot;
        for (const auto& [h, c] : law.outcomes) {
            slot[h] = probs.size();
            probs.push_back(static_cast<double>(c) /
                            static_cast<double>(law.denominator));
        }
        std::vector<std::uint64_t> counts(probs.size(), 0);
        bd::ChainConfig cfg{bd::Box(1, 1), bd::Boundary::PinnedZero};
        for (int r = 0; r < 100000; ++r) {
            bd::Rng rr(bd::replica_seed(o.seed + steps, r));
            bd::SimResult res = bd::run_discrete(cfg, steps, rr);
            ++counts[slot.at(res.field.data())];
        }
        bd::TestReport rep = bd::chi_square_gof(counts, probs);
        rep.name = "chain_law_steps_" + std::to_string(steps);
        reports.push_back(report_json(rep));
        ok = ok && rep.pass;
    }
    return ok ? 0 : 1;
}

int suite_stationarity(const CommonOpts& o, json& reports) {
    bd::SamplerParams params = to_params(o);
    if (params.mode == bd::SamplerMode::Cesaro && params.t <= 0) {
        params.mode = bd::SamplerMode::Geometric;
        params.p = 5e-5;  // low end of the validity window: long warm-up
        params.box_n = 200;
    }
    bd::ParamCheck check = bd::validate_params(params);
    if (check.verdict == bd::ParamVerdict::OutOfWindow && !o.force) {
        std::cerr << "out-of-window parameters; pass --force to proceed\n";
        return 2;
    }
    double horizon = o.time > 0 ? o.time : 1.0;
    bd::TestReport rep =
        bd::stationarity_test(params, horizon, o.replicas, o.seed);
    reports.push_back(report_json(rep));
    return rep.pass ? 0 : 1;
}

int suite_invariance(const CommonOpts& o, json& reports) {
    bd::SamplerParams params = to_params(o);
    if (params.p <= 0) {
        params.mode = bd::SamplerMode::Geometric;
        params.p = 5e-4;
        params.box_n = 200;
    }
    params.window = params.window < 0 ? 40 : params.window;
    std::vector<bd::CenteredSample> samples;
    samples.reserve(o.replicas);
    for (std::uint64_t r = 0; r < o.replicas; ++r) {
        bd::Rng rng(bd::replica_seed(o.seed, r));
        samples.push_back(draw(params, rng));
    }
    bool ok = true;
    for (auto mode : {bd::InvarianceMode::Translation,
                      bd::InvarianceMode::Reflection,
                      bd::InvarianceMode::SignSymmetry}) {
        bd::TestReport rep =
            bd::invariance_test(samples, mode, params.window / 2);
        rep.name = mode == bd::InvarianceMode::Translation ? "translation"
                   : mode == bd::InvarianceMode::Reflection ? "reflection"
                                                            : "sign_symmetry";
        reports.push_back(report_json(rep));
        ok = ok && rep.pass;
    }
    return ok ? 0 : 1;
}

int suite_cluster(const CommonOpts& o, json& reports) {
    bd::Box box(o.dim, o.box_n > 0 ? o.box_n : 20);
    double horizon = o.time > 0 ? o.time : 3.0;
    std::uint64_t trials = o.replicas > 0 ? o.replicas : 500;
    std::uint64_t pass = 0, escaped = 0;
    for (std::uint64_t r = 0; r < trials; ++r) {
        bd::Rng rng(bd::replica_seed(o.seed, r));
        bd::UpdateSchedule P = bd::generate_schedule(box, horizon, rng);
        bd::HeightField f(box, bd::Boundary::FrozenInitial);
        for (std::size_t i = 0; i < box.size(); ++i)
            f[i] = static_cast<bd::Height>(rng.uniform_index(11)) - 5;
        bd::StabilizationReport rep = bd::stabilization_check(
            f, P, bd::Site::origin(box.dim()), rng, 3);
        if (!rep.cluster_in_box)
            ++escaped;
        else if (rep.pass)
            ++pass;
    }
    bool ok = pass + escaped == trials;
    reports.push_back({{"name", "stabilization"},
                       {"trials", trials},
                       {"pass", pass},
                       {"escaped", escaped},
                       {"ok", ok}});
    return ok ? 0 : 1;
}

int suite_growth(const CommonOpts& o, json& reports) {
    double t = o.time > 0 ? o.time : 1.0;
    std::uint64_t reps = o.replicas > 0 ? o.replicas : 10000;
    bd::TestReport rep = bd::check_growth_inequality(
        o.dim, o.box_n > 0 ? o.box_n : 20, t, 0.1, reps, o.seed);
    reports.push_back(report_json(rep));
    return rep.pass ? 0 : 1;
}

int cmd_test(const std::string& suite, const CommonOpts& o) {
    json reports = json::array();
    int rc;
    if (suite == "oracles")
        rc = suite_oracles(o, reports);
    else if (suite == "stationarity")
        rc = suite_stationarity(o, reports);
    else if (suite == "invariance")
        rc = suite_invariance(o, reports);
    else if (suite == "cluster")
        rc = suite_cluster(o, reports);
    else if (suite == "growth")
        rc = suite_growth(o, reports);
    else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    std::string out = o.out.empty() ? ("report_" + suite + ".json") : o.out;
    std::ofstream os(out);
    os << reports.dump(2) << "\n";
    std::cout << reports.dump(2) << "\n";
    return rc;
}

std::vector<bd::CenteredSample> load_samples(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::vector<bd::CenteredSample> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(bd::sample_from_record(bd::sample_record_from_json(line)));
    }
    return out;
}

int cmd_stats(const std::string& kind, const CommonOpts& o,
              const std::string& input) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    if (kind == "alpha") {
        double t_max = o.time > 0 ? o.time : 10.0;
        std::vector<double> grid;
        for (int i = 1; i <= 10; ++i) grid.push_back(t_max * i / 10.0);
        bd::AlphaBeta ab = bd::estimate_alpha_beta(o.dim, o.box_n, grid,
                                                   o.replicas, o.seed);
        header = {"t", "alpha", "alpha_se", "beta", "beta_se"};
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows.push_back({grid[i], ab.alpha.mean[i], ab.alpha.std_err[i],
                            ab.beta.mean[i], ab.beta.std_err[i]});
    } else if (kind == "correlation") {
        auto samples = load_samples(input);
        std::vector<long> dists = {1, 2, 4, 8, 16};
        auto pts = bd::correlation_decay(samples, dists);
        header = {"distance", "correlation", "stderr"};
        for (const auto& p : pts)
            rows.push_back({static_cast<double>(p.distance), p.correlation,
                            p.std_err});
    } else if (kind == "tails") {
        auto samples = load_samples(input);
        bd::TailProfile tp =
            bd::tail_profile(samples, bd::Site::origin(samples[0].d));
        header = {"value", "count"};
        for (const auto& [v, c] : tp.hist.bins)
            rows.push_back({static_cast<double>(v), static_cast<double>(c)});
    } else if (kind == "cluster-tail") {
        std::vector<double> grid = {5, 10, 15, 20};
        bd::TailEstimate est = bd::radius_tail(
            o.dim, o.box_n > 0 ? o.box_n : 200, grid, o.replicas, o.c, o.seed);
        header = {"T", "tail_probability", "stderr", "censored"};
        for (const auto& p : est.points)
            rows.push_back({p.horizon, p.tail_prob, p.std_err,
                            static_cast<double>(p.censored)});
    } else {
        std::cerr << "unknown stats kind: " << kind << "\n";
        return 2;
    }

    std::string out = o.out.empty() ? ("stats_" + kind + ".csv") : o.out;
    std::ofstream os(out);
    bd::write_csv(os, header, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ballistic deposition simulation laboratory"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string suite, kind, input;

    CLI::App* sample = app.add_subcommand("sample", "generate centered samples");
    add_common_flags(sample, o);

    CLI::App* simulate = app.add_subcommand("simulate", "run a single chain");
    add_common_flags(simulate, o);

    CLI::App* test = app.add_subcommand("test", "run a verification suite");
    test->add_option("suite", suite,
                     "oracles|stationarity|invariance|cluster|growth")
        ->required();
    add_common_flags(test, o);

    CLI::App* stats = app.add_subcommand("stats", "estimator tables");
    stats->add_option("kind", kind, "alpha|correlation|tails|cluster-tail")
        ->required();
    stats->add_option("--in", input, "input sample file (jsonl)");
    stats->add_option("--c", o.c, "cluster-tail radius/time ratio");
    add_common_flags(stats, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(o);
        if (simulate->parsed()) return cmd_simulate(o);
        if (test->parsed()) return cmd_test(suite, o);
        if (stats->parsed()) return cmd_stats(kind, o, input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
