#include "bd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bd {

void Histogram::add(Height v) {
    long b = static_cast<long>(std::clamp<Height>(v, -clip, clip));
    ++bins[b];
    ++total;
}

Histogram Histogram::collect(std::span<const Height> values, long clip) {
    Histogram h;
    h.clip = clip;
    for (Height v : values) h.add(v);
    return h;
}

double total_variation(const Histogram& a, const Histogram& b) {
    if (a.total == 0 || b.total == 0)
        throw std::invalid_argument("total_variation: empty histogram");
    double tv = 0.0;
    auto ia = a.bins.begin(), ib = b.bins.begin();
    while (ia != a.bins.end() || ib != b.bins.end()) {
        double pa = 0.0, pb = 0.0;
        if (ib == b.bins.end() || (ia != a.bins.end() && ia->first < ib->first)) {
            pa = static_cast<double>(ia->second) / a.total;
            ++ia;
        } else if (ia == a.bins.end() || ib->first < ia->first) {
            pb = static_cast<double>(ib->second) / b.total;
            ++ib;
        } else {
            pa = static_cast<double>(ia->second) / a.total;
            pb = static_cast<double>(ib->second) / b.total;
            ++ia;
            ++ib;
        }
        tv += std::abs(pa - pb);
    }
    return 0.5 * tv;
}

// Series for P(s,x) when x < s+1, Lentz continued fraction for Q otherwise.
double regularized_gamma_q(double s, double x) {
    if (x < 0 || s <= 0) throw std::invalid_argument("regularized_gamma_q");
    if (x == 0) return 1.0;
    const double lg = std::lgamma(s);
    if (x < s + 1.0) {
        double sum = 1.0 / s, term = sum;
        for (int k = 1; k < 10000; ++k) {
            term *= x / (s + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + s * std::log(x) - lg);
        return 1.0 - p;
    }
    double b = x + 1.0 - s, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + s * std::log(x) - lg) * h;
}

double chi_square_sf(double stat, double dof) {
    if (dof <= 0) return 1.0;
    return regularized_gamma_q(dof / 2.0, stat / 2.0);
}

namespace {

// Merge adjacent support bins until each merged bin has pooled expected count
// >= min_expected under the pooled distribution.
struct MergedCounts {
    std::vector<double> a, b;
};

MergedCounts merge_bins(const Histogram& ha, const Histogram& hb,
                        double min_expected) {
    std::vector<long> support;
    for (const auto& [k, v] : ha.bins) support.push_back(k);
    for (const auto& [k, v] : hb.bins) support.push_back(k);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    const double n = static_cast<double>(ha.total + hb.total);
    MergedCounts m;
    double ca = 0, cb = 0, cexp = 0;
    for (long k : support) {
        auto ia = ha.bins.find(k);
        auto ib = hb.bins.find(k);
        double va = ia == ha.bins.end() ? 0.0 : static_cast<double>(ia->second);
        double vb = ib == hb.bins.end() ? 0.0 : static_cast<double>(ib->second);
        ca += va;
        cb += vb;
        cexp += (va + vb) / n *
                std::min<double>(static_cast<double>(ha.total),
                                 static_cast<double>(hb.total));
        if (cexp >= min_expected) {
            m.a.push_back(ca);
            m.b.push_back(cb);
            ca = cb = cexp = 0;
        }
    }
    if (ca + cb > 0) {
        if (m.a.empty()) {
            m.a.push_back(ca);
            m.b.push_back(cb);
        } else {
            m.a.back() += ca;
            m.b.back() += cb;
        }
    }
    return m;
}

}  // namespace

TestReport two_sample_test(const Histogram& a, const Histogram& b,
                           double tv_threshold) {
    if (a.total == 0 || b.total == 0)
        throw std::invalid_argument("two_sample_test: empty histogram");
    TestReport rep;
    rep.name = "two_sample_chi_square";
    rep.n1 = a.total;
    rep.n2 = b.total;
    rep.threshold = tv_threshold;
    rep.tv = total_variation(a, b);

    MergedCounts m = merge_bins(a, b, 5.0);
    const double na = static_cast<double>(a.total);
    const double nb = static_cast<double>(b.total);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        double pooled = (m.a[i] + m.b[i]) / (na + nb);
        double ea = pooled * na, eb = pooled * nb;
        if (ea <= 0 || eb <= 0) continue;
        stat += (m.a[i] - ea) * (m.a[i] - ea) / ea +
                (m.b[i] - eb) * (m.b[i] - eb) / eb;
        ++cells;
    }
    rep.statistic = stat;
    rep.p_value = cells > 1 ? chi_square_sf(stat, cells - 1) : 1.0;
    rep.pass = rep.tv < tv_threshold;
    return rep;
}

TestReport chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> expected_prob,
                          double significance) {
    if (observed.size() != expected_prob.size())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    std::uint64_t n = 0;
    for (std::uint64_t o : observed) n += o;
    const double nd = static_cast<double>(n);

    // Sort categories by expected probability (descending) and pool the small
    // ones so every cell has expected count >= 5.
    std::vector<std::size_t> order(observed.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return expected_prob[i] > expected_prob[j];
    });
    std::vector<double> obs, exp;
    double pool_o = 0, pool_e = 0;
    for (std::size_t i : order) {
        double e = expected_prob[i] * nd;
        if (e >= 5.0) {
            obs.push_back(static_cast<double>(observed[i]));
            exp.push_back(e);
        } else {
            pool_o += static_cast<double>(observed[i]);
            pool_e += e;
        }
    }
    if (pool_e > 0) {
        if (pool_e >= 5.0 || exp.empty()) {
            obs.push_back(pool_o);
            exp.push_back(pool_e);
        } else {
            obs.back() += pool_o;
            exp.back() += pool_e;
        }
    }

    TestReport rep;
    rep.name = "chi_square_gof";
    rep.n1 = n;
    rep.threshold = significance;
    double stat = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i)
        stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    rep.statistic = stat;
    rep.p_value = obs.size() > 1
                      ? chi_square_sf(stat, static_cast<double>(obs.size() - 1))
                      : 1.0;
    rep.pass = rep.p_value > significance;
    return rep;
}

LinFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    LinFit f;
    f.slope = vxy / vxx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vyy > 0 ? vxy * vxy / (vxx * vyy) : 1.0;
    return f;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson_correlation: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double vxx = sxx - sx * sx / n;
    double vxy = sxy - sx * sy / n;
    double vyy = syy - sy * sy / n;
    if (vxx <= 0 || vyy <= 0)
        throw std::invalid_argument("pearson_correlation: degenerate variance");
    return vxy / std::sqrt(vxx * vyy);
}

MeanStderr mean_stderr(std::span<const double> xs) {
    MeanStderr m;
    m.n = xs.size();
    if (xs.empty()) return m;
    double s = 0;
    for (double v : xs) s += v;
    m.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double v : xs) ss += (v - m.mean) * (v - m.mean);
        m.std_err = std::sqrt(ss / (static_cast<double>(xs.size()) *
                                    static_cast<double>(xs.size() - 1)));
    }
    return m;
}

}  // namespace bd
