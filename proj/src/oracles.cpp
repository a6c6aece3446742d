#include "bd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bd/dynamics.hpp"

namespace bd {

std::pair<double, double> max_mean_gap(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("max_mean_gap: need n >= 2");
    double mx = xs[0], sum = 0.0;
    for (double v : xs) {
        mx = std::max(mx, v);
        sum += v;
    }
    double pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs += std::abs(xs[i] - xs[j]);
    double lhs = mx - sum / static_cast<double>(n);
    double rhs = pairs / (2.0 * static_cast<double>(n) *
                          static_cast<double>(n - 1));
    return {lhs, rhs};
}

bool max_mean_gap_holds_exact(std::span<const Height> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("max_mean_gap: need n >= 2");
    __int128 mx = xs[0], sum = 0;
    for (Height v : xs) {
        mx = std::max<__int128>(mx, v);
        sum += v;
    }
    __int128 pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            __int128 d = static_cast<__int128>(xs[i]) - xs[j];
            pairs += d < 0 ? -d : d;
        }
    // lhs >= rhs  <=>  (n*max - sum) * 2(n-1) >= sum_{i<j} |x_i - x_j|
    return (static_cast<__int128>(n) * mx - sum) * 2 *
               static_cast<__int128>(n - 1) >=
           pairs;
}

double gamma_tail_bound(int n, double a) {
    if (n < 1) throw std::invalid_argument("gamma_tail_bound: n < 1");
    if (a <= 0.0 || a >= 1.0)
        throw std::invalid_argument("gamma_tail_bound: a outside (0,1)");
    return std::exp((1.0 - a + std::log(a)) * static_cast<double>(n));
}

double gamma_cdf_integer_shape(int n, double x) {
    if (n < 1) throw std::invalid_argument("gamma_cdf_integer_shape: n < 1");
    if (x <= 0.0) return 0.0;
    // Pr(Gamma(n,1) <= x) = Pr(Poisson(x) >= n). When the mass below n
    // dominates, sum the upper Poisson tail directly so tiny values are not
    // lost to cancellation against 1.
    if (x >= static_cast<double>(n)) {
        double term = std::exp(-x), below = 0.0;
        for (int k = 0; k < n; ++k) {
            below += term;
            term *= x / static_cast<double>(k + 1);
        }
        return 1.0 - below;
    }
    // log of e^-x x^n / n! via lgamma, then sum forward until terms vanish
    double log_term = -x + static_cast<double>(n) * std::log(x) -
                      std::lgamma(static_cast<double>(n) + 1.0);
    double term = std::exp(log_term), tail = 0.0;
    for (int k = n; term > 0.0; ++k) {
        double next = tail + term;
        if (next == tail) break;
        tail = next;
        term *= x / static_cast<double>(k + 1);
    }
    return tail;
}

double geometric_count_pmf(std::uint64_t box_sites, double a, std::uint64_t j) {
    if (box_sites < 1 || a <= 0.0)
        throw std::invalid_argument("geometric_count_pmf: bad parameters");
    const double ba = static_cast<double>(box_sites) * a;
    return std::exp(static_cast<double>(j) * std::log(ba) -
                    static_cast<double>(j + 1) * std::log(ba + 1.0));
}

double ExactLaw::prob(const std::vector<Height>& h) const {
    auto it = outcomes.find(h);
    return it == outcomes.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(denominator);
}

bool ExactLaw::sums_to_one() const {
    std::uint64_t total = 0;
    for (const auto& [h, c] : outcomes) total += c;
    return total == denominator;
}

ExactLaw brute_force_chain_law(int d, int N, int steps) {
    if (steps < 0) throw std::invalid_argument("brute_force_chain_law: steps < 0");
    Box box(d, N);
    const std::uint64_t b = box.size();
    std::uint64_t denom = 1;
    for (int i = 0; i < steps; ++i) {
        if (denom > 1000000ULL / b)
            throw std::invalid_argument("brute_force_chain_law: budget exceeded");
        denom *= b;
    }

    ExactLaw law;
    law.denominator = denom;
    std::vector<std::size_t> seq(steps, 0);
    for (std::uint64_t code = 0; code < denom; ++code) {
        std::uint64_t c = code;
        for (int i = 0; i < steps; ++i) {
            seq[i] = static_cast<std::size_t>(c % b);
            c /= b;
        }
        HeightField h(box, Boundary::PinnedZero);
        run_site_stream(h, seq);
        ++law.outcomes[h.data()];
    }
    return law;
}

}  // namespace bd
