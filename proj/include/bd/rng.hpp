#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace bd {

// Stateless 64-bit mixer used for deriving per-replica seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// seed(master, i) gives the stream for replica i. Recorded in output metadata
// so any single replica can be regenerated in isolation.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (replica + 1));
}

// Thin wrapper around mt19937_64 with fixed draw recipes, so the mapping from
// raw engine output to variates does not depend on the standard library's
// distribution implementations. State round-trips through a string for
// checkpointing.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform on [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Multiply-shift; bias is < n / 2^64.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

    double exponential(double mean) {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return -mean * std::log(u);
    }

    // Geometric on {0,1,2,...} with pmf p(1-p)^j.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) return 0;
        double u;
        do { u = uniform(); } while (u == 0.0);
        double g = std::floor(std::log(u) / std::log1p(-p));
        return g < 0.0 ? 0 : static_cast<std::uint64_t>(g);
    }

    std::string save_state() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }
    void load_state(const std::string& s) {
        std::istringstream is(s);
        is >> eng_;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace bd
