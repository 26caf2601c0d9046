#pragma once

#include <cmath>
#include <cstdint>

namespace ah {

// Counter-seeded xoshiro256++ stream. Every simulated path gets its own
// stream derived from (master seed, stream index), so results do not depend
// on how paths are distributed over threads. All variate transforms are
// written out explicitly instead of going through std:: distributions, which
// keeps output bit-identical across standard library implementations.
class RandomStream {
public:
    RandomStream() : RandomStream(0x853c49e6748fea9bULL) {}

    explicit RandomStream(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = mix(seed ^ 0xda3e39cb94b95bdbULL);
        for (auto& w : state_) w = splitmix64(x);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    // Independent stream for sub-task `index` (path, replicate, cluster, ...).
    RandomStream substream(std::uint64_t index) const {
        std::uint64_t key = mix(seed_);
        key ^= 0x9e3779b97f4a7c15ULL + mix(index + 0x632be59bd9b4e019ULL) + (key << 6) + (key >> 2);
        return RandomStream(key);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform()); }

    // Box-Muller, one spare cached per pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 6.283185307179586476925286766559 * uniform();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Exact Poisson count via unit-exponential inter-arrivals. Cost is
    // O(mean), which is fine for the per-step means this code produces.
    long poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        long k = 0;
        double s = exponential();
        while (s < mean) {
            ++k;
            s += exponential();
        }
        return k;
    }

    // Pareto(alpha, scale): survival P(X > x) = (scale/x)^alpha for x > scale.
    double pareto(double alpha, double scale) {
        return scale * std::pow(uniform(), -1.0 / alpha);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return z;
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_ = 0;
    std::uint64_t state_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ah
