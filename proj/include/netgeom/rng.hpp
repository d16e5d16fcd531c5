#pragma once

#include <cmath>
#include <cstdint>

namespace netgeom {

// Counter-derived pseudo-random substream (splitmix64 core).
//
// Every randomized operation takes an explicit 64-bit seed plus optional
// stream indices, so parallel callers can derive disjoint, reproducible
// substreams per (realization, sample) without shared state.  The mapping
// from (seed, ids) to the draw sequence is fixed; outputs are part of the
// reproducibility contract of the file formats.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t id0 = 0, std::uint64_t id1 = 0,
                 std::uint64_t id2 = 0) {
        std::uint64_t s = mix(seed ^ 0x4cf5ad432745937fULL);
        s = mix(s ^ (id0 + 0x9e3779b97f4a7c15ULL));
        s = mix(s ^ (id1 + 0xbf58476d1ce4e5b9ULL));
        s = mix(s ^ (id2 + 0x94d049bb133111ebULL));
        state_ = s;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, m), unbiased via rejection
    std::uint64_t next_below(std::uint64_t m) {
        std::uint64_t min = (0 - m) % m; // 2^64 mod m
        std::uint64_t r = next_u64();
        while (r < min) r = next_u64();
        return r % m;
    }

    // standard normal, Box-Muller with cached spare
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stable seed derivation for nested ensembles (sweep point -> realization -> purpose).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return Rng(seed, a, b, c).next_u64();
}

} // namespace netgeom
