#ifndef BMOO_RNG_HPP
#define BMOO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace bmoo {

/// Deterministic random generator with portable output.
///
/// Wraps std::mt19937_64 (whose raw output sequence is fixed by the
/// standard) and implements the uniform/normal transforms directly, so that
/// a given seed produces the same stream on every platform and compiler.
/// Named sub-streams let one run seed drive several independent consumers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Derive an independent stream from (seed, name, index).
    static Rng stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the name
        for (char ch : name) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
        return Rng(mix(mix(seed) ^ h) ^ mix(index + 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller, one spare cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bmoo

#endif
