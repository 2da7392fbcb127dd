#ifndef MAVRP_RNG_HPP_
#define MAVRP_RNG_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace mavrp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic random stream. All distributions are implemented by hand so
// that identical seeds give identical sequences on every platform and
// standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() {
        return engine_();
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const auto range = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(next_u64() % range);
    }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("index: empty range");
        return static_cast<std::size_t>(next_u64() % n);
    }

    bool coin() {
        return (next_u64() & 1u) != 0;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

    // Derives an independent child seed from a master seed and a stream id.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mavrp

#endif
