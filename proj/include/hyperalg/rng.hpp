#ifndef HYPERALG_RNG_HPP
#define HYPERALG_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hyperalg {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stream id = splitmix64 folded over (master_seed, parts...).  Every random
// object in a run gets its own id, so results do not depend on how work is
// scheduled across threads.
inline std::uint64_t derive_stream_id(std::uint64_t master_seed,
                                      std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = splitmix64(master_seed);
    for (std::uint64_t part : parts) h = splitmix64(h ^ splitmix64(part + 0x632be59bd9b4e019ull));
    return h;
}

// mt19937_64 with a portable bounded draw (rejection sampling, so the
// sequence is identical across standard libraries).
class RngStream {
public:
    explicit RngStream(std::uint64_t id) : id_(id), engine_(id) {}

    std::uint64_t id() const noexcept { return id_; }

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound), bound >= 1.
    std::uint32_t uniform(std::uint32_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::uint32_t>(x % bound);
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t id_;
    std::mt19937_64 engine_;
};

} // namespace hyperalg

#endif // HYPERALG_RNG_HPP
