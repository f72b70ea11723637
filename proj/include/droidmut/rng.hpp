#ifndef DROIDMUT_RNG_HPP
#define DROIDMUT_RNG_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace droidmut {

// FNV-1a, used for stable keys and for folding strings into seeds. The exact
// constants matter: stable keys are part of the on-disk document formats.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

// Deterministic per-entry random stream (splitmix64). Not stdlib
// distributions: their mapping is implementation-defined, and manifests must
// be byte-identical across platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    // Stream for one PFP entry: run seed XOR the entry's stable key, so
    // adding or removing an entry never perturbs the draws of the others.
    static SeededRng for_entry(std::uint64_t run_seed, std::string_view stable_key) {
        return SeededRng(run_seed ^ fnv1a64(stable_key));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, n). Rejection sampling keeps the mapping exact.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    std::string alnum_string(std::size_t length) {
        static const char alphabet[] =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
        std::string out;
        out.reserve(length);
        for (std::size_t i = 0; i < length; ++i)
            out.push_back(alphabet[below(62)]);
        return out;
    }

private:
    std::uint64_t state_;
};

} // namespace droidmut

#endif // DROIDMUT_RNG_HPP
