#include "frackac/rng.hpp"

#include <bit>
#include <cmath>

namespace frackac {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
    : master_seed_(master_seed), stream_index_(stream_index) {
    // mix64 is bijective, so distinct indices under one seed give distinct keys.
    std::uint64_t key = mix64(mix64(master_seed ^ 0x6a09e667f3bcc909ULL) ^ stream_index);
    for (auto& word : s_) {
        key += 0x9e3779b97f4a7c15ULL;
        word = mix64(key);
    }
}

RngStream::result_type RngStream::operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() noexcept { return -std::log(uniform()); }

double RngStream::normal() { return normal_(*this); }

}  // namespace frackac
