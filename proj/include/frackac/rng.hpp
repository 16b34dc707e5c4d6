#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace frackac {

/// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Independent random stream keyed by (master_seed, stream_index).
///
/// The generator is xoshiro256++ with its state filled by splitmix64 from a
/// hash of the two keys, so a stream depends on nothing but its keys and
/// streams can be created in any order on any thread.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1), on the grid (k + 1/2) 2^-53.
    double uniform() noexcept;

    /// Unit exponential, -log of an open uniform; always finite and positive.
    double exponential() noexcept;

    /// Standard normal.
    double normal();

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::normal_distribution<double> normal_;
};

}  // namespace frackac
