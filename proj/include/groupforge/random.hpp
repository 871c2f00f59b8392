#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace groupforge {

//! SplitMix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/*!
 * Random stream used by every simulation component.
 *
 * xoshiro256** state seeded from a 64-bit key through SplitMix64. Streams for
 * draws and runs are derived from the master seed by hashing the
 * (seed, draw, run) counter, so results never depend on execution order.
 * Satisfies UniformRandomBitGenerator.
 */
class Stream
{
  public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept
    {
        std::uint64_t s = key;
        for (auto& word : state_)
        {
            s += 0x9e3779b97f4a7c15ULL;
            word = mix64(s);
        }
    }

    //! Stream for a (seed, a, b) counter triple.
    static Stream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept
    {
        return Stream{mix64(mix64(mix64(seed) ^ a) + 0x632be59bd9b4e019ULL * (b + 1))};
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        auto const result = rotl(state_[1] * 5, 7) * 9;
        auto const t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    //! Uniform integer in [0, bound); bound > 0. Lemire's nearly-divisionless method.
    std::uint32_t below(std::uint32_t bound) noexcept
    {
        auto x = static_cast<std::uint32_t>((*this)() >> 32);
        auto m = static_cast<std::uint64_t>(x) * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound)
        {
            std::uint32_t const threshold = -bound % bound;
            while (low < threshold)
            {
                x = static_cast<std::uint32_t>((*this)() >> 32);
                m = static_cast<std::uint64_t>(x) * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    bool bernoulli(double p) noexcept { return this->uniform() < p; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

//! Fisher-Yates shuffle with the stream's own bounded draws (portable output).
template<class T>
void shuffle(std::span<T> items, Stream& rng) noexcept
{
    for (std::size_t i = items.size(); i > 1; --i)
    {
        auto j = rng.below(static_cast<std::uint32_t>(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

}  // namespace groupforge
