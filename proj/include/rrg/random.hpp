// Random sources for the round engine.
//
// Rng wraps std::mt19937_64 (whose output sequence is fixed by the standard)
// and derives uniforms itself, because the std distributions are not
// reproducible across standard library implementations.
#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rrg {

template <class S>
concept RandomSource = requires(S& s, std::size_t n) {
    { s.uniform01() } -> std::convertible_to<double>;
    { s.uniform_index(n) } -> std::convertible_to<std::size_t>;
};

/// splitmix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n-1}; unbiased multiply-shift with rejection.
    std::size_t uniform_index(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("uniform_index: empty range");
        const std::uint64_t range = n;
        unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * range;
        auto low = static_cast<std::uint64_t>(product);
        if (low < range) {
            const std::uint64_t threshold = (0 - range) % range;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(engine_()) * range;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::size_t>(product >> 64);
    }

private:
    std::mt19937_64 engine_;
};

/// Replays a fixed list of draws; used to force specific rounds.
class ScriptedSource {
public:
    using Draw = std::variant<double, std::size_t>;

    ScriptedSource() = default;
    explicit ScriptedSource(std::vector<Draw> draws) : draws_(draws.begin(), draws.end()) {}

    void push_uniform(double u) { draws_.emplace_back(u); }
    void push_index(std::size_t k) { draws_.emplace_back(k); }

    double uniform01()
    {
        auto d = pop("uniform01");
        if (auto* u = std::get_if<double>(&d))
            return *u;
        throw std::logic_error("ScriptedSource: expected uniform01 draw, script holds an index");
    }

    std::size_t uniform_index(std::size_t n)
    {
        auto d = pop("uniform_index");
        auto* k = std::get_if<std::size_t>(&d);
        if (!k)
            throw std::logic_error("ScriptedSource: expected index draw, script holds a uniform");
        if (*k >= n)
            throw std::logic_error("ScriptedSource: scripted index " + std::to_string(*k) +
                                   " outside range " + std::to_string(n));
        return *k;
    }

    std::size_t remaining() const { return draws_.size(); }

private:
    Draw pop(const char* what)
    {
        if (draws_.empty())
            throw std::logic_error(std::string("ScriptedSource: script exhausted at ") + what);
        Draw d = draws_.front();
        draws_.pop_front();
        return d;
    }

    std::deque<Draw> draws_;
};

static_assert(RandomSource<Rng>);
static_assert(RandomSource<ScriptedSource>);

} // namespace rrg
