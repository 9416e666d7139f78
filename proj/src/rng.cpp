#include "v2n/rng.hpp"

#include <cmath>
#include <numbers>

namespace v2n {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t fmix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t child_key(std::uint64_t parent, std::string_view label, std::uint64_t index)
{
    std::uint64_t h = fmix64(parent + kGolden);
    h = fmix64(h ^ fnv1a64(label));
    h = fmix64(h + kGolden * (index + 1));
    return h;
}

} // namespace

std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

RngStream::RngStream(std::uint64_t root_seed)
    : root_seed_(root_seed), key_(fmix64(root_seed ^ 0x5851F42D4C957F2DULL))
{
}

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t key, std::vector<StreamPathElement> path)
    : root_seed_(root_seed), key_(key), path_(std::move(path))
{
}

RngStream RngStream::derive(std::string_view label, std::uint64_t index) const
{
    auto path = path_;
    path.push_back({std::string(label), index});
    return RngStream(root_seed_, child_key(key_, label, index), std::move(path));
}

RngStream derive_stream(const RngStream& parent, std::string_view label, std::uint64_t index)
{
    return parent.derive(label, index);
}

std::string RngStream::path_string() const
{
    std::string s = std::to_string(root_seed_);
    for (const auto& e : path_) {
        s += '/';
        s += e.label;
        s += ':';
        s += std::to_string(e.index);
    }
    return s;
}

std::uint64_t RngStream::next_u64()
{
    // Two keyed rounds so that streams whose keys differ by a multiple of
    // the increment do not produce shifted copies of each other.
    const std::uint64_t c = counter_++;
    return fmix64(fmix64(key_ + kGolden * c) ^ key_);
}

double RngStream::uniform()
{
    // 53 random bits, shifted by half an ulp to exclude 0 and 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal(double mean, double stddev)
{
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::exponential(double mean) { return -mean * std::log(uniform()); }

bool RngStream::bernoulli(double p) { return uniform() < p; }

std::uint64_t RngStream::below(std::uint64_t n)
{
    // Lemire's multiply-shift with rejection.
    while (true) {
        const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        const auto low = static_cast<std::uint64_t>(m);
        if (low >= n || low >= (-n) % n) {
            return static_cast<std::uint64_t>(m >> 64);
        }
    }
}

std::uint64_t RngStream::poisson(double mean)
{
    if (!(mean > 0.0)) {
        return 0;
    }
    if (mean > 500.0) {
        // exp(-mean) underflows for large means; split into independent halves.
        const double half = 0.5 * mean;
        return poisson(half) + poisson(half);
    }
    // Sequential-search inversion.
    double p = std::exp(-mean);
    double cdf = p;
    const double u = uniform();
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
        if (p < 1e-300 && k > mean) {
            break;
        }
    }
    return k;
}

} // namespace v2n
