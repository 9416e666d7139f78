#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace v2n {

struct StreamPathElement {
    std::string label;
    std::uint64_t index = 0;
    friend bool operator==(const StreamPathElement&, const StreamPathElement&) = default;
};

/// Counter-based random stream addressed by (root_seed, path).
///
/// The key of a stream is a hash of its root seed and the full path of
/// (label, index) pairs, and sample i is a keyed bijective mix of the counter
/// i. Two streams with the same address therefore replay the same sequence
/// no matter when or on which thread they are created, and child streams
/// never share state with their parent.
///
/// All distributions are implemented here, on top of next_u64(), so sample
/// sequences do not depend on the standard library implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t root_seed);

    RngStream derive(std::string_view label, std::uint64_t index) const;

    std::uint64_t root_seed() const { return root_seed_; }
    std::uint64_t key() const { return key_; }
    const std::vector<StreamPathElement>& path() const { return path_; }
    std::string path_string() const;

    /// Number of 64-bit words consumed so far.
    std::uint64_t position() const { return counter_; }

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    double exponential(double mean);
    bool bernoulli(double p);
    std::uint64_t poisson(double mean);
    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n);

private:
    RngStream(std::uint64_t root_seed, std::uint64_t key, std::vector<StreamPathElement> path);

    std::uint64_t root_seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::vector<StreamPathElement> path_;
};

RngStream derive_stream(const RngStream& parent, std::string_view label, std::uint64_t index);

/// 64-bit FNV-1a, used for labels and config hashing.
std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace v2n
