#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "cosym/field.hpp"

namespace cosym {

// splitmix64 (Steele, Lea, Flood): tiny, seedable, and identical everywhere,
// which keeps report output reproducible byte for byte.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t s_;
};

inline constexpr std::string_view kGeneratorName = "splitmix64";
inline constexpr int kRejectionCap = 10000;

struct Interval {
    double lo;
    double hi;
};

struct SampleSpec {
    std::vector<Interval> box;
    int count = 1;
    std::uint64_t seed = 0;
};

// Uniform points in the box, rejecting those the predicate excludes.
// Throws SamplingError after kRejectionCap consecutive rejections.
std::vector<ChartPoint> sample(const SampleSpec& spec,
                               const std::function<bool(const ChartPoint&)>& excluded = {});

} // namespace cosym
