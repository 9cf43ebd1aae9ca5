#include "cosym/sample.hpp"

#include <cmath>

#include "cosym/errors.hpp"

namespace cosym {

std::vector<ChartPoint> sample(const SampleSpec& spec,
                               const std::function<bool(const ChartPoint&)>& excluded) {
    if (spec.count < 1) throw ParameterError("sample count must be at least 1");
    if (spec.box.empty()) throw ParameterError("sample box is empty");
    for (const Interval& iv : spec.box) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
            throw ParameterError("sample box interval is malformed");
    }

    SplitMix64 rng(spec.seed);
    std::vector<ChartPoint> points;
    points.reserve(static_cast<std::size_t>(spec.count));
    ChartPoint x(spec.box.size(), 0.0);
    for (int k = 0; k < spec.count; ++k) {
        int rejections = 0;
        for (;;) {
            for (std::size_t i = 0; i < spec.box.size(); ++i)
                x[i] = spec.box[i].lo + rng.next_unit() * (spec.box[i].hi - spec.box[i].lo);
            if (!excluded || !excluded(x)) break;
            if (++rejections >= kRejectionCap)
                throw SamplingError("rejection cap reached; excluded set covers the box");
        }
        points.push_back(x);
    }
    return points;
}

} // namespace cosym
