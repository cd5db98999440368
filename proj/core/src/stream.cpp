#include "oasw/stream.hpp"

#include <cmath>
#include <random>

#include "oasw/error.hpp"

namespace oasw {

StreamSource::StreamSource(StreamSchema schema, std::vector<LabeledSample> samples) {
    const std::size_t width = schema.width();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto& s = samples[i];
        if (s.features.size() != width) {
            throw DataError("sample " + std::to_string(i) + " has " +
                            std::to_string(s.features.size()) + " features, schema expects " +
                            std::to_string(width));
        }
        if (s.label != 0 && s.label != 1) {
            throw DataError("sample " + std::to_string(i) + " has non-binary label " +
                            std::to_string(s.label));
        }
        s.index = i;
    }
    data_ = std::make_shared<const Payload>(Payload{std::move(schema), std::move(samples)});
}

const LabeledSample& StreamSource::next() {
    if (done()) throw RuntimeFailure("StreamSource::next past end of stream");
    return data_->samples[cursor_++];
}

StreamSource StreamSource::clone() const {
    StreamSource copy = *this;
    copy.cursor_ = 0;
    return copy;
}

StreamSource decimate(const StreamSource& source, std::size_t keep_every, std::uint64_t seed) {
    if (keep_every == 0) throw ConfigError("decimate: keep_every must be >= 1");
    if (keep_every == 1) return source.clone();

    std::mt19937_64 rng(seed);
    std::vector<LabeledSample> kept;
    const std::size_t n = source.size();
    kept.reserve((n + keep_every - 1) / keep_every);
    for (std::size_t block = 0; block < n; block += keep_every) {
        const std::size_t block_len = std::min(keep_every, n - block);
        std::uniform_int_distribution<std::size_t> pick(0, block_len - 1);
        kept.push_back(source.at(block + pick(rng)));
    }
    return StreamSource(source.schema(), std::move(kept));
}

HoldoutSplit holdout_split(const StreamSource& source, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw ConfigError("holdout_split: fraction must lie in (0, 1), got " +
                          std::to_string(fraction));
    }
    const std::size_t n = source.size();
    if (n < 2) throw DataError("holdout_split: stream needs at least 2 samples");

    const auto cut = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    if (cut == 0 || cut >= n) {
        throw ConfigError("holdout_split: fraction " + std::to_string(fraction) +
                          " leaves an empty half for a stream of " + std::to_string(n));
    }

    auto all = source.samples();
    std::vector<LabeledSample> offline(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<LabeledSample> online(all.begin() + static_cast<std::ptrdiff_t>(cut), all.end());
    return HoldoutSplit{StreamSource(source.schema(), std::move(offline)),
                        StreamSource(source.schema(), std::move(online)), fraction, cut};
}

} // namespace oasw
