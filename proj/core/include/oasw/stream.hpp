#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace oasw {

/// One stream element: encoded feature vector plus binary label.
/// `index` is the 0-based position within the stream that owns the sample.
struct LabeledSample {
    std::size_t index = 0;
    std::vector<double> features;
    int label = 0; // 0 = normal, 1 = anomaly/attack
};

struct StreamSchema {
    std::vector<std::string> feature_names;
    std::size_t width() const { return feature_names.size(); }
};

/// Replayable, in-memory stream of labeled samples. The sample payload is
/// shared and immutable; each StreamSource owns only a cursor, so clone()
/// is cheap and independent replays (one per PSO candidate) never share
/// iteration state.
class StreamSource {
public:
    StreamSource(StreamSchema schema, std::vector<LabeledSample> samples);

    const StreamSchema& schema() const { return data_->schema; }
    std::size_t size() const { return data_->samples.size(); }
    bool empty() const { return data_->samples.empty(); }

    std::span<const LabeledSample> samples() const { return data_->samples; }
    const LabeledSample& at(std::size_t i) const { return data_->samples.at(i); }

    // Cursor interface: strictly in index order, one consumer per source.
    bool done() const { return cursor_ >= size(); }
    const LabeledSample& next();
    void rewind() { cursor_ = 0; }

    /// Fresh cursor over the same shared payload.
    StreamSource clone() const;

private:
    struct Payload {
        StreamSchema schema;
        std::vector<LabeledSample> samples;
    };

    std::shared_ptr<const Payload> data_;
    std::size_t cursor_ = 0;
};

/// Leading-fraction hold-out: `offline` holds the first ceil(fraction * N)
/// samples, `online` the rest. Both halves are reindexed from 0;
/// `online_offset` maps online positions back to the full stream.
struct HoldoutSplit {
    StreamSource offline;
    StreamSource online;
    double fraction = 0.0;
    std::size_t online_offset = 0;
};

/// Keep one uniformly chosen sample per consecutive block of `keep_every`
/// samples (a trailing partial block still contributes one). keep_every=1
/// is the identity. The same seed always selects the same samples.
StreamSource decimate(const StreamSource& source, std::size_t keep_every, std::uint64_t seed);

HoldoutSplit holdout_split(const StreamSource& source, double fraction);

} // namespace oasw
