#pragma once

#include <cstdint>
#include <vector>

#include "igi/image.hpp"

namespace igi {

// One (bucket scalar, reference frame) pair.
struct Measurement {
    double bucket = 0.0;
    Frame frame;
};

// Fully materialized measurement sequence; what the batch oracles consume.
// M measurements yield N = M - 1 differential pairs.
struct MeasurementStream {
    Dims dims{};
    std::vector<Measurement> records;

    std::uint64_t size() const { return records.size(); }

    void push(double bucket, Frame frame) {
        require_same_dims(dims, frame.dims(), "measurement stream");
        records.push_back({bucket, std::move(frame)});
    }

    void require_differential() const {
        if (records.size() < 2)
            throw DataError("stream has " + std::to_string(records.size()) +
                            " measurements; differential estimators need at least 2");
    }
};

// Ordered one-pass source of measurements, for consumers that must not hold
// the whole stream (the streaming engine, file replay, analysis scans).
class RecordSource {
public:
    virtual ~RecordSource() = default;
    virtual Dims dims() const = 0;
    // Total number of records, when known up front (0 = unknown).
    virtual std::uint64_t count() const = 0;
    // Fills (bucket, frame) with the next record; false at end of stream.
    virtual bool next(double& bucket, Frame& frame) = 0;
};

class VectorSource final : public RecordSource {
public:
    explicit VectorSource(const MeasurementStream& stream) : stream_(stream) {}

    Dims dims() const override { return stream_.dims; }
    std::uint64_t count() const override { return stream_.size(); }
    bool next(double& bucket, Frame& frame) override {
        if (pos_ >= stream_.records.size()) return false;
        bucket = stream_.records[pos_].bucket;
        frame = stream_.records[pos_].frame;
        ++pos_;
        return true;
    }

private:
    const MeasurementStream& stream_;
    std::size_t pos_ = 0;
};

}  // namespace igi
