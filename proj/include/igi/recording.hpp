#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "igi/stream.hpp"

namespace igi {

// Binary stream recording, all multi-byte integers little-endian.
//
//   offset  size  field
//        0     8  magic "IGIREC1\0"
//        8     4  width (u32)
//       12     4  height (u32)
//       16     8  measurements M (u64)
//       24     4  pixel_bits (u32, 1..16)
//       28     4  reserved, zero
//       32     8  seed (u64, provenance)
//
// followed by M records of: bucket (f64) + width*height pixel codes in
// row-major order, one byte per pixel for pixel_bits <= 8, else two.
struct RecordingHeader {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint64_t measurements = 0;
    std::uint32_t pixel_bits = 8;
    std::uint64_t seed = 0;

    Dims dims() const { return {int(width), int(height)}; }
    std::uint32_t bytes_per_pixel() const { return pixel_bits <= 8 ? 1 : 2; }
    std::uint64_t record_bytes() const { return 8 + dims().pixels() * bytes_per_pixel(); }
    std::uint64_t file_bytes() const;  // header + payload
    void validate() const;
};

inline constexpr std::uint64_t recording_header_bytes = 40;

class RecordingWriter {
public:
    RecordingWriter(const std::string& path, const RecordingHeader& header);

    void append(double bucket, const Frame& frame);
    // Validates that exactly header.measurements records were appended and
    // flushes. Called by the destructor if not called explicitly, but only
    // finish() reports errors.
    void finish();

    ~RecordingWriter();

private:
    std::string path_;
    RecordingHeader header_;
    std::ofstream out_;
    std::uint64_t written_ = 0;
    bool finished_ = false;
};

class RecordingReader final : public RecordSource {
public:
    explicit RecordingReader(const std::string& path);

    const RecordingHeader& header() const { return header_; }
    Dims dims() const override { return header_.dims(); }
    std::uint64_t count() const override { return header_.measurements; }
    bool next(double& bucket, Frame& frame) override;

private:
    std::string path_;
    RecordingHeader header_;
    std::ifstream in_;
    std::uint64_t read_ = 0;
    std::vector<unsigned char> buf_;
};

// Convenience for tests and small experiments; materializes everything.
MeasurementStream load_recording(const std::string& path);

}  // namespace igi
