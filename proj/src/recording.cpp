#include "igi/recording.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>

namespace igi {

namespace {

constexpr char recording_magic[8] = {'I', 'G', 'I', 'R', 'E', 'C', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "recording I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof value);
    return value;
}

}  // namespace

void RecordingHeader::validate() const {
    if (width < 1 || height < 1)
        throw DataError("recording: bad dimensions " + std::to_string(width) + "x" +
                        std::to_string(height));
    if (pixel_bits < 1 || pixel_bits > 16)
        throw DataError("recording: pixel_bits must be in [1, 16], got " +
                        std::to_string(pixel_bits));
    if (measurements < 1) throw DataError("recording: no measurements");
}

std::uint64_t RecordingHeader::file_bytes() const {
    return recording_header_bytes + measurements * record_bytes();
}

RecordingWriter::RecordingWriter(const std::string& path, const RecordingHeader& header)
    : path_(path), header_(header), out_(path, std::ios::binary) {
    header_.validate();
    if (!out_) throw DataError("cannot open '" + path + "' for writing");
    out_.write(recording_magic, sizeof recording_magic);
    put(out_, header_.width);
    put(out_, header_.height);
    put(out_, header_.measurements);
    put(out_, header_.pixel_bits);
    put(out_, std::uint32_t{0});
    put(out_, header_.seed);
}

void RecordingWriter::append(double bucket, const Frame& frame) {
    require_same_dims(header_.dims(), frame.dims(), "recording append");
    if (written_ >= header_.measurements)
        throw DataError("recording: more records appended than declared (" +
                        std::to_string(header_.measurements) + ")");
    put(out_, bucket);
    const std::size_t pixels = frame.size();
    const std::int64_t max_code = (std::int64_t(1) << header_.pixel_bits) - 1;
    if (header_.bytes_per_pixel() == 1) {
        std::vector<unsigned char> row(pixels);
        for (std::size_t p = 0; p < pixels; ++p) {
            const double v = frame[p];
            if (!(v >= 0.0) || v > double(max_code) || std::floor(v) != v)
                throw DataError("recording: pixel value " + std::to_string(v) +
                                " does not fit " + std::to_string(header_.pixel_bits) +
                                " bits");
            row[p] = static_cast<unsigned char>(v);
        }
        out_.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
    } else {
        std::vector<std::uint16_t> row(pixels);
        for (std::size_t p = 0; p < pixels; ++p) {
            const double v = frame[p];
            if (!(v >= 0.0) || v > double(max_code) || std::floor(v) != v)
                throw DataError("recording: pixel value " + std::to_string(v) +
                                " does not fit " + std::to_string(header_.pixel_bits) +
                                " bits");
            row[p] = static_cast<std::uint16_t>(v);
        }
        out_.write(reinterpret_cast<const char*>(row.data()),
                   std::streamsize(row.size() * 2));
    }
    if (!out_) throw DataError("write failed for '" + path_ + "'");
    ++written_;
}

void RecordingWriter::finish() {
    if (finished_) return;
    finished_ = true;
    if (written_ != header_.measurements)
        throw DataError("recording: wrote " + std::to_string(written_) + " of " +
                        std::to_string(header_.measurements) + " declared records");
    out_.flush();
    if (!out_) throw DataError("flush failed for '" + path_ + "'");
}

RecordingWriter::~RecordingWriter() {
    if (!finished_) {
        try {
            finish();
        } catch (...) {
        }
    }
}

RecordingReader::RecordingReader(const std::string& path)
    : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw DataError("cannot open '" + path + "'");
    char magic[8];
    in_.read(magic, sizeof magic);
    if (in_.gcount() != sizeof magic || std::memcmp(magic, recording_magic, sizeof magic) != 0)
        throw DataError(path + ": not an IGI recording (bad magic)");
    header_.width = get<std::uint32_t>(in_);
    header_.height = get<std::uint32_t>(in_);
    header_.measurements = get<std::uint64_t>(in_);
    header_.pixel_bits = get<std::uint32_t>(in_);
    get<std::uint32_t>(in_);  // reserved
    header_.seed = get<std::uint64_t>(in_);
    if (!in_) throw DataError(path + ": truncated header");
    header_.validate();

    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (!ec && size != header_.file_bytes())
        throw DataError(path + ": payload length " + std::to_string(size) +
                        " does not match header (" + std::to_string(header_.file_bytes()) +
                        " bytes expected)");
    buf_.resize(header_.dims().pixels() * header_.bytes_per_pixel());
}

bool RecordingReader::next(double& bucket, Frame& frame) {
    if (read_ >= header_.measurements) return false;
    bucket = get<double>(in_);
    in_.read(reinterpret_cast<char*>(buf_.data()), std::streamsize(buf_.size()));
    if (!in_) throw DataError(path_ + ": truncated record " + std::to_string(read_ + 1));

    if (frame.dims() != header_.dims()) frame = Frame(header_.dims());
    const std::size_t pixels = frame.size();
    if (header_.bytes_per_pixel() == 1) {
        for (std::size_t p = 0; p < pixels; ++p) frame[p] = double(buf_[p]);
    } else {
        const auto* codes = reinterpret_cast<const std::uint16_t*>(buf_.data());
        for (std::size_t p = 0; p < pixels; ++p) frame[p] = double(codes[p]);
    }
    ++read_;
    return true;
}

MeasurementStream load_recording(const std::string& path) {
    RecordingReader reader(path);
    MeasurementStream stream;
    stream.dims = reader.dims();
    stream.records.reserve(reader.count());
    Frame frame(reader.dims());
    double bucket = 0.0;
    while (reader.next(bucket, frame)) stream.push(bucket, frame);
    return stream;
}

}  // namespace igi
