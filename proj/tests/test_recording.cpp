#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>

#include "igi/recording.hpp"
#include "test_util.hpp"

using namespace igi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("igi_rec_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("recordings round-trip exactly") {
    TempDir dir;
    std::mt19937_64 rng(3);
    for (const std::uint32_t pixel_bits : {8u, 12u}) {
        const Dims dims{6, 5};
        const std::int64_t max_code = (1 << pixel_bits) - 1;
        const MeasurementStream stream =
            test::random_integer_stream(rng, dims, 37, max_code, 1 << 20);

        RecordingHeader header;
        header.width = 6;
        header.height = 5;
        header.measurements = 37;
        header.pixel_bits = pixel_bits;
        header.seed = 99;
        const std::string path = dir.file("roundtrip.igirec");
        {
            RecordingWriter writer(path, header);
            for (const Measurement& rec : stream.records) writer.append(rec.bucket, rec.frame);
            writer.finish();
        }
        CHECK(fs::file_size(path) == header.file_bytes());

        RecordingReader reader(path);
        CHECK(reader.header().seed == 99);
        CHECK(reader.header().pixel_bits == pixel_bits);
        const MeasurementStream loaded = load_recording(path);
        REQUIRE(loaded.size() == stream.size());
        CHECK(loaded.dims == dims);
        for (std::size_t n = 0; n < stream.records.size(); ++n) {
            CHECK(loaded.records[n].bucket == stream.records[n].bucket);
            CHECK(loaded.records[n].frame == stream.records[n].frame);
        }
    }
}

TEST_CASE("file size arithmetic for the two-record case") {
    RecordingHeader header;
    header.width = 2;
    header.height = 2;
    header.measurements = 2;
    header.pixel_bits = 8;
    // 40-byte header + 2 * (8-byte bucket + 4 pixels).
    CHECK(header.file_bytes() == 40 + 2 * (8 + 4));
    header.pixel_bits = 10;
    CHECK(header.file_bytes() == 40 + 2 * (8 + 8));
}

TEST_CASE("writer enforces the declared record count and code range") {
    TempDir dir;
    RecordingHeader header;
    header.width = 2;
    header.height = 1;
    header.measurements = 2;
    header.pixel_bits = 4;

    {
        RecordingWriter writer(dir.file("short.igirec"), header);
        Frame f({2, 1});
        writer.append(1.0, f);
        CHECK_THROWS_AS(writer.finish(), DataError);
    }
    {
        RecordingWriter writer(dir.file("range.igirec"), header);
        Frame f({2, 1});
        f[0] = 16.0;  // 4-bit codes stop at 15
        CHECK_THROWS_AS(writer.append(1.0, f), DataError);
        f[0] = 2.5;
        CHECK_THROWS_AS(writer.append(1.0, f), DataError);
    }
}

TEST_CASE("reader rejects bad magic, truncation, and length mismatches") {
    TempDir dir;
    RecordingHeader header;
    header.width = 3;
    header.height = 3;
    header.measurements = 4;
    header.pixel_bits = 8;
    const std::string path = dir.file("good.igirec");
    {
        RecordingWriter writer(path, header);
        Frame f({3, 3}, 1.0);
        for (int n = 0; n < 4; ++n) writer.append(double(n), f);
        writer.finish();
    }

    const std::string bytes = read_bytes(path);

    const std::string bad_magic_path = dir.file("bad_magic.igirec");
    {
        std::string corrupted = bytes;
        corrupted[0] = 'X';
        std::ofstream out(bad_magic_path, std::ios::binary);
        out << corrupted;
    }
    CHECK_THROWS_AS(RecordingReader{bad_magic_path}, DataError);

    const std::string truncated_path = dir.file("truncated.igirec");
    {
        std::ofstream out(truncated_path, std::ios::binary);
        out << bytes.substr(0, bytes.size() - 5);
    }
    CHECK_THROWS_AS(RecordingReader{truncated_path}, DataError);

    CHECK_THROWS_AS(RecordingReader{dir.file("missing.igirec")}, DataError);
}
