#include "igi/pgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace igi {

namespace {

// Next whitespace-delimited token, skipping '#' comments per the PGM spec.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(char(c));
    }
    return tok;
}

int parse_header_int(std::istream& in, const std::string& path, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw DataError(path + ": truncated PGM header (" + what + ")");
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw DataError(path + ": bad PGM " + what + " '" + tok + "'");
    return std::stoi(tok);
}

}  // namespace

void write_pgm(const std::string& path, const Image2D<std::uint8_t>& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data()), std::streamsize(img.size()));
    if (!out) throw DataError("write failed for '" + path + "'");
}

Image2D<std::uint8_t> read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    const std::string magic = next_token(in);
    if (magic != "P5") throw DataError(path + ": not a binary PGM (P5) file");
    const int w = parse_header_int(in, path, "width");
    const int h = parse_header_int(in, path, "height");
    const int maxval = parse_header_int(in, path, "maxval");
    if (w < 1 || h < 1) throw DataError(path + ": bad PGM dimensions");
    if (maxval != 255) throw DataError(path + ": unsupported maxval " + std::to_string(maxval));
    // Exactly one whitespace byte separates the header from the raster.
    Image2D<std::uint8_t> img({w, h});
    in.read(reinterpret_cast<char*>(img.data()), std::streamsize(img.size()));
    if (in.gcount() != std::streamsize(img.size()))
        throw DataError(path + ": truncated PGM raster");
    return img;
}

ObjectMask mask_from_pgm(const std::string& path) {
    const Image2D<std::uint8_t> img = read_pgm(path);
    ObjectMask mask{Image2D<double>(img.dims(), 0.0), path};
    for (std::size_t i = 0; i < img.size(); ++i)
        mask.transmissivity[i] = img[i] > 127 ? 1.0 : 0.0;
    return mask;
}

const std::string& ImageMeta::get(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) throw DataError("image metadata: missing key '" + key + "'");
    return it->second;
}

double ImageMeta::get_double(const std::string& key) const {
    return std::stod(get(key));
}

void write_scaled_pgm(const std::string& base, const Image2D<double>& values,
                      const std::map<std::string, std::string>& extra_meta) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    const double range = hi - lo;
    Image2D<std::uint8_t> img(values.dims());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = range > 0.0 ? (values[i] - lo) / range : 0.0;
        img[i] = std::uint8_t(std::lround(t * 255.0));
    }
    write_pgm(base + ".pgm", img);

    std::ofstream meta(base + ".meta");
    if (!meta) throw DataError("cannot open '" + base + ".meta' for writing");
    char buf[64];
    meta << "width=" << values.width() << "\n";
    meta << "height=" << values.height() << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", lo);
    meta << "min=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", hi);
    meta << "max=" << buf << "\n";
    for (const auto& [k, v] : extra_meta) meta << k << "=" << v << "\n";
    if (!meta) throw DataError("write failed for '" + base + ".meta'");
}

ImageMeta read_image_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    ImageMeta meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw DataError(path + ": bad metadata line '" + line + "'");
        meta.entries[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

Image2D<double> read_scaled_pgm(const std::string& base, ImageMeta* meta_out) {
    const Image2D<std::uint8_t> img = read_pgm(base + ".pgm");
    const ImageMeta meta = read_image_meta(base + ".meta");
    const double lo = meta.get_double("min");
    const double hi = meta.get_double("max");
    Image2D<double> values(img.dims());
    for (std::size_t i = 0; i < img.size(); ++i)
        values[i] = lo + (hi - lo) * (double(img[i]) / 255.0);
    if (meta_out) *meta_out = meta;
    return values;
}

}  // namespace igi
