#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "igi/image.hpp"

namespace igi {

// Binary portable graymap (P5), maxval 255.
void write_pgm(const std::string& path, const Image2D<std::uint8_t>& img);
Image2D<std::uint8_t> read_pgm(const std::string& path);

// Binary mask from a P5 file: foreground where value > maxval / 2.
ObjectMask mask_from_pgm(const std::string& path);

// Reconstruction images are written min-max scaled to 8 bits; the sidecar
// `<base>.meta` (key=value lines) records the scaling so values survive.
struct ImageMeta {
    std::map<std::string, std::string> entries;

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
};

// Writes <base>.pgm and <base>.meta; min/max keys are always present.
void write_scaled_pgm(const std::string& base, const Image2D<double>& values,
                      const std::map<std::string, std::string>& extra_meta);

ImageMeta read_image_meta(const std::string& path);

// Inverse of write_scaled_pgm up to 8-bit rounding: reads <base>.pgm and
// <base>.meta and maps codes back to [min, max].
Image2D<double> read_scaled_pgm(const std::string& base, ImageMeta* meta_out = nullptr);

}  // namespace igi
