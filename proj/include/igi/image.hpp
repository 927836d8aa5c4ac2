#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "igi/errors.hpp"

namespace igi {

struct Dims {
    int width = 0;
    int height = 0;

    std::uint64_t pixels() const { return std::uint64_t(width) * std::uint64_t(height); }
    bool operator==(const Dims&) const = default;
};

inline void require_valid_dims(Dims d) {
    if (d.width < 1 || d.height < 1)
        throw ConfigError("invalid dimensions " + std::to_string(d.width) + "x" +
                          std::to_string(d.height));
}

struct Pixel {
    int x = 0;
    int y = 0;
    bool operator==(const Pixel&) const = default;
};

// Row-major 2-D grid. (x, y) addresses column x of row y.
template <typename T>
class Image2D {
public:
    Image2D() = default;
    explicit Image2D(Dims dims, T fill = T{}) : dims_(dims), data_(dims.pixels(), fill) {
        require_valid_dims(dims);
    }

    Dims dims() const { return dims_; }
    int width() const { return dims_.width; }
    int height() const { return dims_.height; }
    std::uint64_t size() const { return data_.size(); }

    T& operator()(int x, int y) { return data_[std::size_t(y) * dims_.width + x]; }
    const T& operator()(int x, int y) const { return data_[std::size_t(y) * dims_.width + x]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> span() { return data_; }
    std::span<const T> span() const { return data_; }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool operator==(const Image2D&) const = default;

private:
    Dims dims_{};
    std::vector<T> data_;
};

using Frame = Image2D<double>;

inline void require_same_dims(Dims a, Dims b, const char* what) {
    if (!(a == b))
        throw DataError(std::string(what) + ": dimension mismatch " + std::to_string(a.width) +
                        "x" + std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                        std::to_string(b.height));
}

// One pseudo-thermal intensity realization.
struct SpeckleFrame {
    Frame intensities;
    std::uint64_t frame_index = 0;

    Dims dims() const { return intensities.dims(); }
};

// Per-pixel transmissivity in [0, 1].
struct ObjectMask {
    Image2D<double> transmissivity;
    std::string name;

    Dims dims() const { return transmissivity.dims(); }
};

}  // namespace igi
