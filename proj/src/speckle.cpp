#include "igi/speckle.hpp"

#include <cmath>
#include <cstdlib>

#include "igi/kernels.hpp"
#include "igi/pgm.hpp"

namespace igi {

void FieldConfig::validate() const {
    if (width < 1 || height < 1)
        throw ConfigError("field dimensions must be at least 1x1, got " + std::to_string(width) +
                          "x" + std::to_string(height));
    if (grain_radius < 0.0) throw ConfigError("grain_radius must be >= 0");
    if (!(mean_intensity > 0.0)) throw ConfigError("mean_intensity must be > 0");
}

void DetectorConfig::validate() const {
    if (quant_bits < 1 || quant_bits > 16)
        throw ConfigError("quant_bits must be in [1, 16], got " + std::to_string(quant_bits));
    if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
}

std::vector<double> grain_taps(double grain_radius) {
    const double sigma = grain_radius / std::sqrt(2.0);
    const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
    std::vector<double> taps(std::size_t(2 * radius + 1));
    for (int j = -radius; j <= radius; ++j)
        taps[std::size_t(j + radius)] = std::exp(-double(j) * double(j) / (2.0 * sigma * sigma));
    return taps;
}

SpeckleFrame generate_frame(const FieldConfig& cfg, std::uint64_t n, kernels::Exec exec) {
    cfg.validate();
    if (n < 1) throw ConfigError("frame index must be >= 1");

    const Dims dims = cfg.dims();
    const std::size_t pixels = dims.pixels();
    std::vector<double> re(pixels), im(pixels);
    kernels::fill_complex_noise(exec, cfg.seed, n, re, im);

    double tap_sumsq = 1.0;
    if (cfg.grain_radius > 0.0) {
        const std::vector<double> taps = grain_taps(cfg.grain_radius);
        tap_sumsq = 0.0;
        for (double t : taps) tap_sumsq += t * t;

        std::vector<double> tmp(pixels);
        kernels::wrap_convolve_rows(exec, dims, re, tmp, taps);
        kernels::wrap_convolve_cols(exec, dims, tmp, re, taps);
        kernels::wrap_convolve_rows(exec, dims, im, tmp, taps);
        kernels::wrap_convolve_cols(exec, dims, tmp, im, taps);
    }

    // Each field component has variance tap_sumsq^2 after the separable
    // filter, so |field|^2 has mean 2 * tap_sumsq^2.
    const double scale = cfg.mean_intensity / (2.0 * tap_sumsq * tap_sumsq);

    SpeckleFrame frame{Frame(dims), n};
    kernels::intensity_from_field(exec, re, im, scale, frame.intensities.span());
    return frame;
}

double bucket_signal(const SpeckleFrame& frame, const ObjectMask& mask) {
    require_same_dims(frame.dims(), mask.dims(), "bucket_signal");
    return kernels::dot_ordered(frame.intensities.span(), mask.transmissivity.span());
}

SpeckleFrame quantize_frame(const SpeckleFrame& frame, const FieldConfig& cfg,
                            const DetectorConfig& det, std::uint64_t n, std::uint32_t channel,
                            kernels::Exec exec) {
    cfg.validate();
    det.validate();
    const double scale = double(det.mid_code()) / cfg.mean_intensity;
    SpeckleFrame out{Frame(frame.dims()), n};
    kernels::quantize_readout(exec, cfg.seed, n, channel, det.noise_sigma, scale, det.max_code(),
                              frame.intensities.span(), out.intensities.span());
    return out;
}

namespace {

// Axis-aligned filled rectangle, clipped to the mask.
void fill_rect(Image2D<double>& m, int x0, int y0, int w, int h) {
    const int xa = std::max(0, x0);
    const int ya = std::max(0, y0);
    const int xb = std::min(m.width(), x0 + w);
    const int yb = std::min(m.height(), y0 + h);
    for (int y = ya; y < yb; ++y)
        for (int x = xa; x < xb; ++x) m(x, y) = 1.0;
}

// Two-letter TH glyph drawn from rectangles inside a centred box.
void draw_th(Image2D<double>& m) {
    const int w = m.width();
    const int h = m.height();
    const int x0 = int(std::lround(0.10 * w));
    const int x1 = int(std::lround(0.90 * w));
    const int y0 = int(std::lround(0.20 * h));
    const int y1 = int(std::lround(0.80 * h));
    const int box_w = std::max(2, x1 - x0);
    const int box_h = std::max(2, y1 - y0);
    const int stroke = std::max(1, int(std::lround(0.16 * box_h)));
    const int letter_w = std::max(stroke, int(std::lround(0.42 * box_w)));
    const int gap = std::max(0, box_w - 2 * letter_w);

    // T: top bar plus centred stem
    fill_rect(m, x0, y0, letter_w, stroke);
    fill_rect(m, x0 + letter_w / 2 - stroke / 2, y0, stroke, box_h);
    // H: two stems plus crossbar
    const int hx = x0 + letter_w + gap;
    fill_rect(m, hx, y0, stroke, box_h);
    fill_rect(m, hx + letter_w - stroke, y0, stroke, box_h);
    fill_rect(m, hx, y0 + box_h / 2 - stroke / 2, letter_w, stroke);
}

long parse_long(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("mask spec: bad " + what + " '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("mask spec: bad " + what + " '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

MaskSpec parse_mask_spec(const std::string& text) {
    MaskSpec spec;
    const std::size_t colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

    if (head == "th") {
        spec.kind = MaskSpec::Kind::glyph_th;
        if (!rest.empty()) throw ConfigError("mask spec 'th' takes no parameters");
    } else if (head == "rect") {
        spec.kind = MaskSpec::Kind::rectangle;
        if (!rest.empty()) {
            const auto parts = split(rest, ',');
            if (parts.size() != 4)
                throw ConfigError("mask spec 'rect' needs x,y,w,h, got '" + rest + "'");
            spec.rect_x = int(parse_long(parts[0], "rect x"));
            spec.rect_y = int(parse_long(parts[1], "rect y"));
            spec.rect_w = int(parse_long(parts[2], "rect width"));
            spec.rect_h = int(parse_long(parts[3], "rect height"));
        }
    } else if (head == "disk") {
        spec.kind = MaskSpec::Kind::disk;
        const auto parts = split(rest, ',');
        if (parts.size() != 3)
            throw ConfigError("mask spec 'disk' needs cx,cy,r, got '" + rest + "'");
        spec.disk_cx = int(parse_long(parts[0], "disk cx"));
        spec.disk_cy = int(parse_long(parts[1], "disk cy"));
        spec.disk_r = parse_double(parts[2], "disk radius");
        if (spec.disk_r < 0) throw ConfigError("mask spec: disk radius must be >= 0");
    } else if (head == "pgm") {
        spec.kind = MaskSpec::Kind::pgm_file;
        if (rest.empty()) throw ConfigError("mask spec 'pgm' needs a path");
        spec.path = rest;
    } else {
        throw ConfigError("unknown mask spec '" + text + "'");
    }
    return spec;
}

ObjectMask make_object_mask(const MaskSpec& spec, Dims dims) {
    require_valid_dims(dims);
    ObjectMask mask{Image2D<double>(dims, 0.0), ""};
    switch (spec.kind) {
        case MaskSpec::Kind::glyph_th:
            mask.name = "th";
            draw_th(mask.transmissivity);
            break;
        case MaskSpec::Kind::rectangle: {
            mask.name = "rect";
            const int w = spec.rect_w < 0 ? dims.width : spec.rect_w;
            const int h = spec.rect_h < 0 ? dims.height : spec.rect_h;
            fill_rect(mask.transmissivity, spec.rect_x, spec.rect_y, w, h);
            break;
        }
        case MaskSpec::Kind::disk: {
            mask.name = "disk";
            const double r2 = spec.disk_r * spec.disk_r;
            for (int y = 0; y < dims.height; ++y)
                for (int x = 0; x < dims.width; ++x) {
                    const double dx = x - spec.disk_cx;
                    const double dy = y - spec.disk_cy;
                    if (dx * dx + dy * dy <= r2) mask.transmissivity(x, y) = 1.0;
                }
            break;
        }
        case MaskSpec::Kind::pgm_file: {
            mask = mask_from_pgm(spec.path);
            require_same_dims(mask.dims(), dims, "mask image");
            break;
        }
    }
    return mask;
}

}  // namespace igi
