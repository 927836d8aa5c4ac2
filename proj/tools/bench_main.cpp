// Serial vs OpenMP throughput for the hot kernels: speckle synthesis,
// detector quantization, and the streaming-engine update. Pipelines are
// bit-identical across the two execution policies (see test_kernels), so
// this compares speed only.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "igi/engine.hpp"
#include "igi/speckle.hpp"

using igi::kernels::Exec;

namespace {

using clock_type = std::chrono::steady_clock;

double time_of(const std::function<void()>& body) {
    const auto start = clock_type::now();
    body();
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Row {
    std::string kernel;
    std::string size;
    std::uint64_t items;
    double serial_s;
    double parallel_s;
};

double bench_synth(Exec exec, const igi::FieldConfig& cfg, int frames) {
    return time_of([&] {
        for (int n = 1; n <= frames; ++n) {
            const igi::SpeckleFrame f = igi::generate_frame(cfg, std::uint64_t(n), exec);
            volatile double sink = f.intensities[0];
            (void)sink;
        }
    });
}

double bench_quantize(Exec exec, const igi::FieldConfig& cfg, const igi::SpeckleFrame& frame,
                      int reps) {
    const igi::DetectorConfig det{8, 0.05};
    return time_of([&] {
        for (int n = 1; n <= reps; ++n) {
            const igi::SpeckleFrame q =
                igi::quantize_frame(frame, cfg, det, std::uint64_t(n), 0, exec);
            volatile double sink = q.intensities[0];
            (void)sink;
        }
    });
}

double bench_engine(Exec exec, igi::Dims dims, const std::vector<igi::Frame>& pool,
                    const std::vector<double>& buckets, int pushes) {
    igi::StreamingEngine engine(dims, igi::Algorithm::igi, exec);
    return time_of([&] {
        for (int k = 0; k < pushes; ++k)
            engine.push(buckets[std::size_t(k) % buckets.size()],
                        pool[std::size_t(k) % pool.size()]);
    });
}

}  // namespace

int main(int argc, char** argv) {
    int width = 400, height = 280;
    int frames = 60, pushes = 2000;
    std::string csv_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", arg.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--width") width = std::stoi(next());
        else if (arg == "--height") height = std::stoi(next());
        else if (arg == "--frames") frames = std::stoi(next());
        else if (arg == "--pushes") pushes = std::stoi(next());
        else if (arg == "--csv") csv_path = next();
        else {
            std::fprintf(stderr,
                         "usage: igi-bench [--width W] [--height H] [--frames N] "
                         "[--pushes N] [--csv PATH]\n");
            return arg == "--help" || arg == "-h" ? 0 : 2;
        }
    }

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serially\n");
#endif

    igi::FieldConfig cfg;
    cfg.width = width;
    cfg.height = height;
    cfg.grain_radius = 3.0;
    cfg.seed = 99;
    const std::string size = std::to_string(width) + "x" + std::to_string(height);

    std::vector<Row> rows;
    rows.push_back({"speckle_synthesis", size, std::uint64_t(frames),
                    bench_synth(Exec::serial, cfg, frames),
                    bench_synth(Exec::parallel, cfg, frames)});

    const igi::SpeckleFrame sample = igi::generate_frame(cfg, 1);
    rows.push_back({"quantize_readout", size, std::uint64_t(frames),
                    bench_quantize(Exec::serial, cfg, sample, frames),
                    bench_quantize(Exec::parallel, cfg, sample, frames)});

    // Small frame pool so engine timing is not dominated by synthesis.
    std::vector<igi::Frame> pool;
    std::vector<double> buckets;
    for (int n = 1; n <= 16; ++n) {
        igi::SpeckleFrame f = igi::generate_frame(cfg, std::uint64_t(n));
        buckets.push_back(igi::kernels::sum_ordered(f.intensities.span()));
        pool.push_back(std::move(f.intensities));
    }
    rows.push_back({"engine_push_igi", size, std::uint64_t(pushes),
                    bench_engine(Exec::serial, cfg.dims(), pool, buckets, pushes),
                    bench_engine(Exec::parallel, cfg.dims(), pool, buckets, pushes)});

    std::printf("%-20s %-10s %10s %12s %12s %9s\n", "kernel", "size", "items", "serial_s",
                "parallel_s", "speedup");
    for (const Row& r : rows)
        std::printf("%-20s %-10s %10llu %12.4f %12.4f %8.2fx\n", r.kernel.c_str(),
                    r.size.c_str(), static_cast<unsigned long long>(r.items), r.serial_s,
                    r.parallel_s, r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << "kernel,size,items,serial_s,parallel_s,speedup\n";
        for (const Row& r : rows)
            csv << r.kernel << "," << r.size << "," << r.items << "," << r.serial_s << ","
                << r.parallel_s << ","
                << (r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0) << "\n";
    }
    return 0;
}
