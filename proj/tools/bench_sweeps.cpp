// Timing comparison of the serial reference kernels against the OpenMP
// versions on the triple/pair sweeps.

#include <cstdio>

#include "dilhom/verify.hpp"

using namespace dilhom;

int main() {
    Space sp = space_make(Type1Desc{6, 1.5, 3.0});
    auto pts = sample(sp, 260, 4, 7);
    DistanceMatrix m = distance_matrix(sp, pts);

    std::printf("%-14s %-10s %10s %10s %8s\n", "property", "kernel", "checked", "violations",
                "seconds");
    auto row = [](const SweepResult& r, const char* kernel) {
        std::printf("%-14s %-10s %10lld %10lld %8.3f\n", r.property.c_str(), kernel,
                    static_cast<long long>(r.checked), static_cast<long long>(r.violations),
                    r.seconds);
    };
    row(ultrametric_sweep(m, false), "serial");
    row(ultrametric_sweep(m, true), "openmp");
    row(gamma_sweep(m, false), "serial");
    row(gamma_sweep(m, true), "openmp");
    row(translation_sweep(sp, 20000, 4, 7, false), "serial");
    row(translation_sweep(sp, 20000, 4, 7, true), "openmp");
    return 0;
}
