// Benchmark: serial vs OpenMP-parallel assembly of the density evaluation
// matrix, plus end-to-end density_check timings on both paths.
#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "odyn/harness.hpp"

using namespace odyn;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QMatrix diag(std::initializer_list<long> entries) {
    QMatrix m(entries.size(), entries.size());
    std::size_t i = 0;
    for (long v : entries) {
        m.at(i, i) = Rational(v);
        ++i;
    }
    return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not available: parallel path falls back to serial\n";
#endif

    GroupEndomorphism phi{diag({3, 5, 7}), ZMatrix()};
    OrbitPoint alpha = make_orbit_point({Rational(1), Rational(1), Rational(1)}, {});
    const unsigned degree = 8;
    const unsigned long steps = 400;

    auto orbit = evaluate_orbit(phi, alpha, steps);
    std::vector<density_detail::PointData> points;
    for (const auto& p : orbit) points.push_back(density_detail::preprocess(p));
    auto monomials = density_detail::monomials_up_to_degree(3, degree);
    std::cout << "matrix: " << points.size() << " orbit points x " << monomials.size()
              << " monomials of degree <= " << degree << "\n";

    std::vector<std::vector<Rational>> serial_rows, parallel_rows;
    // warm both paths once (heap growth and page faults), then take best of two
    density_detail::assemble_rows_serial(points, monomials, 3, serial_rows);
    density_detail::assemble_rows_parallel(points, monomials, 3, parallel_rows);
    bool identical = serial_rows == parallel_rows;

    double t_serial = 1e9, t_parallel = 1e9;
    for (int rep = 0; rep < 2; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        density_detail::assemble_rows_serial(points, monomials, 3, serial_rows);
        t_serial = std::min(t_serial, seconds_since(t0));
        t0 = std::chrono::steady_clock::now();
        density_detail::assemble_rows_parallel(points, monomials, 3, parallel_rows);
        t_parallel = std::min(t_parallel, seconds_since(t0));
        identical = identical && serial_rows == parallel_rows;
    }

    std::cout << "assembly serial:   " << t_serial << " s\n";
    std::cout << "assembly parallel: " << t_parallel << " s\n";
    std::cout << "speedup:           " << (t_parallel > 0 ? t_serial / t_parallel : 0) << "x\n";
    std::cout << "identical output:  " << (identical ? "yes" : "NO") << "\n";

    DensityOptions serial_opts{.parallel = false};
    DensityOptions parallel_opts{.parallel = true};
    auto t1 = std::chrono::steady_clock::now();
    DensityReport r1 = density_check(phi, alpha, degree, steps, serial_opts);
    double d_serial = seconds_since(t1);
    t1 = std::chrono::steady_clock::now();
    DensityReport r2 = density_check(phi, alpha, degree, steps, parallel_opts);
    double d_parallel = seconds_since(t1);
    std::cout << "density_check serial:   " << d_serial << " s (" << r1.label() << ")\n";
    std::cout << "density_check parallel: " << d_parallel << " s (" << r2.label() << ")\n";
    return identical && r1.outcome == r2.outcome ? 0 : 1;
}
