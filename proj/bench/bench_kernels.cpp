// Serial reference implementations against the parallel kernels.
// bench_kernels [--jobs k] [--reps r]

#include "rsm/parallel.hpp"
#include "rsm/sieve.hpp"
#include "rsm/spectral.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

using namespace rsm;

namespace {

template <class F>
double seconds(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void line(const char* name, const char* variant, double t, double base, double diff) {
    std::printf("%-22s %-18s %10.4f s  x%7.2f  max rel diff %.2e\n", name, variant, t, base / t, diff);
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}

int main(int argc, char** argv) {
    CLI::App app{"serial reference vs parallel kernels"};
    int jobs = default_jobs(), reps = 3;
    app.add_option("--jobs", jobs, "threads for the parallel runs");
    app.add_option("--reps", reps, "repetitions (best time kept)");
    CLI11_PARSE(app, argc, argv);
    std::printf("threads: %d, reps: %d\n\n", jobs, reps);

    {
        const auto c = sieve::random_coefficients(2000, 1, sieve::CoefficientLaw::gaussian);
        std::vector<double> ref, ser, par;
        const double t0 = seconds(reps, [&] { ref = sieve::classical_fraction_terms_reference(30, 123456, c); });
        const double t1 = seconds(reps, [&] { ser = sieve::classical_fraction_terms(30, 123456, c, 1); });
        const double t2 = seconds(reps, [&] { par = sieve::classical_fraction_terms(30, 123456, c, jobs); });
        double d1 = 0, d2 = 0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            d1 = std::max(d1, rel(ser[i], ref[i]));
            d2 = std::max(d2, rel(par[i], ref[i]));
        }
        line("classical B=30 M=2000", "reference", t0, t0, 0.0);
        line("", "folded, 1 thread", t1, t0, d1);
        line("", "folded, parallel", t2, t0, d2);
    }
    {
        const auto c = sieve::random_coefficients(200, 2, sieve::CoefficientLaw::gaussian);
        double ref = 0, ser = 0, par = 0;
        const double t0 = seconds(reps, [&] { ref = sieve::gallagher_lhs_reference(20, 5.0, c); });
        const double t1 = seconds(reps, [&] { ser = sieve::gallagher_lhs(20, 5.0, c, 1); });
        const double t2 = seconds(reps, [&] { par = sieve::gallagher_lhs(20, 5.0, c, jobs); });
        line("gallagher Q=20 N=200", "per character", t0, t0, 0.0);
        line("", "tables, 1 thread", t1, t0, rel(ser, ref));
        line("", "tables, parallel", t2, t0, rel(par, ref));
    }
    {
        const sieve::PhaseSpec f{sieve::PhaseKind::sqrt, 1.0};
        const auto c = sieve::random_coefficients(150, 3, sieve::CoefficientLaw::gaussian);
        double ref = 0, ser = 0, par = 0;
        const double t0 = seconds(reps, [&] { ref = sieve::hybrid_lhs_quadrature(10, 4.0, f, 1'000'000, c); });
        const double t1 = seconds(reps, [&] { ser = sieve::hybrid_lhs(10, 4.0, f, 1'000'000, c, 1); });
        const double t2 = seconds(reps, [&] { par = sieve::hybrid_lhs(10, 4.0, f, 1'000'000, c, jobs); });
        line("hybrid B=10 M=150", "t-quadrature", t0, t0, 0.0);
        line("", "sinc kernel, 1 th.", t1, t0, rel(ser, ref));
        line("", "sinc kernel, par.", t2, t0, rel(par, ref));
    }
    {
        const spectral::SpectralWeight sw(10.0, 4.0);
        std::vector<double> xs;
        for (int i = 0; i < 8; ++i) {
            xs.push_back(150.0 + 250.0 * i / 7.0);
        }
        std::vector<spectral::HCheckRow> ser, par;
        const double t1 = seconds(1, [&] { ser = spectral::h_check_sweep(xs, sw, {}, 1); });
        const double t2 = seconds(1, [&] { par = spectral::h_check_sweep(xs, sw, {}, jobs); });
        double d = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            d = std::max(d, std::abs(par[i].oracle - ser[i].oracle) / std::abs(ser[i].oracle));
        }
        line("hcheck sweep 8 x", "1 thread", t1, t1, 0.0);
        line("", "parallel", t2, t1, d);
    }
    return 0;
}
