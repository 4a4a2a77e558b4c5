#include "rsm/suites.hpp"

#include "rsm/afe.hpp"
#include "rsm/arith.hpp"
#include "rsm/bigfloat.hpp"
#include "rsm/coeffs.hpp"
#include "rsm/parallel.hpp"
#include "rsm/sieve.hpp"
#include "rsm/spectral.hpp"
#include "rsm/stphase.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace rsm::suites {

namespace {

using report::Cell;
using report::Report;
using cplx = std::complex<double>;
using I = std::int64_t;

constexpr double pi = std::numbers::pi;

class Params {
public:
    Params(std::vector<std::pair<std::string, Value>> defaults, const std::map<std::string, std::string>& overrides)
        : values_(std::move(defaults)) {
        for (const auto& [k, text] : overrides) {
            auto it = std::find_if(values_.begin(), values_.end(), [&](const auto& p) { return p.first == k; });
            if (it == values_.end()) {
                throw ConfigError("unknown parameter '" + k + "'");
            }
            if (std::holds_alternative<double>(it->second)) {
                it->second = parse_number(k, text);
            } else {
                it->second = text;
            }
        }
    }

    double num(const std::string& k) const { return std::get<double>(find(k)); }

    I integer(const std::string& k, I lo, I hi) const {
        const double v = num(k);
        if (v != std::floor(v) || v < double(lo) || v > double(hi)) {
            throw ConfigError("parameter '" + k + "' must be an integer in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        }
        return static_cast<I>(v);
    }

    double positive(const std::string& k) const {
        const double v = num(k);
        if (!(v > 0)) {
            throw ConfigError("parameter '" + k + "' must be positive");
        }
        return v;
    }

    const std::string& str(const std::string& k) const { return std::get<std::string>(find(k)); }

    std::vector<double> list(const std::string& k) const {
        std::vector<double> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_number(k, item));
        }
        if (out.empty()) {
            throw ConfigError("parameter '" + k + "' needs at least one value");
        }
        return out;
    }

    report::Fields fields() const {
        report::Fields f;
        for (const auto& [k, v] : values_) {
            f.emplace_back(k, std::visit([](const auto& x) { return Cell{x}; }, v));
        }
        return f;
    }

private:
    const Value& find(const std::string& k) const {
        for (const auto& [key, v] : values_) {
            if (key == k) {
                return v;
            }
        }
        throw std::logic_error("suite reads undeclared parameter " + k);
    }

    static double parse_number(const std::string& k, const std::string& text) {
        double v = 0.0;
        const char* end = text.data() + text.size();
        auto [p, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || p != end || !std::isfinite(v)) {
            throw ConfigError("parameter '" + k + "': cannot parse '" + text + "' as a number");
        }
        return v;
    }

    std::vector<std::pair<std::string, Value>> values_;
};

// least-squares slope of log y on log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> geometric(double lo, double hi, I points) {
    std::vector<double> xs;
    for (I i = 0; i < points; ++i) {
        xs.push_back(points == 1 ? lo : lo * std::pow(hi / lo, double(i) / double(points - 1)));
    }
    return xs;
}

std::vector<double> linear(double lo, double hi, I points) {
    std::vector<double> xs;
    for (I i = 0; i < points; ++i) {
        xs.push_back(points == 1 ? lo : lo + (hi - lo) * double(i) / double(points - 1));
    }
    return xs;
}

struct Context {
    const Params& p;
    std::uint64_t seed;
    int jobs;
    Report& r;
};

// ---------------------------------------------------------------------------

void suite_stwist(Context& c) {
    const I cmax = c.p.integer("cmax", 1, 500);
    c.r.columns = {"c", "max_residual", "tolerance", "max_terms", "ok"};
    std::vector<double> res(cmax);
    std::vector<I> terms(cmax);
    parallel_for(cmax, c.jobs, [&](std::ptrdiff_t i) {
        const I cc = i + 1;
        for (I m = 0; m < cc; ++m) {
            for (I n = 0; n < cc; ++n) {
                const auto t = arith::twist_decomposition_check(m, n, cc);
                res[i] = std::max(res[i], t.residual());
                terms[i] = std::max(terms[i], t.terms);
            }
        }
    });
    double worst = 0.0, worst_scaled = 0.0;
    bool pass = true;
    for (I i = 0; i < cmax; ++i) {
        const double tol = 1e-9 * double(i + 1);
        const bool ok = res[i] <= tol;
        pass = pass && ok;
        worst = std::max(worst, res[i]);
        worst_scaled = std::max(worst_scaled, res[i] / double(i + 1));
        c.r.add_row({i + 1, res[i], tol, terms[i], ok});
    }
    c.r.summary = {{"max_residual", worst}, {"max_residual_over_c", worst_scaled}};
    c.r.pass = pass;
}

void suite_kloosterman_avg(Context& c) {
    const I bmax = c.p.integer("bmax", 1, 60);
    const I rmax = c.p.integer("rmax", 1, 64);
    const I vectors = c.p.integer("vectors", 1, 10000);
    const I mmax = c.p.integer("mmax", 1, 200);
    std::vector<std::pair<I, I>> cases;
    for (I b = 1; b <= bmax; ++b) {
        for (I r = 1; r <= rmax; ++r) {
            bool ok = true;
            for (auto [q, e] : arith::factorize(r)) {
                ok = ok && b % q == 0;
            }
            if (ok) {
                cases.emplace_back(b, r);
            }
        }
    }
    std::vector<double> worst(cases.size()), scale(cases.size());
    parallel_for(static_cast<std::ptrdiff_t>(cases.size()), c.jobs, [&](std::ptrdiff_t i) {
        const auto [b, r] = cases[i];
        std::mt19937_64 rng(c.seed * 1'000'003 + static_cast<std::uint64_t>(b * 1000 + r));
        std::normal_distribution<double> g;
        for (I v = 0; v < vectors; ++v) {
            arith::Coefficients co;
            for (I m = 1; m <= mmax; ++m) {
                const double re = g(rng);
                co[m] = {re, g(rng)};
            }
            const auto q = arith::kloosterman_average_identity(b, r, co);
            const double s = std::max(std::fabs(q.lhs), std::fabs(q.rhs));
            const double rel = s > 0 ? std::fabs(q.lhs - q.rhs) / s : 0.0;
            worst[i] = std::max(worst[i], rel);
            scale[i] = std::max(scale[i], s);
        }
    });
    c.r.columns = {"b", "r", "max_rel_residual", "max_lhs", "ok"};
    double all = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        c.r.add_row({cases[i].first, cases[i].second, worst[i], scale[i], worst[i] <= 1e-8});
        all = std::max(all, worst[i]);
    }
    c.r.summary = {{"cases", I(cases.size())}, {"max_rel_residual", all}};
    c.r.pass = all <= 1e-8;
}

void trial_rows(Report& r, const sieve::EnsembleReport& e, const std::vector<std::string>& keys) {
    r.columns = {"trial", "seed"};
    for (const auto& k : keys) {
        r.columns.push_back(k);
    }
    for (const char* k : {"lhs", "bound", "ratio"}) {
        r.columns.emplace_back(k);
    }
    for (std::size_t i = 0; i < e.trials.size(); ++i) {
        const auto& t = e.trials[i];
        std::vector<Cell> row{I(i), I(t.seed)};
        for (const auto& k : keys) {
            const auto it = std::find_if(t.params.begin(), t.params.end(), [&](const auto& kv) { return kv.first == k; });
            row.emplace_back(it->second);
        }
        row.insert(row.end(), {t.lhs, t.bound, t.ratio});
        r.add_row(std::move(row));
    }
}

void suite_sieve_classical(Context& c) {
    const I trials = c.p.integer("trials", 1, 1'000'000);
    const I Bmax = c.p.integer("Bmax", 1, 1000);
    const I Mmax = c.p.integer("Mmax", 1, 100'000);
    const auto e = sieve::classical_ensemble(int(trials), c.seed, int(Bmax), int(Mmax), c.jobs);
    trial_rows(c.r, e, {"B", "N", "M"});
    c.r.summary = {{"trials", trials}, {"max_ratio", e.max_ratio}};
    c.r.pass = e.max_ratio <= 1.0 + 1e-9;
}

void suite_sieve_gallagher(Context& c) {
    const I trials = c.p.integer("trials", 1, 1'000'000);
    const I Qmax = c.p.integer("Qmax", 1, 100);
    const I Nmax = c.p.integer("Nmax", 100, 100'000);
    const double Umax = c.p.num("Umax");
    if (!(Umax >= 0.5)) {
        throw ConfigError("parameter 'Umax' must be >= 0.5");
    }
    const auto e = sieve::gallagher_ensemble(int(trials), c.seed, int(Qmax), int(Nmax), Umax, c.jobs);
    trial_rows(c.r, e, {"Q", "N", "U"});
    c.r.summary = {{"trials", trials}, {"max_ratio", e.max_ratio}};
    c.r.pass = e.max_ratio <= 1.0 + 1e-9;
}

sieve::PhaseSpec phase_spec(const Params& p) {
    const std::string& kind = p.str("phase");
    if (kind != "sqrt" && kind != "log") {
        throw ConfigError("parameter 'phase' must be sqrt or log");
    }
    const double scale = p.num("scale");
    if (scale == 0.0) {
        throw ConfigError("parameter 'scale' must be nonzero (f' would vanish)");
    }
    return {kind == "sqrt" ? sieve::PhaseKind::sqrt : sieve::PhaseKind::log, scale};
}

void suite_sieve_hybrid(Context& c) {
    const I seeds = c.p.integer("seeds", 1, 1000);
    const I trials = c.p.integer("trials", 1, 100'000);
    const I B = c.p.integer("B", 1, 1000);
    const I M = c.p.integer("M", 1, 100'000);
    const I N = c.p.integer("N", 1, I(1) << 50);
    const double T = c.p.positive("T");
    const double C = c.p.positive("C");
    const auto f = phase_spec(c.p);

    c.r.columns = {"kind", "seed", "B", "T", "N", "M", "empirical_C", "max_ratio", "kernel", "quadrature", "rel_diff", "ok"};
    std::vector<double> cs;
    bool pass = true;
    for (I s = 0; s < seeds; ++s) {
        const std::uint64_t sd = c.seed + static_cast<std::uint64_t>(s) * 1'000'000;
        const auto e = sieve::hybrid_ensemble(int(trials), sd, int(B), T, f, N, std::size_t(M), C, c.jobs);
        const bool ok = std::isfinite(e.empirical_C) && e.max_ratio <= 1.0;
        pass = pass && ok;
        cs.push_back(e.empirical_C);
        c.r.add_row({std::string("ensemble"), I(sd), B, T, N, M, e.empirical_C, e.max_ratio, {}, {}, {}, ok});
    }
    // kernel expansion against t-quadrature on small fixed cases
    struct Spot { int B; double T; sieve::PhaseSpec f; I N; std::size_t M; };
    const std::vector<Spot> spots{{3, 1.0, {sieve::PhaseKind::sqrt, 1.0}, 1'000'000, 40},
                                  {5, 4.0, {sieve::PhaseKind::sqrt, 3.0}, 1000, 60},
                                  {7, 2.5, {sieve::PhaseKind::log, 3.0}, 500, 50},
                                  {10, 4.0, {sieve::PhaseKind::sqrt, 1.0}, 1'000'000, 100},
                                  {4, 8.0, {sieve::PhaseKind::log, 20.0}, 2000, 30}};
    std::vector<double> kern(spots.size()), quad(spots.size());
    parallel_for(static_cast<std::ptrdiff_t>(spots.size()), c.jobs, [&](std::ptrdiff_t i) {
        const auto& s = spots[i];
        const auto co = sieve::random_coefficients(s.M, c.seed + i, sieve::CoefficientLaw::gaussian);
        kern[i] = sieve::hybrid_lhs(s.B, s.T, s.f, s.N, co, 1);
        quad[i] = sieve::hybrid_lhs_quadrature(s.B, s.T, s.f, s.N, co);
    });
    double worst_spot = 0.0;
    for (std::size_t i = 0; i < spots.size(); ++i) {
        const auto& s = spots[i];
        const double rel = std::fabs(kern[i] - quad[i]) / quad[i];
        worst_spot = std::max(worst_spot, rel);
        c.r.add_row({std::string("spot"), I(c.seed + i), I(s.B), s.T, s.N, I(s.M), {}, {}, kern[i], quad[i], rel, rel <= 1e-6});
    }
    const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
    const double spread = *hi / *lo;
    c.r.summary = {{"empirical_C_min", *lo}, {"empirical_C_max", *hi}, {"spread", spread},
                   {"spot_max_rel_diff", worst_spot}};
    c.r.pass = pass && spread <= 2.0 && worst_spot <= 1e-6;
}

void suite_airy(Context& c) {
    const double xmin = c.p.num("xmin"), xmax = c.p.num("xmax"), step = c.p.positive("step");
    const I windows = c.p.integer("windows", 2, 1000);
    if (!(xmin >= 5.0) || !(xmax > xmin) || xmax > 1000.0) {
        throw ConfigError("need 5 <= xmin < xmax <= 1000");
    }
    const double tol = c.p.num("tol");
    auto envelope = [](double x) { return std::pow(x, -0.25) / std::sqrt(pi); };
    std::vector<double> xs;
    for (double x = xmin; x <= xmax * (1 + 1e-12); x += step) {
        xs.push_back(x);
    }
    std::vector<double> oracle(xs.size());
    parallel_for(static_cast<std::ptrdiff_t>(xs.size()), c.jobs, [&](std::ptrdiff_t i) {
        oracle[i] = bigfloat::airy_ai_maclaurin(-xs[i]);
    });
    c.r.columns = {"x", "oracle", "leading", "error_over_envelope", "ok"};
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lead = stphase::airy_negative_asymptotic(xs[i], 1);
        const double err = std::fabs(lead - oracle[i]) / envelope(xs[i]);
        worst = std::max(worst, err);
        c.r.add_row({xs[i], oracle[i], lead, err, err < tol});
    }
    // decay rate from the windowed maxima
    std::vector<double> mids(windows), maxes(windows);
    parallel_for(windows, c.jobs, [&](std::ptrdiff_t w) {
        const double a = xmin * std::pow(xmax / xmin, double(w) / windows);
        const double b = xmin * std::pow(xmax / xmin, double(w + 1) / windows);
        double m = 0.0;
        for (int k = 0; k < 400; ++k) {
            const double x = a + (b - a) * k / 400.0;
            m = std::max(m, std::fabs(stphase::airy_negative_asymptotic(x, 1) - stphase::airy_ai(-x)) / envelope(x));
        }
        mids[w] = std::sqrt(a * b);
        maxes[w] = m;
    });
    const double slope = loglog_slope(mids, maxes);
    c.r.summary = {{"max_error_over_envelope", worst}, {"slope", slope}};
    c.r.pass = worst < tol && slope >= -1.8 && slope <= -1.2;
}

void suite_stationary_phase(Context& c) {
    const double amin = c.p.positive("alpha_min"), amax = c.p.positive("alpha_max");
    const double acheck = c.p.positive("alpha_check"), ratio = c.p.positive("beta_ratio");
    const double tol = c.p.num("tol");
    if (amax < 2 * amin) {
        throw ConfigError("need alpha_max >= 2 alpha_min");
    }
    std::vector<double> alphas;
    for (double a = amin; a <= amax * (1 + 1e-12); a *= 2) {
        alphas.push_back(a);
    }
    alphas.push_back(acheck);
    std::vector<cplx> lead(alphas.size()), orac(alphas.size());
    std::vector<double> y0(alphas.size());
    try {
        parallel_for(static_cast<std::ptrdiff_t>(alphas.size()), c.jobs, [&](std::ptrdiff_t i) {
            const stphase::PhasePair pp(alphas[i], ratio * alphas[i]);
            y0[i] = pp.stationary_point();
            const auto f = oscquad::SmoothWindow::bump(0.01 * y0[i], 1.99 * y0[i]);
            lead[i] = stphase::stationary_phase_I(pp, f);
            orac[i] = stphase::stationary_phase_oracle(pp, f).value;
        });
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    c.r.columns = {"alpha", "beta", "stationary_point", "leading_re", "leading_im", "oracle_re", "oracle_im", "rel_error", "role"};
    std::vector<double> sweep_a, sweep_e;
    double check_err = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double err = std::abs(orac[i] - lead[i]) / std::abs(lead[i]);
        const bool is_check = i + 1 == alphas.size();
        if (is_check) {
            check_err = err;
        } else {
            sweep_a.push_back(alphas[i]);
            sweep_e.push_back(err);
        }
        c.r.add_row({alphas[i], ratio * alphas[i], y0[i], lead[i].real(), lead[i].imag(), orac[i].real(), orac[i].imag(),
                     err, std::string(is_check ? "check" : "sweep")});
    }
    const double slope = loglog_slope(sweep_a, sweep_e);
    c.r.summary = {{"rel_error_at_check", check_err}, {"slope", slope}};
    c.r.pass = check_err <= tol && slope >= -1.3 && slope <= -0.7;
}

void suite_fresnel(Context& c) {
    const auto zs = c.p.list("z");
    const double tol = c.p.positive("tol");
    for (double z : zs) {
        if (std::fabs(z) > 50.0) {
            throw ConfigError("fresnel: |z| must be <= 50");
        }
    }
    std::vector<stphase::FresnelCheck> res(zs.size());
    parallel_for(static_cast<std::ptrdiff_t>(zs.size()), c.jobs, [&](std::ptrdiff_t i) {
        res[i] = stphase::fresnel_check(zs[i]);
    });
    c.r.columns = {"z", "integral_re", "integral_im", "quadrature_residual", "analytic_residual", "ok"};
    double worst = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        worst = std::max(worst, res[i].quadrature_residual);
        c.r.add_row({zs[i], res[i].integral.real(), res[i].integral.imag(), res[i].quadrature_residual,
                     res[i].analytic_residual, res[i].quadrature_residual <= tol});
    }
    c.r.summary = {{"max_residual", worst}};
    c.r.pass = worst <= tol;
}

void suite_y_transform(Context& c) {
    const auto Zs = c.p.list("Z");
    const double vf = c.p.num("v_frac"), U = c.p.positive("U");
    for (double Z : Zs) {
        if (!(Z >= 10.0)) {
            throw ConfigError("y-transform: every Z must be >= 10");
        }
    }
    const auto w3 = oscquad::SmoothWindow::bump(-1.0, 1.0);
    std::vector<std::pair<cplx, cplx>> res(Zs.size());
    parallel_for(static_cast<std::ptrdiff_t>(Zs.size()), c.jobs, [&](std::ptrdiff_t i) {
        res[i] = stphase::y_transform_pair(2.0 * Zs[i] * vf, U, Zs[i], w3);
    });
    c.r.columns = {"Z", "v", "oracle_re", "oracle_im", "leading_re", "leading_im", "rel_deviation"};
    std::vector<double> devs;
    for (std::size_t i = 0; i < Zs.size(); ++i) {
        const auto [o, l] = res[i];
        const double d = std::abs(o - l) / std::abs(l);
        devs.push_back(d);
        c.r.add_row({Zs[i], 2.0 * Zs[i] * vf, o.real(), o.imag(), l.real(), l.imag(), d});
    }
    const double slope = Zs.size() >= 2 ? loglog_slope(Zs, devs) : NAN;
    c.r.summary = {{"slope", slope}};
    c.r.pass = slope <= -0.8;
}

void suite_ghat_log(Context& c) {
    const auto Us = c.p.list("U");
    const double n = c.p.positive("n"), off = c.p.num("offset");
    const auto g = oscquad::SmoothWindow::bump(-1.0, 1.0);
    c.r.columns = {"U", "m", "n", "exact", "expanded", "abs_diff"};
    std::vector<double> diffs;
    try {
        for (double U : Us) {
            const double s = 1.0 + off * pi / U, m = n * s * s;
            const auto [ex, ep] = stphase::ghat_log_expansion_check(m, n, U, g);
            diffs.push_back(std::fabs(ex - ep));
            c.r.add_row({U, m, n, ex, ep, diffs.back()});
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    // fixed example m = n + 100 at U = 100 against 10 U^{-2} max |g''|
    double max_g2 = 0.0;
    for (double x = -0.999; x < 1.0; x += 0.001) {
        const double h = 1e-5;
        max_g2 = std::max(max_g2, std::fabs((g(x + h) - 2.0 * g(x) + g(x - h)).real() / (h * h)));
    }
    const auto [ex, ep] = stphase::ghat_log_expansion_check(1e6 + 100, 1e6, 100.0, g);
    const double ex_diff = std::fabs(ex - ep), ex_bound = 10.0 / (100.0 * 100.0) * max_g2;
    const double slope = Us.size() >= 2 ? loglog_slope(Us, diffs) : NAN;
    c.r.summary = {{"slope", slope}, {"example_diff", ex_diff}, {"example_bound", ex_bound}};
    c.r.pass = std::fabs(slope + 2.0) <= 0.1 && ex_diff <= ex_bound;
}

void suite_voronoi_phi(Context& c) {
    stphase::VoronoiWeightParams vp;
    vp.N = c.p.positive("N");
    vp.U = c.p.positive("U");
    vp.A = c.p.positive("A");
    vp.B = c.p.positive("B");
    vp.v = c.p.positive("v");
    vp.y0 = c.p.num("y0");
    vp.b = c.p.positive("b");
    const I points = c.p.integer("grid", 3, 1000);
    const double far = c.p.positive("far");
    std::vector<double> grid;
    for (I i = 0; i < points; ++i) {
        grid.push_back(vp.lambda_scale() * std::pow(10.0, -2.0 + 3.0 * double(i) / double(points - 1)));
    }
    const double center = stphase::voronoi_window_center(vp, grid);
    const std::vector<std::pair<std::string, double>> cases{{"center", center}, {"far", center * far}, {"near", center / far}};
    std::vector<stphase::VoronoiPair> res(cases.size());
    parallel_for(static_cast<std::ptrdiff_t>(cases.size()), c.jobs, [&](std::ptrdiff_t i) {
        res[i] = stphase::voronoi_phi_pair(vp, cases[i].second);
    });
    c.r.columns = {"role", "lambda", "oracle_re", "oracle_im", "leading_re", "leading_im", "modulus_ratio", "phase_gap",
                   "oracle_over_prefactor", "in_window", "ok"};
    bool pass = true;
    double ratio = 0, gap = 0, negl = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& r = res[i];
        const double lam = cases[i].second;
        const double scaled = std::abs(r.oracle) / vp.prefactor(lam);
        Cell rc, gc;
        bool ok;
        if (i == 0) {
            ratio = std::abs(r.oracle) / std::abs(r.leading);
            gap = std::fabs(std::arg(r.oracle * std::conj(r.leading)));
            rc = ratio;
            gc = gap;
            ok = r.in_window && ratio >= 0.9 && ratio <= 1.1 && gap <= 0.1;
        } else {
            negl = std::max(negl, scaled);
            ok = scaled <= 1e-8;
        }
        pass = pass && ok;
        c.r.add_row({cases[i].first, lam, r.oracle.real(), r.oracle.imag(), r.leading.real(), r.leading.imag(), rc, gc,
                     scaled, r.in_window, ok});
    }
    c.r.summary = {{"lambda_scale", vp.lambda_scale()}, {"center", center}, {"modulus_ratio", ratio},
                   {"phase_gap", gap}, {"max_offwindow_over_prefactor", negl}};
    c.r.pass = pass;
}

void suite_hcheck(Context& c) {
    const double T = c.p.positive("T"), D = c.p.positive("delta");
    const double xmin = c.p.positive("xmin"), xmax = c.p.positive("xmax");
    const I points = c.p.integer("points", 1, 10000);
    const double cos_min = c.p.num("cos_min"), tol = c.p.positive("tol");
    if (D > T) {
        throw ConfigError("hcheck: need delta <= T");
    }
    if (xmax < xmin || xmax > 1000.0) {
        throw ConfigError("hcheck: need xmin <= xmax <= 1000");
    }
    const spectral::SpectralWeight sw(T, D);
    const auto xs = linear(xmin, xmax, points);
    std::vector<spectral::HCheckRow> rows, fine;
    try {
        rows = spectral::h_check_sweep(xs, sw, {}, c.jobs);
        fine = spectral::h_check_sweep(xs, sw, {96, 10}, c.jobs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    c.r.columns = {"x", "oracle_re", "oracle_im", "leading", "cosine", "rel_deviation", "included", "imag_over_abs",
                   "refinement_change", "delta_ok", "phase_ok", "ok"};
    bool pass = true;
    double worst_dev = 0, worst_imag = 0, worst_ref = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& r = rows[i];
        const double a = std::abs(r.oracle);
        const double im = std::fabs(r.oracle.imag()) / a;
        const double ref = std::abs(fine[i].oracle - r.oracle) / a;
        const bool included = std::fabs(r.leading.cosine) >= cos_min;
        const bool ok = (!included || r.rel_deviation <= tol) && im <= 1e-8 && ref <= 1e-6;
        if (included) {
            worst_dev = std::max(worst_dev, r.rel_deviation);
        }
        worst_imag = std::max(worst_imag, im);
        worst_ref = std::max(worst_ref, ref);
        pass = pass && ok;
        c.r.add_row({r.x, r.oracle.real(), r.oracle.imag(), r.leading.value, r.leading.cosine, r.rel_deviation, included,
                     im, ref, r.leading.delta_ok, r.leading.phase_ok, ok});
    }
    c.r.summary = {{"max_rel_deviation", worst_dev}, {"max_imag_over_abs", worst_imag}, {"max_refinement_change", worst_ref}};
    c.r.pass = pass;
}

void suite_afe_v(Context& c) {
    const double tj = c.p.positive("tj"), tj2 = c.p.positive("tj_fine"), t = c.p.num("t");
    const double umin = c.p.positive("umin"), umax = c.p.positive("umax");
    const I points = c.p.integer("points", 2, 1000);
    const double small = c.p.positive("small_u");
    const afe::LanglandsParams lp;
    const auto us = geometric(umin, umax, points);
    std::vector<afe::VRow> a, b;
    cplx v_small;
    try {
        a = afe::v_weight_sweep(us, t, tj, lp, c.jobs);
        b = afe::v_weight_sweep(us, t, tj2, lp, c.jobs);
        const double rq = std::sqrt(afe::conductor_q(t, tj, lp).magnitude);
        v_small = afe::v_weight_direct(small * rq, t, tj, lp, {0.5, 30.0, 1e-8});
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    c.r.columns = {"tj", "u", "y", "direct_re", "direct_im", "stirling_re", "stirling_im", "deviation"};
    double d1 = 0, d2 = 0;
    for (const auto* set : {&a, &b}) {
        const double tt = set == &a ? tj : tj2;
        for (const auto& r : *set) {
            (set == &a ? d1 : d2) = std::max(set == &a ? d1 : d2, r.deviation);
            c.r.add_row({tt, r.u, r.y, r.direct.real(), r.direct.imag(), r.stirling.real(), r.stirling.imag(), r.deviation});
        }
    }
    const double small_dev = std::abs(v_small - 1.0);
    c.r.summary = {{"max_deviation", d1}, {"max_deviation_fine", d2}, {"small_y_re", v_small.real()},
                   {"small_y_im", v_small.imag()}, {"small_y_deviation", small_dev}};
    c.r.pass = d1 <= 0.1 && d2 < d1 && small_dev <= 0.05;
}

void suite_conductor(Context& c) {
    const double T = c.p.positive("T"), ex = c.p.positive("exponent");
    const I n = c.p.integer("grid", 2, 1000);
    const std::string& box = c.p.str("box");
    const double tmax = std::pow(T, ex);
    double hi;
    if (box == "narrow") {
        hi = T + tmax;
    } else if (box == "wide") {
        hi = 2 * T;
    } else {
        throw ConfigError("parameter 'box' must be narrow or wide");
    }
    const afe::LanglandsParams lp;
    const double T6 = std::pow(T, 6);
    c.r.columns = {"t", "tj", "q_re", "q_im", "ratio"};
    // same grid as afe::conductor_box
    double c1 = INFINITY, c2 = 0;
    for (I i = 0; i < n; ++i) {
        const double t = -tmax + 2.0 * tmax * double(i) / double(n - 1);
        for (I j = 1; j <= n; ++j) {
            const double tj = T + (hi - T) * double(j) / double(n);
            const auto q = afe::conductor_q(t, tj, lp);
            const double r = q.magnitude / T6;
            c1 = std::min(c1, r);
            c2 = std::max(c2, r);
            c.r.add_row({t, tj, q.q.real(), q.q.imag(), r});
        }
    }
    c.r.summary = {{"t_max", tmax}, {"tj_lo", T}, {"tj_hi", hi}, {"c1", c1}, {"c2", c2}, {"c2_over_c1", c2 / c1}};
    c.r.pass = c1 > 0 && c2 / c1 <= 100.0;
}

void suite_coeffs(Context& c) {
    const I nmax = c.p.integer("nmax", 10, 1'000'000);
    const double xlo = c.p.positive("x_lo"), xhi = c.p.positive("x_hi");
    if (xhi > double(nmax) || xlo >= xhi) {
        throw ConfigError("coeffs: need x_lo < x_hi <= nmax");
    }
    const auto sym = coeffs::build_gl3_sym_square(coeffs::build_gl2_delta(nmax));
    const auto rnd = coeffs::build_gl3_random(nmax, c.seed);
    c.r.columns = {"instance", "max_hecke_residual", "ratio_lo", "ratio_hi", "growth", "ok"};
    bool pass = true;
    double worst_all = 0, growth_all = 0;
    for (const auto* t : {&sym, &rnd}) {
        std::vector<double> worst(nmax, 0.0);
        parallel_for(nmax, c.jobs, [&](std::ptrdiff_t i) {
            const I l = i + 1;
            for (I n = 1; l * n <= nmax; ++n) {
                const cplx a = (*t)(l, n);
                worst[i] = std::max(worst[i], std::abs(coeffs::hecke_expand(*t, l, n) - a) / std::max(1.0, std::abs(a)));
            }
        });
        const double w = *std::max_element(worst.begin(), worst.end());
        const double lo = coeffs::coefficient_mean_square(*t, xlo).ratio;
        const double hi = coeffs::coefficient_mean_square(*t, xhi).ratio;
        const bool ok = w <= 1e-10 && hi / lo <= 2.0;
        pass = pass && ok;
        worst_all = std::max(worst_all, w);
        growth_all = std::max(growth_all, hi / lo);
        c.r.add_row({std::string(coeffs::source_name(t->source())), w, lo, hi, hi / lo, ok});
    }
    c.r.summary = {{"max_hecke_residual", worst_all}, {"max_growth", growth_all}};
    c.r.pass = pass;
}

struct SuiteDef {
    std::string name;
    std::vector<std::pair<std::string, Value>> defaults;
    std::function<void(Context&)> run;
};

const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> defs{
        {"stwist", {{"cmax", 50.0}}, suite_stwist},
        {"kloosterman-avg", {{"bmax", 20.0}, {"rmax", 8.0}, {"vectors", 50.0}, {"mmax", 16.0}}, suite_kloosterman_avg},
        {"sieve-classical", {{"trials", 1000.0}, {"Bmax", 30.0}, {"Mmax", 2000.0}}, suite_sieve_classical},
        {"sieve-hybrid",
         {{"seeds", 5.0}, {"trials", 50.0}, {"B", 10.0}, {"M", 1000.0}, {"T", 4.0}, {"N", 1e6}, {"phase", "sqrt"},
          {"scale", 1.0}, {"C", 30.0}},
         suite_sieve_hybrid},
        {"sieve-gallagher", {{"trials", 500.0}, {"Qmax", 20.0}, {"Nmax", 1000.0}, {"Umax", 10.0}}, suite_sieve_gallagher},
        {"airy", {{"xmin", 10.0}, {"xmax", 100.0}, {"step", 0.5}, {"windows", 10.0}, {"tol", 0.01}}, suite_airy},
        {"stationary-phase",
         {{"alpha_min", 200.0}, {"alpha_max", 6400.0}, {"alpha_check", 2000.0}, {"beta_ratio", 1.0}, {"tol", 5e-3}},
         suite_stationary_phase},
        {"fresnel", {{"z", "0,1,10"}, {"tol", 1e-4}}, suite_fresnel},
        {"y-transform", {{"Z", "10,20,40"}, {"v_frac", 0.3}, {"U", 1.0}}, suite_y_transform},
        {"ghat-log", {{"U", "50,100,200,400"}, {"n", 1e6}, {"offset", 0.5}}, suite_ghat_log},
        {"voronoi-phi",
         {{"N", 1e4}, {"U", 1.0}, {"A", 1.0}, {"B", 5.0}, {"v", 1.0}, {"y0", 0.0}, {"b", 1.0}, {"grid", 81.0}, {"far", 100.0}},
         suite_voronoi_phi},
        {"hcheck",
         {{"T", 10.0}, {"delta", 4.0}, {"xmin", 150.0}, {"xmax", 400.0}, {"points", 20.0}, {"cos_min", 0.3}, {"tol", 0.1}},
         suite_hcheck},
        {"afe-v",
         {{"tj", 50.0}, {"tj_fine", 200.0}, {"t", 0.0}, {"umin", 0.1}, {"umax", 10.0}, {"points", 11.0}, {"small_u", 1e-6}},
         suite_afe_v},
        {"conductor", {{"T", 100.0}, {"exponent", 0.9}, {"grid", 41.0}, {"box", "narrow"}}, suite_conductor},
        {"coeffs", {{"nmax", 10000.0}, {"x_lo", 1000.0}, {"x_hi", 10000.0}}, suite_coeffs},
    };
    return defs;
}

const SuiteDef& lookup(const std::string& name) {
    for (const auto& d : registry()) {
        if (d.name == name) {
            return d;
        }
    }
    throw ConfigError("unknown suite '" + name + "'");
}

}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& d : registry()) {
            n.push_back(d.name);
        }
        return n;
    }();
    return names;
}

std::vector<std::pair<std::string, Value>> suite_defaults(const std::string& suite) {
    return lookup(suite).defaults;
}

report::Report run_suite(const ExperimentConfig& cfg) {
    const SuiteDef& def = lookup(cfg.suite);
    const Params p(def.defaults, cfg.overrides);
    Report r;
    r.suite = def.name;
    r.config = p.fields();
    r.config.emplace_back("seed", static_cast<std::int64_t>(cfg.seed));
    Context ctx{p, cfg.seed, cfg.jobs, r};
    def.run(ctx);
    return r;
}

}
