#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/point.hpp"
#include "fraclap/quad.hpp"
#include "fraclap/rng.hpp"

using namespace fraclap;

namespace {

constexpr double kPi = std::numbers::pi;

// int_R^inf r^{-1-2s} * r^{N-1} * dsigma integrated over directions:
// area * R^{-2s} / (2s).
double kernel_tail_exact(int N, double s, double R) {
    return unit_sphere_area(N) * std::pow(R, -2.0 * s) / (2.0 * s);
}

RadialIntegralResult kernel_tail_numeric(int N, double s, double R, const QuadratureSpec& base) {
    QuadratureSpec spec = base;
    spec.inner_cut = R;
    spec.outer_cut = std::max(4.0 * R, base.outer_cut);
    RadialZones zones;
    zones.inner_skip = R;
    const double kexp = -(N + 2.0 * s);
    return singular_radial_integral(
        [kexp](double r, const Point&) { return std::pow(r, kexp); }, N, spec, zones);
}

} // namespace

TEST_CASE("zero integrand integrates to exactly zero") {
    QuadratureSpec spec;
    auto res = singular_radial_integral([](double, const Point&) { return 0.0; }, 2, spec, {});
    CHECK(res.value == 0.0);
    CHECK(res.err <= 1e-12);
}

TEST_CASE("closed-form kernel tail: N=2, s=1/2, R=1 gives 2 pi") {
    QuadratureSpec spec;
    auto res = kernel_tail_numeric(2, 0.5, 1.0, spec);
    CHECK(res.value == doctest::Approx(2.0 * kPi).epsilon(1e-9));
    CHECK(std::abs(res.value - 2.0 * kPi) <= 3.0 * res.err + 1e-12);
}

TEST_CASE("self-normalized Gaussian integrates to one, N=2 and N=3") {
    QuadratureSpec spec;
    for (int N : {2, 3}) {
        auto res = singular_radial_integral(
            [](double r, const Point&) { return std::exp(-kPi * r * r); }, N, spec, {});
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("engine is linear within combined error estimates") {
    QuadratureSpec spec;
    auto f = [](double r, const Point& w) { return std::exp(-kPi * r * r) * (1.0 + 0.3 * w[0]); };
    auto g = [](double r, const Point&) { return 1.0 / (1.0 + r * r * r * r); };
    auto fg = [&](double r, const Point& w) { return 2.0 * f(r, w) + 3.0 * g(r, w); };
    auto rf = singular_radial_integral(f, 2, spec, {});
    auto rg = singular_radial_integral(g, 2, spec, {});
    auto rfg = singular_radial_integral(fg, 2, spec, {});
    CHECK(std::abs(rfg.value - 2.0 * rf.value - 3.0 * rg.value) <=
          rfg.err + 2.0 * rf.err + 3.0 * rg.err + 1e-12);
}

TEST_CASE("error honesty on the closed-form tail across random configurations") {
    std::mt19937_64 g = make_stream(2024, 0);
    int ok = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const int N = uniform01(g) < 0.5 ? 2 : 3;
        const double s = 0.15 + 0.7 * uniform01(g);
        const double R = 0.5 + 1.5 * uniform01(g);
        QuadratureSpec spec;
        spec.rel_tol = std::pow(10.0, -4.0 - 4.0 * uniform01(g));
        spec.angular_rule = 16;
        auto res = kernel_tail_numeric(N, s, R, spec);
        if (std::abs(res.value - kernel_tail_exact(N, s, R)) <= 3.0 * res.err + 1e-14) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("adaptive integrator reports ConvergenceFailure when starved") {
    QuadratureSpec spec;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::pow(std::abs(x), -0.9); }, 0.0,
                                       1.0, 1e-12, 1e-14, 8, {}, "middle"),
                    ConvergenceFailure);
}

TEST_CASE("sphere rules integrate low-order moments exactly") {
    for (int N : {2, 3, 4}) {
        const SphereRule& rule = sphere_rule(N, N <= 3 ? 16 : 32);
        double total = 0, first = 0, second = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j) {
            total += rule.w[j];
            first += rule.w[j] * rule.dir[j][0];
            second += rule.w[j] * rule.dir[j][0] * rule.dir[j][0];
        }
        // N = 2, 3 rules are exact for these moments; N >= 4 is spectral.
        const double eps = N <= 3 ? 1e-10 : 1e-6;
        CHECK(total == doctest::Approx(unit_sphere_area(N)).epsilon(eps));
        CHECK(std::abs(first) <= 1e-10);
        CHECK(second == doctest::Approx(unit_sphere_area(N) / N).epsilon(eps));
    }
}

TEST_CASE("pair integral of the constant over B1 x B1 is pi^2") {
    QuadratureSpec spec;
    spec.mc_samples = 400000;
    spec.mc_rel_tol = 0.05;
    auto res = pair_integral([](const Point&, const Point&) { return 1.0; }, 1.0, 2, 0.0, spec);
    CHECK(std::abs(res.value - kPi * kPi) <= 3.0 * res.stderr_);
}

TEST_CASE("pair integral of zero is exactly zero") {
    QuadratureSpec spec;
    spec.mc_samples = 10000;
    auto res = pair_integral([](const Point&, const Point&) { return 0.0; }, 1.0, 2, 0.0, spec);
    CHECK(res.value == 0.0);
    CHECK(res.stderr_ == 0.0);
}

TEST_CASE("pair integral matches the tensor-grid oracle on a Gagliardo integrand") {
    // u(x) = x1 on B1, s = 0.25, p = 2, N = 2.
    const double s = 0.25;
    auto F = [s](const Point& x, const Point& y) {
        const double d2 = (x - y).norm2();
        const double du = x[0] - y[0];
        return du * du * std::pow(d2, -0.5 * (2.0 + 2.0 * s));
    };

    // Brute-force midpoint tensor grid, diagonal cells skipped.
    const int n = 96;
    const double h = 2.0 / n;
    std::vector<Point> cells;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Point p{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
            if (p.norm2() <= 1.0) cells.push_back(p);
        }
    }
    double grid = 0;
    for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = 0; b < cells.size(); ++b)
            if (a != b) grid += F(cells[a], cells[b]);
    grid *= h * h * h * h;

    QuadratureSpec spec;
    spec.mc_samples = 2000000;
    spec.mc_rel_tol = 0.05;
    auto mc = pair_integral(F, 1.0, 2, 2.0 + 2.0 * s - 2.0, spec);
    // 3 stderr plus the grid's own diagonal-skip bias margin.
    CHECK(std::abs(mc.value - grid) <= 3.0 * mc.stderr_ + 0.01 * grid);
}

TEST_CASE("pair integral rejects non-integrable diagonal declarations") {
    QuadratureSpec spec;
    CHECK_THROWS_AS(
        pair_integral([](const Point&, const Point&) { return 1.0; }, 1.0, 2, 2.0, spec),
        SingularityError);
}

TEST_CASE("pair integral is seed-deterministic and thread-count invariant") {
    auto F = [](const Point& x, const Point& y) { return std::exp(-(x - y).norm2()); };
    QuadratureSpec spec;
    spec.mc_samples = 100000;
    spec.mc_rel_tol = 0.05;
    spec.n_threads = 1;
    auto a = pair_integral(F, 1.0, 2, 0.0, spec);
    auto b = pair_integral(F, 1.0, 2, 0.0, spec);
    spec.n_threads = 4;
    auto c = pair_integral(F, 1.0, 2, 0.0, spec);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(a.value == c.value);
    CHECK(a.stderr_ == c.stderr_);

    spec.rng_seed += 1;
    auto d = pair_integral(F, 1.0, 2, 0.0, spec);
    CHECK(d.value != a.value);
}

TEST_CASE("ball integral recovers areas and handles breakpoints") {
    QuadratureSpec spec;
    auto area = ball_integral([](const Point&) { return 1.0; }, 1.0, 2, spec, {});
    CHECK(area.value == doctest::Approx(kPi).epsilon(1e-10));
    const double bp[] = {0.5};
    auto kinked = ball_integral([](const Point& x) { return x.norm() < 0.5 ? 1.0 : 0.0; }, 1.0, 2,
                                spec, bp);
    CHECK(kinked.value == doctest::Approx(kPi * 0.25).epsilon(1e-8));
}
