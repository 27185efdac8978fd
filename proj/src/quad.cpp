#include "fraclap/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <thread>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/rng.hpp"

namespace fraclap {

namespace {

// 15-point Kronrod extension of 7-point Gauss (classical QUADPACK pair).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double fv[15];
    const double fc = f(c);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    resasc *= std::abs(h);
    double resabs = 0;
    for (int j = 0; j < 8; ++j)
        resabs += kWgk[j] * (j == 7 ? std::abs(fv[7])
                                    : std::abs(fv[j]) + std::abs(fv[14 - j]));
    resabs *= std::abs(h);

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    p.err = err;
    return p;
}

} // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_subdivisions,
                                  std::span<const double> breakpoints, const char* zone_label) {
    IntegralResult out;
    if (a == b) return out;

    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> heap;
    double total = 0, err = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1]);
        total += p.value;
        err += p.err;
        heap.push(p);
    }

    int panels = static_cast<int>(heap.size());
    const double eps = std::numeric_limits<double>::epsilon();
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (panels >= max_subdivisions)
            throw ConvergenceFailure(zone_label, err,
                                     std::string("integrate_adaptive: subdivision budget "
                                                 "exhausted in zone ") +
                                         zone_label);
        Panel worst = heap.top();
        // Narrower than machine spacing: the estimate cannot improve.
        if (worst.b - worst.a < 8 * eps * (std::abs(worst.a) + std::abs(worst.b) + 1e-300))
            break;
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Panel l = gk15(f, worst.a, m);
        Panel r = gk15(f, m, worst.b);
        total += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    out.value = total;
    out.err = err;
    return out;
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] via Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

SphereRule build_sphere_rule(int dim, int order) {
    SphereRule rule;
    if (dim < 2) throw DomainError("sphere_rule: dim must be >= 2");
    int n = std::max(4, order);
    if (n % 2) ++n;
    if (dim == 2) {
        rule.dir.reserve(n);
        rule.w.assign(n, 2.0 * std::numbers::pi / n);
        for (int j = 0; j < n; ++j) {
            const double th = 2.0 * std::numbers::pi * (j + 0.5) / n;
            rule.dir.push_back(Point{std::cos(th), std::sin(th)});
        }
        return rule;
    }
    if (dim == 3) {
        // Gauss-Legendre in cos(theta) is exact for the S^2 measure.
        int nt = std::max(4, n / 2);
        if (nt % 2) ++nt;
        std::vector<double> xt, wt;
        gauss_legendre(nt, xt, wt);
        for (int i = 0; i < nt; ++i) {
            const double ct = xt[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int j = 0; j < n; ++j) {
                const double ph = 2.0 * std::numbers::pi * (j + 0.5) / n;
                rule.dir.push_back(Point{st * std::cos(ph), st * std::sin(ph), ct});
                rule.w.push_back(wt[i] * 2.0 * std::numbers::pi / n);
            }
        }
        return rule;
    }
    // dim >= 4: polar angle against sin^{dim-2}, recursive sub-sphere.
    int nt = std::max(4, n / 2);
    if (nt % 2) ++nt;
    std::vector<double> xt, wt;
    gauss_legendre(nt, xt, wt);
    const SphereRule& sub = sphere_rule(dim - 1, order);
    for (int i = 0; i < nt; ++i) {
        const double th = 0.5 * std::numbers::pi * (xt[i] + 1.0);
        const double wth = 0.5 * std::numbers::pi * wt[i] *
                           std::pow(std::sin(th), static_cast<double>(dim - 2));
        for (size_t k = 0; k < sub.dir.size(); ++k) {
            Point d(dim);
            d[dim - 1] = std::cos(th);
            for (int c = 0; c < dim - 1; ++c) d[c] = std::sin(th) * sub.dir[k][c];
            rule.dir.push_back(d);
            rule.w.push_back(wth * sub.w[k]);
        }
    }
    return rule;
}

} // namespace

const SphereRule& sphere_rule(int dim, int order) {
    static std::map<std::pair<int, int>, SphereRule> cache;
    static std::recursive_mutex mu; // rule construction recurses on dim
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto key = std::make_pair(dim, order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_sphere_rule(dim, order)).first;
    return it->second;
}

RadialIntegralResult singular_radial_integral(const std::function<double(double, const Point&)>& F,
                                              int dim, const QuadratureSpec& spec,
                                              const RadialZones& zones) {
    if (!(spec.inner_cut > 0 && spec.inner_cut < spec.outer_cut))
        throw DomainError("singular_radial_integral: need 0 < inner_cut < outer_cut");
    const SphereRule& rule = sphere_rule(dim, spec.angular_rule);
    auto shell_avg = [&](double r) {
        double s = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j) s += rule.w[j] * F(r, rule.dir[j]);
        return s * std::pow(r, dim - 1);
    };

    RadialIntegralResult out;
    out.zones.inner = zones.taylor_value;
    out.zones.inner_err = zones.taylor_err;

    const double rel = 0.5 * spec.rel_tol;
    const double abs = 0.25 * spec.abs_tol;

    if (zones.inner_skip < spec.inner_cut) {
        IntegralResult inner = integrate_adaptive(shell_avg, zones.inner_skip, spec.inner_cut, rel,
                                                  abs, spec.max_subdivisions, {}, "inner");
        out.zones.inner += inner.value;
        out.zones.inner_err += inner.err;
    }

    IntegralResult mid =
        integrate_adaptive(shell_avg, spec.inner_cut, spec.outer_cut, rel, abs,
                           spec.max_subdivisions, zones.breakpoints, "middle");
    out.zones.middle = mid.value;
    out.zones.middle_err = mid.err;

    switch (zones.tail) {
        case TailRule::none:
            break;
        case TailRule::closed_form:
            out.zones.tail = zones.tail_value;
            out.zones.tail_err = zones.tail_err;
            break;
        case TailRule::algebraic: {
            const double R = spec.outer_cut;
            auto sub = [&](double t) { return shell_avg(R / t) * R / (t * t); };
            IntegralResult tail =
                integrate_adaptive(sub, 0.0, 1.0, rel, abs, spec.max_subdivisions, {}, "tail");
            out.zones.tail = tail.value;
            out.zones.tail_err = tail.err;
            break;
        }
    }

    out.value = out.zones.inner + out.zones.middle + out.zones.tail;
    out.err = out.zones.inner_err + out.zones.middle_err + out.zones.tail_err;
    return out;
}

IntegralResult ball_integral(const std::function<double(const Point&)>& phi, double R, int dim,
                             const QuadratureSpec& spec,
                             std::span<const double> radial_breakpoints) {
    const SphereRule& rule = sphere_rule(dim, spec.angular_rule);
    auto shell_avg = [&](double r) {
        double s = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j) s += rule.w[j] * phi(r * rule.dir[j]);
        return s * std::pow(r, dim - 1);
    };
    return integrate_adaptive(shell_avg, 0.0, R, spec.rel_tol, spec.abs_tol,
                              spec.max_subdivisions, radial_breakpoints, "ball");
}

double ball_exit_radius(const Point& x, const Point& dir, double R) {
    const double b = x.dot(dir);
    return -b + std::sqrt(std::max(0.0, R * R - x.norm2() + b * b));
}

double exterior_shell_mass(const Point& x, double R,
                           const std::function<double(double)>& radial_tail, int angular_order) {
    const SphereRule& rule = sphere_rule(x.dim(), angular_order);
    double sum = 0;
    for (size_t j = 0; j < rule.dir.size(); ++j)
        sum += rule.w[j] * radial_tail(ball_exit_radius(x, rule.dir[j], R));
    return sum;
}

namespace {

struct BatchMoments {
    double sum = 0;
    double sumsq = 0;
    long n = 0;
};

} // namespace

PairIntegralResult pair_integral(const std::function<double(const Point&, const Point&)>& F,
                                 double support_radius, int dim, double diag_exponent,
                                 const QuadratureSpec& spec) {
    if (diag_exponent >= dim)
        throw SingularityError("pair_integral: diagonal exponent must be < dim for an "
                               "integrable (unregularized) pair integrand");
    if (spec.mc_samples < 1000)
        throw DomainError("pair_integral: mc_samples must be >= 1000");

    const double R = support_radius;
    const double vol = unit_ball_volume(dim) * std::pow(R, dim);
    const double zpow = dim - diag_exponent; // radial CDF exponent of the offset
    const double znorm = (unit_sphere_area(dim) / zpow) * std::pow(2.0 * R, zpow);
    // p(x,y) = (1/vol) * |x-y|^{-diag_exponent} / znorm on the sampled set.

    constexpr long kBatch = 8192;
    constexpr int kStrata = 16;
    const long n_batches = (spec.mc_samples + kBatch - 1) / kBatch;

    auto run_batch = [&](long b) {
        BatchMoments m;
        std::mt19937_64 g = make_stream(spec.rng_seed, static_cast<std::uint64_t>(b));
        const long n = std::min(kBatch, spec.mc_samples - b * kBatch);
        for (long i = 0; i < n; ++i) {
            const Point x = sample_ball(dim, R, g);
            const double u_raw = uniform01(g);
            const double u = (static_cast<double>(i % kStrata) + u_raw) / kStrata;
            const double r = 2.0 * R * std::pow(u, 1.0 / zpow);
            const Point w = sample_unit_sphere(dim, g);
            const Point y = axpy(x, r, w);
            double fx = 0;
            if (y.norm2() <= R * R) {
                const double p = std::pow(r, -diag_exponent) / (vol * znorm);
                fx = F(x, y) / p;
            }
            m.sum += fx;
            m.sumsq += fx * fx;
        }
        m.n = n;
        return m;
    };

    std::vector<BatchMoments> results(static_cast<size_t>(n_batches));
    int threads = spec.n_threads > 0 ? spec.n_threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, 16));
    if (threads == 1 || n_batches == 1) {
        for (long b = 0; b < n_batches; ++b) results[static_cast<size_t>(b)] = run_batch(b);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<long> next{0};
        for (int t = 0; t < threads; ++t) {
            futs.push_back(std::async(std::launch::async, [&]() {
                for (;;) {
                    const long b = next.fetch_add(1);
                    if (b >= n_batches) return;
                    results[static_cast<size_t>(b)] = run_batch(b);
                }
            }));
        }
        for (auto& f : futs) f.get();
    }

    double sum = 0, sumsq = 0;
    long n = 0;
    for (const BatchMoments& m : results) {
        sum += m.sum;
        sumsq += m.sumsq;
        n += m.n;
    }
    PairIntegralResult out;
    out.samples = n;
    out.value = sum / n;
    const double var = std::max(0.0, (sumsq - n * out.value * out.value) / (n - 1.0));
    out.stderr_ = std::sqrt(var / n);
    if (out.stderr_ > std::max(spec.mc_abs_tol, spec.mc_rel_tol * std::abs(out.value)))
        throw ConvergenceFailure("mc-pair", out.stderr_,
                                 "pair_integral: stderr above tolerance after mc_samples");
    return out;
}

} // namespace fraclap
