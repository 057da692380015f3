// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "lgrowth/actions.hpp"
#include "lgrowth/checks.hpp"
#include "lgrowth/dynamics.hpp"
#include "lgrowth/error.hpp"
#include "lgrowth/geometry.hpp"
#include "lgrowth/report_io.hpp"
#include "lgrowth/virasoro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace lgrowth;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Measure {
    std::string what;
    double value;
    double tolerance;
    bool ok() const { return value <= tolerance; }
};

struct Outcome {
    std::vector<Measure> measures;
};

void take_max(double& acc, double v) {
    acc = (std::isnan(v) || std::isnan(acc)) ? kNaN : std::max(acc, v);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double series_diff(const PowerSeries& a, const PowerSeries& b) {
    double d = 0.0;
    for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
        d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return d;
}

Outcome circular_law() {
    const auto start = std::chrono::steady_clock::now();
    const Trajectory tr = run(circle_scenario());
    const double secs = seconds_since(start);
    double de = tr.status == Status::Completed ? 0.0 : kNaN;
    double dse = de;
    for (const auto& rec : tr.outputs) {
        take_max(de, std::abs(rec.report.dE_dt - kPi / rec.report.t));
        take_max(dse, std::abs(rec.report.dSE_dt_theorem - kTwoPi / rec.report.t));
    }
    return {{{"max |dE/dt - pi/t|", de, 1e-6}, {"max |d(S+E)/dt - 2pi/t|", dse, 1e-6}, {"runtime s", secs, 5.0}}};
}

Trajectory& cardioid() {
    static Trajectory tr = run(cardioid_scenario());
    return tr;
}

Outcome three_way() {
    const auto start = std::chrono::steady_clock::now();
    const Trajectory& tr = cardioid();
    const double secs = seconds_since(start);
    double fd = tr.status == Status::Completed ? 0.0 : kNaN;
    double om = fd;
    int n_fd = 0;
    for (const auto& rec : tr.outputs) {
        if (!std::isnan(rec.report.dSE_dt_fd)) {
            take_max(fd, std::abs(rec.report.dSE_dt_fd - rec.report.dSE_dt_theorem));
            ++n_fd;
        }
        take_max(om, std::abs(rec.report.dSE_dt_theorem - rec.report.dSE_dt_omega));
    }
    return {{{"max |fd - theorem|", n_fd > 0 ? fd : kNaN, 1e-5},
             {"max |theorem - (2 int kappa^2 + Re(Omega, nu))|", om, 1e-10},
             {"runtime s", secs, 10.0}}};
}

Outcome exact_quadratic_oracle() {
    Scenario s;
    s.initial = MapState::from_coeffs({1.0, 0.1}, 32);
    s.dt = 1e-3;
    s.t_end = 0.3;
    s.output_stride = 300;
    const Trajectory tr = run(s);
    double err = tr.status == Status::Completed ? 0.0 : kNaN;
    take_max(err, series_diff(tr.states.back().series(), exact_quadratic(1.0, 0.1, 0.3, 32).series()));

    auto circle_error = [](double dt) {
        Scenario c = circle_scenario();
        c.dt = dt;
        c.output_stride = 1000;
        return std::abs(run(c).states.back().alpha() - std::sqrt(2.0));
    };
    const double ratio = circle_error(0.1) / circle_error(0.05);
    return {{{"max coefficient error at t = 0.3", err, 1e-8}, {"|RK4 halving ratio - 16|", std::abs(ratio - 16.0), 2.0}}};
}

Outcome conservation() {
    Outcome o;
    const Summary card = summarize(cardioid(), cardioid_scenario());
    const bool ok = card.status == Status::Completed;
    for (const char* key : {"area_slope", "M1", "M2"}) {
        const auto it = card.drifts.find(key);
        o.measures.push_back({std::string("cardioid ") + key + " relative drift",
                              ok && it != card.drifts.end() ? it->second : kNaN, 1e-6});
    }
    Scenario q;
    q.initial = MapState::from_coeffs({1.0, 0.2, 0.05}, 32);
    q.dt = 1e-3;
    q.t_end = 0.3;
    q.output_stride = 30;
    const Summary cubic = summarize(run(q), q);
    for (const char* key : {"area_slope", "M1", "M2"}) {
        const auto it = cubic.drifts.find(key);
        o.measures.push_back({std::string("z + 0.2 z^2 + 0.05 z^3 ") + key + " relative drift",
                              cubic.status == Status::Completed && it != cubic.drifts.end() ? it->second : kNaN, 1e-6});
    }
    return o;
}

Outcome action_identity() {
    double d = 0.0;
    for (const MapState& f : test_maps(16)) {
        take_max(d, std::abs(log_action(f) - log_action_quadrature(f, 1e-3)));
    }
    const double closed = std::abs(log_action(test_maps(32)[1]) + kPi * std::log(0.64));
    return {{{"max |series - quadrature(1e-3)|", d, 1e-4}, {"|S[z + 0.3 z^2] + pi log 0.64|", closed, 1e-6}}};
}

Outcome proof_identity_check() {
    double d = 0.0;
    for (const MapState& f : test_maps(16)) {
        take_max(d, proof_identity_residual(f, 256));
    }
    return {{{"max proof identity residual", d, 1e-8}}};
}

Outcome corollary_wiring() {
    const int M = 256;
    double d = 0.0;
    for (const MapState& f : test_maps(16)) {
        const CircleSamples fp = sample_map(f, M, 1);
        std::vector<double> nu(static_cast<std::size_t>(M));
        double mean = 0.0;
        for (int j = 0; j < M; ++j) {
            nu[static_cast<std::size_t>(j)] = 2.0 / std::norm(fp[j]);
            mean += 1.0 / std::norm(fp[j]) / M;
        }
        take_max(d, series_diff(lk_rhs(f, VectorFieldS1(nu), mean), pg_rhs(f, M)));
    }
    return {{{"max |lk_rhs - pg_rhs| coefficient", d, 1e-13}}};
}

Outcome generators() {
    const int M = 1024;
    const cplx I(0.0, 1.0);
    double lit = 0.0;
    double norm = 0.0;
    for (const MapState& f : {test_maps(16)[1], test_maps(16)[2]}) {
        for (int j = 0; j < 20; ++j) {
            const cplx z = std::polar(0.1 + 0.8 * j / 19.0, 2.399963229728653 * j);
            for (int k = -2; k <= 3; ++k) {
                CircleSamples mode(M);
                for (int i = 0; i < M; ++i) {
                    mode[i] = -I * std::polar(1.0, k * mode.theta(i));
                }
                const cplx closed = lk_generator_closed(f, k, z);
                take_max(lit, std::abs(gs_variation(f, mode, z) - I * closed));
                take_max(norm, std::abs(generator_from_variation(f, k, z, M) - closed));
            }
        }
    }
    return {{{"max |gs_variation(-i e^{ik theta}) - i L_k closed|", lit, 1e-7},
             {"max |normalized variation - L_k closed|", norm, 1e-7}}};
}

Outcome algebra() {
    const int M = 64;
    auto cosf = [M](int q) { return VectorFieldS1::from_function(M, [q](double t) { return std::cos(q * t); }); };
    auto sinf = [M](int q) { return VectorFieldS1::from_function(M, [q](double t) { return std::sin(q * t); }); };
    double table = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (int m = 1; m <= 5; ++m) {
            const VectorFieldS1 cc = witt_bracket(cosf(n), cosf(m));
            const VectorFieldS1 ss = witt_bracket(sinf(n), sinf(m));
            const VectorFieldS1 sc = witt_bracket(sinf(n), cosf(m));
            for (int j = 0; j < M; ++j) {
                const double t = kTwoPi * j / M;
                const double p = (n + m) * t;
                const double q = (n - m) * t;
                take_max(table, std::abs(cc[j] - ((n - m) / 2.0 * std::sin(p) + (n + m) / 2.0 * std::sin(q))));
                take_max(table, std::abs(ss[j] - ((m - n) / 2.0 * std::sin(p) + (n + m) / 2.0 * std::sin(q))));
                take_max(table, std::abs(sc[j] - ((m - n) / 2.0 * std::cos(p) - (n + m) / 2.0 * std::cos(q))));
            }
        }
    }

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto random_field = [&]() {
        std::vector<double> a(7), b(7);
        for (std::size_t k = 0; k < 7; ++k) {
            a[k] = U(rng);
            b[k] = U(rng);
        }
        return VectorFieldS1::from_function(M, [a, b](double t) {
            double acc = a[0];
            for (std::size_t k = 1; k < 7; ++k) {
                acc += a[k] * std::cos(static_cast<double>(k) * t) + b[k] * std::sin(static_cast<double>(k) * t);
            }
            return acc;
        });
    };
    double anti = 0.0;
    double jac = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const VectorFieldS1 x = random_field();
        const VectorFieldS1 y = random_field();
        const VectorFieldS1 z = random_field();
        take_max(anti, std::abs(gelfand_fuks(x, y) + gelfand_fuks(y, x)));
        const double c = 0.5 + trial;
        take_max(jac, jacobi_residual({x, U(rng), c}, {y, U(rng), c}, {z, U(rng), c}));
    }
    const double w = std::abs(gelfand_fuks(cosf(2), sinf(2)) + 1.5);
    return {{{"trig commutator table, n, m <= 5", table, 1e-10},
             {"Gelfand-Fuks antisymmetry", anti, 1e-12},
             {"|omega(cos 2, sin 2) + 3/2|", w, 1e-10},
             {"Jacobi residual", jac, 1e-9}}};
}

Outcome neretin() {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> U(-0.25, 0.25);
    double p23 = 0.0;
    double rec = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> cs = {1.0};
        for (int k = 2; k <= 10; ++k) {
            cs.emplace_back(U(rng), U(rng));
        }
        const MapState f = MapState::from_coeffs(cs, 10);
        const double c = 0.5 + 0.25 * (trial % 8);
        const NeretinValues P = neretin_from_generatrix(f, c, 3);
        const cplx c2 = cs[1], c3 = cs[2], c4 = cs[3];
        take_max(p23, std::abs(P.P(2) - c / 2.0 * (c3 - c2 * c2)));
        take_max(p23, std::abs(P.P(3) - 2.0 * c * (c4 - 2.0 * c2 * c3 + c2 * c2 * c2)));
        if (trial % 5 == 0) {
            for (int m = 1; m <= 3; ++m) {
                for (int n = 2; n <= 6; ++n) {
                    take_max(rec, neretin_recurrence_residual(f, c, m, n));
                }
            }
        }
    }
    return {{{"P_2, P_3 at 50 tuples", p23, 1e-12}, {"recurrence, m <= 3, n <= 6", rec, 1e-5}}};
}

Outcome full_suite() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<SuiteResult> all = run_check("all");
    const double secs = seconds_since(start);
    const bool ok = std::all_of(all.begin(), all.end(), [](const SuiteResult& r) { return r.passed(); });
    return {{{"failed suites", ok ? 0.0 : 1.0, 0.0}, {"runtime s", secs, 60.0}}};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"circular law", circular_law},
        {"three-way rate agreement", three_way},
        {"exact quadratic oracle", exact_quadratic_oracle},
        {"conservation", conservation},
        {"action identity", action_identity},
        {"proof identity", proof_identity_check},
        {"LK wiring", corollary_wiring},
        {"Virasoro generators", generators},
        {"algebra", algebra},
        {"Neretin", neretin},
        {"full check suite", full_suite},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o;
        try {
            o = fn();
        } catch (const Error& e) {
            o.measures.push_back({std::string("raised: ") + e.what(), kNaN, 0.0});
        }
        const bool ok = !o.measures.empty() &&
                        std::all_of(o.measures.begin(), o.measures.end(), [](const Measure& m) { return m.ok(); });
        failures += ok ? 0 : 1;
        std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", index, name.c_str());
        for (const Measure& m : o.measures) {
            std::printf("         %-58s %12.4e  (tol %.1e)\n", m.what.c_str(), m.value, m.tolerance);
        }
    }
    std::printf("%d of %zu criteria passed\n", index - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
