#include "lgrowth/checks.hpp"

#include "lgrowth/actions.hpp"
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
#include <sstream>

namespace lgrowth {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// max that propagates NaN, so a missing value fails its row.
void take_max(double& acc, double v) {
    if (std::isnan(v) || std::isnan(acc)) {
        acc = kNaN;
    } else {
        acc = std::max(acc, v);
    }
}

double series_diff(const PowerSeries& a, const PowerSeries& b) {
    double d = 0.0;
    for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
        d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return d;
}

SuiteResult theorem1() {
    SuiteResult r{"theorem1", {}};

    const Trajectory circle = run(circle_scenario());
    double de = circle.status == Status::Completed ? 0.0 : kNaN;
    double dse = de;
    for (const auto& rec : circle.outputs) {
        take_max(de, std::abs(rec.report.dE_dt - kPi / rec.report.t));
        take_max(dse, std::abs(rec.report.dSE_dt_theorem - kTwoPi / rec.report.t));
    }
    r.rows.push_back({"circle |dE/dt - pi/t|", de, 1e-6});
    r.rows.push_back({"circle |d(S+E)/dt - 2 pi/t|", dse, 1e-6});

    const Trajectory card = run(cardioid_scenario());
    double fd = card.status == Status::Completed ? 0.0 : kNaN;
    double om = fd;
    double pg = fd;
    int fd_points = 0;
    for (const auto& rec : card.outputs) {
        const ActionReport& a = rec.report;
        if (!std::isnan(a.dSE_dt_fd)) {
            take_max(fd, std::abs(a.dSE_dt_fd - a.dSE_dt_theorem));
            ++fd_points;
        }
        take_max(om, std::abs(a.dSE_dt_theorem - a.dSE_dt_omega));
        take_max(pg, rec.pg_residual);
    }
    r.rows.push_back({"cardioid |fd - theorem|", fd_points > 0 ? fd : kNaN, 1e-5});
    r.rows.push_back({"cardioid |theorem - omega route|", om, 1e-10});
    r.rows.push_back({"cardioid max pg_residual", pg, 1e-9});
    return r;
}

SuiteResult corollary1() {
    SuiteResult r{"corollary1", {}};
    const int M = 256;
    double wiring = 0.0;
    for (const MapState& f : test_maps(16)) {
        const CircleSamples fp = sample_map(f, M, 1);
        std::vector<double> nu(static_cast<std::size_t>(M));
        double mean = 0.0;
        for (int j = 0; j < M; ++j) {
            const double g = 1.0 / std::norm(fp[j]);
            nu[static_cast<std::size_t>(j)] = 2.0 * g;
            mean += g;
        }
        mean /= M;
        take_max(wiring, series_diff(lk_rhs(f, VectorFieldS1(nu), mean), pg_rhs(f, M)));
    }
    r.rows.push_back({"max |lk_rhs(2/|f'|^2) - pg_rhs|", wiring, 1e-13});

    const MapState id = MapState::from_coeffs({1.0}, 16);
    const MapState card = test_maps(16)[1];
    const PowerSeries radial = lk_rhs(card, VectorFieldS1::from_function(M, [](double) { return 0.0; }), 1.0);
    r.rows.push_back({"nu = 0, p0 = 1 gives z f'",
                      series_diff(radial, shift_up(derivative(card.series()), 1)), 1e-13});
    const PowerSeries cosdrive =
        lk_rhs(id, VectorFieldS1::from_function(M, [](double th) { return 2.0 * std::cos(th); }), 1.0);
    r.rows.push_back({"nu = 2 cos, p0 = 1, f = z gives z + z^2",
                      series_diff(cosdrive, PowerSeries::monomial(16, 1) + PowerSeries::monomial(16, 2)),
                      1e-13});
    return r;
}

SuiteResult virasoro() {
    SuiteResult r{"virasoro", {}};

    // Generators from the variational formula against the closed forms.
    double gen = 0.0;
    const std::vector<MapState> maps = {test_maps(16)[1], test_maps(16)[2]};
    for (const MapState& f : maps) {
        for (int j = 0; j < 20; ++j) {
            const double rad = 0.1 + 0.8 * j / 19.0;
            const cplx z = std::polar(rad, 2.399963229728653 * j);
            for (int k = -2; k <= 3; ++k) {
                take_max(gen, std::abs(generator_from_variation(f, k, z, 1024) - lk_generator_closed(f, k, z)));
            }
        }
    }
    r.rows.push_back({"variation vs closed L_k, k = -2..3", gen, 1e-7});

    // Generator series against the closed forms for k >= 0.
    double ser = 0.0;
    for (const MapState& f : maps) {
        for (int k = 0; k <= 3; ++k) {
            const PowerSeries v = generator_series(f, k);
            for (int j = 0; j < 5; ++j) {
                const cplx z = std::polar(0.2 + 0.1 * j, 1.3 * j);
                take_max(ser, std::abs(evaluate(v, z) - lk_generator_closed(f, k, z)));
            }
        }
    }
    r.rows.push_back({"generator series vs closed L_k, k = 0..3", ser, 1e-12});

    // Trigonometric commutator table.
    const int M = 64;
    double table = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (int m = 1; m <= 5; ++m) {
            auto cosf = [&](int q) { return VectorFieldS1::from_function(M, [q](double t) { return std::cos(q * t); }); };
            auto sinf = [&](int q) { return VectorFieldS1::from_function(M, [q](double t) { return std::sin(q * t); }); };
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
    r.rows.push_back({"trigonometric commutator table, n, m <= 5", table, 1e-10});

    // Gelfand-Fuks cocycle.
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto random_field = [&]() {
        std::vector<double> a(6), b(6);
        for (int k = 0; k < 6; ++k) {
            a[static_cast<std::size_t>(k)] = U(rng);
            b[static_cast<std::size_t>(k)] = U(rng);
        }
        return VectorFieldS1::from_function(M, [a, b](double t) {
            double acc = a[0];
            for (int k = 1; k < 6; ++k) {
                acc += a[static_cast<std::size_t>(k)] * std::cos(k * t) + b[static_cast<std::size_t>(k)] * std::sin(k * t);
            }
            return acc;
        });
    };
    double anti = 0.0;
    double jac = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const VectorFieldS1 x = random_field();
        const VectorFieldS1 y = random_field();
        const VectorFieldS1 z = random_field();
        take_max(anti, std::abs(gelfand_fuks(x, y) + gelfand_fuks(y, x)));
        const double c = 1.0 + trial;
        take_max(jac, jacobi_residual({x, U(rng), c}, {y, U(rng), c}, {z, U(rng), c}));
    }
    r.rows.push_back({"Gelfand-Fuks antisymmetry", anti, 1e-12});
    const double w22 = gelfand_fuks(VectorFieldS1::from_function(M, [](double t) { return std::cos(2 * t); }),
                                    VectorFieldS1::from_function(M, [](double t) { return std::sin(2 * t); }));
    r.rows.push_back({"|omega(cos 2, sin 2) + 3/2|", std::abs(w22 + 1.5), 1e-10});
    r.rows.push_back({"Virasoro Jacobi identity", jac, 1e-9});

    // Coordinate action: closed form vs the printed index convention.
    const std::vector<cplx> c = {0.3, 0.1, -0.05, 0.02};
    double printed = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const auto a = coord_vector_field(k, c);
        const auto b = printed_coord_vector_field(k, c);
        for (std::size_t i = 0; i < a.size(); ++i) {
            take_max(printed, std::abs(a[i] - b[i]));
        }
    }
    r.rows.push_back({"printed vs closed coordinate action (report only)", printed, 1e-12, true});
    return r;
}

SuiteResult neretin() {
    SuiteResult r{"neretin", {}};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-0.2, 0.2);
    double p23 = 0.0;
    double rec = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> cs = {1.0};
        for (int k = 2; k <= 10; ++k) {
            cs.emplace_back(U(rng), U(rng));
        }
        const MapState f = MapState::from_coeffs(cs, 10);
        const double charge = 1.0 + 0.5 * (trial % 5);
        const NeretinValues P = neretin_from_generatrix(f, charge, 3);
        const cplx c2 = cs[1], c3 = cs[2], c4 = cs[3];
        take_max(p23, std::abs(P.P(2) - charge / 2.0 * (c3 - c2 * c2)));
        take_max(p23, std::abs(P.P(3) - 2.0 * charge * (c4 - 2.0 * c2 * c3 + c2 * c2 * c2)));
        if (trial < 10) {
            for (int m = 1; m <= 3; ++m) {
                for (int n = 2; n <= 6; ++n) {
                    take_max(rec, neretin_recurrence_residual(f, charge, m, n));
                }
            }
        }
    }
    r.rows.push_back({"P_2, P_3 closed forms (50 tuples)", p23, 1e-12});
    r.rows.push_back({"recurrence residual, m <= 3, n <= 6", rec, 1e-5});
    return r;
}

SuiteResult proof_identity_suite() {
    SuiteResult r{"proof-identity", {}};
    double pid = 0.0;
    double act = 0.0;
    for (const MapState& f : test_maps(16)) {
        take_max(pid, proof_identity_residual(f, 256));
        take_max(act, std::abs(log_action(f) - log_action_quadrature(f, 1e-3)));
    }
    r.rows.push_back({"integration-by-parts identity", pid, 1e-8});
    r.rows.push_back({"log_action series vs annulus quadrature", act, 1e-4});
    const double closed = -kPi * std::log(0.64);
    r.rows.push_back({"S[z + 0.3 z^2] + pi log 0.64", std::abs(log_action(test_maps(16)[1]) - closed), 1e-6});
    return r;
}

SuiteResult conjecture_i() {
    SuiteResult r{"conjecture-i", {}};
    Scenario s;
    s.initial = MapState::from_coeffs({1.0, 0.2}, 32, 0.0);
    s.dt = 1e-4;
    s.t_end = 0.2;
    s.output_stride = 50;
    s.driver = Driver::custom([](double th, double) { return 1.0 + 0.5 * std::cos(2.0 * th); },
                              [](double) { return 1.0; });
    const Trajectory traj = run(s);
    const Summary sum = summarize(traj, s);
    const auto it = sum.max_residuals.find("conjecture_i");
    r.rows.push_back({"|fd d(S+E)/dt - (2 int kappa^2 + Re(Omega, nu))|, nu = 1 + cos(2)/2",
                      it == sum.max_residuals.end() ? kNaN : it->second, 1e-5, true});
    return r;
}

using SuiteFn = std::function<SuiteResult()>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"theorem1", theorem1},         {"corollary1", corollary1},
        {"virasoro", virasoro},         {"neretin", neretin},
        {"proof-identity", proof_identity_suite}, {"conjecture-i", conjecture_i},
    };
    return suites;
}

} // namespace

bool SuiteResult::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& c) { return c.report_only || c.passed(); });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

std::vector<SuiteResult> run_check(const std::string& suite) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : registry()) {
        if (suite == "all" || suite == name) {
            const auto start = std::chrono::steady_clock::now();
            SuiteResult res;
            try {
                res = fn();
            } catch (const Error& e) {
                res = {name, {{std::string("raised ") + e.what(), kNaN, 0.0}}};
            }
            res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            out.push_back(std::move(res));
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::Config, "unknown check suite '" + suite + "'");
    }
    return out;
}

std::string format_table(const SuiteResult& r) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "== %s (%.2f s)\n", r.suite.c_str(), r.seconds);
    os << line;
    for (const CheckRow& c : r.rows) {
        const char* verdict = c.report_only ? "REPORT" : (c.passed() ? "PASS" : "FAIL");
        std::snprintf(line, sizeof line, "  %-6s %-64s %12.4e  (tol %.1e)\n", verdict, c.name.c_str(), c.value,
                      c.tolerance);
        os << line;
    }
    return os.str();
}

Scenario circle_scenario() {
    Scenario s;
    s.initial = MapState::from_coeffs({1.0}, 16, 0.5);
    s.M = 128;
    s.dt = 1e-3;
    s.t_end = 1.0;
    s.output_stride = 10;
    return s;
}

Scenario cardioid_scenario() {
    Scenario s;
    s.initial = MapState::from_coeffs({1.0, 0.3}, 32, 0.0);
    s.dt = 1e-4;
    s.t_end = 0.4;
    s.output_stride = 50;
    return s;
}

std::vector<MapState> test_maps(int degree) {
    return {MapState::from_coeffs({1.0}, degree), MapState::from_coeffs({1.0, 0.3}, degree),
            MapState::from_coeffs({1.0, 0.2, 0.05}, degree)};
}

} // namespace lgrowth
