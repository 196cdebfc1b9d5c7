#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qsearch/analog.hpp"
#include "qsearch/digital.hpp"
#include "qsearch/fixed_point.hpp"
#include "qsearch/infogeom.hpp"
#include "qsearch/msta.hpp"
#include "qsearch/random.hpp"
#include "qsearch_cli/app.hpp"
#include "qsearch_cli/manifest.hpp"
#include "qsearch_cli/pool.hpp"
#include "qsearch_cli/sweep.hpp"

namespace qsearch::cli {

namespace {

constexpr double pi = std::numbers::pi;

struct DigitalArgs {
    std::int64_t N = 0;
    std::string k = "auto";
    std::int64_t target = 0;
    bool all_k = false;
    std::int64_t max_sim = std::int64_t{1} << 24;
};

struct AnalogArgs {
    std::string model = "fenner";
    double N = 0;
    double E = 1.0;
    double t_max = -1;
    double dt = -1;
};

struct FixedPointArgs {
    double epsilon = -1;
    std::string u0 = "epsilon";
    std::int64_t N = 0;
    int depth = 3;
    std::int64_t target = 0;
    std::string source = "zero";
};

struct DampedArgs {
    double L0 = 2, gamma = 1, A = 1, B = 0;
    double theta_max = 10, dtheta = 0.01;
};

struct GeodesicArgs {
    std::int64_t N = 4;
    double dtheta = 1e-3;
    double theta_end = pi / 2;
    int every = 10;
    int components = 4;
};

struct InfogeoArgs {
    std::string family = "grover";
    std::int64_t N = 4;
    int points = 1000;
    double xi = 0.5;
};

struct GaVerifyArgs {
    std::string N_list = "4,16,64,256,1024";
    std::int64_t k_max = -1;
    int samples = 1000;
};

struct SweepArgs {
    std::string config;
};

struct Ctx {
    std::string out;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    CLI::Option* workers_opt = nullptr;
    DigitalArgs digital;
    AnalogArgs analog;
    FixedPointArgs fp;
    DampedArgs damped;
    GeodesicArgs geo;
    InfogeoArgs info;
    GaVerifyArgs ga;
    SweepArgs sweep;
};

void build_app(CLI::App& app, Ctx& c) {
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(QSEARCH_VERSION));
    app.add_option("--out", c.out, "output directory (default $QSEARCH_OUT or ./qsearch_out)");
    app.add_option("--seed", c.seed, "seed for the random-unitary paths")->capture_default_str();
    c.workers_opt = app.add_option("--workers", c.workers, "sweep worker threads")->check(CLI::PositiveNumber);

    auto* d = app.add_subcommand("digital", "state-vector Grover search vs the closed form");
    d->add_option("--N", c.digital.N, "search space size")->required()->check(CLI::PositiveNumber);
    d->add_option("--k", c.digital.k, "iteration count or 'auto'")->capture_default_str();
    d->add_option("--target", c.digital.target, "marked index")->capture_default_str();
    d->add_flag("--all-k", c.digital.all_k, "emit every k from 0 up to the chosen k");
    d->add_option("--max-sim", c.digital.max_sim, "largest N simulated amplitude by amplitude")->capture_default_str();

    auto* a = app.add_subcommand("analog", "continuous-time search on the two-dimensional plane");
    a->add_option("--model", c.analog.model, "fenner or farhi-gutmann")->capture_default_str();
    a->add_option("--N", c.analog.N, "search space size")->required();
    a->add_option("--E", c.analog.E, "energy scale (farhi-gutmann)")->capture_default_str();
    a->add_option("--t-max", c.analog.t_max, "end of the time grid");
    a->add_option("--dt", c.analog.dt, "time grid spacing");

    auto* f = app.add_subcommand("fixed-point", "pi/3 fixed-point recursion");
    f->add_option("--epsilon", c.fp.epsilon, "initial failure probability (2x2 rotation U0)");
    f->add_option("--u0", c.fp.u0, "epsilon, walsh-hadamard or haar")->capture_default_str();
    f->add_option("--N", c.fp.N, "dimension for walsh-hadamard/haar U0");
    f->add_option("--depth", c.fp.depth, "recursion depth (<= 5)")->capture_default_str();
    f->add_option("--target", c.fp.target, "marked index")->capture_default_str();
    f->add_option("--source", c.fp.source, "zero or uniform")->capture_default_str();

    auto* dm = app.add_subcommand("damped", "damped geodesic: Bessel closed form and RK4");
    dm->add_option("--L0", c.damped.L0)->capture_default_str();
    dm->add_option("--gamma", c.damped.gamma)->capture_default_str();
    dm->add_option("--A", c.damped.A)->capture_default_str();
    dm->add_option("--B", c.damped.B)->capture_default_str();
    dm->add_option("--theta-max", c.damped.theta_max)->capture_default_str();
    dm->add_option("--dtheta", c.damped.dtheta, "output grid spacing")->capture_default_str();

    auto* g = app.add_subcommand("geodesic", "RK4 geodesic of the Grover family vs closed form");
    g->add_option("--N", c.geo.N)->capture_default_str();
    g->add_option("--dtheta", c.geo.dtheta)->capture_default_str();
    g->add_option("--theta-end", c.geo.theta_end)->capture_default_str();
    g->add_option("--every", c.geo.every, "write every n-th grid point")->capture_default_str();
    g->add_option("--components", c.geo.components, "number of q_l columns")->capture_default_str();

    auto* ig = app.add_subcommand("infogeo", "Fisher information, kinetic energy, line element");
    ig->add_option("--family", c.info.family, "grover, damped-constant or damped-exponential")->capture_default_str();
    ig->add_option("--N", c.info.N)->capture_default_str();
    ig->add_option("--points", c.info.points)->capture_default_str();
    ig->add_option("--xi", c.info.xi, "constant c or amplitude A of the damped family")->capture_default_str();

    auto* gv = app.add_subcommand("ga-verify", "rotor sandwiching vs state-vector amplitudes");
    gv->add_option("--N", c.ga.N_list, "comma separated sizes")->capture_default_str();
    gv->add_option("--k-max", c.ga.k_max, "largest k (default 2 k_opt per N)");
    gv->add_option("--samples", c.ga.samples, "random qubits for the translation checks")->capture_default_str();

    auto* sw = app.add_subcommand("sweep", "cartesian parameter sweep from a config file");
    sw->add_option("--config", c.sweep.config)->required();
}

void positive_int(std::int64_t v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

std::int64_t parse_k(const std::string& s, double N) {
    if (s == "auto") return digital::optimal_iterations(N);
    std::size_t used = 0;
    long long k = -1;
    try {
        k = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || k < 0) throw std::invalid_argument("--k must be a nonnegative integer or 'auto'");
    return k;
}

CommandResult run_digital(const DigitalArgs& a) {
    positive_int(a.N, "--N");
    const double N = static_cast<double>(a.N);
    if (a.target < 0 || a.target >= a.N) throw std::invalid_argument("--target must lie in [0, N)");
    const std::int64_t k = parse_k(a.k, N);
    const bool simulate = a.N <= a.max_sim;
    CommandResult r;
    Table t{"digital", {"k", "N", "target", "p_closed", "p_simulated", "abs_diff"}, {}};
    digital::StateVector s;
    if (simulate) s = digital::init_uniform(static_cast<std::size_t>(a.N));
    const auto tgt = static_cast<std::size_t>(a.target);
    for (std::int64_t i = 0; i <= k; ++i) {
        if (i > 0 && simulate) {
            digital::oracle_inplace(s, tgt);
            digital::inversion_inplace(s);
        }
        if (!a.all_k && i != k) continue;
        const double pc = digital::success_probability(i, N);
        const double ps = simulate ? std::norm(s[tgt]) : std::nan("");
        t.add(i, a.N, a.target, pc, ps, simulate ? std::abs(pc - ps) : std::nan(""));
    }
    r.summary.push_back("k=" + fmt(k) + " p_closed=" + fmt(digital::success_probability(k, N)));
    r.tables.push_back(std::move(t));
    return r;
}

CommandResult run_analog(const AnalogArgs& a) {
    const analog::Model model = analog::parse_model(a.model);
    if (!(a.N >= 2)) throw std::invalid_argument("--N must be >= 2");
    if (model == analog::Model::FarhiGutmann && !(a.E > 0)) throw std::invalid_argument("--E must be > 0");
    double t_max = a.t_max;
    if (t_max < 0)
        t_max = model == analog::Model::Fenner ? 2 * analog::fenner_time(a.N) : pi * std::sqrt(a.N) / a.E;
    const double dt = a.dt > 0 ? a.dt : t_max / 1000;
    if (a.dt == 0 || !(t_max >= 0)) throw std::invalid_argument("--dt must be > 0 and --t-max >= 0");
    const auto n = static_cast<std::int64_t>(std::floor(t_max / dt + 1e-9));
    if (n > 10'000'000) throw std::invalid_argument("time grid has more than 1e7 rows");
    const double E = model == analog::Model::Fenner ? 0.0 : a.E;
    Table t{"analog", {"model", "N", "E", "t", "p_target"}, {}};
    double best_t = 0, best_p = -1;
    for (std::int64_t i = 0; i <= n; ++i) {
        const double ti = static_cast<double>(i) * dt;
        const double p = model == analog::Model::Fenner ? analog::fenner_state(ti, a.N).p_target
                                                        : analog::farhi_gutmann_state(ti, a.N, a.E).p_target;
        if (p > best_p) {
            best_p = p;
            best_t = ti;
        }
        t.add(analog::model_name(model), a.N, E, ti, p);
    }
    CommandResult r;
    r.summary.push_back("peak t=" + fmt(best_t) + " p=" + fmt(best_p));
    r.summary.push_back("peak/((pi/4)sqrt(N))=" + fmt(best_t / (pi / 4 * std::sqrt(a.N))));
    r.tables.push_back(std::move(t));
    return r;
}

CommandResult run_fixed_point(const FixedPointArgs& a, std::uint64_t seed) {
    if (a.depth < 0 || a.depth > fixedpoint::kMaxDepth)
        throw std::invalid_argument("--depth must lie in [0, " + std::to_string(fixedpoint::kMaxDepth) + "]");
    fixedpoint::Source src;
    if (a.source == "zero") src = fixedpoint::Source::Zero;
    else if (a.source == "uniform") src = fixedpoint::Source::Uniform;
    else throw std::invalid_argument("--source must be zero or uniform");
    CMatrix U;
    std::string u0 = a.u0;
    if (a.epsilon >= 0 && u0 == "epsilon") {
        U = fixedpoint::epsilon_unitary(a.epsilon, a.N > 0 ? static_cast<std::size_t>(a.N) : 2);
    } else if (u0 == "epsilon") {
        throw std::invalid_argument("--u0 epsilon needs --epsilon in [0, 1]");
    } else if (u0 == "walsh-hadamard") {
        U = walsh_hadamard(static_cast<std::size_t>(a.N > 0 ? a.N : 4));
    } else if (u0 == "haar") {
        Rng rng(seed);
        U = haar_unitary(static_cast<std::size_t>(a.N > 0 ? a.N : 4), rng);
    } else {
        throw std::invalid_argument("--u0 must be epsilon, walsh-hadamard or haar");
    }
    if (a.target < 0 || static_cast<std::size_t>(a.target) >= U.n())
        throw std::invalid_argument("--target must lie in [0, N)");
    const auto run = fixedpoint::fixed_point_run(U, static_cast<std::size_t>(a.target), a.depth, src);
    Table t{"fixed_point", {"k", "eps_k_closed", "eps_k_simulated", "rel_error"}, {}};
    for (const auto& s : run) {
        const double closed = fixedpoint::failure_closed(run[0].eps_simulated, s.k);
        const double rel = closed > 0 ? std::abs(s.eps_simulated - closed) / closed : std::abs(s.eps_simulated);
        t.add(s.k, closed, s.eps_simulated, rel);
    }
    CommandResult r;
    r.summary.push_back("epsilon=" + fmt(run[0].eps_simulated));
    r.tables.push_back(std::move(t));
    return r;
}

CommandResult run_damped(const DampedArgs& a) {
    if (!(a.dtheta > 0) || !(a.theta_max >= 0)) throw std::invalid_argument("need --dtheta > 0 and --theta-max >= 0");
    const fixedpoint::DampedParams p{a.L0, a.gamma, a.A, a.B};
    const auto rows = static_cast<std::int64_t>(std::floor(a.theta_max / a.dtheta + 1e-9));
    // integrate on a sub-grid of at most 1e-3 that lands on every output point
    const auto sub = static_cast<std::int64_t>(std::ceil(a.dtheta / 1e-3 - 1e-9));
    const double h = a.dtheta / static_cast<double>(sub);
    const auto sol = fixedpoint::damped_geodesic_solve(a.L0, a.gamma, fixedpoint::bessel_solution(0, p),
                                                       fixedpoint::bessel_solution_derivative(0, p),
                                                       static_cast<double>(rows * sub) * h, h);
    auto q = [&](double th) { return fixedpoint::bessel_solution(th, p); };
    Table t{"damped", {"theta", "q", "q_rk4", "residual", "p0", "p1"}, {}};
    double worst = 0, worst_rk = 0;
    for (std::int64_t i = 0; i <= rows; ++i) {
        const double th = static_cast<double>(i) * a.dtheta;
        const double qi = q(th);
        const double res = fixedpoint::damped_residual(q, th, a.L0, a.gamma);
        const double qr = sol.q[static_cast<std::size_t>(i * sub)];
        worst = std::max(worst, std::abs(res));
        worst_rk = std::max(worst_rk, std::abs(qr - qi));
        t.add(th, qi, qr, res, 1 - qi * qi, qi * qi);
    }
    CommandResult r;
    r.summary.push_back("max residual=" + fmt(worst) + " max |q_rk4 - q|=" + fmt(worst_rk));
    r.tables.push_back(std::move(t));
    return r;
}

CommandResult run_geodesic(const GeodesicArgs& a) {
    positive_int(a.N, "--N");
    if (a.N < 2) throw std::invalid_argument("--N must be >= 2");
    if (a.every < 1 || a.components < 1) throw std::invalid_argument("--every and --components must be >= 1");
    const auto N = static_cast<std::size_t>(a.N);
    std::vector<double> q0(N, 1 / std::sqrt(a.N - 1.0)), v0(N, 0.0);
    q0[0] = 0;
    v0[0] = 1;
    const auto sol = infogeom::solve_geodesic(N, q0, v0, a.theta_end, a.dtheta);
    const std::size_t m = std::min<std::size_t>(N, static_cast<std::size_t>(a.components));
    Table t{"geodesic", {"theta"}, {}};
    for (std::size_t l = 0; l < m; ++l) t.header.push_back("q_" + std::to_string(l));
    t.header.insert(t.header.end(), {"closed_error", "residual", "norm_defect"});
    const std::size_t n = sol.theta.size();
    const double h = n > 1 ? sol.theta[1] - sol.theta[0] : 0.0;
    double worst_err = 0, worst_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto exact = infogeom::grover_geodesic(N, sol.theta[i]);
        double err = 0, res = 0, norm = 0;
        for (std::size_t l = 0; l < N; ++l) {
            err = std::max(err, std::abs(sol.q[i][l] - exact.q[l]));
            norm += sol.q[i][l] * sol.q[i][l];
            if (n < 3) continue;
            // second derivative from the integrated velocity
            double qdd;
            if (i == 0) qdd = (-3 * sol.dq[0][l] + 4 * sol.dq[1][l] - sol.dq[2][l]) / (2 * h);
            else if (i + 1 == n) qdd = (3 * sol.dq[i][l] - 4 * sol.dq[i - 1][l] + sol.dq[i - 2][l]) / (2 * h);
            else qdd = (sol.dq[i + 1][l] - sol.dq[i - 1][l]) / (2 * h);
            res = std::max(res, std::abs(qdd + sol.q[i][l]));
        }
        worst_err = std::max(worst_err, err);
        worst_res = std::max(worst_res, res);
        if (i % static_cast<std::size_t>(a.every) != 0 && i + 1 != n) continue;
        std::vector<std::string> row{fmt(sol.theta[i])};
        for (std::size_t l = 0; l < m; ++l) row.push_back(fmt(sol.q[i][l]));
        row.insert(row.end(), {fmt(err), fmt(res), fmt(std::abs(norm - 1))});
        t.rows.push_back(std::move(row));
    }
    CommandResult r;
    r.summary.push_back("max closed-form error=" + fmt(worst_err) + " max residual=" + fmt(worst_res));
    r.tables.push_back(std::move(t));
    return r;
}

CommandResult run_infogeo(const InfogeoArgs& a) {
    if (a.points < 2) throw std::invalid_argument("--points must be >= 2");
    Table t{"infogeo", {"theta", "F", "K", "K_direct", "ds2_wy"}, {}};
    double lo, hi;
    infogeom::ParametricFamily fam;
    fixedpoint::DampedFamily damped;
    const bool is_damped = a.family != "grover";
    if (a.family == "grover") {
        if (a.N < 2) throw std::invalid_argument("--N must be >= 2");
        fam = infogeom::grover_family(static_cast<std::size_t>(a.N));
        lo = 0.01;
        hi = pi / 2 - 0.01;
    } else if (a.family == "damped-constant" || a.family == "damped-exponential") {
        damped = a.family == "damped-constant" ? fixedpoint::constant_xi(a.xi) : fixedpoint::exponential_xi(a.xi);
        fam = fixedpoint::as_parametric(damped);
        lo = 0.1;
        hi = 10;
    } else {
        throw std::invalid_argument("--family must be grover, damped-constant or damped-exponential");
    }
    const double step = (hi - lo) / (a.points - 1);
    double worst_F = 0, worst_K = 0;
    for (int i = 0; i < a.points; ++i) {
        const double th = lo + step * i;
        const double F = is_damped ? fixedpoint::damped_fisher(damped, th) : infogeom::fisher_information(fam, th);
        const double K = is_damped ? fixedpoint::damped_kinetic(damped, th) : infogeom::kinetic_energy(fam, th);
        const double Kd = infogeom::kinetic_energy_direct(fam, th);
        worst_F = std::max(worst_F, std::abs(F - 4));
        worst_K = std::max(worst_K, std::abs(K - 1));
        t.add(th, F, K, Kd, infogeom::wigner_yanase_line_element(fam, th, step));
    }
    CommandResult r;
    if (!is_damped) r.summary.push_back("max|F-4|=" + fmt(worst_F) + " max|K-1|=" + fmt(worst_K));
    r.tables.push_back(std::move(t));
    return r;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

CommandResult run_ga_verify(const GaVerifyArgs& a, std::uint64_t seed) {
    Table t{"ga_verify", {"N", "k", "target_ga", "bad_ga", "target_sv", "bad_sv", "max_abs_dev", "p_target"}, {}};
    double worst = 0;
    for (double Nd : parse_list(a.N_list)) {
        if (Nd < 2 || Nd != std::floor(Nd) || Nd > (1 << 24)) throw std::invalid_argument("--N entries must be integers in [2, 2^24]");
        const auto N = static_cast<std::size_t>(Nd);
        const std::int64_t k_max = a.k_max >= 0 ? a.k_max : 2 * digital::optimal_iterations(Nd);
        digital::StateVector s = digital::init_uniform(N);
        const msta::Rotor g = msta::ga_grover_rotor(Nd);
        msta::Multivector v = msta::initial_plane_vector(Nd);
        for (std::int64_t k = 0; k <= k_max; ++k) {
            const auto ga = msta::plane_of(v);
            const auto sv = digital::plane_coordinates(s, 0);
            const double dev = std::max(std::abs(ga.a_target - sv.a_target), std::abs(ga.a_bad - sv.a_bad));
            worst = std::max(worst, dev);
            t.add(N, k, ga.a_target, ga.a_bad, sv.a_target, sv.a_bad, dev, std::norm(s[0]));
            v = g.apply(v);
            s = digital::grover_iterate(std::move(s), 0);
        }
    }

    // single-qubit translation round trips against the matrix picture
    if (a.samples < 1) throw std::invalid_argument("--samples must be >= 1");
    Rng rng(seed);
    Table tr{"ga_translation", {"check", "samples", "max_error"}, {}};
    double e_round = 0, e_pauli = 0, e_unit = 0, e_inner = 0;
    auto rq = [&] {
        cplx x{rng.normal(), rng.normal()}, y{rng.normal(), rng.normal()};
        const double n = std::sqrt(std::norm(x) + std::norm(y));
        return std::pair{x / n, y / n};
    };
    const cplx I{0, 1};
    const Mat2c paulis[3] = {Mat2c::from(0, 1, 1, 0), Mat2c::from(0, -I, I, 0), Mat2c::from(1, 0, 0, -1)};
    for (int i = 0; i < a.samples; ++i) {
        const auto [x, y] = rq();
        const auto [z, w] = rq();
        const auto q = msta::qubit_to_mv(x, y);
        const auto [x2, y2] = msta::mv_to_qubit(q);
        e_round = std::max({e_round, std::abs(x2 - x), std::abs(y2 - y)});
        for (int k = 1; k <= 3; ++k) {
            const auto want = paulis[k - 1] * std::array<cplx, 2>{x, y};
            const auto [u, v2] = msta::mv_to_qubit(msta::pauli_action(k, q));
            e_pauli = std::max({e_pauli, std::abs(u - want[0]), std::abs(v2 - want[1])});
        }
        const auto [u, v2] = msta::mv_to_qubit(msta::complex_unit_action(q));
        e_unit = std::max({e_unit, std::abs(u - I * x), std::abs(v2 - I * y)});
        const cplx ip = std::conj(x) * z + std::conj(y) * w;
        e_inner = std::max(e_inner, std::abs(msta::ga_inner(q, msta::qubit_to_mv(z, w)).value() - ip));
    }
    tr.add("qubit_round_trip", a.samples, e_round);
    tr.add("pauli_action", a.samples, e_pauli);
    tr.add("complex_unit", a.samples, e_unit);
    tr.add("inner_product", a.samples, e_inner);
    double e_corr = 0;
    for (int n = 2; n <= 4; ++n) {
        const auto E = msta::correlator(n);
        const auto J = msta::correlator_J(n);
        e_corr = std::max({e_corr, msta::max_abs_diff(E * E, E), msta::max_abs_diff(J * J, E * -1.0)});
    }
    tr.add("correlator_projector", 3, e_corr);

    CommandResult r;
    r.summary.push_back("max plane deviation=" + fmt(worst));
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(tr));
    return r;
}

std::map<std::string, std::string> collect_params(const CLI::App& root, const CLI::App& sub) {
    std::map<std::string, std::string> p;
    auto grab = [&p](const CLI::App& app) {
        for (const CLI::Option* o : app.get_options()) {
            const std::string name = o->get_name(false, true);
            if (name.empty() || name == "--help" || name == "-h" || name == "--version") continue;
            std::string key = name.substr(name.find_first_not_of('-'));
            std::string value;
            if (o->count() > 0) {
                for (const auto& s : o->results()) value += (value.empty() ? "" : ",") + s;
                if (o->get_type_size() == 0) value = "true";
            } else {
                value = o->get_default_str();
            }
            if (!value.empty()) p[key] = value;
        }
    };
    grab(sub);
    grab(root);
    p.erase("out");
    return p;
}

CommandResult dispatch(const CLI::App& app, const Ctx& c) {
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    CommandResult r;
    if (name == "digital") r = run_digital(c.digital);
    else if (name == "analog") r = run_analog(c.analog);
    else if (name == "fixed-point") r = run_fixed_point(c.fp, c.seed);
    else if (name == "damped") r = run_damped(c.damped);
    else if (name == "geodesic") r = run_geodesic(c.geo);
    else if (name == "infogeo") r = run_infogeo(c.info);
    else if (name == "ga-verify") r = run_ga_verify(c.ga, c.seed);
    else throw std::invalid_argument("sweep cannot be nested in a sweep cell");
    r.command = name;
    r.params = collect_params(app, *sub);
    return r;
}

void parse_into(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

std::filesystem::path prepare_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec || !std::filesystem::is_directory(p)) throw std::runtime_error("cannot create output directory " + dir);
    return p;
}

int run_sweep(const Ctx& c, const CLI::App& app, std::ostream& out) {
    const std::string started = utc_timestamp();
    const SweepConfig cfg = load_sweep_config(c.sweep.config);
    std::filesystem::path dir = c.out;
    if (cfg.out) dir /= *cfg.out;
    dir = prepare_dir(dir.string());
    const unsigned workers = c.workers_opt->count() > 0 ? c.workers : cfg.workers.value_or(1);
    const auto cells = cfg.cells();
    bool has_seed = false;
    for (const auto& [k, v] : cfg.grid) has_seed = has_seed || k == "seed";

    std::vector<std::string> files(cells.size());
    std::vector<std::size_t> row_counts(cells.size());
    std::string stem = cfg.command;
    std::replace(stem.begin(), stem.end(), '-', '_');
    parallel_for(cells.size(), workers, [&](std::size_t i) {
        std::vector<std::string> args{cfg.command};
        for (const auto& [k, v] : cells[i]) {
            args.push_back("--" + k);
            args.push_back(v);
        }
        if (!has_seed) {
            args.push_back("--seed");
            args.push_back(std::to_string(c.seed));
        }
        CommandResult r = compute(args);
        char name[64];
        std::snprintf(name, sizeof name, "%s_cell_%04zu.csv", stem.c_str(), i);
        write_csv(r.tables.front(), dir / name);
        files[i] = name;
        row_counts[i] = r.tables.front().rows.size();
    });

    Table index{"index", {"cell"}, {}};
    for (const auto& [k, v] : cfg.grid) index.header.push_back(k);
    index.header.insert(index.header.end(), {"file", "rows"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::vector<std::string> row{fmt(i)};
        for (const auto& [k, v] : cells[i]) row.push_back(v);
        row.push_back(files[i]);
        row.push_back(fmt(row_counts[i]));
        index.rows.push_back(std::move(row));
    }
    const auto index_path = dir / (stem + "_index.csv");
    write_csv(index, index_path);

    RunManifest m;
    m.command = "sweep";
    m.params = collect_params(app, *app.get_subcommands().front());
    m.params["cells"] = std::to_string(cells.size());
    m.params["cell_command"] = cfg.command;
    m.params["workers"] = std::to_string(workers);
    m.params["config_sha256"] = sha256_file(c.sweep.config);
    m.tool_version = QSEARCH_VERSION;
    m.started = started;
    m.outputs.push_back(record_output(dir, index_path));
    for (const auto& f : files) m.outputs.push_back(record_output(dir, dir / f));
    m.finished = utc_timestamp();
    const auto mp = write_manifest(m, dir);
    out << "sweep: " << cells.size() << " cells on " << workers << " worker(s)\n";
    out << "wrote " << index_path.string() << "\n";
    out << "wrote " << mp.string() << "\n";
    return kExitOk;
}

}  // namespace

std::string default_out_dir() {
    if (const char* env = std::getenv("QSEARCH_OUT"); env && *env) return env;
    return "qsearch_out";
}

CommandResult compute(const std::vector<std::string>& args) {
    CLI::App app{"qsearch"};
    Ctx c;
    build_app(app, c);
    parse_into(app, args);
    return dispatch(app, c);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qsearch: quantum search experiments in matrix and geometric-algebra form"};
    Ctx c;
    c.out = default_out_dir();
    build_app(app, c);
    try {
        parse_into(app, args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << QSEARCH_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (!app.get_subcommands().empty()) err << "run with --help for usage\n";
        return kExitUsage;
    }
    try {
        if (app.got_subcommand("sweep")) return run_sweep(c, app, out);
        const std::string started = utc_timestamp();
        CommandResult r = dispatch(app, c);
        const auto dir = prepare_dir(c.out);
        RunManifest m;
        m.command = r.command;
        m.params = r.params;
        m.tool_version = QSEARCH_VERSION;
        m.started = started;
        for (const Table& t : r.tables) {
            const auto path = dir / (t.name + ".csv");
            write_csv(t, path);
            m.outputs.push_back(record_output(dir, path));
            out << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n";
        }
        m.finished = utc_timestamp();
        out << "wrote " << write_manifest(m, dir).string() << "\n";
        for (const auto& s : r.summary) out << s << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "numeric domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace qsearch::cli
