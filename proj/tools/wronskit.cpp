// Command-line front end: fiber solving, critical points, monodromy,
// Gaudin checks, structured-matrix experiments, four-lines geometry, and the
// experiment harness.

#include "wronskit/bethe.hpp"
#include "wronskit/fourlines.hpp"
#include "wronskit/gaudin.hpp"
#include "wronskit/grassmann.hpp"
#include "wronskit/harness.hpp"
#include "wronskit/spectra.hpp"
#include "wronskit/wronski.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace wronskit;

namespace {

// "1,2,0.5" or "1:0.5,2" with re:im entries
std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) out.push_back(Complex(std::stod(tok)));
        else out.push_back(Complex(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))));
    }
    return out;
}

std::string cycles(const std::vector<int>& perm) {
    std::ostringstream os;
    std::vector<bool> seen(perm.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == int(i)) { seen[i] = true; continue; }
        os << "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            os << (first ? "" : " ") << j;
            first = false;
            j = std::size_t(perm[j]);
        }
        os << ")";
        any = true;
    }
    if (!any) os << "()";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational real Schubert calculus workbench"};
    app.require_subcommand(1);

    // solve-wronski
    auto* sw = app.add_subcommand("solve-wronski", "all spaces of polynomials with the given Wronskian roots");
    int sw_n = 1, sw_d = 3;
    std::string sw_roots;
    std::uint64_t sw_seed = 12345;
    sw->add_option("--n", sw_n, "n of G(n,d)")->required();
    sw->add_option("--d", sw_d, "d of G(n,d)")->required();
    sw->add_option("--roots", sw_roots, "comma-separated roots, re or re:im")->required();
    sw->add_option("--seed", sw_seed, "multistart seed");
    sw->callback([&] {
        InverseOptions opt;
        opt.seed = sw_seed;
        WronskiFiber fib = inverse_wronski_from_roots(parse_complex_list(sw_roots), sw_n, sw_d, opt);
        std::cout << fiber_to_json(fib).dump(2) << "\n";
    });

    // bethe
    auto* be = app.add_subcommand("bethe", "critical points of the master function and their spaces");
    int be_n = 1, be_d = 3;
    std::string be_roots;
    std::uint64_t be_seed = 777;
    bool be_no_cross = false;
    be->add_option("--n", be_n)->required();
    be->add_option("--d", be_d)->required();
    be->add_option("--roots", be_roots, "Wronskian roots = master parameters")->required();
    be->add_option("--seed", be_seed);
    be->add_flag("--no-cross-validate", be_no_cross, "skip the direct Newton route");
    be->callback([&] {
        MasterParams mp(be_n, be_d, parse_complex_list(be_roots));
        SolveCriticalOptions opt;
        opt.seed = be_seed;
        opt.cross_validate = !be_no_cross;
        auto pts = solve_critical(mp, opt);
        nlohmann::json orbits = nlohmann::json::array();
        for (const auto& x : pts) {
            FundamentalOperator fo = fundamental_operator(x, mp);
            PolySpace<Complex> space = kernel_polynomials(fo);
            nlohmann::json polys = nlohmann::json::array();
            for (const auto& p : fo.p) polys.push_back(poly_to_json(p));
            nlohmann::json basis = nlohmann::json::array();
            for (const auto& f : space.basis) basis.push_back(poly_to_json(f));
            orbits.push_back({{"x", critical_point_to_json(x)},
                              {"polys", polys},
                              {"space", basis},
                              {"real", is_real_space(space)}});
        }
        nlohmann::json out = {{"orbits", orbits}, {"expected", degree_iota(be_n, be_d)}};
        std::cout << out.dump(2) << "\n";
    });

    // monodromy
    auto* mo = app.add_subcommand("monodromy", "continuation permutation along root-exchange loops");
    int mo_n = 1, mo_d = 3;
    std::string mo_roots, mo_loop;
    mo->add_option("--n", mo_n)->required();
    mo->add_option("--d", mo_d)->required();
    mo->add_option("--roots", mo_roots, "real roots, sorted")->required();
    mo->add_option("--loop", mo_loop, "comma-separated adjacent transpositions, e.g. 0 or 0,1,0")
        ->required();
    mo->callback([&] {
        std::vector<Complex> roots = parse_complex_list(mo_roots);
        WronskiFiber fib = inverse_wronski_from_roots(roots, mo_n, mo_d);
        if (!fib.complete) throw std::runtime_error("fiber incomplete; cannot track monodromy");
        std::optional<RootPath> path;
        std::istringstream in(mo_loop);
        std::string tok;
        std::vector<Complex> cur = roots;
        while (std::getline(in, tok, ',')) {
            int k = std::stoi(tok);
            RootPath leg = RootPath::exchange_loop(cur, k);
            std::swap(cur[k], cur[k + 1]);
            path = path ? path->then(leg) : leg;
        }
        if (!path) throw std::runtime_error("empty loop spec");
        ContinuationResult res = continue_fiber(fib, *path);
        nlohmann::json perm = nlohmann::json::array();
        for (int p : res.permutation) perm.push_back(p);
        nlohmann::json out = {{"is_loop", res.is_loop},
                              {"permutation", perm},
                              {"cycles", res.is_loop ? cycles(res.permutation) : std::string("-")}};
        std::cout << out.dump(2) << "\n";
    });

    // gaudin
    auto* ga = app.add_subcommand("gaudin", "Gaudin-model checks at the given parameters");
    int ga_n = 1, ga_d = 3;
    std::string ga_roots, ga_checks = "commute,eigen,shapovalov";
    ga->add_option("--n", ga_n)->required();
    ga->add_option("--d", ga_d)->required();
    ga->add_option("--roots", ga_roots)->required();
    ga->add_option("--checks", ga_checks, "subset of commute,eigen,shapovalov");
    ga->callback([&] {
        std::vector<Complex> s = parse_complex_list(ga_roots);
        GaudinContext ctx(ga_n, s);
        MasterParams mp(ga_n, ga_d, s);
        MatRatOperator M = build_M(ctx);
        MatRatOperator K = conjugate_K(M);
        nlohmann::json out;
        bool want_commute = ga_checks.find("commute") != std::string::npos;
        bool want_eigen = ga_checks.find("eigen") != std::string::npos;
        bool want_shapovalov = ga_checks.find("shapovalov") != std::string::npos;
        if (want_commute) {
            double dev = commute_check(ctx, M, Complex(0.41, 0.23), Complex(1.93, -0.37));
            out["commute"] = {{"deviation", dev}, {"pass", dev < 1e-20}};
        }
        if (want_eigen) {
            SolveCriticalOptions so;
            so.cross_validate = false;
            auto pts = solve_critical(mp, so);
            nlohmann::json per_orbit = nlohmann::json::array();
            bool all = true;
            for (const auto& x : pts) {
                TensorVector v = universal_weight_vector(ctx, x);
                auto fo = fundamental_operator(x, mp);
                auto rep = eigen_check(ctx, K, v, fo, Complex(2.83));
                bool pass = rep.ok() && is_singular(ctx, v);
                all = all && pass;
                per_orbit.push_back({{"deviation", rep.max_rel_dev}, {"singular", is_singular(ctx, v)}});
            }
            out["eigen"] = {{"orbits", per_orbit}, {"pass", all}};
        }
        if (want_shapovalov) {
            auto rep = shapovalov_symmetry_check(ctx, K, Complex(3.17), 20);
            out["shapovalov"] = {{"deviation", rep.max_rel_dev},
                                 {"antisymmetric_ratio", rep.antisym_norm_ratio},
                                 {"pass", rep.ok()}};
        }
        std::cout << out.dump(2) << "\n";
    });

    // zmatrix
    auto* zm = app.add_subcommand("zmatrix", "spectrum and reality verdict of the structured matrix");
    std::string zm_b, zm_alpha;
    zm->add_option("--b", zm_b, "distinct real exponents")->required();
    zm->add_option("--alpha", zm_alpha, "diagonal entries, re or re:im")->required();
    zm->callback([&] {
        ZMatrix z(parse_complex_list(zm_b), parse_complex_list(zm_alpha));
        auto eig = dense_eigenvalues(z.matrix());
        nlohmann::json spec = nlohmann::json::array();
        for (const Complex& v : eig)
            spec.push_back({v.real().convert_to<double>(), v.imag().convert_to<double>()});
        nlohmann::json out = {{"spectrum", spec}, {"all_real", eigen_real_test(z)}};
        std::cout << out.dump(2) << "\n";
    });

    // cm
    auto* cm = app.add_subcommand("cm", "Calogero-Moser normalization sampling");
    long cm_samples = 100;
    int cm_size = 3;
    std::uint64_t cm_seed = 5150;
    cm->add_option("--sample", cm_samples, "number of random pairs")->required();
    cm->add_option("--size", cm_size, "matrix size");
    cm->add_option("--seed", cm_seed);
    cm->callback([&] {
        long violations = 0, rank_failures = 0;
        for (long t = 0; t < cm_samples; ++t) {
            Rng rng(derive_seed(cm_seed, t));
            std::vector<Complex> b, alpha;
            for (int i = 0; i < cm_size; ++i) {
                double re;
                bool ok;
                do {
                    re = rng.uniform(-5, 5);
                    ok = true;
                    for (const Complex& v : b)
                        if (std::abs(re - v.real().convert_to<double>()) < 1e-2) ok = false;
                } while (!ok);
                b.push_back(Complex(re));
                alpha.push_back(Complex(rng.uniform(-5, 5), rng.uniform(-5, 5)));
            }
            ZMatrix z(b, alpha);
            CMPair pair;
            pair.x.assign(cm_size, std::vector<Complex>(cm_size, Complex(0)));
            for (int i = 0; i < cm_size; ++i) pair.x[i][i] = b[i];
            pair.z = z.matrix();
            if (!cm_invariant_holds(pair)) { ++rank_failures; continue; }
            Mat<Complex> g(cm_size, std::vector<Complex>(cm_size));
            for (auto& row : g)
                for (auto& v : row) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            CMPair conj;
            try {
                conj.x = lu_solve(g, mat_mul(pair.x, g));
                conj.z = lu_solve(g, mat_mul(pair.z, g));
                CMNormalForm norm = cm_normalize(conj);
                for (int i = 0; i < cm_size; ++i) {
                    bool matched = false;
                    for (int j = 0; j < cm_size; ++j)
                        if (mag_d(Complex(norm.b[j] - b[i])) < 1e-6 &&
                            mag_d(Complex(norm.alpha[j] - alpha[i])) < 1e-6)
                            matched = true;
                    if (!matched) ++violations;
                }
            } catch (const std::exception&) {
                ++violations;
            }
        }
        nlohmann::json out = {{"samples", cm_samples},
                              {"roundtrip_violations", violations},
                              {"rank_failures", rank_failures}};
        std::cout << out.dump(2) << "\n";
    });

    // fourlines
    auto* fl = app.add_subcommand("fourlines", "the problem of four lines");
    double fl_s4 = 0.31;
    bool fl_inf = false;
    std::vector<double> fl_monotone;
    bool fl_csv = false;
    fl->add_option("--s4", fl_s4, "fourth tangency point");
    fl->add_flag("--s4-at-infinity", fl_inf);
    fl->add_option("--monotone", fl_monotone, "two secant parameters v w")->expected(2);
    fl->add_flag("--csv", fl_csv, "plot-ready CSV of the transversal lines");
    fl->callback([&] {
        if (fl_monotone.size() == 2) {
            MonotoneResult res = monotone_flag_instance(fl_monotone[0], fl_monotone[1]);
            nlohmann::json out = {{"ordering", res.ordering}, {"real", res.real_count}};
            std::cout << out.dump(2) << "\n";
            return;
        }
        TransversalResult res = lines_meeting_four(fl_s4, fl_inf);
        if (fl_csv) {
            std::cout << "line,bx,by,bz,dx,dy,dz,real\n";
            for (std::size_t i = 0; i < res.lines.size(); ++i) {
                const auto& l = res.lines[i];
                std::cout << i;
                for (const auto& v : {l.base[0], l.base[1], l.base[2], l.dir[0], l.dir[1], l.dir[2]})
                    std::cout << "," << v.real().convert_to<double>();
                std::cout << "," << (res.real_flags[i] ? 1 : 0) << "\n";
            }
            return;
        }
        nlohmann::json lines = nlohmann::json::array();
        for (std::size_t i = 0; i < res.lines.size(); ++i) {
            const auto& l = res.lines[i];
            nlohmann::json jl = {{"real", bool(res.real_flags[i])}};
            nlohmann::json base = nlohmann::json::array(), dir = nlohmann::json::array();
            for (int c = 0; c < 3; ++c) {
                base.push_back({l.base[c].real().convert_to<double>(),
                                l.base[c].imag().convert_to<double>()});
                dir.push_back({l.dir[c].real().convert_to<double>(),
                               l.dir[c].imag().convert_to<double>()});
            }
            jl["base"] = base;
            jl["dir"] = dir;
            lines.push_back(jl);
        }
        // cross-check against the fiber over the corresponding quartic
        nlohmann::json out = {{"transversals", lines}, {"real", res.real_count}};
        if (!fl_inf) {
            auto fib = inverse_wronski_from_roots(
                {Complex(-1), Complex(0), Complex(1), Complex(fl_s4)}, 1, 3);
            int real = 0;
            for (const auto& s : fib.solutions) real += is_real_space(s);
            out["wronski_crosscheck"] = {{"found", fib.solutions.size()}, {"real", real}};
        }
        std::cout << out.dump(2) << "\n";
    });

    // schubert
    auto* sc = app.add_subcommand("schubert", "parse and count a Schubert problem");
    std::string sc_problem;
    sc->add_option("--problem", sc_problem, "e.g. \"G(1,3): i@-1 i@0 i@1 i@0.31\"")->required();
    sc->callback([&] {
        SchubertProblem p = parse_schubert_problem(sc_problem);
        nlohmann::json out = {{"problem", format_schubert_problem(p)},
                              {"dim", (p.n + 1) * (p.d - p.n)},
                              {"total_codim", p.total_codim()},
                              {"count", schubert_count(p)}};
        std::cout << out.dump(2) << "\n";
    });

    // experiment
    auto* ex = app.add_subcommand("experiment", "run a frequency-table experiment");
    std::string ex_config, ex_out = "results";
    ex->add_option("--config", ex_config, "config JSON file")->required();
    ex->add_option("--out", ex_out, "output directory");
    ex->callback([&] {
        std::ifstream in(ex_config);
        if (!in) throw std::runtime_error("cannot open config: " + ex_config);
        nlohmann::json j;
        in >> j;
        ExperimentConfig cfg = ExperimentConfig::from_json(j);
        ExperimentRecord rec = run_experiment(cfg, ex_out);
        write_reports(rec, ex_out);
        std::cout << render_csv(rec);
    });

    // degrees
    auto* dg = app.add_subcommand("degree", "degree of the Wronski map and the real degree");
    int dg_n = 1, dg_d = 3;
    dg->add_option("--n", dg_n)->required();
    dg->add_option("--d", dg_d)->required();
    dg->callback([&] {
        nlohmann::json out = {{"degree", degree_iota(dg_n, dg_d)},
                              {"real_degree", real_degree(dg_n, dg_d)}};
        std::cout << out.dump(2) << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
