#include "wronskit/harness.hpp"

#include "wronskit/bethe.hpp"
#include "wronskit/fourlines.hpp"
#include "wronskit/gaudin.hpp"
#include "wronskit/spectra.hpp"
#include "wronskit/wronski.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace wronskit {

namespace fs = std::filesystem;

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::wronski_reality: return "wronski-reality";
        case Scenario::clustered: return "clustered";
        case Scenario::monotone_fourlines: return "monotone-fourlines";
        case Scenario::secant_fourlines: return "secant-fourlines";
        case Scenario::zmatrix_sample: return "zmatrix-sample";
        case Scenario::gaudin_checks: return "gaudin-checks";
    }
    return "unknown";
}

Scenario scenario_from_name(const std::string& name) {
    for (Scenario s : {Scenario::wronski_reality, Scenario::clustered, Scenario::monotone_fourlines,
                       Scenario::secant_fourlines, Scenario::zmatrix_sample, Scenario::gaudin_checks})
        if (scenario_name(s) == name) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

int overlap_number(const SecantScenario& sc) {
    int total = 0;
    for (std::size_t f = 0; f < sc.points.size(); ++f)
        for (double p : sc.points[f])
            for (std::size_t g = 0; g < sc.arcs.size(); ++g) {
                if (g == f) continue;
                if (p >= sc.arcs[g].first && p <= sc.arcs[g].second) ++total;
            }
    return total;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json arcs_json = nlohmann::json::array();
    for (const auto& [lo, hi] : arcs) arcs_json.push_back({lo, hi});
    return {{"scenario", scenario_name(scenario)},
            {"n", n},
            {"d", d},
            {"trials", trials},
            {"seed", seed},
            {"root_lo", root_lo},
            {"root_hi", root_hi},
            {"min_gap", min_gap},
            {"ratio", ratio},
            {"zsize", zsize},
            {"arcs", arcs_json}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.scenario = scenario_from_name(j.at("scenario").get<std::string>());
    c.n = j.value("n", 1);
    c.d = j.value("d", 3);
    c.trials = j.value("trials", 100L);
    c.seed = j.value("seed", std::uint64_t(1));
    c.root_lo = j.value("root_lo", -2.0);
    c.root_hi = j.value("root_hi", 2.0);
    c.min_gap = j.value("min_gap", 1e-2);
    c.ratio = j.value("ratio", 10.0);
    c.zsize = j.value("zsize", 2);
    if (j.contains("arcs"))
        for (const auto& a : j.at("arcs")) c.arcs.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    return c;
}

namespace {

std::vector<Complex> draw_distinct_roots(Rng& rng, int count, double lo, double hi, double min_gap) {
    std::vector<Complex> roots;
    int guard = 0;
    while (int(roots.size()) < count) {
        double cand = rng.uniform(lo, hi);
        bool ok = true;
        for (const Complex& r : roots)
            if (std::abs(cand - r.real().convert_to<double>()) < min_gap) ok = false;
        if (ok) roots.push_back(Complex(cand));
        if (++guard > 100000) throw std::runtime_error("root sampling failed; relax min_gap");
    }
    return roots;
}

TrialRecord run_trial(const ExperimentConfig& cfg, long index) {
    TrialRecord rec;
    rec.index = index;
    Rng rng(derive_seed(cfg.seed, std::uint64_t(index)));
    auto t0 = std::chrono::steady_clock::now();
    switch (cfg.scenario) {
        case Scenario::wronski_reality: {
            int count = (cfg.n + 1) * (cfg.d - cfg.n);
            std::vector<Complex> roots =
                draw_distinct_roots(rng, count, cfg.root_lo, cfg.root_hi, cfg.min_gap);
            InverseOptions opt;
            opt.seed = derive_seed(cfg.seed, std::uint64_t(index) * 31 + 7);
            opt.workers = 1;  // trials already run in parallel
            WronskiFiber fib = inverse_wronski_from_roots(roots, cfg.n, cfg.d, opt);
            rec.found = int(fib.solutions.size());
            rec.complete = fib.complete;
            for (std::size_t i = 0; i < fib.solutions.size(); ++i) {
                if (is_real_space(fib.solutions[i])) ++rec.real_count;
                rec.residual_max = std::max(rec.residual_max, fib.residuals[i]);
            }
            nlohmann::json r = nlohmann::json::array();
            for (const Complex& z : roots) r.push_back(z.real().convert_to<double>());
            rec.params = {{"roots", r}};
            rec.klass = "all-real-roots";
            break;
        }
        case Scenario::clustered: {
            int count = (cfg.n + 1) * (cfg.d - cfg.n);
            std::vector<Complex> roots;
            nlohmann::json r = nlohmann::json::array();
            for (int k = 1; k <= count; ++k) {
                double v = std::pow(cfg.ratio, k) * (1.0 + 0.05 * rng.uniform(-1, 1));
                roots.push_back(Complex(v));
                r.push_back(v);
            }
            InverseOptions opt;
            opt.seed = derive_seed(cfg.seed, std::uint64_t(index) * 31 + 7);
            opt.workers = 1;
            WronskiFiber fib = inverse_wronski_from_roots(roots, cfg.n, cfg.d, opt);
            rec.found = int(fib.solutions.size());
            rec.complete = fib.complete;
            for (std::size_t i = 0; i < fib.solutions.size(); ++i) {
                if (is_real_space(fib.solutions[i])) ++rec.real_count;
                rec.residual_max = std::max(rec.residual_max, fib.residuals[i]);
            }
            rec.params = {{"roots", r}};
            rec.klass = "clustered";
            break;
        }
        case Scenario::monotone_fourlines: {
            auto draw = [&]() {
                double v;
                do {
                    v = rng.uniform(cfg.root_lo, cfg.root_hi);
                } while (std::abs(v + 1) < cfg.min_gap || std::abs(v) < cfg.min_gap ||
                         std::abs(v - 1) < cfg.min_gap);
                return v;
            };
            double v = draw(), w;
            do {
                w = draw();
            } while (std::abs(v - w) < cfg.min_gap);
            MonotoneResult res = monotone_flag_instance(v, w);
            rec.found = 2;
            rec.complete = true;
            rec.real_count = res.real_count;
            rec.klass = res.ordering;
            rec.params = {{"v", v}, {"w", w}};
            break;
        }
        case Scenario::secant_fourlines: {
            SecantScenario sc;
            sc.arcs = cfg.arcs;
            if (sc.arcs.empty())
                sc.arcs = {{-1.6, -1.2}, {-0.8, -0.4}, {0.2, 0.6}, {1.2, 1.6}};
            if (sc.arcs.size() != 4)
                throw std::invalid_argument("secant-fourlines needs exactly 4 arcs");
            std::vector<Line3C> secants;
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& [lo, hi] : sc.arcs) {
                double u, w;
                do {
                    u = rng.uniform(lo, hi);
                    w = rng.uniform(lo, hi);
                } while (std::abs(u - w) < 1e-4 * (hi - lo));
                sc.points.push_back({u, w});
                pts.push_back({u, w});
                auto pu = gamma_point<Complex>(Complex(u));
                auto pw = gamma_point<Complex>(Complex(w));
                secants.push_back(
                    Line3C{pu, {pw[0] - pu[0], pw[1] - pu[1], pw[2] - pu[2]}});
            }
            Mat<Complex> quad = quadric_through_lines(secants[0], secants[1], secants[2]);
            // restrict the quadric to the fourth secant
            std::array<Complex, 4> p0 = {Complex(1), secants[3].base[0], secants[3].base[1],
                                         secants[3].base[2]};
            std::array<Complex, 4> dv = {Complex(0), secants[3].dir[0], secants[3].dir[1],
                                         secants[3].dir[2]};
            auto apply = [&](const std::array<Complex, 4>& uu, const std::array<Complex, 4>& vv) {
                Complex acc(0);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) acc += uu[i] * quad[i][j] * vv[j];
                return acc;
            };
            Complex A = apply(dv, dv), B = Complex(2) * apply(p0, dv), C = apply(p0, p0);
            Complex disc = B * B - Complex(4) * A * C;
            // the restricted quadratic has real coefficients up to a common
            // complex scale; normalize by A
            Complex ratio = disc / (A * A);
            rec.found = 2;
            rec.complete = true;
            rec.real_count = ratio.real() >= 0 ? 2 : 0;
            rec.klass = "overlap_" + std::to_string(overlap_number(sc));
            rec.params = {{"points", pts}};
            break;
        }
        case Scenario::zmatrix_sample: {
            ContrapositiveReport rep =
                theorem2_contrapositive_sample(cfg.zsize, 1, derive_seed(cfg.seed, index));
            rec.found = 1;
            rec.complete = true;
            rec.real_count = int(rep.violations);  // 0 expected
            rec.klass = "size_" + std::to_string(cfg.zsize);
            rec.params = nlohmann::json::object();
            break;
        }
        case Scenario::gaudin_checks: {
            int m = (cfg.n + 1) * (cfg.d - cfg.n);
            std::vector<Complex> s = draw_distinct_roots(rng, m, cfg.root_lo, cfg.root_hi, cfg.min_gap);
            GaudinContext ctx(cfg.n, s);
            MasterParams mp(cfg.n, cfg.d, s);
            SolveCriticalOptions so;
            so.seed = derive_seed(cfg.seed, index * 13 + 3);
            so.cross_validate = false;
            so.workers = 1;
            auto pts = solve_critical(mp, so);
            MatRatOperator M = build_M(ctx);
            MatRatOperator K = conjugate_K(M);
            bool pass = commute_check(ctx, M, Complex(0.37, 0.21), Complex(2.11, -0.53)) < 1e-20;
            for (const auto& x : pts) {
                TensorVector v = universal_weight_vector(ctx, x);
                pass = pass && is_singular(ctx, v);
                auto fo = fundamental_operator(x, mp);
                pass = pass && eigen_check(ctx, K, v, fo, Complex(2.9)).ok();
            }
            pass = pass && shapovalov_symmetry_check(ctx, K, Complex(3.1), 5).ok();
            rec.found = int(pts.size());
            rec.complete = long(pts.size()) == degree_iota(cfg.n, cfg.d);
            rec.real_count = pass ? rec.found : 0;
            rec.klass = "gaudin";
            nlohmann::json r = nlohmann::json::array();
            for (const Complex& z : s) r.push_back(z.real().convert_to<double>());
            rec.params = {{"s", r}};
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

nlohmann::json record_to_json(const TrialRecord& rec) {
    return {{"index", rec.index},       {"class", rec.klass},
            {"found", rec.found},       {"real", rec.real_count},
            {"complete", rec.complete}, {"residual_max", rec.residual_max},
            {"wall_ms", rec.wall_ms},   {"params", rec.params}};
}

TrialRecord record_from_json(const nlohmann::json& j) {
    TrialRecord rec;
    rec.index = j.at("index").get<long>();
    rec.klass = j.at("class").get<std::string>();
    rec.found = j.at("found").get<int>();
    rec.real_count = j.at("real").get<int>();
    rec.complete = j.at("complete").get<bool>();
    rec.residual_max = j.at("residual_max").get<double>();
    rec.wall_ms = j.at("wall_ms").get<double>();
    rec.params = j.value("params", nlohmann::json::object());
    return rec;
}

}  // namespace

std::map<std::string, std::map<int, long>> ExperimentRecord::table() const {
    std::map<std::string, std::map<int, long>> t;
    for (const auto& rec : trials) t[rec.klass][rec.real_count]++;
    return t;
}

ExperimentRecord run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    ExperimentRecord record;
    record.config = config;
    record.trials.resize(config.trials);
    std::vector<bool> done(config.trials, false);

    fs::path records_path;
    std::string config_key = config.to_json().dump();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        records_path = fs::path(out_dir) / "records.jsonl";
        if (fs::exists(records_path)) {
            std::ifstream in(records_path);
            std::string line;
            bool header_ok = false;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                nlohmann::json j = nlohmann::json::parse(line);
                if (j.contains("config")) {
                    header_ok = j.at("config").dump() == config_key;
                    if (!header_ok) break;
                    continue;
                }
                if (!header_ok) break;
                TrialRecord rec = record_from_json(j);
                if (rec.index >= 0 && rec.index < config.trials) {
                    record.trials[rec.index] = rec;
                    done[rec.index] = true;
                }
            }
            if (!header_ok) {
                fs::remove(records_path);  // stale results for a different config
                std::fill(done.begin(), done.end(), false);
            }
        }
    }

    std::ofstream out;
    std::mutex out_mutex;
    if (!out_dir.empty()) {
        bool fresh = !fs::exists(records_path);
        out.open(records_path, std::ios::app);
        if (fresh) out << nlohmann::json{{"config", config.to_json()}}.dump() << "\n";
    }

    std::vector<long> todo;
    for (long i = 0; i < config.trials; ++i)
        if (!done[i]) todo.push_back(i);

    parallel_for(
        todo.size(),
        [&](std::size_t k) {
            long index = todo[k];
            TrialRecord rec = run_trial(config, index);
            {
                std::lock_guard<std::mutex> lock(out_mutex);
                record.trials[index] = rec;
                if (out.is_open()) {
                    out << record_to_json(rec).dump() << "\n";
                    out.flush();
                }
            }
        },
        config.workers);
    return record;
}

std::string render_csv(const ExperimentRecord& record) {
    auto table = record.table();
    std::ostringstream csv;
    if (record.config.scenario == Scenario::secant_fourlines) {
        // rows = real counts, columns = overlap classes, plus totals
        std::set<int> reals;
        std::vector<std::string> classes;
        for (const auto& [klass, row] : table) {
            classes.push_back(klass);
            for (const auto& [real, cnt] : row) reals.insert(real);
        }
        csv << "real";
        for (const auto& k : classes) csv << "," << k;
        csv << ",total\n";
        for (int real : reals) {
            csv << real;
            long total = 0;
            for (const auto& k : classes) {
                long v = 0;
                auto it = table.find(k);
                if (it != table.end()) {
                    auto jt = it->second.find(real);
                    if (jt != it->second.end()) v = jt->second;
                }
                csv << "," << v;
                total += v;
            }
            csv << "," << total << "\n";
        }
    } else {
        // rows = classes, columns = real counts
        std::set<int> reals;
        for (const auto& [klass, row] : table)
            for (const auto& [real, cnt] : row) reals.insert(real);
        csv << "class";
        for (int real : reals) csv << ",real_" << real;
        csv << ",total\n";
        for (const auto& [klass, row] : table) {
            csv << klass;
            long total = 0;
            for (int real : reals) {
                auto it = row.find(real);
                long v = it == row.end() ? 0 : it->second;
                csv << "," << v;
                total += v;
            }
            csv << "," << total << "\n";
        }
    }
    return csv.str();
}

void write_reports(const ExperimentRecord& record, const std::string& out_dir) {
    fs::create_directories(out_dir);
    {
        std::ofstream csv(fs::path(out_dir) / "results.csv", std::ios::binary);
        csv << render_csv(record);
    }
    {
        std::ofstream cells(fs::path(out_dir) / "cells.csv", std::ios::binary);
        cells << "class,real,count\n";
        for (const auto& [klass, row] : record.table())
            for (const auto& [real, cnt] : row) cells << klass << "," << real << "," << cnt << "\n";
    }
    {
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& rec : record.trials) trials.push_back(record_to_json(rec));
        nlohmann::json j = {{"config", record.config.to_json()},
                            {"precision_bits", precision_bits()},
                            {"trials", trials}};
        std::ofstream out(fs::path(out_dir) / "results.json", std::ios::binary);
        out << j.dump(2) << "\n";
    }
}

}  // namespace wronskit
