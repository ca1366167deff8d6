#include "wronskit/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace wronskit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("wronskit_test_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("overlap number") {
    SecantScenario sc;
    sc.arcs = {{0, 1}, {2, 3}, {4, 5}};
    sc.points = {{0.2, 0.8}, {2.5, 2.9}, {4.1, 4.6}};
    CHECK(overlap_number(sc) == 0);

    SecantScenario same;
    same.arcs = {{0, 1}, {0, 1}};
    same.points = {{0.2, 0.8}, {0.3, 0.9}};
    CHECK(overlap_number(same) == 4);  // every point sits in the other flag's arc

    SecantScenario nested;
    nested.arcs = {{0, 10}, {4, 6}};
    nested.points = {{4.5, 5.5}, {4.7, 5.1}};  // everything inside everything
    SecantScenario interleaved;
    interleaved.arcs = {{0, 6}, {4, 10}};
    interleaved.points = {{1, 5}, {5.5, 9}};   // one point of each flag overlaps
    CHECK(overlap_number(nested) > 0);
    CHECK(overlap_number(interleaved) > 0);
    CHECK(overlap_number(nested) != overlap_number(interleaved));
}

TEST_CASE("wronski-reality scenario fills a single table cell") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::wronski_reality;
    cfg.n = 1;
    cfg.d = 3;
    cfg.trials = 12;
    cfg.seed = 99;
    ExperimentRecord rec = run_experiment(cfg);
    auto table = rec.table();
    REQUIRE(table.size() == 1);
    CHECK(table.begin()->second.at(2) == 12);
    long total = 0;
    for (const auto& [klass, row] : table)
        for (const auto& [real, cnt] : row) total += cnt;
    CHECK(total == cfg.trials);
    for (const auto& t : rec.trials) {
        CHECK(t.complete);
        CHECK(t.real_count <= t.found);
        CHECK((t.found - t.real_count) % 2 == 0);
    }
}

TEST_CASE("monotone scenario classifies orderings") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::monotone_fourlines;
    cfg.trials = 60;
    cfg.seed = 5;
    cfg.root_lo = -3;
    cfg.root_hi = 3;
    ExperimentRecord rec = run_experiment(cfg);
    auto table = rec.table();
    bool monotone_seen = false;
    for (const auto& [klass, row] : table) {
        // monotone words keep the two 2s together at one end or the other
        bool monotone = klass == "11122" || klass == "22111";
        if (monotone) {
            monotone_seen = true;
            for (const auto& [real, cnt] : row) CHECK(real == 2);
        }
    }
    CHECK(monotone_seen);
}

TEST_CASE("secant scenario with disjoint arcs is always fully real") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::secant_fourlines;
    cfg.trials = 15;
    cfg.seed = 31;
    ExperimentRecord rec = run_experiment(cfg);
    auto table = rec.table();
    REQUIRE(table.count("overlap_0") == 1);
    CHECK(table.at("overlap_0").at(2) == 15);
}

TEST_CASE("zmatrix scenario records no violations") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::zmatrix_sample;
    cfg.trials = 50;
    cfg.zsize = 2;
    ExperimentRecord rec = run_experiment(cfg);
    for (const auto& t : rec.trials) CHECK(t.real_count == 0);
}

TEST_CASE("determinism: identical config gives byte-identical CSV") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::monotone_fourlines;
    cfg.trials = 40;
    cfg.seed = 1234;
    ExperimentRecord a = run_experiment(cfg);
    ExperimentRecord b = run_experiment(cfg);
    CHECK(render_csv(a) == render_csv(b));

    TempDir dir_a("detA"), dir_b("detB");
    write_reports(a, dir_a.path.string());
    write_reports(b, dir_b.path.string());
    CHECK(slurp(dir_a.path / "results.csv") == slurp(dir_b.path / "results.csv"));
    CHECK(slurp(dir_a.path / "cells.csv") == slurp(dir_b.path / "cells.csv"));
}

TEST_CASE("resumability: interrupting and resuming matches a straight run") {
    TempDir dir("resume");
    ExperimentConfig partial;
    partial.scenario = Scenario::monotone_fourlines;
    partial.trials = 10;
    partial.seed = 777;

    ExperimentConfig full = partial;
    full.trials = 25;

    // run the first 10 trials into the directory under the full config header
    // by running the full config with a budget cut: emulate an interruption by
    // running the partial config into a scratch dir and rewriting indices is
    // fragile; instead run the full config once, delete the tail of the
    // records file, and resume.
    ExperimentRecord straight = run_experiment(full, (dir.path / "run").string());
    std::string records = slurp(dir.path / "run" / "records.jsonl");
    std::istringstream in(records);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    REQUIRE(lines.size() == std::size_t(full.trials) + 1);  // header + trials
    {
        std::ofstream out(dir.path / "run" / "records.jsonl", std::ios::binary);
        for (std::size_t i = 0; i < 11; ++i) out << lines[i] << "\n";  // header + 10 records
    }
    ExperimentRecord resumed = run_experiment(full, (dir.path / "run").string());
    CHECK(render_csv(resumed) == render_csv(straight));

    // a stale records file for a different config is discarded
    ExperimentConfig other = full;
    other.seed = 778;
    ExperimentRecord fresh = run_experiment(other, (dir.path / "run").string());
    ExperimentRecord direct = run_experiment(other);
    CHECK(render_csv(fresh) == render_csv(direct));
}

TEST_CASE("report files and layouts") {
    TempDir dir("reports");
    ExperimentConfig cfg;
    cfg.scenario = Scenario::secant_fourlines;
    cfg.trials = 6;
    cfg.seed = 3;
    ExperimentRecord rec = run_experiment(cfg);
    write_reports(rec, dir.path.string());
    std::string csv = slurp(dir.path / "results.csv");
    CHECK(csv.rfind("real,", 0) == 0);             // table rows keyed by real count
    CHECK(csv.find("overlap_0") != std::string::npos);
    CHECK(csv.find("total") != std::string::npos);
    std::string cells = slurp(dir.path / "cells.csv");
    CHECK(cells.rfind("class,real,count", 0) == 0);
    CHECK(fs::exists(dir.path / "results.json"));

    // empty record: header-only files
    ExperimentConfig none = cfg;
    none.trials = 0;
    ExperimentRecord empty = run_experiment(none);
    TempDir dir2("empty");
    write_reports(empty, dir2.path.string());
    CHECK(slurp(dir2.path / "cells.csv") == "class,real,count\n");

    // ordering-table layout for the monotone scenario
    ExperimentConfig mono;
    mono.scenario = Scenario::monotone_fourlines;
    mono.trials = 8;
    ExperimentRecord mrec = run_experiment(mono);
    std::string mcsv = render_csv(mrec);
    CHECK(mcsv.rfind("class,real_", 0) == 0);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::clustered;
    cfg.n = 2;
    cfg.d = 4;
    cfg.trials = 7;
    cfg.seed = 42;
    cfg.ratio = 12.5;
    cfg.arcs = {{0, 1}, {2, 3}};
    ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.scenario == cfg.scenario);
    CHECK(back.n == cfg.n);
    CHECK(back.d == cfg.d);
    CHECK(back.trials == cfg.trials);
    CHECK(back.ratio == doctest::Approx(cfg.ratio));
    CHECK(back.arcs.size() == 2);
    CHECK_THROWS(scenario_from_name("bogus"));
}
