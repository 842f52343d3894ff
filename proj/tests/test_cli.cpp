#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "causal_ssd/harness.hpp"
#include "causal_ssd/report.hpp"
#include "cli.hpp"

using namespace causal_ssd;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "causal-ssd");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

std::string to_csv(const DatasetMatrix& d) {
    std::string s;
    for (std::size_t j = 0; j < d.labels.size(); ++j) s += (j ? "," : "") + d.labels[j];
    s += '\n';
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) s += (j ? "," : "") + format_double(d.values(i, j));
        s += '\n';
    }
    return s;
}

DatasetMatrix sem(const Dag& dag, Eigen::Index rows, std::uint64_t seed) {
    std::map<NodePair, double> b;
    for (const auto& e : dag.edges()) b[e] = 0.6;
    RandomStream s(seed);
    return generate_sem_data({dag, b, std::vector<double>(dag.size(), 1.0)}, rows, s);
}

struct Workspace {
    fs::path dir;

    Workspace() : dir(fs::temp_directory_path() / ("causal_ssd_cli_" + std::to_string(std::rand()))) {
        fs::create_directories(dir);
        write(dir / "fig1.txt", "1 -- 2\n2 -- 3\n1 -- 3\n4 -- 5\n2 -> 4\n2 -> 5\n");
        write(dir / "fig1.csv",
              to_csv(sem(Dag({"1", "2", "3", "4", "5"},
                             {{"1", "2"}, {"1", "3"}, {"2", "3"}, {"2", "4"}, {"2", "5"}, {"4", "5"}}),
                         200, 1)));
        write(dir / "path.txt", "1 -- 2\n2 -- 3\n");
        write(dir / "path.csv", to_csv(sem(Dag({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}), 200, 2)));
        write(dir / "pair.txt", "u -- v\n");
        write(dir / "pair.csv", to_csv(sem(Dag({"u", "v"}, {{"u", "v"}}), 50, 3)));
        write(dir / "edgeless.txt", "a\nb\nc\n");
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string operator()(const char* name) const { return (dir / name).string(); }
};

const std::vector<std::string> kQuick{"--draws", "300", "--n-max", "80", "--k0", "3", "--k1", "3"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b = kQuick) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("plan on a CPDAG with two chain components") {
    Workspace ws;
    const auto r = run(with({"plan", "--graph", ws("fig1.txt"), "--data", ws("fig1.csv")}));
    CAPTURE(r.err);
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["config"]["k0"] == 3.0);
    CHECK(doc["config"]["n0"] == 1.0);
    CHECK(doc["config"]["seed"] == 20221);
    CHECK(doc["config"]["draws"] == 300);
    REQUIRE(doc["components"].size() == 2);
    CHECK(doc["components"][0]["nodes"] == json({"1", "2", "3"}));
    CHECK(doc["components"][1]["nodes"] == json({"4", "5"}));
    for (const auto& c : doc["components"]) {
        int bos = 0;
        for (const auto& cand : c["candidates"]) bos += cand["bos"].get<bool>();
        CHECK(bos == 1);
        const auto& edge = c["candidates"][0]["targets"][0]["edges"][0];
        for (const char* key : {"u", "v", "p_h0", "n_star", "dce_at_n_star", "se", "n_max"}) CHECK(edge.contains(key));
    }

    const auto file = ws("plan.json");
    CHECK(run(with({"plan", "--graph", ws("fig1.txt"), "--data", ws("fig1.csv"), "--out", file})).code == 0);
    CHECK(slurp(file) == r.out);
}

TEST_CASE("plan on a path and an edgeless graph") {
    Workspace ws;
    const auto r = run(with({"plan", "--graph", ws("path.txt"), "--data", ws("path.csv")}));
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["components"].size() == 1);
    const auto& cands = doc["components"][0]["candidates"];
    REQUIRE(cands.size() == 1);
    CHECK(cands[0]["sequence"] == json({"2"}));
    CHECK(cands[0]["bos"] == true);
    CHECK(cands[0]["targets"][0]["edges"].size() == 2);

    const auto none = run({"plan", "--graph", ws("edgeless.txt")});
    CHECK(none.code == 0);
    CHECK(json::parse(none.out)["components"].empty());
}

TEST_CASE("dce-curve") {
    Workspace ws;
    const auto args = with({"dce-curve", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "u,v"});
    const auto a = run(args);
    CAPTURE(a.err);
    REQUIRE(a.code == 0);
    std::istringstream lines(a.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config: {", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "n,p_h0,p0_dc,p0_inc,p0_mis,p1_dc,p1_inc,p1_mis,overall_dc,se");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 79);
    CHECK(run(args).out == a.out);
    CHECK(run(with(args, {"--seed", "5"})).out != a.out);

    // k0 above g(80) ~ 7.1: the p0_dc column is identically zero.
    const auto hi = run(with({"dce-curve", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "u,v",
                              "--draws", "50", "--n-max", "80", "--k0", "20"}, {}));
    REQUIRE(hi.code == 0);
    std::istringstream hl(hi.out);
    std::getline(hl, line);
    std::getline(hl, line);
    while (std::getline(hl, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        REQUIRE(cells.size() == 10);
        REQUIRE(cells[2] == "0");
    }
}

TEST_CASE("predict-bf") {
    Workspace ws;
    const auto r = run({"predict-bf", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "u,v", "--n",
                        "50", "--draws", "500"});
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "hypothesis,n,draw_index,bf");
    int h0 = 0, h1 = 0;
    while (std::getline(lines, line)) {
        const double bf = std::stod(line.substr(line.rfind(',') + 1));
        if (line.rfind("H0,50,", 0) == 0) {
            ++h0;
            REQUIRE(bf <= 10.0);
        } else {
            REQUIRE(line.rfind("H1,50,", 0) == 0);
            ++h1;
        }
    }
    CHECK(h0 == 500);
    CHECK(h1 == 500);
    CHECK(run({"predict-bf", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "u,v"}).code == 1);
}

TEST_CASE("exit statuses") {
    Workspace ws;
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"plan", "--k0", "abc"}).code == 1);
    CHECK(run({"plan", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--k0", "0.5"}).code == 1);
    CHECK(run({"plan", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--n0", "2"}).code == 1);
    CHECK(run({"plan", "--data", ws("pair.csv")}).code == 1);
    CHECK(run({"dce-curve", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "uv"}).code == 1);
    CHECK(run({"plan", "--help"}).code == 0);

    CHECK(run({"plan", "--graph", ws("missing.txt"), "--data", ws("pair.csv")}).code == 2);
    write(ws.dir / "bad.csv", "u,v\n1,2\nx,3\n");
    const auto bad = run({"plan", "--graph", ws("pair.txt"), "--data", ws("bad.csv")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);
    write(ws.dir / "cycle.txt", "a -> b\nb -> a\n");
    CHECK(run({"plan", "--graph", ws("cycle.txt")}).code == 2);
    write(ws.dir / "directed.txt", "u -> v\n");
    CHECK(run({"dce-curve", "--graph", ws("directed.txt"), "--data", ws("pair.csv"), "--edge", "u,v"}).code == 2);
    write(ws.dir / "other.csv", "u,w\n1,2\n3,4\n");
    CHECK(run({"plan", "--graph", ws("pair.txt"), "--data", ws("other.csv")}).code == 2);

    // Two rows for two variables: the posterior is improper.
    write(ws.dir / "short.csv", "u,v\n1,2\n2,1\n");
    CHECK(run({"dce-curve", "--graph", ws("pair.txt"), "--data", ws("short.csv"), "--edge", "u,v", "--a-omega",
               "-0.5", "--draws", "10"})
              .code == 3);
    write(ws.dir / "same.csv", "u,v\n1,1\n2,2\n3,3\n");
    CHECK(run({"plan", "--graph", ws("pair.txt"), "--data", ws("same.csv"), "--draws", "10"}).code == 3);

    const auto na = run({"plan", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--draws", "50", "--n-max",
                         "10", "--k0", "10", "--k1", "10", "--zeta", "0.99"});
    CHECK(na.code == 4);
    CHECK(json::parse(na.out)["components"][0]["status"] == "not-achievable");
}

TEST_CASE("environment overrides") {
    Workspace ws;
    const auto base = with({"dce-curve", "--graph", ws("pair.txt"), "--data", ws("pair.csv"), "--edge", "u,v"});
    const auto flag = run(with(base, {"--seed", "77"}));
    ::setenv("CAUSAL_SSD_SEED", "77", 1);
    const auto env = run(base);
    ::unsetenv("CAUSAL_SSD_SEED");
    CHECK(env.code == 0);
    CHECK(env.out == flag.out);
    CHECK(env.out.find("\"seed\":77") != std::string::npos);
}

TEST_CASE("simulate writes every artifact") {
    Workspace ws;
    const auto out = ws.dir / "sim";
    const std::vector<std::string> args{"simulate", "--draws", "200", "--n-max", "60", "--out", out.string()};
    const auto r = run(args);
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("H0 n=50 moderate=") != std::string::npos);
    std::map<std::string, std::string> first;
    for (const char* f : {"report.json", "evidence_table.csv", "dce_curves.csv", "optimal_n.csv", "predictive_bf.csv"}) {
        REQUIRE(fs::exists(out / f));
        first[f] = slurp(out / f);
    }
    const auto doc = json::parse(first["report.json"]);
    CHECK(doc["config"]["draws"] == 200);
    CHECK(doc["evidence_table"].size() == 6);
    CHECK(first["evidence_table.csv"].rfind("# config: ", 0) == 0);
    REQUIRE(run(args).code == 0);
    for (const auto& [f, bytes] : first) CHECK(slurp(out / f) == bytes);

    // H0 cells do not move with the seed.
    REQUIRE(run({"simulate", "--draws", "200", "--n-max", "60", "--seed", "9", "--out", out.string()}).code == 0);
    const auto other = json::parse(slurp(out / "report.json"));
    for (int i = 0; i < 3; ++i) {
        CHECK(other["evidence_table"][i]["moderate"] == doc["evidence_table"][i]["moderate"]);
        CHECK(other["evidence_table"][i]["strong_to_extreme"] == doc["evidence_table"][i]["strong_to_extreme"]);
    }
    CHECK(other["design_posterior"]["scatter"] != doc["design_posterior"]["scatter"]);
}
