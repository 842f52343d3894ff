#include "causal_ssd/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

#include "json.hpp"

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

Json optional_json(const std::optional<int>& x) {
    return x ? Json(*x) : Json(nullptr);
}

Json config_tree(const RunConfig& c) {
    Json j;
    j["k0"] = c.k0;
    j["k1"] = c.k1;
    j["zeta"] = c.zeta;
    j["a_omega"] = c.a_omega ? Json(*c.a_omega) : Json("T-1");
    j["n0"] = c.n0;
    j["n_max"] = c.n_max;
    j["draws"] = c.draws;
    j["seed"] = c.seed;
    j["intervention"] = {{"mean", c.intervention_mean}, {"sd", c.intervention_sd}};
    j["workers"] = c.workers;
    if (!c.graph.empty()) j["graph"] = c.graph;
    if (!c.data.empty()) j["data"] = c.data;
    if (c.edge) j["edge"] = {c.edge->first, c.edge->second};
    if (c.n) j["n"] = *c.n;
    return j;
}

Json edge_tree(const EdgeSsdResult& e) {
    Json j;
    j["u"] = e.u;
    j["v"] = e.v;
    j["p_h0"] = e.p_h0;
    j["n_star"] = optional_json(e.n_star);
    j["dce_at_n_star"] = e.at_n_star ? Json(e.at_n_star->overall_dc) : Json(nullptr);
    j["se"] = e.at_n_star ? Json(e.at_n_star->overall_se) : Json(nullptr);
    j["n_max"] = e.n_max;
    return j;
}

} // namespace

std::string config_json(const RunConfig& config) {
    return config_tree(config).dump();
}

std::string config_comment(const RunConfig& config) {
    return "# config: " + config_json(config) + "\n";
}

std::string plan_document(const CpdagPlan& plan, const RunConfig& config) {
    Json doc;
    doc["config"] = config_tree(config);
    Json comps = Json::array();
    for (const auto& c : plan.components) {
        Json jc;
        jc["component"] = c.id;
        jc["nodes"] = c.nodes;
        jc["status"] = to_string(c.status);
        if (!c.message.empty()) jc["message"] = c.message;
        Json cands = Json::array();
        for (const auto& p : c.candidates) {
            Json jp;
            jp["sequence"] = p.sequence.targets;
            Json targets = Json::array();
            for (const auto& node : p.nodes) {
                Json jn;
                jn["target"] = node.target;
                jn["n_star"] = optional_json(node.n_star);
                Json edges = Json::array();
                for (const auto& e : node.edges) edges.push_back(edge_tree(e));
                jn["edges"] = std::move(edges);
                targets.push_back(std::move(jn));
            }
            jp["targets"] = std::move(targets);
            jp["total_n"] = p.total_n ? Json(*p.total_n) : Json(nullptr);
            jp["bos"] = p.bos;
            cands.push_back(std::move(jp));
        }
        jc["candidates"] = std::move(cands);
        comps.push_back(std::move(jc));
    }
    doc["components"] = std::move(comps);
    return doc.dump(2) + "\n";
}

std::string two_node_report_document(const TwoNodeReport& r, const RunConfig& config) {
    Json doc;
    doc["config"] = config_tree(config);
    Json study;
    study["observations"] = r.config.observations;
    study["beta"] = r.config.beta;
    study["noise_sd"] = r.config.noise_sd;
    study["a_omega"] = r.posterior.a_omega;
    study["k_values"] = r.config.k_values;
    study["zeta_grid"] = r.config.zeta_grid;
    doc["study"] = std::move(study);
    Json post;
    post["df"] = r.posterior.df;
    post["conditional_df"] = r.posterior.conditional_df();
    post["scatter"] = {{r.posterior.scatter(0, 0), r.posterior.scatter(0, 1)},
                       {r.posterior.scatter(1, 0), r.posterior.scatter(1, 1)}};
    post["p_h0"] = r.p_h0;
    doc["design_posterior"] = std::move(post);

    Json table = Json::array();
    for (const auto& row : r.table) {
        Json j;
        j["truth"] = to_string(row.truth);
        j["n"] = row.n;
        j["moderate"] = row.moderate;
        j["strong_to_extreme"] = row.strong;
        if (row.moderate_mc) j["moderate_mc"] = *row.moderate_mc;
        if (row.strong_mc) j["strong_to_extreme_mc"] = *row.strong_mc;
        j["draws"] = row.draws;
        table.push_back(std::move(j));
    }
    doc["evidence_table"] = std::move(table);

    Json nstar = Json::array();
    for (const auto& p : r.optimal_n)
        nstar.push_back({{"k", p.k}, {"zeta", p.zeta}, {"n_star", optional_json(p.n_star)}});
    doc["optimal_n"] = std::move(nstar);
    doc["notes"] = r.notes;
    return doc.dump(2) + "\n";
}

namespace {

void dce_cells(std::ostream& out, const DceProbabilities& p) {
    out << p.n << ',' << format_double(p.p_h0) << ',' << format_double(p.p0_dc) << ',' << format_double(p.p0_inc)
        << ',' << format_double(p.p0_mis) << ',' << format_double(p.p1_dc) << ',' << format_double(p.p1_inc) << ','
        << format_double(p.p1_mis) << ',' << format_double(p.overall_dc) << ',' << format_double(p.overall_se);
}

const char* kDceHeader = "n,p_h0,p0_dc,p0_inc,p0_mis,p1_dc,p1_inc,p1_mis,overall_dc,se";

} // namespace

void write_dce_csv(std::ostream& out, std::span<const DceProbabilities> rows) {
    out << kDceHeader << '\n';
    for (const auto& p : rows) {
        dce_cells(out, p);
        out << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> rows) {
    out << "k," << kDceHeader << '\n';
    for (const auto& c : rows) {
        out << format_double(c.k) << ',';
        dce_cells(out, c.dce);
        out << '\n';
    }
}

void write_optimal_n_csv(std::ostream& out, std::span<const OptimalNPoint> rows) {
    out << "k,zeta,n_star\n";
    for (const auto& p : rows) {
        out << format_double(p.k) << ',' << format_double(p.zeta) << ',';
        if (p.n_star) out << *p.n_star;
        out << '\n';
    }
}

void write_evidence_csv(std::ostream& out, std::span<const EvidenceRow> rows) {
    out << "truth,n,moderate,strong,moderate_mc,strong_mc,draws\n";
    for (const auto& r : rows) {
        out << to_string(r.truth) << ',' << r.n << ',' << format_double(r.moderate) << ','
            << format_double(r.strong) << ',';
        if (r.moderate_mc) out << format_double(*r.moderate_mc);
        out << ',';
        if (r.strong_mc) out << format_double(*r.strong_mc);
        out << ',' << format_double(r.draws) << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at " + path.string());
    }
}

} // namespace causal_ssd
