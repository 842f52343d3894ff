#include "cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "causal_ssd/bayes.hpp"
#include "causal_ssd/config.hpp"
#include "causal_ssd/design.hpp"
#include "causal_ssd/errors.hpp"
#include "causal_ssd/graph.hpp"
#include "causal_ssd/graph_io.hpp"
#include "causal_ssd/harness.hpp"
#include "causal_ssd/predictive.hpp"
#include "causal_ssd/report.hpp"
#include "causal_ssd/ssd.hpp"

namespace causal_ssd::cli {

namespace {

// Substream branch for H0 draws next to the H1 block streams of one n.
constexpr std::uint64_t kH0Branch = std::uint64_t{1} << 40;

struct UsageError : Error {
    using Error::Error;
};

void add_common(CLI::App& sub, RunConfig& c, std::string& edge, std::optional<double>& a_omega) {
    sub.add_option("--k0", c.k0, "BF threshold for decisive evidence in favour of H0")->envname("CAUSAL_SSD_K0");
    sub.add_option("--k1", c.k1, "BF threshold for decisive evidence in favour of H1 (BF <= 1/k1)")
        ->envname("CAUSAL_SSD_K1");
    sub.add_option("--zeta", c.zeta, "target probability of decisive and correct evidence")
        ->envname("CAUSAL_SSD_ZETA");
    sub.add_option("--a-omega", a_omega, "prior degrees of freedom (default T-1 per component)")
        ->envname("CAUSAL_SSD_A_OMEGA");
    sub.add_option("--n0", c.n0, "training sample size of the fractional Bayes factor")->envname("CAUSAL_SSD_N0");
    sub.add_option("--n-max", c.n_max, "largest interventional sample size searched")
        ->envname("CAUSAL_SSD_N_MAX");
    sub.add_option("--draws", c.draws, "Monte Carlo draws per (edge, n)")->envname("CAUSAL_SSD_DRAWS");
    sub.add_option("--seed", c.seed, "master seed")->envname("CAUSAL_SSD_SEED");
    sub.add_option("--intervention-mean", c.intervention_mean, "mean of the interventional normal density")
        ->envname("CAUSAL_SSD_INTERVENTION_MEAN");
    sub.add_option("--intervention-sd", c.intervention_sd, "sd of the interventional normal density")
        ->envname("CAUSAL_SSD_INTERVENTION_SD");
    sub.add_option("--workers", c.workers, "worker threads for Monte Carlo blocks")->envname("CAUSAL_SSD_WORKERS");
    sub.add_option("--graph", c.graph, "edge-list file")->envname("CAUSAL_SSD_GRAPH");
    sub.add_option("--data", c.data, "observational CSV with one column per node")->envname("CAUSAL_SSD_DATA");
    sub.add_option("--edge", edge, "edge as u,v (intervention on u)")->envname("CAUSAL_SSD_EDGE");
    sub.add_option("--out", c.out, "output file (directory for simulate)")->envname("CAUSAL_SSD_OUT");
}

void validate(const RunConfig& c) {
    try {
        c.thresholds().validate();
        c.intervention().validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (c.n_max < 2) throw UsageError("--n-max must be at least 2");
    if (c.draws == 0) throw UsageError("--draws must be positive");
    if (c.workers == 0) throw UsageError("--workers must be positive");
    if (c.n0 != 1.0)
        throw UsageError("only --n0 1 is supported: the predictive machinery uses the closed-form Bayes factor");
    if (c.a_omega && !std::isfinite(*c.a_omega)) throw UsageError("--a-omega must be finite");
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
    if (c.out.empty()) out << content;
    else write_file_atomic(c.out, content);
}

std::string require(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
    return value;
}

std::pair<std::string, std::string> parse_edge(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == text.size() ||
        text.find(',', comma + 1) != std::string::npos)
        throw UsageError("--edge must look like u,v");
    return {text.substr(0, comma), text.substr(comma + 1)};
}

// Everything the single-edge commands need.
struct EdgeContext {
    UndirectedGraph component;
    DesignPosterior posterior;
    EdgeHypothesisPrior prior;
    RandomStream stream{0};
};

EdgeContext edge_context(const RunConfig& c) {
    const PartiallyDirectedGraph g = read_edge_list(require(c.graph, "--graph"));
    if (!c.edge) throw UsageError("--edge is required");
    const auto& [u, v] = *c.edge;
    const auto iu = g.nodes().find(u);
    const auto iv = g.nodes().find(v);
    if (!iu || !iv) throw GraphError("edge " + u + "," + v + " names a node that is not in the graph");
    if (!g.has_undirected(*iu, *iv)) throw GraphError("edge " + u + " - " + v + " is not undirected in the graph");
    const ChainComponentDecomposition dec = chain_components(g);
    const std::size_t comp = dec.component_of[*iu];
    EdgeContext ctx;
    ctx.component = dec.subgraphs[comp];
    const DatasetMatrix data =
        ingest_csv(require(c.data, "--data"), {ctx.component.nodes().labels(), ','});
    const DatasetMatrix cols = data.select(ctx.component.nodes().labels());
    ctx.posterior = build_design_posterior(cols.values, c.a_omega, cols.labels);
    ctx.prior = prior_h0(ctx.component, u, v);
    ctx.stream = RandomStream(c.seed).substream(
        {static_cast<std::uint64_t>(comp), static_cast<std::uint64_t>(ctx.component.index(u)),
         static_cast<std::uint64_t>(ctx.component.index(v))});
    return ctx;
}

int cmd_plan(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const PartiallyDirectedGraph g = read_edge_list(require(c.graph, "--graph"));
    const ChainComponentDecomposition dec = chain_components(g);
    bool needs_data = false;
    for (const auto& comp : dec.components) needs_data = needs_data || comp.size() > 1;
    DatasetMatrix data;
    if (needs_data) data = ingest_csv(require(c.data, "--data"));
    const CpdagPlan plan = plan_cpdag(g, data, c.ssd(), RandomStream(c.seed));
    emit(c, plan_document(plan, c), out);

    int code = kOk;
    const auto rank = [](int x) { return x == kInput ? 3 : x == kCapacity ? 2 : x == kNotAchievable ? 1 : 0; };
    for (const auto& comp : plan.components) {
        int here = kOk;
        switch (comp.status) {
        case ComponentStatus::Ok: break;
        case ComponentStatus::NotAchievable: here = kNotAchievable; break;
        case ComponentStatus::Capacity:
        case ComponentStatus::Data: here = kCapacity; break;
        case ComponentStatus::MissingColumns:
        case ComponentStatus::Graph: here = kInput; break;
        }
        // A feasible BOS can still leave other candidates with missing sizes.
        if (here == kOk)
            for (const auto& cand : comp.candidates)
                if (!cand.achieved()) here = kNotAchievable;
        if (here != kOk)
            err << "component " << comp.id << " (" << to_string(comp.status) << ")"
                << (comp.message.empty() ? std::string() : ": " + comp.message) << '\n';
        if (rank(here) > rank(code)) code = here;
    }
    return code;
}

int cmd_dce_curve(const RunConfig& c, std::ostream& out) {
    const EdgeContext ctx = edge_context(c);
    const auto& [u, v] = *c.edge;
    std::vector<DceProbabilities> rows;
    for (int n = 2; n <= c.n_max; ++n)
        rows.push_back(dce_probabilities(u, v, c.thresholds(), n, ctx.prior, ctx.posterior, c.intervention(), c.mc(),
                                         ctx.stream.substream(static_cast<std::uint64_t>(n))));
    std::ostringstream csv;
    csv << config_comment(c);
    write_dce_csv(csv, rows);
    emit(c, csv.str(), out);
    return kOk;
}

int cmd_predict_bf(const RunConfig& c, std::ostream& out) {
    if (!c.n) throw UsageError("--n is required");
    if (*c.n < 2) throw UsageError("--n must be at least 2");
    const EdgeContext ctx = edge_context(c);
    const auto& [u, v] = *c.edge;
    const RandomStream at_n = ctx.stream.substream(static_cast<std::uint64_t>(*c.n));
    const std::vector<BfPredictiveSample> samples{
        sample_bf_h0(*c.n, c.mc(), at_n.substream(kH0Branch)),
        sample_bf_h1(ctx.posterior, u, v, c.intervention(), *c.n, c.mc(), at_n)};
    std::ostringstream csv;
    csv << config_comment(c);
    write_predictive_csv(csv, samples);
    emit(c, csv.str(), out);
    return kOk;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    const std::filesystem::path dir = c.out.empty() ? std::filesystem::path("simulate-out") : std::filesystem::path(c.out);
    std::filesystem::create_directories(dir);
    TwoNodeStudyConfig study;
    study.a_omega = c.a_omega;
    study.f_u = c.intervention();
    study.mc = c.mc();
    study.n_max = c.n_max;
    const TwoNodeReport report = replicate_two_node_study(study, RandomStream(c.seed));

    const std::string header = config_comment(c);
    const auto csv_file = [&](const char* name, auto&& writer) {
        std::ostringstream s;
        s << header;
        writer(s);
        write_file_atomic(dir / name, s.str());
    };
    write_file_atomic(dir / "report.json", two_node_report_document(report, c));
    csv_file("evidence_table.csv", [&](std::ostream& s) { write_evidence_csv(s, report.table); });
    csv_file("dce_curves.csv", [&](std::ostream& s) { write_curve_csv(s, report.curves); });
    csv_file("optimal_n.csv", [&](std::ostream& s) { write_optimal_n_csv(s, report.optimal_n); });
    csv_file("predictive_bf.csv", [&](std::ostream& s) { write_predictive_csv(s, report.predictive); });

    for (const auto& row : report.table)
        out << to_string(row.truth) << " n=" << row.n << " moderate=" << format_double(row.moderate)
            << " strong=" << format_double(row.strong) << '\n';
    for (const auto& p : report.optimal_n)
        if (p.zeta > 0.79 && p.zeta < 0.81)
            out << "n* (k=" << p.k << ", zeta=0.8) = " << (p.n_star ? std::to_string(*p.n_star) : "not reached")
                << '\n';
    for (const auto& note : report.notes) out << "note: " << note << '\n';
    out << "wrote " << dir.string() << '\n';
    return kOk;
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plan intervention experiments and their sample sizes for causal DAG identification"};
    app.require_subcommand(1);
    RunConfig config;
    std::string edge;
    std::optional<double> a_omega;
    int n = 0;

    auto* plan = app.add_subcommand("plan", "choose intervention sequences and sample sizes for a CPDAG");
    auto* curve = app.add_subcommand("dce-curve", "decisive-and-correct evidence probability against n for one edge");
    auto* predict = app.add_subcommand("predict-bf", "predictive Bayes-factor draws under H0 and H1 for one edge");
    auto* simulate = app.add_subcommand("simulate", "two-node replication study");
    for (auto* sub : {plan, curve, predict, simulate}) add_common(*sub, config, edge, a_omega);
    predict->add_option("--n", n, "interventional sample size")->envname("CAUSAL_SSD_N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        config.a_omega = a_omega;
        if (!edge.empty()) config.edge = parse_edge(edge);
        if (predict->parsed() && n != 0) config.n = n;
        validate(config);
        if (plan->parsed()) return cmd_plan(config, out, err);
        if (curve->parsed()) return cmd_dce_curve(config, out);
        if (predict->parsed()) return cmd_predict_bf(config, out);
        return cmd_simulate(config, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const GraphError& e) {
        err << "graph error: " << e.what() << '\n';
        return kInput;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kCapacity;
    } catch (const InsufficientDataError& e) {
        err << "insufficient data: " << e.what() << '\n';
        return kCapacity;
    } catch (const NoFeasibleSequenceError& e) {
        err << "not achievable: " << e.what() << '\n';
        return kNotAchievable;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kCapacity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }
}

} // namespace causal_ssd::cli
