#include "causal_ssd/ssd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

void DceThresholds::validate() const {
    if (!(k0 > 1.0) || !std::isfinite(k0)) throw DomainError("k0 must be a finite value above 1");
    if (!(k1 > 1.0) || !std::isfinite(k1)) throw DomainError("k1 must be a finite value above 1");
    if (!(1.0 / k1 < k0)) throw DomainError("thresholds leave no inconclusive band");
    if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie strictly between 0 and 1");
}

namespace {

void check_prior(double p_h0) {
    if (!(p_h0 >= 0.0 && p_h0 <= 1.0)) throw DomainError("edge prior must lie in [0, 1]");
}

// Exact H0 bands: misleading (0, 1/k1], inconclusive (1/k1, k0), decisive [k0, g(n)].
void fill_h0(DceProbabilities& p, const DceThresholds& t, int n) {
    p.p0_dc = prob_bf_above_h0(t.k0, n);
    p.p0_mis = 1.0 - prob_bf_above_h0(1.0 / t.k1, n);
    p.p0_inc = std::max(0.0, 1.0 - p.p0_dc - p.p0_mis);
}

} // namespace

DceProbabilities dce_from_h1_sample(const DceThresholds& thresholds, double p_h0, const BfPredictiveSample& h1) {
    thresholds.validate();
    check_prior(p_h0);
    if (h1.hypothesis != Hypothesis::H1) throw DomainError("DCE needs draws simulated under H1");
    if (h1.draws() == 0) throw DomainError("H1 predictive sample is empty");
    DceProbabilities p;
    p.n = h1.n;
    p.p_h0 = p_h0;
    fill_h0(p, thresholds, h1.n);
    p.p1_dc = h1.fraction_at_most(1.0 / thresholds.k1);
    p.p1_mis = h1.fraction_at_least(thresholds.k0);
    p.p1_inc = std::max(0.0, 1.0 - p.p1_dc - p.p1_mis);
    p.p1_se = std::sqrt(p.p1_dc * (1.0 - p.p1_dc) / double(h1.draws()));
    const double p_h1 = 1.0 - p_h0;
    p.overall_dc = p_h0 * p.p0_dc + p_h1 * p.p1_dc;
    p.overall_se = p_h1 * p.p1_se;
    return p;
}

DceProbabilities dce_probabilities(const std::string& u, const std::string& v, const DceThresholds& thresholds,
                                   int n, const EdgeHypothesisPrior& prior, const DesignPosterior& posterior,
                                   const InterventionDensity& f_u, const McConfig& mc, const RandomStream& stream) {
    const BfPredictiveSample h1 = sample_bf_h1(posterior, u, v, f_u, n, mc, stream);
    return dce_from_h1_sample(thresholds, prior.p_h0, h1);
}

EdgeSsdResult optimal_n_edge(const std::string& u, const std::string& v, const DceThresholds& thresholds,
                             const EdgeHypothesisPrior& prior, const DesignPosterior& posterior,
                             const InterventionDensity& f_u, int n_max, const McConfig& mc,
                             const RandomStream& stream) {
    thresholds.validate();
    check_prior(prior.p_h0);
    if (n_max < 2) throw DomainError("n_max must be at least 2");
    EdgeSsdResult result;
    result.u = u;
    result.v = v;
    result.p_h0 = prior.p_h0;
    result.n_max = n_max;
    const double p_h1 = 1.0 - prior.p_h0;
    for (int n = 2; n <= n_max; ++n) {
        if (prior.p_h0 * prob_bf_above_h0(thresholds.k0, n) + p_h1 < thresholds.zeta) continue;
        const DceProbabilities p = dce_probabilities(u, v, thresholds, n, prior, posterior, f_u, mc,
                                                     stream.substream(static_cast<std::uint64_t>(n)));
        if (p.overall_dc >= thresholds.zeta) {
            result.n_star = n;
            result.at_n_star = p;
            break;
        }
    }
    return result;
}

std::optional<int> optimal_n_node(const std::string& u, std::span<const EdgeSsdResult> neighbor_results) {
    if (neighbor_results.empty()) throw GraphError("node '" + u + "' has no neighbours to orient");
    int best = 0;
    for (const auto& r : neighbor_results) {
        if (r.u != u) throw DomainError("edge result for '" + r.u + "' passed as a neighbour of '" + u + "'");
        if (!r.n_star) return std::nullopt;
        best = std::max(best, *r.n_star);
    }
    return best;
}

InterventionPlan plan_sequence(const UndirectedGraph& component, const InterventionSequence& sequence,
                               const EdgeEvaluator& evaluate, std::size_t component_id) {
    InterventionPlan plan;
    plan.component = component_id;
    plan.sequence = sequence;
    if (sequence.size() == 0) {
        plan.total_n = 0;
        return plan;
    }
    const OrientationCounts counts = count_orientations(component);
    long long total = 0;
    bool achieved = true;
    for (const auto& target : sequence.targets) {
        const NodeId u = component.index(target);
        NodePlan node;
        node.target = target;
        for (NodeId w : component.neighbors(u)) {
            const EdgeHypothesisPrior prior = prior_h0(component, counts, target, component.label(w));
            node.edges.push_back(evaluate(target, component.label(w), prior));
        }
        node.n_star = optimal_n_node(target, node.edges);
        if (node.n_star) total += *node.n_star;
        else achieved = false;
        plan.nodes.push_back(std::move(node));
    }
    if (achieved) plan.total_n = total;
    return plan;
}

InterventionPlan plan_sequence(const UndirectedGraph& component, const InterventionSequence& sequence,
                               const SsdConfig& config, const DesignPosterior& posterior,
                               const RandomStream& stream, std::size_t component_id) {
    const EdgeEvaluator evaluate = [&](const std::string& u, const std::string& v, const EdgeHypothesisPrior& prior) {
        const RandomStream edge_stream = stream.substream(
            {static_cast<std::uint64_t>(component.index(u)), static_cast<std::uint64_t>(component.index(v))});
        return optimal_n_edge(u, v, config.thresholds, prior, posterior, config.f_u, config.n_max, config.mc,
                              edge_stream);
    };
    return plan_sequence(component, sequence, evaluate, component_id);
}

const char* to_string(ComponentStatus s) {
    switch (s) {
    case ComponentStatus::Ok: return "ok";
    case ComponentStatus::NotAchievable: return "not-achievable";
    case ComponentStatus::Capacity: return "capacity";
    case ComponentStatus::MissingColumns: return "missing-columns";
    case ComponentStatus::Data: return "data";
    case ComponentStatus::Graph: return "graph";
    }
    return "unknown";
}

bool CpdagPlan::all_ok() const {
    return std::all_of(components.begin(), components.end(),
                       [](const ComponentPlan& c) { return c.status == ComponentStatus::Ok; });
}

void mark_bos(ComponentPlan& plan) {
    for (auto& c : plan.candidates) c.bos = false;
    plan.bos.reset();
    std::vector<SequenceCandidate> cands;
    for (const auto& c : plan.candidates) {
        SequenceCandidate sc;
        sc.sequence = c.sequence;
        for (const auto& node : c.nodes)
            sc.target_sizes.push_back(node.n_star ? std::optional<std::size_t>(std::size_t(*node.n_star))
                                                  : std::nullopt);
        cands.push_back(std::move(sc));
    }
    try {
        const std::size_t best = best_size_index(cands);
        plan.bos = best;
        plan.candidates[best].bos = true;
    } catch (const NoFeasibleSequenceError& e) {
        plan.status = ComponentStatus::NotAchievable;
        plan.message = e.what();
    }
}

CpdagPlan plan_cpdag(const PartiallyDirectedGraph& cpdag, const DatasetMatrix& data, const SsdConfig& config,
                     const RandomStream& stream) {
    config.thresholds.validate();
    config.f_u.validate();
    const ChainComponentDecomposition dec = chain_components(cpdag);
    CpdagPlan out;
    for (std::size_t c = 0; c < dec.components.size(); ++c) {
        const UndirectedGraph& sub = dec.subgraphs[c];
        if (sub.size() < 2) continue;
        ComponentPlan plan;
        plan.id = c;
        plan.nodes = sub.nodes().labels();
        DatasetMatrix cols;
        try {
            cols = data.select(plan.nodes);
        } catch (const InsufficientDataError& e) {
            plan.status = ComponentStatus::MissingColumns;
            plan.message = e.what();
            out.components.push_back(std::move(plan));
            continue;
        }
        try {
            const DesignPosterior posterior = build_design_posterior(cols.values, config.a_omega, cols.labels);
            const RandomStream comp_stream = stream.substream(static_cast<std::uint64_t>(c));
            const std::vector<InterventionSequence> sequences = optimal_sequences(sub);
            // Edge results depend only on (u, v), so share them across candidate sequences.
            std::map<std::pair<std::string, std::string>, EdgeSsdResult> cache;
            const EdgeEvaluator evaluate = [&](const std::string& u, const std::string& v,
                                               const EdgeHypothesisPrior& prior) {
                const auto key = std::make_pair(u, v);
                if (auto it = cache.find(key); it != cache.end()) return it->second;
                const RandomStream edge_stream = comp_stream.substream(
                    {static_cast<std::uint64_t>(sub.index(u)), static_cast<std::uint64_t>(sub.index(v))});
                EdgeSsdResult r = optimal_n_edge(u, v, config.thresholds, prior, posterior, config.f_u,
                                                 config.n_max, config.mc, edge_stream);
                cache.emplace(key, r);
                return r;
            };
            for (const auto& seq : sequences) plan.candidates.push_back(plan_sequence(sub, seq, evaluate, c));
            mark_bos(plan);
        } catch (const CapacityError& e) {
            plan.status = ComponentStatus::Capacity;
            plan.message = e.what();
        } catch (const InsufficientDataError& e) {
            plan.status = ComponentStatus::Data;
            plan.message = e.what();
        } catch (const GraphError& e) {
            plan.status = ComponentStatus::Graph;
            plan.message = e.what();
        } catch (const DomainError& e) {
            plan.status = ComponentStatus::Data;
            plan.message = e.what();
        }
        out.components.push_back(std::move(plan));
    }
    return out;
}

} // namespace causal_ssd
