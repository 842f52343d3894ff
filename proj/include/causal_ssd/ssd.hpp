#ifndef CAUSAL_SSD_SSD_HPP
#define CAUSAL_SSD_SSD_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causal_ssd/dataset.hpp"
#include "causal_ssd/design.hpp"
#include "causal_ssd/graph.hpp"
#include "causal_ssd/predictive.hpp"
#include "causal_ssd/random.hpp"

namespace causal_ssd {

/// Decisive evidence: BF >= k0 for H0, BF <= 1/k1 for H1. zeta is the target DCE probability.
struct DceThresholds {
    double k0 = 6.0;
    double k1 = 6.0;
    double zeta = 0.8;

    void validate() const;
};

/// Evidence probabilities at one (edge, n). Entries for H1 are Monte Carlo
/// estimates; p1_se and overall_se are their binomial standard errors.
struct DceProbabilities {
    int n = 0;
    double p_h0 = 0.5;
    double p0_dc = 0.0, p0_inc = 0.0, p0_mis = 0.0;
    double p1_dc = 0.0, p1_inc = 0.0, p1_mis = 0.0;
    double p1_se = 0.0;
    double overall_dc = 0.0;
    double overall_se = 0.0;
};

// H0 part exactly, H1 part from the supplied draws (which must be at n).
DceProbabilities dce_from_h1_sample(const DceThresholds& thresholds, double p_h0, const BfPredictiveSample& h1);

DceProbabilities dce_probabilities(const std::string& u, const std::string& v, const DceThresholds& thresholds,
                                   int n, const EdgeHypothesisPrior& prior, const DesignPosterior& posterior,
                                   const InterventionDensity& f_u, const McConfig& mc, const RandomStream& stream);

struct EdgeSsdResult {
    std::string u;  // intervened node
    std::string v;
    double p_h0 = 0.5;
    std::optional<int> n_star;
    std::optional<DceProbabilities> at_n_star;
    int n_max = 0;

    bool achieved() const noexcept { return n_star.has_value(); }
};

/**
 * Smallest n in {2, ..., n_max} with overall DCE >= zeta. Point n draws from
 * stream.substream(n), so the result is the first crossing of the same curve
 * that dce_probabilities traces with those substreams. Points where the
 * crossing is impossible even with p1_dc = 1 are not simulated.
 */
EdgeSsdResult optimal_n_edge(const std::string& u, const std::string& v, const DceThresholds& thresholds,
                             const EdgeHypothesisPrior& prior, const DesignPosterior& posterior,
                             const InterventionDensity& f_u, int n_max, const McConfig& mc,
                             const RandomStream& stream);

// Largest neighbour requirement; nullopt if any neighbour edge is not achievable.
std::optional<int> optimal_n_node(const std::string& u, std::span<const EdgeSsdResult> neighbor_results);

struct NodePlan {
    std::string target;
    std::vector<EdgeSsdResult> edges;
    std::optional<int> n_star;
};

struct InterventionPlan {
    std::size_t component = 0;
    InterventionSequence sequence;
    std::vector<NodePlan> nodes;
    std::optional<long long> total_n;  // nullopt when some n*_u is missing
    bool bos = false;

    bool achieved() const noexcept { return total_n.has_value(); }
};

struct SsdConfig {
    DceThresholds thresholds;
    int n_max = 1000;
    McConfig mc;
    InterventionDensity f_u;
    std::optional<double> a_omega;  // T - 1 per component when unset
};

// Evaluates an edge u - v for an intervention on u given its class-count prior.
using EdgeEvaluator =
    std::function<EdgeSsdResult(const std::string& u, const std::string& v, const EdgeHypothesisPrior& prior)>;

// Literal batch algorithm: every target uses all of its neighbours in `component`.
InterventionPlan plan_sequence(const UndirectedGraph& component, const InterventionSequence& sequence,
                               const EdgeEvaluator& evaluate, std::size_t component_id = 0);

// Monte Carlo evaluation; edge (u, v) draws from stream.substream({index(u), index(v)}).
InterventionPlan plan_sequence(const UndirectedGraph& component, const InterventionSequence& sequence,
                               const SsdConfig& config, const DesignPosterior& posterior,
                               const RandomStream& stream, std::size_t component_id = 0);

// MissingColumns: the data lack some component variable. Data: the design
// posterior is improper or singular.
enum class ComponentStatus { Ok, NotAchievable, Capacity, MissingColumns, Data, Graph };

const char* to_string(ComponentStatus s);

struct ComponentPlan {
    std::size_t id = 0;
    std::vector<std::string> nodes;
    std::vector<InterventionPlan> candidates;
    std::optional<std::size_t> bos;  // index into candidates
    ComponentStatus status = ComponentStatus::Ok;
    std::string message;
};

struct CpdagPlan {
    std::vector<ComponentPlan> components;  // multi-node components only

    bool all_ok() const;
};

// Marks the candidate with the smallest total (ties: smaller sequence) as BOS.
void mark_bos(ComponentPlan& plan);

/**
 * Plans every chain component with at least two nodes. Component c uses its own
 * design posterior from the matching data columns and stream.substream(c).
 * Failures are recorded on the component and do not stop the others.
 */
CpdagPlan plan_cpdag(const PartiallyDirectedGraph& cpdag, const DatasetMatrix& data, const SsdConfig& config,
                     const RandomStream& stream);

} // namespace causal_ssd

#endif // CAUSAL_SSD_SSD_HPP
