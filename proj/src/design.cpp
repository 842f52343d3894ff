#include "causal_ssd/design.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

InterventionSequence::InterventionSequence(std::vector<std::string> t) : targets(std::move(t)) {
    std::sort(targets.begin(), targets.end(), label_less);
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
        throw GraphError("intervention targets must be distinct");
}

bool sequence_less(const InterventionSequence& a, const InterventionSequence& b) {
    return std::lexicographical_compare(a.targets.begin(), a.targets.end(), b.targets.begin(), b.targets.end(),
                                        label_less);
}

OrientationCounts count_orientations(const UndirectedGraph& g) {
    OrientationCounts counts;
    counts.forward.assign(g.size(), std::vector<std::size_t>(g.size(), 0));
    visit_class(g, [&](const Dag& d) {
        ++counts.class_size;
        for (const auto& [a, b] : d.edges()) ++counts.forward[a][b];
    });
    return counts;
}

namespace {

std::vector<NodeId> target_ids(const UndirectedGraph& g, const InterventionSequence& s) {
    std::vector<NodeId> ids;
    for (const auto& t : s.targets) {
        auto id = g.nodes().find(t);
        if (!id) throw GraphError("intervention target '" + t + "' is not in the component");
        ids.push_back(*id);
    }
    return ids;
}

// Orient every edge touching a target as in d, close under Meek's rules and
// check that d is recovered.
bool identifies(const UndirectedGraph& g, const Dag& d, const std::vector<char>& is_target) {
    PartiallyDirectedGraph p = PartiallyDirectedGraph::from_undirected(g);
    for (const auto& [a, b] : d.edges())
        if (is_target[a] || is_target[b]) p.orient(a, b);
    const PartiallyDirectedGraph closed = meek_closure(p);
    return closed.fully_directed();
}

bool sufficient_for_class(const UndirectedGraph& g, const std::vector<Dag>& members, const std::vector<NodeId>& ids) {
    std::vector<char> is_target(g.size(), 0);
    for (NodeId id : ids) is_target[id] = 1;
    return std::all_of(members.begin(), members.end(), [&](const Dag& d) { return identifies(g, d, is_target); });
}

} // namespace

bool is_sufficient(const UndirectedGraph& g, const InterventionSequence& s) {
    const auto ids = target_ids(g, s);
    return sufficient_for_class(g, enumerate_class(g), ids);
}

std::vector<InterventionSequence> optimal_sequences(const UndirectedGraph& g) {
    const auto members = enumerate_class(g);
    const std::size_t n = g.size();
    std::vector<InterventionSequence> out;
    if (g.edge_count() == 0) {
        out.emplace_back();
        return out;
    }
    for (std::size_t k = 1; k <= n && out.empty(); ++k) {
        // Subsets of size k in lexicographic order of ids.
        std::vector<char> pick(n, 0);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
        do {
            std::vector<NodeId> ids;
            for (NodeId v = 0; v < n; ++v)
                if (pick[v]) ids.push_back(v);
            if (sufficient_for_class(g, members, ids)) out.emplace_back(labels_of(g.nodes(), ids));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::sort(out.begin(), out.end(), sequence_less);
    return out;
}

EdgeHypothesisPrior prior_h0(const UndirectedGraph& g, const OrientationCounts& counts, const std::string& u,
                             const std::string& v) {
    const NodeId a = g.index(u), b = g.index(v);
    if (!g.adjacent(a, b)) throw GraphError(u + " - " + v + " is not an edge of the component");
    EdgeHypothesisPrior prior;
    prior.u = u;
    prior.v = v;
    prior.class_size = counts.class_size;
    prior.dags_h0 = counts.forward[b][a];
    prior.p_h0 = static_cast<double>(prior.dags_h0) / static_cast<double>(counts.class_size);
    prior.p_h1 = static_cast<double>(counts.forward[a][b]) / static_cast<double>(counts.class_size);
    return prior;
}

EdgeHypothesisPrior prior_h0(const UndirectedGraph& g, const std::string& u, const std::string& v) {
    return prior_h0(g, count_orientations(g), u, v);
}

std::size_t best_size_index(std::span<const SequenceCandidate> candidates) {
    std::optional<std::size_t> best;
    std::size_t best_total = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& sizes = candidates[i].target_sizes;
        if (std::any_of(sizes.begin(), sizes.end(), [](const auto& s) { return !s.has_value(); })) continue;
        const std::size_t total =
            std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}, [](std::size_t acc, const auto& s) { return acc + *s; });
        if (!best || total < best_total ||
            (total == best_total && sequence_less(candidates[i].sequence, candidates[*best].sequence))) {
            best = i;
            best_total = total;
        }
    }
    if (!best) throw NoFeasibleSequenceError("no candidate sequence has every target sample size achievable");
    return *best;
}

InterventionSequence best_size_optimal_sequence(std::span<const SequenceCandidate> candidates) {
    return candidates[best_size_index(candidates)].sequence;
}

} // namespace causal_ssd
