#ifndef CAUSAL_SSD_GRAPH_HPP
#define CAUSAL_SSD_GRAPH_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace causal_ssd {

using NodeId = std::size_t;
using NodePair = std::pair<NodeId, NodeId>;
using LabelPair = std::pair<std::string, std::string>;

// Natural order on labels: all-digit labels compare numerically, everything else
// lexicographically, digits before non-digits.
bool label_less(const std::string& a, const std::string& b);

/**
 * Sorted, distinct node labels with a label -> dense index map. Every graph type
 * shares this so iteration order is always the sorted label order.
 */
class NodeLabels {
public:
    NodeLabels() = default;
    explicit NodeLabels(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(NodeId id) const { return labels_.at(id); }
    std::optional<NodeId> find(const std::string& label) const;
    NodeId index(const std::string& label) const;

    bool operator==(const NodeLabels& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::vector<std::string> labels);
    UndirectedGraph(std::vector<std::string> labels, const std::vector<LabelPair>& edges);

    std::size_t size() const noexcept { return nodes_.size(); }
    const NodeLabels& nodes() const noexcept { return nodes_; }
    const std::string& label(NodeId id) const { return nodes_.label(id); }
    NodeId index(const std::string& label) const { return nodes_.index(label); }

    void add_edge(NodeId a, NodeId b);
    bool adjacent(NodeId a, NodeId b) const { return adj_[a][b] != 0; }
    std::vector<NodeId> neighbors(NodeId v) const;
    std::vector<NodePair> edges() const;  // (a, b) with a < b
    std::size_t edge_count() const;

    UndirectedGraph induced(std::span<const NodeId> members) const;

    bool operator==(const UndirectedGraph& other) const {
        return nodes_ == other.nodes_ && adj_ == other.adj_;
    }

private:
    NodeLabels nodes_;
    std::vector<std::vector<char>> adj_;
};

/// Directed acyclic graph; construction rejects cycles with GraphError.
class Dag {
public:
    Dag() = default;
    Dag(std::vector<std::string> labels, const std::vector<LabelPair>& edges);
    Dag(NodeLabels nodes, const std::vector<NodePair>& edges);

    std::size_t size() const noexcept { return nodes_.size(); }
    const NodeLabels& nodes() const noexcept { return nodes_; }
    const std::string& label(NodeId id) const { return nodes_.label(id); }

    bool has_edge(NodeId from, NodeId to) const { return arc_[from][to] != 0; }
    bool adjacent(NodeId a, NodeId b) const { return has_edge(a, b) || has_edge(b, a); }
    std::vector<NodeId> parents(NodeId v) const;
    std::vector<NodePair> edges() const;
    std::vector<NodeId> topological_order() const;
    UndirectedGraph skeleton() const;

    bool operator==(const Dag& other) const { return nodes_ == other.nodes_ && arc_ == other.arc_; }

private:
    NodeLabels nodes_;
    std::vector<std::vector<char>> arc_;
};

/// Graph with disjoint directed and undirected edge sets (CPDAG, PDAG, chain graph).
class PartiallyDirectedGraph {
public:
    PartiallyDirectedGraph() = default;
    explicit PartiallyDirectedGraph(std::vector<std::string> labels);
    explicit PartiallyDirectedGraph(NodeLabels nodes);
    PartiallyDirectedGraph(std::vector<std::string> labels, const std::vector<LabelPair>& directed,
                           const std::vector<LabelPair>& undirected);

    static PartiallyDirectedGraph from_undirected(const UndirectedGraph& g);
    static PartiallyDirectedGraph from_dag(const Dag& d);

    std::size_t size() const noexcept { return nodes_.size(); }
    const NodeLabels& nodes() const noexcept { return nodes_; }
    const std::string& label(NodeId id) const { return nodes_.label(id); }
    NodeId index(const std::string& label) const { return nodes_.index(label); }

    void add_directed(NodeId from, NodeId to);
    void add_undirected(NodeId a, NodeId b);
    // Turns the undirected edge a - b into a -> b.
    void orient(NodeId from, NodeId to);

    bool has_directed(NodeId from, NodeId to) const { return arc_[from][to] != 0; }
    bool has_undirected(NodeId a, NodeId b) const { return line_[a][b] != 0; }
    bool adjacent(NodeId a, NodeId b) const {
        return has_undirected(a, b) || has_directed(a, b) || has_directed(b, a);
    }

    std::vector<NodePair> directed_edges() const;
    std::vector<NodePair> undirected_edges() const;  // (a, b) with a < b
    bool fully_directed() const { return undirected_edges().empty(); }
    UndirectedGraph skeleton() const;

    bool operator==(const PartiallyDirectedGraph& other) const {
        return nodes_ == other.nodes_ && arc_ == other.arc_ && line_ == other.line_;
    }

private:
    void check_new_pair(NodeId a, NodeId b) const;

    NodeLabels nodes_;
    std::vector<std::vector<char>> arc_;
    std::vector<std::vector<char>> line_;
};

struct ChainComponentDecomposition {
    // Each component lists node ids of the source graph, ascending.
    std::vector<std::vector<NodeId>> components;
    // Undirected subgraph induced by each component, labels preserved.
    std::vector<UndirectedGraph> subgraphs;
    // component_of[v] indexes `components`.
    std::vector<std::size_t> component_of;
};

/// Node sets are ascending vectors of ids of the graph the sequence was built from.
struct CliqueSequence {
    std::vector<std::vector<NodeId>> cliques;
    std::vector<std::vector<NodeId>> histories;
    std::vector<std::vector<NodeId>> separators;
    std::vector<std::vector<NodeId>> residuals;
};

// Largest component size accepted by exact class enumeration.
inline constexpr std::size_t kEnumerationCap = 12;

ChainComponentDecomposition chain_components(const PartiallyDirectedGraph& g);

bool is_connected(const UndirectedGraph& g);

// Visit order of maximum-cardinality search; ties go to the smallest id.
std::vector<NodeId> maximum_cardinality_search(const UndirectedGraph& g, std::optional<NodeId> first = {},
                                               std::optional<NodeId> second = {});

bool is_decomposable(const UndirectedGraph& g);

// Optionally the first clique is forced to contain the designated edge.
CliqueSequence perfect_clique_sequence(const UndirectedGraph& g, std::optional<NodePair> designated = {});

// Calls `visit` once per DAG with skeleton g and no v-structures.
void visit_class(const UndirectedGraph& g, const std::function<void(const Dag&)>& visit,
                 std::size_t cap = kEnumerationCap);

std::vector<Dag> enumerate_class(const UndirectedGraph& g, std::size_t cap = kEnumerationCap);

// Closes g under Meek's orientation rules R1-R4.
PartiallyDirectedGraph meek_closure(const PartiallyDirectedGraph& g);

PartiallyDirectedGraph dag_to_cpdag(const Dag& d);

std::vector<std::string> labels_of(const NodeLabels& nodes, std::span<const NodeId> ids);

} // namespace causal_ssd

#endif // CAUSAL_SSD_GRAPH_HPP
