#include "causal_ssd/graph.hpp"

#include <algorithm>
#include <numeric>

#include "causal_ssd/errors.hpp"

namespace causal_ssd {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(const std::string& s) {
    std::string_view v(s);
    while (v.size() > 1 && v.front() == '0') v.remove_prefix(1);
    return v;
}

using BitMatrix = std::vector<std::vector<char>>;

BitMatrix square(std::size_t n) { return BitMatrix(n, std::vector<char>(n, 0)); }

void check_ids(std::size_t n, NodeId a, NodeId b) {
    if (a >= n || b >= n) throw GraphError("node id out of range");
    if (a == b) throw GraphError("self-loops are not allowed");
}

bool is_subset(const std::vector<NodeId>& small, const std::vector<NodeId>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool reachable(const BitMatrix& arc, NodeId from, NodeId to) {
    const std::size_t n = arc.size();
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        if (x == to) return true;
        for (NodeId y = 0; y < n; ++y) {
            if (arc[x][y] && !seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return false;
}

} // namespace

bool label_less(const std::string& a, const std::string& b) {
    const bool da = all_digits(a);
    const bool db = all_digits(b);
    if (da && db) {
        const auto sa = strip_zeros(a);
        const auto sb = strip_zeros(b);
        if (sa.size() != sb.size()) return sa.size() < sb.size();
        if (sa != sb) return sa < sb;
        return a < b;
    }
    if (da != db) return da;
    return a < b;
}

// ---------------------------------------------------------------------------

NodeLabels::NodeLabels(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end(), label_less);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw GraphError("node labels must be non-empty");
        if (!index_.emplace(labels_[i], i).second) throw GraphError("duplicate node label '" + labels_[i] + "'");
    }
}

std::optional<NodeId> NodeLabels::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId NodeLabels::index(const std::string& label) const {
    auto id = find(label);
    if (!id) throw GraphError("unknown node '" + label + "'");
    return *id;
}

std::vector<std::string> labels_of(const NodeLabels& nodes, std::span<const NodeId> ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (NodeId id : ids) out.push_back(nodes.label(id));
    return out;
}

// ---------------------------------------------------------------------------

UndirectedGraph::UndirectedGraph(std::vector<std::string> labels)
    : nodes_(std::move(labels)), adj_(square(nodes_.size())) {}

UndirectedGraph::UndirectedGraph(std::vector<std::string> labels, const std::vector<LabelPair>& edges)
    : UndirectedGraph(std::move(labels)) {
    for (const auto& [a, b] : edges) add_edge(index(a), index(b));
}

void UndirectedGraph::add_edge(NodeId a, NodeId b) {
    check_ids(size(), a, b);
    adj_[a][b] = adj_[b][a] = 1;
}

std::vector<NodeId> UndirectedGraph::neighbors(NodeId v) const {
    std::vector<NodeId> out;
    for (NodeId w = 0; w < size(); ++w)
        if (adj_[v][w]) out.push_back(w);
    return out;
}

std::vector<NodePair> UndirectedGraph::edges() const {
    std::vector<NodePair> out;
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b = a + 1; b < size(); ++b)
            if (adj_[a][b]) out.emplace_back(a, b);
    return out;
}

std::size_t UndirectedGraph::edge_count() const { return edges().size(); }

UndirectedGraph UndirectedGraph::induced(std::span<const NodeId> members) const {
    std::vector<NodeId> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    UndirectedGraph sub(labels_of(nodes_, sorted));
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (adjacent(sorted[i], sorted[j])) sub.add_edge(sub.index(label(sorted[i])), sub.index(label(sorted[j])));
    return sub;
}

// ---------------------------------------------------------------------------

Dag::Dag(std::vector<std::string> labels, const std::vector<LabelPair>& edges) : nodes_(std::move(labels)) {
    arc_ = square(nodes_.size());
    for (const auto& [a, b] : edges) {
        const NodeId x = nodes_.index(a), y = nodes_.index(b);
        check_ids(size(), x, y);
        if (arc_[y][x]) throw GraphError("edge given in both directions: " + a + ", " + b);
        arc_[x][y] = 1;
    }
    topological_order();
}

Dag::Dag(NodeLabels nodes, const std::vector<NodePair>& edges) : nodes_(std::move(nodes)) {
    arc_ = square(nodes_.size());
    for (const auto& [x, y] : edges) {
        check_ids(size(), x, y);
        if (arc_[y][x]) throw GraphError("edge given in both directions");
        arc_[x][y] = 1;
    }
    topological_order();
}

std::vector<NodeId> Dag::parents(NodeId v) const {
    std::vector<NodeId> out;
    for (NodeId p = 0; p < size(); ++p)
        if (arc_[p][v]) out.push_back(p);
    return out;
}

std::vector<NodePair> Dag::edges() const {
    std::vector<NodePair> out;
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b = 0; b < size(); ++b)
            if (arc_[a][b]) out.emplace_back(a, b);
    return out;
}

std::vector<NodeId> Dag::topological_order() const {
    const std::size_t n = size();
    std::vector<std::size_t> indegree(n, 0);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b)
            if (arc_[a][b]) ++indegree[b];
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<char> done(n, 0);
    // Kahn's algorithm, smallest ready id first for a deterministic order.
    for (std::size_t step = 0; step < n; ++step) {
        NodeId next = n;
        for (NodeId v = 0; v < n; ++v)
            if (!done[v] && indegree[v] == 0) {
                next = v;
                break;
            }
        if (next == n) throw GraphError("graph contains a directed cycle");
        done[next] = 1;
        order.push_back(next);
        for (NodeId b = 0; b < n; ++b)
            if (arc_[next][b]) --indegree[b];
    }
    return order;
}

UndirectedGraph Dag::skeleton() const {
    UndirectedGraph g(nodes_.labels());
    for (const auto& [a, b] : edges()) g.add_edge(a, b);
    return g;
}

// ---------------------------------------------------------------------------

PartiallyDirectedGraph::PartiallyDirectedGraph(std::vector<std::string> labels)
    : PartiallyDirectedGraph(NodeLabels(std::move(labels))) {}

PartiallyDirectedGraph::PartiallyDirectedGraph(NodeLabels nodes)
    : nodes_(std::move(nodes)), arc_(square(nodes_.size())), line_(square(nodes_.size())) {}

PartiallyDirectedGraph::PartiallyDirectedGraph(std::vector<std::string> labels, const std::vector<LabelPair>& directed,
                                               const std::vector<LabelPair>& undirected)
    : PartiallyDirectedGraph(std::move(labels)) {
    for (const auto& [a, b] : directed) add_directed(index(a), index(b));
    for (const auto& [a, b] : undirected) add_undirected(index(a), index(b));
}

PartiallyDirectedGraph PartiallyDirectedGraph::from_undirected(const UndirectedGraph& g) {
    PartiallyDirectedGraph p(g.nodes());
    for (const auto& [a, b] : g.edges()) p.add_undirected(a, b);
    return p;
}

PartiallyDirectedGraph PartiallyDirectedGraph::from_dag(const Dag& d) {
    PartiallyDirectedGraph p(d.nodes());
    for (const auto& [a, b] : d.edges()) p.add_directed(a, b);
    return p;
}

void PartiallyDirectedGraph::check_new_pair(NodeId a, NodeId b) const {
    check_ids(size(), a, b);
    if (adjacent(a, b)) throw GraphError("at most one edge per node pair: " + label(a) + ", " + label(b));
}

void PartiallyDirectedGraph::add_directed(NodeId from, NodeId to) {
    check_new_pair(from, to);
    arc_[from][to] = 1;
}

void PartiallyDirectedGraph::add_undirected(NodeId a, NodeId b) {
    check_new_pair(a, b);
    line_[a][b] = line_[b][a] = 1;
}

void PartiallyDirectedGraph::orient(NodeId from, NodeId to) {
    if (!has_undirected(from, to)) throw GraphError("no undirected edge " + label(from) + " - " + label(to));
    line_[from][to] = line_[to][from] = 0;
    arc_[from][to] = 1;
}

std::vector<NodePair> PartiallyDirectedGraph::directed_edges() const {
    std::vector<NodePair> out;
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b = 0; b < size(); ++b)
            if (arc_[a][b]) out.emplace_back(a, b);
    return out;
}

std::vector<NodePair> PartiallyDirectedGraph::undirected_edges() const {
    std::vector<NodePair> out;
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b = a + 1; b < size(); ++b)
            if (line_[a][b]) out.emplace_back(a, b);
    return out;
}

UndirectedGraph PartiallyDirectedGraph::skeleton() const {
    UndirectedGraph g(nodes_.labels());
    for (const auto& [a, b] : undirected_edges()) g.add_edge(a, b);
    for (const auto& [a, b] : directed_edges()) g.add_edge(a, b);
    return g;
}

// ---------------------------------------------------------------------------

ChainComponentDecomposition chain_components(const PartiallyDirectedGraph& g) {
    const std::size_t n = g.size();
    ChainComponentDecomposition out;
    out.component_of.assign(n, n);
    for (NodeId start = 0; start < n; ++start) {
        if (out.component_of[start] != n) continue;
        const std::size_t id = out.components.size();
        std::vector<NodeId> members;
        std::vector<NodeId> stack{start};
        out.component_of[start] = id;
        while (!stack.empty()) {
            const NodeId x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (NodeId y = 0; y < n; ++y) {
                if (g.has_undirected(x, y) && out.component_of[y] == n) {
                    out.component_of[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.components.push_back(std::move(members));
    }

    // A directed edge inside a component or a cycle among components is a
    // partially directed cycle.
    const std::size_t k = out.components.size();
    BitMatrix between = square(k);
    for (const auto& [a, b] : g.directed_edges()) {
        const std::size_t ca = out.component_of[a], cb = out.component_of[b];
        if (ca == cb)
            throw GraphError("not a chain graph: directed edge " + g.label(a) + " -> " + g.label(b) +
                             " lies inside a chain component");
        between[ca][cb] = 1;
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d)
            if (between[c][d] && reachable(between, d, c))
                throw GraphError("not a chain graph: partially directed cycle through node " +
                                 g.label(out.components[c].front()));

    const UndirectedGraph undirected_part = [&] {
        UndirectedGraph u(g.nodes().labels());
        for (const auto& [a, b] : g.undirected_edges()) u.add_edge(a, b);
        return u;
    }();
    for (const auto& members : out.components) out.subgraphs.push_back(undirected_part.induced(members));
    return out;
}

bool is_connected(const UndirectedGraph& g) {
    if (g.size() == 0) return true;
    std::vector<char> seen(g.size(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        ++count;
        for (NodeId y : g.neighbors(x))
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    return count == g.size();
}

std::vector<NodeId> maximum_cardinality_search(const UndirectedGraph& g, std::optional<NodeId> first,
                                               std::optional<NodeId> second) {
    const std::size_t n = g.size();
    std::vector<std::size_t> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        NodeId pick = n;
        if (step == 0 && first) {
            pick = *first;
        } else if (step == 1 && second && g.adjacent(order.front(), *second)) {
            pick = *second;
        } else {
            for (NodeId v = 0; v < n; ++v)
                if (!visited[v] && (pick == n || weight[v] > weight[pick])) pick = v;
        }
        visited[pick] = 1;
        weight[pick] = 0;
        order.push_back(pick);
        for (NodeId w : g.neighbors(pick))
            if (!visited[w]) ++weight[w];
    }
    return order;
}

namespace {

// For each vertex in MCS order: its neighbours visited earlier.
std::vector<std::vector<NodeId>> earlier_neighbors(const UndirectedGraph& g, const std::vector<NodeId>& order) {
    std::vector<std::size_t> position(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<std::vector<NodeId>> out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (NodeId w : g.neighbors(order[i]))
            if (position[w] < i) out[i].push_back(w);
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

bool is_clique(const UndirectedGraph& g, const std::vector<NodeId>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!g.adjacent(set[i], set[j])) return false;
    return true;
}

} // namespace

bool is_decomposable(const UndirectedGraph& g) {
    const auto order = maximum_cardinality_search(g);
    const auto pre = earlier_neighbors(g, order);
    return std::all_of(pre.begin(), pre.end(), [&](const auto& set) { return is_clique(g, set); });
}

CliqueSequence perfect_clique_sequence(const UndirectedGraph& g, std::optional<NodePair> designated) {
    if (!is_decomposable(g)) throw GraphError("graph is not decomposable");
    if (!is_connected(g)) throw GraphError("perfect clique sequence requires a connected graph");
    if (designated && !g.adjacent(designated->first, designated->second))
        throw GraphError("designated edge is not an edge of the graph");

    std::vector<NodeId> order = designated
        ? maximum_cardinality_search(g, designated->first, designated->second)
        : maximum_cardinality_search(g);
    const auto pre = earlier_neighbors(g, order);

    std::vector<std::vector<NodeId>> candidates(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        candidates[i] = pre[i];
        candidates[i].push_back(order[i]);
        std::sort(candidates[i].begin(), candidates[i].end());
    }

    CliqueSequence seq;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = i + 1; j < candidates.size() && maximal; ++j)
            if (is_subset(candidates[i], candidates[j])) maximal = false;
        if (maximal) seq.cliques.push_back(candidates[i]);
    }

    std::vector<NodeId> history;
    for (std::size_t k = 0; k < seq.cliques.size(); ++k) {
        const auto& clique = seq.cliques[k];
        std::vector<NodeId> sep, res, next;
        std::set_intersection(clique.begin(), clique.end(), history.begin(), history.end(), std::back_inserter(sep));
        std::set_difference(clique.begin(), clique.end(), history.begin(), history.end(), std::back_inserter(res));
        std::set_union(history.begin(), history.end(), clique.begin(), clique.end(), std::back_inserter(next));
        if (k > 0) {
            bool contained = false;
            for (std::size_t j = 0; j < k && !contained; ++j) contained = is_subset(sep, seq.cliques[j]);
            if (!contained) throw GraphError("internal error: clique ordering violates running intersection");
        }
        seq.separators.push_back(std::move(sep));
        seq.residuals.push_back(std::move(res));
        seq.histories.push_back(next);
        history = std::move(next);
    }
    return seq;
}

// ---------------------------------------------------------------------------

namespace {

class ClassEnumerator {
public:
    ClassEnumerator(const UndirectedGraph& g, const std::function<void(const Dag&)>& visit)
        : g_(g), visit_(visit), arc_(square(g.size())) {
        // Edges in MCS order so that orientation constraints bite early.
        const auto order = maximum_cardinality_search(g);
        std::vector<std::size_t> position(g.size());
        for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
        edges_ = g.edges();
        std::sort(edges_.begin(), edges_.end(), [&](const NodePair& x, const NodePair& y) {
            const auto kx = std::minmax(position[x.first], position[x.second]);
            const auto ky = std::minmax(position[y.first], position[y.second]);
            return std::pair(kx.second, kx.first) < std::pair(ky.second, ky.first);
        });
    }

    void run() { recurse(0); }

private:
    bool can_add(NodeId from, NodeId to) const {
        if (reachable(arc_, to, from)) return false;
        for (NodeId c = 0; c < g_.size(); ++c)
            if (c != from && arc_[c][to] && !g_.adjacent(c, from)) return false;
        return true;
    }

    void recurse(std::size_t k) {
        if (k == edges_.size()) {
            std::vector<NodePair> arcs;
            for (NodeId a = 0; a < g_.size(); ++a)
                for (NodeId b = 0; b < g_.size(); ++b)
                    if (arc_[a][b]) arcs.emplace_back(a, b);
            visit_(Dag(g_.nodes(), arcs));
            return;
        }
        const auto [a, b] = edges_[k];
        for (const auto& [from, to] : {NodePair{a, b}, NodePair{b, a}}) {
            if (!can_add(from, to)) continue;
            arc_[from][to] = 1;
            recurse(k + 1);
            arc_[from][to] = 0;
        }
    }

    const UndirectedGraph& g_;
    const std::function<void(const Dag&)>& visit_;
    BitMatrix arc_;
    std::vector<NodePair> edges_;
};

} // namespace

void visit_class(const UndirectedGraph& g, const std::function<void(const Dag&)>& visit, std::size_t cap) {
    if (g.size() > cap)
        throw CapacityError("component has " + std::to_string(g.size()) + " nodes; exact enumeration is limited to " +
                            std::to_string(cap));
    if (!is_decomposable(g)) throw GraphError("graph is not decomposable");
    ClassEnumerator(g, visit).run();
}

std::vector<Dag> enumerate_class(const UndirectedGraph& g, std::size_t cap) {
    std::vector<Dag> out;
    visit_class(g, [&](const Dag& d) { out.push_back(d); }, cap);
    return out;
}

// ---------------------------------------------------------------------------

PartiallyDirectedGraph meek_closure(const PartiallyDirectedGraph& input) {
    PartiallyDirectedGraph g = input;
    const std::size_t n = g.size();
    auto dir = [&](NodeId x, NodeId y) { return g.has_directed(x, y); };
    auto und = [&](NodeId x, NodeId y) { return g.has_undirected(x, y); };
    auto adj = [&](NodeId x, NodeId y) { return g.adjacent(x, y); };

    // Is a -> b forced for the undirected edge a - b?
    auto forced = [&](NodeId a, NodeId b) {
        for (NodeId c = 0; c < n; ++c) {
            if (c == a || c == b) continue;
            // R1: c -> a - b, c and b nonadjacent.
            if (dir(c, a) && !adj(c, b)) return true;
            // R2: a -> c -> b.
            if (dir(a, c) && dir(c, b)) return true;
        }
        for (NodeId c = 0; c < n; ++c) {
            if (c == a || c == b) continue;
            for (NodeId d = 0; d < n; ++d) {
                if (d == a || d == b || d == c) continue;
                // R3: a - c -> b, a - d -> b, c and d nonadjacent.
                if (c < d && und(a, c) && und(a, d) && dir(c, b) && dir(d, b) && !adj(c, d)) return true;
                // R4: a - c -> d -> b, a adjacent to d, c and b nonadjacent.
                if (und(a, c) && dir(c, d) && dir(d, b) && adj(a, d) && !adj(c, b)) return true;
            }
        }
        return false;
    };

    for (;;) {
        std::vector<NodePair> orientations;
        for (const auto& [a, b] : g.undirected_edges()) {
            const bool ab = forced(a, b);
            const bool ba = forced(b, a);
            if (ab && ba)
                throw GraphError("inconsistent orientation: edge " + g.label(a) + " - " + g.label(b) +
                                 " is forced in both directions");
            if (ab) orientations.emplace_back(a, b);
            if (ba) orientations.emplace_back(b, a);
        }
        if (orientations.empty()) return g;
        for (const auto& [from, to] : orientations) g.orient(from, to);
    }
}

PartiallyDirectedGraph dag_to_cpdag(const Dag& d) {
    const std::size_t n = d.size();
    BitMatrix compelled = square(n);
    for (NodeId v = 0; v < n; ++v) {
        const auto pa = d.parents(v);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (!d.adjacent(pa[i], pa[j])) compelled[pa[i]][v] = compelled[pa[j]][v] = 1;
    }
    PartiallyDirectedGraph pattern(d.nodes());
    for (const auto& [a, b] : d.edges()) {
        if (compelled[a][b])
            pattern.add_directed(a, b);
        else
            pattern.add_undirected(a, b);
    }
    return meek_closure(pattern);
}

} // namespace causal_ssd
