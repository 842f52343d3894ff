#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "causal_ssd/errors.hpp"
#include "causal_ssd/graph.hpp"
#include "causal_ssd/graph_io.hpp"
#include "oracles.hpp"

using namespace causal_ssd;

namespace {

UndirectedGraph path3() {
    return UndirectedGraph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
}
UndirectedGraph triangle() {
    return UndirectedGraph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "3"}});
}
UndirectedGraph clique(int m) {
    std::vector<std::string> labels;
    std::vector<LabelPair> edges;
    for (int i = 1; i <= m; ++i) labels.push_back(std::to_string(i));
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) edges.emplace_back(std::to_string(i), std::to_string(j));
    return UndirectedGraph(labels, edges);
}
UndirectedGraph g1() {
    return UndirectedGraph({"1", "2", "3", "4", "5"}, {{"1", "3"}, {"2", "3"}, {"2", "4"}, {"3", "5"}});
}
PartiallyDirectedGraph figure1() {
    return PartiallyDirectedGraph({"1", "2", "3", "4", "5"}, {{"2", "4"}, {"2", "5"}},
                                  {{"1", "2"}, {"2", "3"}, {"1", "3"}, {"4", "5"}});
}

std::set<std::vector<NodePair>> arc_sets(const std::vector<Dag>& dags) {
    std::set<std::vector<NodePair>> out;
    for (const auto& d : dags) {
        auto e = d.edges();
        std::sort(e.begin(), e.end());
        out.insert(e);
    }
    return out;
}

std::set<std::vector<NodePair>> arc_sets(const std::vector<oracle::Orientation>& os) {
    std::set<std::vector<NodePair>> out;
    for (auto o : os) {
        std::sort(o.arcs.begin(), o.arcs.end());
        out.insert(o.arcs);
    }
    return out;
}

} // namespace

TEST_CASE("labels use natural order") {
    NodeLabels l({"10", "2", "b", "1", "a"});
    CHECK(l.labels() == std::vector<std::string>{"1", "2", "10", "a", "b"});
    CHECK(l.index("10") == 2);
    CHECK_FALSE(l.find("zz").has_value());
    CHECK_THROWS_AS(l.index("zz"), GraphError);
}

TEST_CASE("graph containers enforce their invariants") {
    UndirectedGraph g({"a", "b"});
    CHECK_THROWS(g.add_edge(0, 0));
    CHECK_THROWS_AS(Dag({"a", "b"}, {{"a", "b"}, {"b", "a"}}), GraphError);
    PartiallyDirectedGraph p({"a", "b", "c"});
    p.add_undirected(0, 1);
    CHECK_THROWS(p.add_directed(0, 1));
    CHECK_THROWS(p.add_directed(1, 0));
    p.orient(1, 0);
    CHECK(p.has_directed(1, 0));
    CHECK_FALSE(p.has_undirected(0, 1));
}

TEST_CASE("chain components of the two-component CPDAG") {
    const auto dec = chain_components(figure1());
    REQUIRE(dec.components.size() == 2);
    CHECK(labels_of(figure1().nodes(), dec.components[0]) == std::vector<std::string>{"1", "2", "3"});
    CHECK(labels_of(figure1().nodes(), dec.components[1]) == std::vector<std::string>{"4", "5"});
    CHECK(dec.subgraphs[0].edge_count() == 3);
    CHECK(dec.subgraphs[1].edge_count() == 1);
    CHECK(dec.component_of[3] == dec.component_of[4]);
}

TEST_CASE("chain components of directed and undirected extremes") {
    const Dag d({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    const auto dec = chain_components(PartiallyDirectedGraph::from_dag(d));
    CHECK(dec.components.size() == 3);
    const auto whole = chain_components(PartiallyDirectedGraph::from_undirected(path3()));
    CHECK(whole.components.size() == 1);
    CHECK(whole.components[0].size() == 3);
}

TEST_CASE("chain components reject partially directed cycles") {
    // a - b, b -> c, c -> a closes a partially directed cycle.
    PartiallyDirectedGraph g({"a", "b", "c"}, {{"b", "c"}, {"c", "a"}}, {{"a", "b"}});
    CHECK_THROWS_AS(chain_components(g), GraphError);
}

TEST_CASE("decomposability") {
    CHECK(is_decomposable(triangle()));
    CHECK(is_decomposable(g1()));
    CHECK(is_decomposable(clique(5)));
    const UndirectedGraph c4({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
    CHECK_FALSE(is_decomposable(c4));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) CHECK(is_decomposable(oracle::random_chordal(2 + i % 7, rng)));
}

TEST_CASE("maximum cardinality search honours the requested start") {
    const auto order = maximum_cardinality_search(g1(), NodeId{3}, NodeId{1});
    REQUIRE(order.size() == 5);
    CHECK(order[0] == 3);
    CHECK(order[1] == 1);
}

namespace {

void check_clique_sequence(const UndirectedGraph& g, const CliqueSequence& cs) {
    const std::size_t k = cs.cliques.size();
    REQUIRE(cs.histories.size() == k);
    std::set<NodeId> covered;
    std::vector<NodeId> history;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& c = cs.cliques[i];
        for (NodeId a : c)
            for (NodeId b : c)
                if (a != b) CHECK(g.adjacent(a, b));
        std::vector<NodeId> sep, res;
        for (NodeId v : c) (std::count(history.begin(), history.end(), v) ? sep : res).push_back(v);
        CHECK(cs.separators[i] == sep);
        CHECK(cs.residuals[i] == res);
        for (NodeId r : res) CHECK(covered.insert(r).second);
        if (i > 0) {
            const bool contained = std::any_of(cs.cliques.begin(), cs.cliques.begin() + i, [&](const auto& prev) {
                return std::includes(prev.begin(), prev.end(), sep.begin(), sep.end());
            });
            CHECK(contained);
        } else {
            CHECK(sep.empty());
        }
        history.insert(history.end(), res.begin(), res.end());
        std::sort(history.begin(), history.end());
        CHECK(cs.histories[i] == history);
    }
    CHECK(covered.size() == g.size());
}

} // namespace

TEST_CASE("perfect clique sequences") {
    const auto p = perfect_clique_sequence(path3());
    REQUIRE(p.cliques.size() == 2);
    CHECK(p.cliques[0] == std::vector<NodeId>{0, 1});
    CHECK(p.cliques[1] == std::vector<NodeId>{1, 2});
    CHECK(p.separators[1] == std::vector<NodeId>{1});
    check_clique_sequence(path3(), p);

    const auto t = perfect_clique_sequence(triangle());
    REQUIRE(t.cliques.size() == 1);
    CHECK(t.separators[0].empty());

    const auto comp = chain_components(figure1()).subgraphs[0];
    const auto d = perfect_clique_sequence(comp, NodePair{0, 1});
    CHECK(d.cliques[0] == std::vector<NodeId>{0, 1, 2});

    const auto g = g1();
    const auto designated = perfect_clique_sequence(g, NodePair{1, 3});
    CHECK(designated.cliques[0] == std::vector<NodeId>{1, 3});
    check_clique_sequence(g, designated);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        const auto r = oracle::random_chordal(3 + i % 6, rng);
        const auto e = r.edges()[i % r.edge_count()];
        const auto cs = perfect_clique_sequence(r, e);
        const std::vector<NodeId> ends{e.first, e.second};
        CHECK(std::includes(cs.cliques[0].begin(), cs.cliques[0].end(), ends.begin(), ends.end()));
        check_clique_sequence(r, cs);
    }
}

TEST_CASE("perfect clique sequence errors") {
    const UndirectedGraph c4({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
    CHECK_THROWS_AS(perfect_clique_sequence(c4), GraphError);
    CHECK_THROWS_AS(perfect_clique_sequence(path3(), NodePair{0, 2}), GraphError);
    const UndirectedGraph split({"1", "2", "3"}, {{"1", "2"}});
    CHECK_THROWS_AS(perfect_clique_sequence(split), GraphError);
}

TEST_CASE("class enumeration matches the brute-force filter") {
    const auto check = [](const UndirectedGraph& g, std::size_t size) {
        const auto dags = enumerate_class(g);
        CHECK(dags.size() == size);
        CHECK(arc_sets(dags) == arc_sets(oracle::brute_force_class(g)));
        CHECK(arc_sets(dags).size() == dags.size());
    };
    check(UndirectedGraph({"u", "v"}, {{"u", "v"}}), 2);
    check(path3(), 3);
    check(triangle(), 6);
    check(clique(4), 24);
    check(g1(), 5);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const auto g = oracle::random_chordal(2 + i % 7, rng);
        CHECK(arc_sets(enumerate_class(g)) == arc_sets(oracle::brute_force_class(g)));
    }
}

TEST_CASE("class members have the right skeleton and no v-structures") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
        const auto g = oracle::random_chordal(3 + i % 5, rng);
        for (const auto& d : enumerate_class(g)) {
            CHECK(d.skeleton() == g);
            const auto cp = dag_to_cpdag(d);
            CHECK(cp.directed_edges().empty());
            CHECK(cp.skeleton() == g);
        }
    }
}

TEST_CASE("enumeration capacity") {
    std::vector<std::string> labels;
    std::vector<LabelPair> edges;
    for (int i = 0; i < 13; ++i) labels.push_back(std::to_string(i));
    for (int i = 0; i + 1 < 13; ++i) edges.emplace_back(std::to_string(i), std::to_string(i + 1));
    CHECK_THROWS_AS(enumerate_class(UndirectedGraph(labels, edges)), CapacityError);
    const UndirectedGraph c4({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}});
    CHECK_THROWS_AS(enumerate_class(c4), GraphError);
}

TEST_CASE("meek closure examples") {
    PartiallyDirectedGraph g({"1", "2", "3"}, {{"1", "2"}}, {{"2", "3"}});
    const auto c = meek_closure(g);
    CHECK(c.has_directed(1, 2));

    const auto plain = PartiallyDirectedGraph::from_undirected(triangle());
    CHECK(meek_closure(plain) == plain);

    // G1 with 3 -> 2 fixed: 2 -> 4 follows because 3 and 4 are nonadjacent.
    PartiallyDirectedGraph h({"1", "2", "3", "4", "5"}, {{"3", "2"}}, {{"1", "3"}, {"2", "4"}, {"3", "5"}});
    const auto hc = meek_closure(h);
    CHECK(hc.has_directed(1, 3));
    CHECK(hc.has_undirected(0, 2));
}

TEST_CASE("meek closure matches the extension oracle") {
    // After closure, an undirected edge must be oriented both ways among
    // consistent extensions, and every directed edge in all of them.
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = oracle::random_chordal(3 + trial % 5, rng);
        const auto cls = enumerate_class(g);
        const auto& truth = cls[trial % cls.size()];
        // Orient the edges at one random node as in `truth`.
        const NodeId t = trial % g.size();
        auto p = PartiallyDirectedGraph::from_undirected(g);
        for (NodeId w : g.neighbors(t)) p.orient(truth.has_edge(t, w) ? t : w, truth.has_edge(t, w) ? w : t);
        const auto closed = meek_closure(p);
        const auto ext = oracle::brute_force_extensions(p);
        REQUIRE_FALSE(ext.empty());
        for (const auto& [a, b] : closed.directed_edges())
            for (const auto& e : ext) CHECK(e.has(a, b));
        for (const auto& [a, b] : closed.undirected_edges()) {
            const bool fwd = std::any_of(ext.begin(), ext.end(), [&](const auto& e) { return e.has(a, b); });
            const bool bwd = std::any_of(ext.begin(), ext.end(), [&](const auto& e) { return e.has(b, a); });
            CHECK((fwd && bwd));
        }
        CHECK(meek_closure(closed) == closed);
        for (const auto& [a, b] : p.directed_edges()) CHECK(closed.has_directed(a, b));
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("meek rules 3 and 4 on general graphs") {
    // R3: a - c, a - d, c -> b, d -> b, c and d nonadjacent, a - b  =>  a -> b
    PartiallyDirectedGraph r3({"a", "b", "c", "d"}, {{"c", "b"}, {"d", "b"}}, {{"a", "c"}, {"a", "d"}, {"a", "b"}});
    CHECK(meek_closure(r3).has_directed(0, 1));
    // R4: a - c, c -> d, d -> b, a adjacent to d, c and b nonadjacent, a - b  =>  a -> b
    PartiallyDirectedGraph r4({"a", "b", "c", "d"}, {{"c", "d"}, {"d", "b"}}, {{"a", "c"}, {"a", "d"}, {"a", "b"}});
    CHECK(meek_closure(r4).has_directed(0, 1));
}

TEST_CASE("dag to cpdag") {
    const auto single = dag_to_cpdag(Dag({"u", "v"}, {{"u", "v"}}));
    CHECK(single.has_undirected(0, 1));
    const auto collider = dag_to_cpdag(Dag({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
    CHECK(collider.has_directed(0, 2));
    CHECK(collider.has_directed(1, 2));
    const auto chain = dag_to_cpdag(Dag({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}));
    CHECK(chain.directed_edges().empty());
    CHECK(chain.undirected_edges().size() == 2);
    // Collider plus a child: the child edge is compelled by rule 1.
    const auto compelled = dag_to_cpdag(Dag({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"c", "d"}}));
    CHECK(compelled.has_directed(2, 3));
}

TEST_CASE("edge list round trip") {
    const auto g = parse_edge_list("# demo\n1 -- 2\n2 -- 3\n1 -- 3\n2 -> 4\n2 -> 5\n4 -- 5  # tail comment\n\n6\n");
    CHECK(g.size() == 6);
    CHECK(g.has_directed(1, 3));
    CHECK(g.has_undirected(3, 4));
    const auto again = parse_edge_list(format_edge_list(g));
    CHECK(again == g);
}

TEST_CASE("edge list errors carry line numbers") {
    try {
        parse_edge_list("1 -- 2\n2 ~~ 3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_edge_list("1 -- 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("1 -- 2\n2 -> 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("1 -- 2 3\n"), ParseError);
}
