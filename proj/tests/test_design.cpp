#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "causal_ssd/design.hpp"
#include "causal_ssd/errors.hpp"
#include "oracles.hpp"

using namespace causal_ssd;

namespace {

const UndirectedGraph kPair({"u", "v"}, {{"u", "v"}});
const UndirectedGraph kPath({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
const UndirectedGraph kTriangle({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "3"}});
const UndirectedGraph kG1({"1", "2", "3", "4", "5"}, {{"1", "3"}, {"2", "3"}, {"2", "4"}, {"3", "5"}});

InterventionSequence seq(std::vector<std::string> t) {
    return InterventionSequence(std::move(t));
}

std::vector<InterventionSequence> from_ids(const UndirectedGraph& g, const std::vector<std::vector<NodeId>>& sets) {
    std::vector<InterventionSequence> out;
    for (const auto& s : sets) out.push_back(InterventionSequence(labels_of(g.nodes(), s)));
    std::sort(out.begin(), out.end(), sequence_less);
    return out;
}

} // namespace

TEST_CASE("sequences are canonical sets") {
    CHECK(seq({"3", "10", "2"}).targets == std::vector<std::string>{"2", "3", "10"});
    CHECK_THROWS(seq({"1", "1"}));
    CHECK(sequence_less(seq({"2", "3"}), seq({"3", "4"})));
    CHECK_FALSE(sequence_less(seq({"3", "4"}), seq({"2", "3"})));
}

TEST_CASE("sufficiency examples") {
    CHECK(is_sufficient(kPair, seq({"u"})));
    CHECK(is_sufficient(kPair, seq({"v"})));
    CHECK(is_sufficient(kPath, seq({"2"})));
    CHECK_FALSE(is_sufficient(kPath, seq({"1"})));
    CHECK_FALSE(is_sufficient(kG1, seq({"3"})));
    CHECK(is_sufficient(kG1, seq({"2", "3"})));
    CHECK_THROWS(is_sufficient(kPath, seq({"9"})));
}

TEST_CASE("sufficiency agrees with the distinguishability oracle") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = oracle::random_chordal(2 + trial % 6, rng);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
            std::vector<NodeId> ids;
            for (NodeId v = 0; v < g.size(); ++v)
                if (mask >> v & 1) ids.push_back(v);
            CAPTURE(trial);
            CAPTURE(mask);
            CHECK(is_sufficient(g, InterventionSequence(labels_of(g.nodes(), ids))) ==
                  oracle::distinguishable(g, ids));
        }
    }
}

TEST_CASE("optimal sequences of the small components") {
    CHECK(optimal_sequences(kPair) == std::vector{seq({"u"}), seq({"v"})});
    CHECK(optimal_sequences(kPath) == std::vector{seq({"2"})});
    CHECK(optimal_sequences(kG1) == std::vector{seq({"2", "3"}), seq({"3", "4"})});
    CHECK(optimal_sequences(UndirectedGraph({"a"})) == std::vector{InterventionSequence{}});
}

TEST_CASE("optimal sequences agree with exhaustive search") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_chordal(2 + trial % 7, rng);
        const auto got = optimal_sequences(g);
        CHECK(got == from_ids(g, oracle::brute_force_optimal(g)));
        for (const auto& s : got) CHECK(is_sufficient(g, s));
    }
}

TEST_CASE("supersets of sufficient sequences are sufficient") {
    CHECK(is_sufficient(kG1, seq({"2", "3", "5"})));
    CHECK(is_sufficient(kG1, seq({"1", "2", "3", "4", "5"})));
    CHECK(is_sufficient(kPath, seq({"2", "3"})));
}

TEST_CASE("edge priors") {
    CHECK(prior_h0(kPair, "u", "v").p_h0 == 0.5);
    for (const auto& [a, b] : kTriangle.edges()) {
        CHECK(prior_h0(kTriangle, kTriangle.label(a), kTriangle.label(b)).p_h0 == 0.5);
    }
    const auto p = prior_h0(kPath, "1", "2");
    CHECK(p.dags_h0 == 2);
    CHECK(p.class_size == 3);
    CHECK(p.p_h0 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p.p_h1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(prior_h0(kPath, "1", "3"), GraphError);
}

TEST_CASE("edge priors match brute-force counting and sum to one") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_chordal(2 + trial % 7, rng);
        const auto cls = oracle::brute_force_class(g);
        const auto counts = count_orientations(g);
        for (const auto& [a, b] : g.edges()) {
            const auto fwd = prior_h0(g, counts, g.label(a), g.label(b));
            const auto bwd = prior_h0(g, counts, g.label(b), g.label(a));
            const auto into_a = std::count_if(cls.begin(), cls.end(), [&](const auto& d) { return d.has(b, a); });
            CHECK(fwd.dags_h0 == std::size_t(into_a));
            CHECK(fwd.class_size == cls.size());
            CHECK(fwd.p_h0 + bwd.p_h0 == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(fwd.p_h0 + fwd.p_h1 == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("best size optimal sequence") {
    const std::vector<SequenceCandidate> g1{{seq({"2", "3"}), {28, 88}}, {seq({"3", "4"}), {4, 86}}};
    CHECK(best_size_optimal_sequence(g1) == seq({"3", "4"}));
    const std::vector<SequenceCandidate> one{{seq({"2"}), {130}}};
    CHECK(best_size_optimal_sequence(one) == seq({"2"}));
    const std::vector<SequenceCandidate> tie{{seq({"3", "4"}), {10, 20}}, {seq({"2", "3"}), {15, 15}}};
    CHECK(best_size_optimal_sequence(tie) == seq({"2", "3"}));
    const std::vector<SequenceCandidate> partial{{seq({"2", "3"}), {1, std::nullopt}}, {seq({"3", "4"}), {50, 60}}};
    CHECK(best_size_optimal_sequence(partial) == seq({"3", "4"}));
    const std::vector<SequenceCandidate> none{{seq({"2"}), {std::nullopt}}};
    CHECK_THROWS_AS(best_size_optimal_sequence(none), NoFeasibleSequenceError);
    CHECK_THROWS_AS(best_size_optimal_sequence(std::vector<SequenceCandidate>{}), NoFeasibleSequenceError);
}
