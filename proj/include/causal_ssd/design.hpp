#ifndef CAUSAL_SSD_DESIGN_HPP
#define CAUSAL_SSD_DESIGN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causal_ssd/graph.hpp"

namespace causal_ssd {

/// Intervention targets within one chain component. Treated as a set; kept sorted by label.
struct InterventionSequence {
    std::vector<std::string> targets;

    InterventionSequence() = default;
    explicit InterventionSequence(std::vector<std::string> targets);

    std::size_t size() const noexcept { return targets.size(); }
    bool operator==(const InterventionSequence&) const = default;
};

// Lexicographic order over sorted targets using label_less.
bool sequence_less(const InterventionSequence& a, const InterventionSequence& b);

/// Prior on the orientation of u - v: H0 is u <- v, H1 is u -> v.
struct EdgeHypothesisPrior {
    std::string u;
    std::string v;
    double p_h0 = 0.5;
    double p_h1 = 0.5;
    std::size_t dags_h0 = 0;     // class members containing u <- v
    std::size_t class_size = 0;  // |[G]|
};

/// Per ordered pair (a, b): number of class members with a -> b.
struct OrientationCounts {
    std::size_t class_size = 0;
    std::vector<std::vector<std::size_t>> forward;
};

OrientationCounts count_orientations(const UndirectedGraph& g);

bool is_sufficient(const UndirectedGraph& g, const InterventionSequence& s);

// All minimum-cardinality sufficient sequences, sorted with sequence_less.
// An edgeless component yields the single empty sequence.
std::vector<InterventionSequence> optimal_sequences(const UndirectedGraph& g);

EdgeHypothesisPrior prior_h0(const UndirectedGraph& g, const std::string& u, const std::string& v);
EdgeHypothesisPrior prior_h0(const UndirectedGraph& g, const OrientationCounts& counts, const std::string& u,
                             const std::string& v);

struct SequenceCandidate {
    InterventionSequence sequence;
    // n*_u per target in sequence order; nullopt when not achievable.
    std::vector<std::optional<std::size_t>> target_sizes;
};

// Index of the candidate with the smallest total size; ties go to the
// lexicographically smaller sequence. Candidates with an unachievable target
// are skipped; throws NoFeasibleSequenceError when none remain.
std::size_t best_size_index(std::span<const SequenceCandidate> candidates);

InterventionSequence best_size_optimal_sequence(std::span<const SequenceCandidate> candidates);

} // namespace causal_ssd

#endif // CAUSAL_SSD_DESIGN_HPP
