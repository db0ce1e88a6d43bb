#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynamics.hpp"

namespace bcn {

enum class EquivCriterion { StateTransition, OutputSequence, Attractor, OutputSteadyState };
enum class EquivRegime { AllInputs, StateFeedback, OutputFeedback };
enum class DisturbanceMode { None, BcnOnly, Both };

std::string equivCriterionName(EquivCriterion c);

struct EquivalenceQuery {
    EquivCriterion criterion = EquivCriterion::StateTransition;
    EquivRegime regime = EquivRegime::AllInputs;
    DisturbanceMode disturbanceMode = DisturbanceMode::None;
    std::optional<LogicalMatrix> feedback; // M_x or M_y per regime
};

struct EquivalenceReport {
    bool verdict = false;
    std::string witness; // first violation when false
};

// Behavioural equivalence between an autonomous network and a controlled one
// under the chosen input regime. Output criteria reuse the controlled
// network's H on both sides (same state space).
EquivalenceReport checkEquivalence(const Network& bn, const Network& bcn,
                                   const EquivalenceQuery& q);

// Exhaustive lexicographic search for feedback laws making the pair
// equivalent under the criterion.
std::vector<LogicalMatrix> searchEquivalenceFeedback(const Network& bn, const Network& bcn,
                                                     EquivCriterion criterion, EquivRegime regime,
                                                     long long budget = 1 << 24);

} // namespace bcn
