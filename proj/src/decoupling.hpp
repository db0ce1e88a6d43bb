#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reachability.hpp"

namespace bcn {

enum class DDModeKind { Mapping, Invariant, CleanReach, DefiniteReach, IndefiniteReach, Iteration };

struct DDMode {
    DDModeKind kind = DDModeKind::Mapping;
    int target = 0; // output index for the reach modes
};

struct SynthesisResult {
    bool feasible = false;
    ControlCandidateSets candidates;
    std::optional<LogicalMatrix> sampleController; // 2^m x 2^n
    std::vector<std::string> diagnostics;
    bool onlineOnly = false;
};

struct RankConditionReport {
    bool verdict = false;
    std::vector<std::vector<int>> rankOneInputs; // per substate: inputs with a rank-1 sub-block
};

// Open-loop baseline: every substate needs an input whose sub-block has rank 1
// (successor certain under every disturbance completion).
RankConditionReport rankConditionDD(const Network& net);

struct BlockRankReport {
    bool verdict = false;
    std::vector<bool> blockRankOne; // one flag per substate block
};

// Closed-loop variant: split Ltilde into 2^sExp equal blocks; each must have
// all-identical columns.
BlockRankReport rankConditionClosedLoop(const LogicalMatrix& Ltilde, int sExp);

SynthesisResult ddSynthesize(const Network& net, DDMode mode);

// Output-equation condition: every substate block of the closed loop maps
// under the output function into a single output group.
bool ddOutputEquationCheck(const LogicalMatrix& Ltilde, const LogicalMatrix& Hout, int sExp);
bool ddOutputEquationCheck(const Network& net, const LogicalMatrix& Ltilde);

enum class DDCondition { BlockRank, OutputGroup };

std::vector<LogicalMatrix> ddOutputFeedbackSynthesize(const Network& net, DDCondition cond,
                                                      long long budget = 1 << 24);

struct StabilizationTarget {
    std::variant<int, std::vector<int>, LogicalMatrix> value; // state, set, or behavior matrix
};

std::vector<LogicalMatrix> stabilizationSynthesize(const Network& net,
                                                   const StabilizationTarget& target,
                                                   long long budget = 1 << 24);

struct VerifyReport {
    bool verdict = false;
    int kstar = -1; // worst-case steps to enter the deterministic core / reach target
    std::string witness;
};

// Exhaustive verification over all initial states and disturbance/fault
// completions of the closed loop under the given state feedback.
VerifyReport verifyDD(const Network& net, const LogicalMatrix& Mx, DDMode mode, int horizon);

} // namespace bcn
