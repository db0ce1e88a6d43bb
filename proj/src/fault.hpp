#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decoupling.hpp"

namespace bcn {

// Lemma-style rank check on a logical map M_G over n binary variables: the
// first r variables are fixed block selectors, the next sRedundant variables
// must be redundant (identical sub-blocks) and the remaining ones reflective
// (all-distinct columns within each sub-block).
bool reflectiveCheck(const LogicalMatrix& MG, int r, int sRedundant);

struct ImpossibleOutputMap {
    // impossible[i-1] = ascending output indices that can never directly
    // follow output i under the fault-free closed loop.
    std::vector<std::vector<int>> impossible;
};

ImpossibleOutputMap impossibleOutputSets(const LogicalMatrix& Ltilde, const LogicalMatrix& H);

// Instantaneous fault detection: per full state, inputs whose fault sub-block
// has all-distinct columns and an injective fault -> next-output map.
SynthesisResult ifdSynthesize(const Network& net);

// Combined DD+IFD: the fault sub-block must additionally be constant across
// disturbance divisions. Requires signal order (..., xi_d, xi_f).
SynthesisResult ddIfdSynthesize(const Network& net);

// All controllers in the candidate product, lexicographic; throws when the
// count exceeds the limit.
std::vector<LogicalMatrix> enumerateControllers(const Network& net,
                                                const ControlCandidateSets& cand,
                                                long long limit = 1 << 16);

enum class FDVerifyMode { StateKnown, OutputOnly };

struct FDVerifyReport {
    bool verdict = false;
    std::string witness;
};

FDVerifyReport verifyFaultDetection(const Network& net, const LogicalMatrix& Mx, FDVerifyMode mode);

// Index of the fault-free value of the fault factor (all fault variables
// false, hence the last delta index).
int faultFreeIndex(const Network& net);

struct ObserverState {
    std::vector<int> possible;
    int lastInput = 0; // 0 before the first update
    bool reconstructed = false;
    bool faultFlag = false;
};

struct ObserverTrace {
    std::vector<ObserverState> steps;
};

// Set-membership observer: possible_0 = O_s(y_0);
// possible_{k+1} = successors(possible_k, u_k) ∩ O_s(y_{k+1}).
// Auto policy picks the input minimizing the successor-set size (ties toward
// the smallest input); supplying inputs alongside the auto policy requires
// them to match the policy's choice.
ObserverTrace observerRun(const Network& net, const std::vector<int>& observedOutputs,
                          const std::optional<std::vector<int>>& appliedInputs, bool autoPolicy);

} // namespace bcn
