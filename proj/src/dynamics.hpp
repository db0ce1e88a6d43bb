#pragma once

#include <optional>
#include <vector>

#include "network.hpp"

namespace bcn {

enum class FeedbackKind { State, Output, Pinning };

struct FeedbackLaw {
    FeedbackKind kind = FeedbackKind::State;
    LogicalMatrix M; // rows 2^m; cols 2^n (state), 2^p (output), 1 (pinning)
};

struct AttractorReport {
    std::vector<std::vector<int>> attractors; // cycles, smallest state first
    std::vector<int> basin;                   // state (0-based) -> attractor id (0-based)
    std::vector<int> distance;                // steps to enter the attractor
};

struct Trajectory {
    std::vector<int> states;  // length horizon+1
    std::vector<int> outputs; // per visited state (full-state networks only)
    std::vector<int> inputs, disturbances, faults;
};

// Closed loop under u = M_x x, by column selection; rows match L.
LogicalMatrix applyStateFeedback(const Network& net, const FeedbackLaw& law);

// Closed loop under u = M_y H x.
LogicalMatrix applyOutputFeedback(const Network& net, const FeedbackLaw& law);

// Expand a per-substate input assignment (2^s entries) to all 2^n states.
LogicalMatrix expandSubstateFeedback(const Network& net, const LogicalMatrix& Msub);

struct SimulationSpec {
    int x0 = 1;
    int horizon = 0;
    std::optional<FeedbackLaw> feedback;
    std::vector<int> inputs;       // used when no feedback law given (1-based indices)
    std::vector<int> disturbances; // defaults to all-1
    std::vector<int> faults;
};

Trajectory simulate(const Network& net, const SimulationSpec& spec);

// k-fold composition over the state part; for tail width w = cols/rows > 1 the
// result ranges over (x0, xi_0 xi_1 ... xi_{k-1}).
LogicalMatrix closedLoopPower(const LogicalMatrix& Ltilde, int k);

AttractorReport attractors(const LogicalMatrix& L); // square logical matrix

} // namespace bcn
