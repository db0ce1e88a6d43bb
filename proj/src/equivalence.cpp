#include "equivalence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace bcn {

std::string equivCriterionName(EquivCriterion c) {
    switch (c) {
    case EquivCriterion::StateTransition: return "stateTransition";
    case EquivCriterion::OutputSequence: return "outputSequence";
    case EquivCriterion::Attractor: return "attractor";
    case EquivCriterion::OutputSteadyState: return "outputSteadyState";
    }
    return "?";
}

namespace {

struct Fail {
    std::string witness;
};

// Next state of the controlled network at (u, x), quantified over the
// disturbance/fault tail. Throws Fail when the tail is not redundant.
int quantifiedNext(const Network& net, int u, int x) {
    int tail = checkedPow2(net.tailExp());
    int first = net.L(net.colIndex(u, x, 1, 1));
    for (int j = 2; j <= tail; ++j) {
        int col = net.colIndex(u, x, 1, 1) + (j - 1);
        if (net.L(col) != first) {
            std::ostringstream os;
            os << "disturbance alters the transition at input " << u << ", state " << x;
            throw Fail{os.str()};
        }
    }
    return first;
}

void validatePair(const Network& bn, const Network& bcn, const EquivalenceQuery& q) {
    int wantN = q.disturbanceMode == DisturbanceMode::Both ? bcn.n + bcn.d : bcn.n;
    if (!bn.isBN() || bn.n != wantN)
        throw Error(ErrorCode::DimensionMismatch,
                    "first network must be autonomous over the compared state space");
    if (bcn.L.rows != checkedPow2(bcn.n))
        throw Error(ErrorCode::DimensionMismatch, "controlled network needs a full-state matrix");
    if (q.disturbanceMode == DisturbanceMode::None && bcn.tailExp() != 0)
        throw Error(ErrorCode::DimensionMismatch,
                    "disturbanceMode none requires a disturbance-free network");
    if (q.regime != EquivRegime::AllInputs) {
        if (!q.feedback)
            throw Error(ErrorCode::DimensionMismatch, "feedback regime needs a feedback matrix");
        int wantCols = q.regime == EquivRegime::StateFeedback ? checkedPow2(bcn.n)
                                                              : checkedPow2(bcn.p);
        if (q.feedback->rows != checkedPow2(bcn.m) || q.feedback->colCount() != wantCols)
            throw Error(ErrorCode::DimensionMismatch, "feedback matrix has the wrong shape");
    }
}

int feedbackInput(const Network& bcn, const EquivalenceQuery& q, int x) {
    if (q.regime == EquivRegime::StateFeedback) return (*q.feedback)(x);
    return (*q.feedback)(bcn.H(x));
}

// Primitive period of a cyclic output sequence, rotated to its lexicographic
// minimum, so steady-state behaviours compare independently of phase and of
// how often the underlying state cycle repeats the pattern.
std::vector<int> canonicalOutputCycle(const Network& withH, const std::vector<int>& cycle) {
    std::vector<int> out;
    out.reserve(cycle.size());
    for (int x : cycle) out.push_back(withH.H(x));
    size_t n = out.size();
    for (size_t period = 1; period <= n; ++period) {
        if (n % period) continue;
        bool ok = true;
        for (size_t i = period; i < n && ok; ++i) ok = out[i] == out[i - period];
        if (ok) {
            out.resize(period);
            break;
        }
    }
    std::vector<int> best = out;
    for (size_t r = 1; r < out.size(); ++r) {
        std::rotate(out.begin(), out.begin() + 1, out.end());
        if (out < best) best = out;
    }
    return best;
}

EquivalenceReport compareAttractors(const Network& bn, const Network& bcn,
                                    const LogicalMatrix& closed, bool outputsOnly) {
    EquivalenceReport rep;
    AttractorReport ra = attractors(bn.L);
    AttractorReport rb = attractors(closed);
    if (!outputsOnly) {
        if (ra.attractors != rb.attractors) {
            rep.witness = "attractor cycle sets differ";
            return rep;
        }
        if (ra.basin != rb.basin) {
            for (size_t x = 0; x < ra.basin.size(); ++x)
                if (ra.basin[x] != rb.basin[x]) {
                    rep.witness = "basin maps differ at state " + std::to_string(x + 1);
                    return rep;
                }
        }
        rep.verdict = true;
        return rep;
    }
    std::vector<std::vector<int>> ya, yb;
    for (const auto& c : ra.attractors) ya.push_back(canonicalOutputCycle(bcn, c));
    for (const auto& c : rb.attractors) yb.push_back(canonicalOutputCycle(bcn, c));
    int N = checkedPow2(bn.n);
    for (int x = 1; x <= N; ++x)
        if (ya[ra.basin[x - 1]] != yb[rb.basin[x - 1]]) {
            rep.witness = "steady-state outputs differ from state " + std::to_string(x);
            return rep;
        }
    rep.verdict = true;
    return rep;
}

} // namespace

EquivalenceReport checkEquivalence(const Network& bn, const Network& bcn,
                                   const EquivalenceQuery& q) {
    validatePair(bn, bcn, q);
    EquivalenceReport rep;
    int N = checkedPow2(bcn.n);
    int M = checkedPow2(bcn.m);

    if (q.disturbanceMode == DisturbanceMode::Both) {
        // The disturbance is shared: fold it into the reference network's
        // state and compare the state projection of each transition.
        if (q.criterion != EquivCriterion::StateTransition)
            throw Error(ErrorCode::DimensionMismatch,
                        "shared-disturbance comparison is defined for state transitions only");
        if (bn.n != bcn.n + bcn.d || bcn.t != 0)
            throw Error(ErrorCode::DimensionMismatch,
                        "reference network must carry the state and the disturbance");
        int D = checkedPow2(bcn.d);
        for (int x = 1; x <= N; ++x) {
            std::vector<int> inputs;
            if (q.regime == EquivRegime::AllInputs)
                for (int u = 1; u <= M; ++u) inputs.push_back(u);
            else
                inputs.push_back(feedbackInput(bcn, q, x));
            for (int u : inputs)
                for (int xd = 1; xd <= D; ++xd) {
                    int got = bcn.L(bcn.colIndex(u, x, xd, 1));
                    int ext = (x - 1) * D + xd;
                    int want = (bn.L(ext) - 1) / D + 1;
                    if (got != want) {
                        std::ostringstream os;
                        os << "state " << x << ", input " << u << ", disturbance " << xd
                           << ": next state " << got << " vs " << want;
                        rep.witness = os.str();
                        return rep;
                    }
                }
        }
        rep.verdict = true;
        return rep;
    }
    if (bn.L.rows != checkedPow2(bn.n))
        throw Error(ErrorCode::DimensionMismatch, "reference network must be square");

    try {
        switch (q.criterion) {
        case EquivCriterion::StateTransition: {
            for (int x = 1; x <= N; ++x) {
                std::vector<int> inputs;
                if (q.regime == EquivRegime::AllInputs)
                    for (int u = 1; u <= M; ++u) inputs.push_back(u);
                else
                    inputs.push_back(feedbackInput(bcn, q, x));
                for (int u : inputs) {
                    int got = quantifiedNext(bcn, u, x);
                    if (got != bn.L(x)) {
                        std::ostringstream os;
                        os << "state " << x << ", input " << u << ": next state " << got
                           << " vs " << bn.L(x);
                        rep.witness = os.str();
                        return rep;
                    }
                }
            }
            rep.verdict = true;
            return rep;
        }
        case EquivCriterion::OutputSequence: {
            // Product BFS over (reference state, controlled state); outputs
            // must agree on every reachable pair. Determinism of the pair
            // dynamics makes agreement up to repetition exact.
            std::set<std::pair<int, int>> seen;
            std::deque<std::pair<int, int>> queue;
            for (int x = 1; x <= N; ++x)
                if (seen.insert({x, x}).second) queue.push_back({x, x});
            while (!queue.empty()) {
                auto [a, b] = queue.front();
                queue.pop_front();
                if (bcn.H(a) != bcn.H(b)) {
                    std::ostringstream os;
                    os << "outputs diverge at pair (" << a << ", " << b << ")";
                    rep.witness = os.str();
                    return rep;
                }
                int na = bn.L(a);
                std::vector<int> inputs;
                if (q.regime == EquivRegime::AllInputs)
                    for (int u = 1; u <= M; ++u) inputs.push_back(u);
                else
                    inputs.push_back(feedbackInput(bcn, q, b));
                for (int u : inputs) {
                    int nb = quantifiedNext(bcn, u, b);
                    if (seen.insert({na, nb}).second) queue.push_back({na, nb});
                }
            }
            rep.verdict = true;
            return rep;
        }
        case EquivCriterion::Attractor:
        case EquivCriterion::OutputSteadyState: {
            bool outputsOnly = q.criterion == EquivCriterion::OutputSteadyState;
            if (q.regime == EquivRegime::AllInputs) {
                // Every constant input must reproduce the reference behaviour.
                for (int u = 1; u <= M; ++u) {
                    std::vector<int> cols(N);
                    for (int x = 1; x <= N; ++x) cols[x - 1] = quantifiedNext(bcn, u, x);
                    EquivalenceReport sub =
                        compareAttractors(bn, bcn, LogicalMatrix(N, std::move(cols)), outputsOnly);
                    if (!sub.verdict) {
                        rep.witness = "input " + std::to_string(u) + ": " + sub.witness;
                        return rep;
                    }
                }
                rep.verdict = true;
                return rep;
            }
            std::vector<int> cols(N);
            for (int x = 1; x <= N; ++x)
                cols[x - 1] = quantifiedNext(bcn, feedbackInput(bcn, q, x), x);
            return compareAttractors(bn, bcn, LogicalMatrix(N, std::move(cols)), outputsOnly);
        }
        }
    } catch (const Fail& f) {
        rep.witness = f.witness;
        return rep;
    }
    return rep;
}

std::vector<LogicalMatrix> searchEquivalenceFeedback(const Network& bn, const Network& bcn,
                                                     EquivCriterion criterion, EquivRegime regime,
                                                     long long budget) {
    if (regime == EquivRegime::AllInputs)
        throw Error(ErrorCode::DimensionMismatch, "feedback search needs a feedback regime");
    int slots = regime == EquivRegime::StateFeedback ? checkedPow2(bcn.n) : checkedPow2(bcn.p);
    int M = checkedPow2(bcn.m);
    // (2^m)^slots candidates; compare in the exponent to avoid overflow.
    long long bits = static_cast<long long>(bcn.m) * slots;
    if (bits >= 63 || (1LL << bits) > budget)
        throw Error(ErrorCode::SearchSpaceTooLarge, "feedback search space exceeds the budget");

    EquivalenceQuery q;
    q.criterion = criterion;
    q.regime = regime;
    q.disturbanceMode = bcn.tailExp() == 0 ? DisturbanceMode::None : DisturbanceMode::BcnOnly;

    std::vector<LogicalMatrix> out;
    std::vector<int> cols(slots, 1);
    while (true) {
        q.feedback = LogicalMatrix(M, cols);
        if (checkEquivalence(bn, bcn, q).verdict) out.push_back(*q.feedback);
        int pos = slots - 1;
        while (pos >= 0 && cols[pos] == M) cols[pos--] = 1;
        if (pos < 0) break;
        ++cols[pos];
    }
    return out;
}

} // namespace bcn
