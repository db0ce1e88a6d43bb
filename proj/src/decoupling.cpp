#include "decoupling.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace bcn {

namespace {

// Output sets of substate k under input i: H values of the successor substates.
std::set<int> successorOutputs(const Network& net, const LogicalMatrix& Hs, int k, int i) {
    std::set<int> out;
    for (int a : subsystemSuccessors(net, k, i)) out.insert(Hs(a));
    return out;
}

} // namespace

RankConditionReport rankConditionDD(const Network& net) {
    int S = checkedPow2(net.s), M = checkedPow2(net.m);
    RankConditionReport rep;
    rep.rankOneInputs.assign(S, {});
    rep.verdict = true;
    for (int k = 1; k <= S; ++k) {
        for (int i = 1; i <= M; ++i)
            if (subsystemSuccessors(net, k, i).size() == 1) rep.rankOneInputs[k - 1].push_back(i);
        if (rep.rankOneInputs[k - 1].empty()) rep.verdict = false;
    }
    return rep;
}

BlockRankReport rankConditionClosedLoop(const LogicalMatrix& Ltilde, int sExp) {
    int blocks = checkedPow2(sExp);
    if (Ltilde.colCount() % blocks != 0)
        throw Error(ErrorCode::DimensionMismatch, "column count not divisible into substate blocks");
    int width = Ltilde.colCount() / blocks;
    BlockRankReport rep;
    rep.verdict = true;
    for (int b = 0; b < blocks; ++b) {
        int first = Ltilde(b * width + 1);
        bool rank1 = true;
        for (int j = 1; j < width; ++j)
            if (Ltilde(b * width + j + 1) != first) { rank1 = false; break; }
        rep.blockRankOne.push_back(rank1);
        if (!rank1) rep.verdict = false;
    }
    return rep;
}

bool ddOutputEquationCheck(const LogicalMatrix& Ltilde, const LogicalMatrix& Hout, int sExp) {
    if (Hout.colCount() != Ltilde.rows)
        throw Error(ErrorCode::DimensionMismatch, "output map does not cover the closed-loop rows");
    int blocks = checkedPow2(sExp);
    if (Ltilde.colCount() % blocks != 0)
        throw Error(ErrorCode::DimensionMismatch, "column count not divisible into substate blocks");
    int width = Ltilde.colCount() / blocks;
    for (int b = 0; b < blocks; ++b) {
        int group = Hout(Ltilde(b * width + 1));
        for (int j = 1; j < width; ++j)
            if (Hout(Ltilde(b * width + j + 1)) != group) return false;
    }
    return true;
}

bool ddOutputEquationCheck(const Network& net, const LogicalMatrix& Ltilde) {
    LogicalMatrix Hout = Ltilde.rows == checkedPow2(net.n) ? net.H : subsystemH(net);
    return ddOutputEquationCheck(Ltilde, Hout, net.s);
}

namespace {

// Expected next output-set vertex along a shortest path in the reachability
// graph; ties broken toward the smallest vertex id. The target maps to itself.
std::map<int, int> nextVertexMap(const ReachabilityGraph& g, int target) {
    std::map<int, int> next;
    next[target] = target;
    // Reverse BFS from the target over reversed edges, assigning each vertex
    // the neighbor that lies one step closer to the target.
    std::map<int, int> dist;
    dist[target] = 0;
    std::deque<int> queue{target};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        std::vector<int> preds;
        for (const auto& [e, ins] : g.edges) {
            (void)ins;
            if (e.second == cur && !dist.count(e.first)) preds.push_back(e.first);
        }
        std::sort(preds.begin(), preds.end());
        for (int p : preds) {
            dist[p] = dist[cur] + 1;
            next[p] = cur;
            queue.push_back(p);
        }
    }
    // Smallest-id tie break: re-scan each settled vertex for an equally close
    // smaller successor.
    for (auto& [v, nv] : next) {
        if (v == target) continue;
        for (const auto& [e, ins] : g.edges) {
            (void)ins;
            if (e.first != v) continue;
            auto it = dist.find(e.second);
            if (it != dist.end() && it->second == dist[v] - 1 && e.second < nv) nv = e.second;
        }
    }
    return next;
}

} // namespace

SynthesisResult ddSynthesize(const Network& net, DDMode mode) {
    int S = checkedPow2(net.s), M = checkedPow2(net.m);
    LogicalMatrix Hs = subsystemH(net);
    SynthesisResult res;
    res.candidates.C.assign(S, {});

    if (mode.kind == DDModeKind::Iteration) {
        // Layered decomposition route: classify substates, then pick inputs
        // that respect the layer ordering.
        DecompositionLayers layers = invariantSetDecomposition(net);
        if (!layers.remainder.empty()) {
            res.feasible = false;
            for (int v : layers.remainder)
                res.diagnostics.push_back("substate " + std::to_string(v) + ": unclassifiable");
            res.candidates.controllerCount = 0;
            return res;
        }
        res.candidates = decompositionControllers(net, layers);
        res.feasible = true;
        for (const auto& c : res.candidates.C) res.feasible = res.feasible && !c.empty();
        if (res.feasible) res.sampleController = sampleFromCandidates(net, res.candidates);
        return res;
    }

    std::map<int, int> nextOf;
    if (mode.kind == DDModeKind::DefiniteReach || mode.kind == DDModeKind::IndefiniteReach) {
        if (mode.target < 1 || mode.target > Hs.rows)
            throw Error(ErrorCode::IndexOutOfRange, "target output index out of range");
        GraphKind gk =
            mode.kind == DDModeKind::DefiniteReach ? GraphKind::Definite : GraphKind::Indefinite;
        nextOf = nextVertexMap(buildReachabilityGraph(net, gk, VertexMode::OutputSets), mode.target);
        res.onlineOnly = mode.kind == DDModeKind::IndefiniteReach;
    }
    if (mode.kind == DDModeKind::CleanReach &&
        (mode.target < 1 || mode.target > Hs.rows))
        throw Error(ErrorCode::IndexOutOfRange, "target output index out of range");

    for (int k = 1; k <= S; ++k) {
        for (int i = 1; i <= M; ++i) {
            std::set<int> outs = successorOutputs(net, Hs, k, i);
            bool ok = false;
            switch (mode.kind) {
                case DDModeKind::Mapping:
                    ok = outs.size() == 1;
                    break;
                case DDModeKind::Invariant:
                    ok = outs.size() == 1 && *outs.begin() == Hs(k);
                    break;
                case DDModeKind::CleanReach:
                    ok = outs.size() == 1 && *outs.begin() == mode.target;
                    break;
                case DDModeKind::DefiniteReach: {
                    auto it = nextOf.find(Hs(k));
                    ok = it != nextOf.end() && outs.size() == 1 && *outs.begin() == it->second;
                    break;
                }
                case DDModeKind::IndefiniteReach: {
                    auto it = nextOf.find(Hs(k));
                    ok = it != nextOf.end() && outs.count(it->second) > 0;
                    break;
                }
                case DDModeKind::Iteration:
                    break; // handled above
            }
            if (ok) res.candidates.C[k - 1].push_back(i);
        }
        if (res.candidates.C[k - 1].empty()) {
            std::ostringstream os;
            os << "substate " << k << ": no admissible input";
            res.diagnostics.push_back(os.str());
        }
    }
    res.feasible = res.diagnostics.empty();
    BigInt count = res.feasible ? 1 : 0;
    if (res.feasible) {
        for (int k = 1; k <= S; ++k) count *= static_cast<int>(res.candidates.C[k - 1].size());
        res.sampleController = sampleFromCandidates(net, res.candidates);
    }
    res.candidates.controllerCount = count;
    return res;
}

namespace {

long long candidateCount(int m, int groups) {
    // (2^m)^groups, saturating past the budget range.
    long long count = 1;
    for (int i = 0; i < groups; ++i) {
        count *= 1LL << m;
        if (count > (1LL << 40)) return 1LL << 40;
    }
    return count;
}

// Enumerate all output-feedback matrices lexicographically.
template <typename Fn>
void forEachOutputFeedback(int m, int p, Fn&& fn) {
    int M = 1 << m, P = 1 << p;
    std::vector<int> cols(P, 1);
    while (true) {
        fn(LogicalMatrix(M, cols));
        int pos = P - 1;
        while (pos >= 0 && cols[pos] == M) cols[pos--] = 1;
        if (pos < 0) break;
        ++cols[pos];
    }
}

} // namespace

std::vector<LogicalMatrix> ddOutputFeedbackSynthesize(const Network& net, DDCondition cond,
                                                      long long budget) {
    if (candidateCount(net.m, checkedPow2(net.p)) > budget)
        throw Error(ErrorCode::SearchSpaceTooLarge, "output-feedback search space exceeds budget");
    std::vector<LogicalMatrix> found;
    forEachOutputFeedback(net.m, net.p, [&](const LogicalMatrix& My) {
        LogicalMatrix Lt = applyOutputFeedback(net, {FeedbackKind::Output, My});
        bool pass = cond == DDCondition::BlockRank
                        ? rankConditionClosedLoop(Lt, net.s).verdict
                        : ddOutputEquationCheck(net, Lt);
        if (pass) found.push_back(My);
    });
    return found;
}

std::vector<LogicalMatrix> stabilizationSynthesize(const Network& net,
                                                   const StabilizationTarget& target,
                                                   long long budget) {
    if (net.L.rows != checkedPow2(net.n))
        throw Error(ErrorCode::DimensionMismatch, "stabilization needs a full-state matrix");
    if (candidateCount(net.m, checkedPow2(net.p)) > budget)
        throw Error(ErrorCode::SearchSpaceTooLarge, "output-feedback search space exceeds budget");
    int N = checkedPow2(net.n);

    if (const auto* behavior = std::get_if<LogicalMatrix>(&target.value)) {
        if (behavior->rows != net.L.rows || behavior->colCount() != N * checkedPow2(net.tailExp()))
            throw Error(ErrorCode::DimensionMismatch, "behavior target has wrong dimensions");
        // Necessary condition: each required column must occur in the right
        // block range of L; collect admissible inputs per state first.
        int tail = checkedPow2(net.tailExp());
        std::vector<std::vector<int>> perState(N);
        for (int x = 1; x <= N; ++x) {
            for (int u = 1; u <= checkedPow2(net.m); ++u) {
                bool match = true;
                for (int j = 0; j < tail && match; ++j)
                    match = net.L(net.colIndex(u, x, 1, 1) + j) == (*behavior)((x - 1) * tail + j + 1);
                if (match) perState[x - 1].push_back(u);
            }
            if (perState[x - 1].empty()) return {};
        }
        std::vector<LogicalMatrix> found;
        forEachOutputFeedback(net.m, net.p, [&](const LogicalMatrix& My) {
            for (int x = 1; x <= N; ++x) {
                int u = My(net.H(x));
                if (std::find(perState[x - 1].begin(), perState[x - 1].end(), u) ==
                    perState[x - 1].end())
                    return;
            }
            found.push_back(My);
        });
        return found;
    }

    if (net.d != 0 || net.t != 0)
        throw Error(ErrorCode::DimensionMismatch,
                    "state-target stabilization requires d = t = 0");
    std::vector<int> targetSet;
    if (const auto* state = std::get_if<int>(&target.value))
        targetSet = {*state};
    else
        targetSet = std::get<std::vector<int>>(target.value);
    std::sort(targetSet.begin(), targetSet.end());
    for (int v : targetSet)
        if (v < 1 || v > N) throw Error(ErrorCode::IndexOutOfRange, "target state out of range");
    if (targetSet.empty()) throw Error(ErrorCode::IndexOutOfRange, "empty target set");

    std::vector<LogicalMatrix> found;
    forEachOutputFeedback(net.m, net.p, [&](const LogicalMatrix& My) {
        LogicalMatrix Lt = applyOutputFeedback(net, {FeedbackKind::Output, My});
        AttractorReport rep = attractors(Lt);
        // Accept when the closed loop has a single attractor whose cycle is
        // exactly the target set (a fixed point for a singleton target).
        if (rep.attractors.size() != 1) return;
        std::vector<int> cyc = rep.attractors[0];
        std::sort(cyc.begin(), cyc.end());
        if (cyc == targetSet) found.push_back(My);
    });
    return found;
}

VerifyReport verifyDD(const Network& net, const LogicalMatrix& Mx, DDMode mode, int horizon) {
    int S = checkedPow2(net.s), N = checkedPow2(net.n);
    if (Mx.rows != checkedPow2(net.m) || Mx.colCount() != N)
        throw Error(ErrorCode::DimensionMismatch, "controller must be 2^m x 2^n");
    LogicalMatrix Hs = subsystemH(net);
    int group = checkedPow2(net.n - net.s);
    int tail = checkedPow2(net.tailExp());
    int perInput = N * tail;
    int proj = checkedPow2(net.rowsExp() - net.s);

    // Per full state: successor substates under the controller's input.
    std::vector<std::set<int>> perFull(N + 1);
    std::vector<std::set<int>> T(S + 1); // per substate, union over the block
    for (int q = 1; q <= N; ++q) {
        int u = Mx(q);
        int base = (u - 1) * perInput + (q - 1) * tail;
        for (int j = 0; j < tail; ++j)
            perFull[q].insert((net.L(base + j + 1) - 1) / proj + 1);
        int k = (q - 1) / group + 1;
        T[k].insert(perFull[q].begin(), perFull[q].end());
    }

    VerifyReport rep;
    if (mode.kind == DDModeKind::Mapping || mode.kind == DDModeKind::Invariant) {
        rep.verdict = true;
        rep.kstar = 0;
        for (int q = 1; q <= N; ++q) {
            std::set<int> outs;
            for (int a : perFull[q]) outs.insert(Hs(a));
            bool ok = outs.size() == 1;
            if (ok && mode.kind == DDModeKind::Invariant)
                ok = *outs.begin() == Hs((q - 1) / group + 1);
            if (!ok) {
                rep.verdict = false;
                std::ostringstream os;
                os << "state " << q << ": next output not "
                   << (mode.kind == DDModeKind::Invariant ? "invariant" : "deterministic");
                rep.witness = os.str();
                break;
            }
        }
        return rep;
    }

    if (mode.kind == DDModeKind::CleanReach || mode.kind == DDModeKind::DefiniteReach ||
        mode.kind == DDModeKind::IndefiniteReach) {
        // Worst-case steps until the output equals the target, quantified over
        // every disturbance completion (possibility only for indefinite mode).
        int target = mode.target;
        std::vector<int> f(S + 1, -1);
        for (int k = 1; k <= S; ++k)
            if (Hs(k) == target) f[k] = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int k = 1; k <= S; ++k) {
                if (f[k] >= 0) continue;
                bool all = true;
                int worst = 0, best = -1;
                for (int a : T[k]) {
                    if (f[a] < 0) all = false;
                    else {
                        worst = std::max(worst, f[a]);
                        best = best < 0 ? f[a] : std::min(best, f[a]);
                    }
                }
                if (mode.kind == DDModeKind::IndefiniteReach ? best >= 0 : all) {
                    f[k] = 1 + (mode.kind == DDModeKind::IndefiniteReach ? best : worst);
                    changed = true;
                }
            }
        }
        rep.verdict = true;
        rep.kstar = 0;
        for (int k = 1; k <= S; ++k) {
            if (f[k] < 0 || f[k] > horizon) {
                rep.verdict = false;
                std::ostringstream os;
                os << "substate " << k << ": target output not "
                   << (mode.kind == DDModeKind::IndefiniteReach ? "possibly" : "certainly")
                   << " reached within the horizon";
                rep.witness = os.str();
                return rep;
            }
            rep.kstar = std::max(rep.kstar, f[k]);
        }
        return rep;
    }

    // Iteration mode: a deterministic core must absorb every run. The core is
    // the set of substates that return to themselves along deterministic
    // closed-loop transitions; entry into it must be certain within horizon
    // steps for every initial state and disturbance completion.
    std::vector<int> det(S + 1, 0);
    for (int k = 1; k <= S; ++k) det[k] = T[k].size() == 1;
    std::vector<int> core(S + 1, 0);
    for (int v = 1; v <= S; ++v) {
        if (!det[v]) continue;
        int cur = *T[v].begin();
        std::set<int> seen;
        bool back = cur == v;
        while (!back && det[cur] && !seen.count(cur)) {
            seen.insert(cur);
            cur = *T[cur].begin();
            if (cur == v) back = true;
        }
        core[v] = back;
    }
    std::vector<int> f(S + 1, -1);
    for (int k = 1; k <= S; ++k)
        if (core[k]) f[k] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 1; k <= S; ++k) {
            if (f[k] >= 0) continue;
            bool all = true;
            int worst = 0;
            for (int a : T[k]) {
                if (f[a] < 0) { all = false; break; }
                worst = std::max(worst, f[a]);
            }
            if (all) {
                f[k] = 1 + worst;
                changed = true;
            }
        }
    }
    rep.verdict = true;
    rep.kstar = 0;
    for (int k = 1; k <= S; ++k) {
        if (f[k] < 0 || f[k] > horizon) {
            rep.verdict = false;
            std::ostringstream os;
            os << "substate " << k
               << ": not forced into the deterministic core within the horizon";
            rep.witness = os.str();
            return rep;
        }
        rep.kstar = std::max(rep.kstar, f[k]);
    }
    return rep;
}

} // namespace bcn
