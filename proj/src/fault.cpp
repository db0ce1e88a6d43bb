#include "fault.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace bcn {

bool reflectiveCheck(const LogicalMatrix& MG, int r, int sRedundant) {
    int cols = MG.colCount();
    if (!isPowerOfTwo(cols))
        throw Error(ErrorCode::DimensionMismatch, "reflectiveCheck needs 2^n columns");
    int n = log2Exact(cols);
    if (r < 0 || sRedundant < 0 || r + sRedundant > n)
        throw Error(ErrorCode::DimensionMismatch, "reflectiveCheck variable split out of range");
    int blocks = checkedPow2(r);
    int blockWidth = cols / blocks;
    int subBlocks = checkedPow2(sRedundant);
    int subWidth = blockWidth / subBlocks;
    for (int b = 0; b < blocks; ++b) {
        int base = b * blockWidth;
        // Sub-blocks within a block must be pairwise identical...
        for (int sb = 1; sb < subBlocks; ++sb)
            for (int j = 0; j < subWidth; ++j)
                if (MG(base + sb * subWidth + j + 1) != MG(base + j + 1)) return false;
        // ...and each must have all-distinct columns (full column rank).
        std::set<int> seen;
        for (int j = 0; j < subWidth; ++j)
            if (!seen.insert(MG(base + j + 1)).second) return false;
    }
    return true;
}

ImpossibleOutputMap impossibleOutputSets(const LogicalMatrix& Ltilde, const LogicalMatrix& H) {
    int states = H.colCount();
    if (Ltilde.colCount() % states != 0)
        throw Error(ErrorCode::DimensionMismatch,
                    "closed-loop columns must be a multiple of the state count");
    int w = Ltilde.colCount() / states;
    int P = H.rows;
    ImpossibleOutputMap out;
    std::vector<std::set<int>> attainable(P);
    for (int x = 1; x <= states; ++x) {
        int from = H(x);
        for (int j = 0; j < w; ++j) {
            int nxt = Ltilde((x - 1) * w + j + 1);
            if (nxt < 1 || nxt > states)
                throw Error(ErrorCode::DimensionMismatch, "closed loop leaves the output domain");
            attainable[from - 1].insert(H(nxt));
        }
    }
    out.impossible.assign(P, {});
    for (int i = 1; i <= P; ++i)
        for (int j = 1; j <= P; ++j)
            if (!attainable[i - 1].count(j)) out.impossible[i - 1].push_back(j);
    return out;
}

int faultFreeIndex(const Network& net) { return checkedPow2(net.t); }

namespace {

// Next output for (state, input, disturbance, fault), at the resolution of
// the stored transition matrix.
int nextOutput(const Network& net, const LogicalMatrix& Hout, int u, int x, int xd, int xf) {
    return Hout(net.L(net.colIndex(u, x, xd, xf)));
}

LogicalMatrix outputMapForRows(const Network& net) {
    return net.L.rows == checkedPow2(net.n) ? net.H : subsystemH(net);
}

SynthesisResult faultSynthesize(const Network& net, bool requireDisturbanceRedundant) {
    if (net.t < 1)
        throw Error(ErrorCode::DimensionMismatch, "fault detection needs at least one fault variable");
    if (requireDisturbanceRedundant) {
        if (net.d < 1)
            throw Error(ErrorCode::DimensionMismatch, "combined DD+IFD needs a disturbance variable");
        if (net.order != SignalOrder::UXDF)
            throw Error(ErrorCode::DimensionMismatch,
                        "combined DD+IFD expects signal order u,x,d,f");
    } else if (net.d != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "plain IFD assumes no disturbance; use the combined synthesis");
    }

    int N = checkedPow2(net.n), M = checkedPow2(net.m);
    int F = checkedPow2(net.t), D = checkedPow2(net.d);
    LogicalMatrix Hout = outputMapForRows(net);

    SynthesisResult res;
    res.candidates.C.assign(N, {});
    for (int j = 1; j <= N; ++j) {
        for (int i = 1; i <= M; ++i) {
            bool ok = true;
            // Fault values must map to pairwise distinct next outputs
            // (injective fault -> output), for the reference disturbance...
            std::set<int> outs;
            for (int xf = 1; xf <= F && ok; ++xf)
                ok = outs.insert(nextOutput(net, Hout, i, j, 1, xf)).second;
            // ...and raw sub-block columns must be all-distinct (reflective).
            if (ok) {
                std::set<int> cols;
                for (int xf = 1; xf <= F && ok; ++xf)
                    ok = cols.insert(net.L(net.colIndex(i, j, 1, xf))).second;
            }
            // Disturbance divisions must be identical.
            for (int xd = 2; xd <= D && ok; ++xd)
                for (int xf = 1; xf <= F && ok; ++xf)
                    ok = net.L(net.colIndex(i, j, xd, xf)) == net.L(net.colIndex(i, j, 1, xf));
            if (ok) res.candidates.C[j - 1].push_back(i);
        }
        if (res.candidates.C[j - 1].empty())
            res.diagnostics.push_back("state " + std::to_string(j) + ": no admissible input");
    }
    res.feasible = res.diagnostics.empty();
    BigInt count = res.feasible ? 1 : 0;
    if (res.feasible) {
        for (int j = 1; j <= N; ++j) count *= static_cast<int>(res.candidates.C[j - 1].size());
        std::vector<int> cols(N);
        for (int j = 1; j <= N; ++j) cols[j - 1] = res.candidates.C[j - 1].front();
        res.sampleController = LogicalMatrix(M, std::move(cols));
    }
    res.candidates.controllerCount = count;
    return res;
}

} // namespace

SynthesisResult ifdSynthesize(const Network& net) { return faultSynthesize(net, false); }

SynthesisResult ddIfdSynthesize(const Network& net) { return faultSynthesize(net, true); }

std::vector<LogicalMatrix> enumerateControllers(const Network& net,
                                                const ControlCandidateSets& cand,
                                                long long limit) {
    int N = static_cast<int>(cand.C.size());
    BigInt total = 1;
    for (const auto& c : cand.C) {
        if (c.empty()) return {};
        total *= static_cast<int>(c.size());
    }
    if (total > limit)
        throw Error(ErrorCode::SearchSpaceTooLarge, "controller product exceeds the limit");
    std::vector<LogicalMatrix> out;
    std::vector<size_t> pick(N, 0);
    int M = checkedPow2(net.m);
    while (true) {
        std::vector<int> cols(N);
        for (int j = 0; j < N; ++j) cols[j] = cand.C[j][pick[j]];
        out.emplace_back(M, std::move(cols));
        int pos = N - 1;
        while (pos >= 0 && pick[pos] + 1 == cand.C[pos].size()) pick[pos--] = 0;
        if (pos < 0) break;
        ++pick[pos];
    }
    return out;
}

FDVerifyReport verifyFaultDetection(const Network& net, const LogicalMatrix& Mx,
                                    FDVerifyMode mode) {
    int N = checkedPow2(net.n);
    if (Mx.rows != checkedPow2(net.m) || Mx.colCount() != N)
        throw Error(ErrorCode::DimensionMismatch, "controller must be 2^m x 2^n");
    int F = checkedPow2(net.t), D = checkedPow2(net.d);
    LogicalMatrix Hout = outputMapForRows(net);
    FDVerifyReport rep;

    if (mode == FDVerifyMode::StateKnown) {
        for (int x = 1; x <= N; ++x) {
            int u = Mx(x);
            for (int xd = 1; xd <= D; ++xd) {
                std::map<int, int> byFault;
                for (int xf = 1; xf <= F; ++xf) {
                    int y = nextOutput(net, Hout, u, x, xd, xf);
                    auto [it, fresh] = byFault.emplace(y, xf);
                    if (!fresh) {
                        std::ostringstream os;
                        os << "state " << x << ": faults " << it->second << " and " << xf
                           << " give the same next output " << y;
                        rep.witness = os.str();
                        return rep;
                    }
                    // Disturbance must never alter the next output.
                    int yRef = nextOutput(net, Hout, u, x, 1, xf);
                    if (y != yRef) {
                        std::ostringstream os;
                        os << "state " << x << ": disturbance " << xd
                           << " changes the next output under fault " << xf;
                        rep.witness = os.str();
                        return rep;
                    }
                }
            }
        }
        rep.verdict = true;
        return rep;
    }

    // Output-only: any active fault must produce an output transition that is
    // impossible under the fault-free closed loop.
    if (net.L.rows != N)
        throw Error(ErrorCode::DimensionMismatch, "output-only verification needs a full-state matrix");
    int ff = faultFreeIndex(net);
    std::vector<int> cols;
    cols.reserve(static_cast<size_t>(N) * D);
    for (int x = 1; x <= N; ++x)
        for (int xd = 1; xd <= D; ++xd) cols.push_back(net.L(net.colIndex(Mx(x), x, xd, ff)));
    ImpossibleOutputMap im = impossibleOutputSets(LogicalMatrix(N, std::move(cols)), Hout);
    for (int x = 1; x <= N; ++x) {
        int u = Mx(x);
        int from = Hout(x);
        for (int xd = 1; xd <= D; ++xd)
            for (int xf = 1; xf <= F; ++xf) {
                if (xf == ff) continue;
                int y = nextOutput(net, Hout, u, x, xd, xf);
                const auto& imp = im.impossible[from - 1];
                if (!std::binary_search(imp.begin(), imp.end(), y)) {
                    std::ostringstream os;
                    os << "state " << x << ": fault " << xf
                       << " yields output " << y << " which is also attainable fault-free";
                    rep.witness = os.str();
                    return rep;
                }
            }
    }
    rep.verdict = true;
    return rep;
}

ObserverTrace observerRun(const Network& net, const std::vector<int>& observedOutputs,
                          const std::optional<std::vector<int>>& appliedInputs, bool autoPolicy) {
    if (observedOutputs.empty())
        throw Error(ErrorCode::InconsistentTrace, "observer needs at least one observation");
    int N = checkedPow2(net.n);
    if (net.L.rows != N)
        throw Error(ErrorCode::DimensionMismatch, "observer needs a full-state matrix");
    int ff = faultFreeIndex(net);
    int D = checkedPow2(net.d);

    OutputPartition part = outputSets(net);
    auto outputSet = [&](int y) -> const std::vector<int>& {
        if (y < 1 || y > static_cast<int>(part.sets.size()))
            throw Error(ErrorCode::IndexOutOfRange, "observed output out of range");
        return part.sets[y - 1];
    };
    auto successorsOf = [&](const std::vector<int>& states, int u) {
        std::set<int> out;
        for (int x : states)
            for (int xd = 1; xd <= D; ++xd) out.insert(net.L(net.colIndex(u, x, xd, ff)));
        return out;
    };

    ObserverTrace trace;
    ObserverState cur;
    cur.possible = outputSet(observedOutputs[0]);
    cur.reconstructed = cur.possible.size() == 1;
    trace.steps.push_back(cur);

    for (size_t k = 1; k < observedOutputs.size(); ++k) {
        int u;
        if (autoPolicy) {
            int best = -1;
            size_t bestSize = 0;
            for (int cand = 1; cand <= checkedPow2(net.m); ++cand) {
                size_t sz = successorsOf(cur.possible, cand).size();
                if (best < 0 || sz < bestSize) {
                    best = cand;
                    bestSize = sz;
                }
            }
            u = best;
            if (appliedInputs && k - 1 < appliedInputs->size() &&
                (*appliedInputs)[k - 1] != u)
                throw Error(ErrorCode::InconsistentTrace,
                            "supplied input at step " + std::to_string(k - 1) +
                                " conflicts with the auto policy");
        } else {
            if (!appliedInputs || k - 1 >= appliedInputs->size())
                throw Error(ErrorCode::InconsistentTrace, "input sequence shorter than observations");
            u = (*appliedInputs)[k - 1];
            if (u < 1 || u > checkedPow2(net.m))
                throw Error(ErrorCode::IndexOutOfRange, "applied input out of range");
        }
        std::set<int> succ = successorsOf(cur.possible, u);
        const std::vector<int>& obs = outputSet(observedOutputs[k]);
        std::vector<int> inter;
        std::set_intersection(succ.begin(), succ.end(), obs.begin(), obs.end(),
                              std::back_inserter(inter));
        ObserverState nxt;
        nxt.lastInput = u;
        nxt.possible = inter;
        nxt.reconstructed = inter.size() == 1;
        nxt.faultFlag = inter.empty();
        trace.steps.push_back(nxt);
        if (nxt.faultFlag) break;
        cur = nxt;
    }
    return trace;
}

} // namespace bcn
