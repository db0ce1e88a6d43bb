#include "dynamics.hpp"

#include <algorithm>

namespace bcn {

namespace {

LogicalMatrix selectColumns(const Network& net, const std::vector<int>& inputPerState) {
    int N = checkedPow2(net.n);
    int tail = checkedPow2(net.tailExp());
    int perInput = N * tail;
    std::vector<int> cols(static_cast<size_t>(N) * tail);
    for (int x = 1; x <= N; ++x) {
        int u = inputPerState[x - 1];
        int base = (u - 1) * perInput + (x - 1) * tail;
        for (int j = 0; j < tail; ++j)
            cols[static_cast<size_t>(x - 1) * tail + j] = net.L(base + j + 1);
    }
    return LogicalMatrix(net.L.rows, std::move(cols));
}

} // namespace

LogicalMatrix applyStateFeedback(const Network& net, const FeedbackLaw& law) {
    int N = checkedPow2(net.n), M = checkedPow2(net.m);
    const LogicalMatrix& Mx = law.M;
    if (Mx.rows != M)
        throw Error(ErrorCode::DimensionMismatch, "feedback matrix rows must be 2^m");
    std::vector<int> perState(N);
    if (law.kind == FeedbackKind::Pinning) {
        if (Mx.colCount() != 1)
            throw Error(ErrorCode::DimensionMismatch, "pinning law must have one column");
        std::fill(perState.begin(), perState.end(), Mx(1));
    } else {
        if (law.kind != FeedbackKind::State)
            throw Error(ErrorCode::DimensionMismatch, "applyStateFeedback needs a state-feedback law");
        if (Mx.colCount() != N)
            throw Error(ErrorCode::DimensionMismatch, "state feedback must have 2^n columns");
        for (int x = 1; x <= N; ++x) perState[x - 1] = Mx(x);
    }
    return selectColumns(net, perState);
}

LogicalMatrix applyOutputFeedback(const Network& net, const FeedbackLaw& law) {
    int N = checkedPow2(net.n), M = checkedPow2(net.m);
    const LogicalMatrix& My = law.M;
    if (law.kind != FeedbackKind::Output)
        throw Error(ErrorCode::DimensionMismatch, "applyOutputFeedback needs an output-feedback law");
    if (My.rows != M || My.colCount() != net.H.rows)
        throw Error(ErrorCode::DimensionMismatch, "output feedback must be 2^m x 2^p");
    std::vector<int> perState(N);
    for (int x = 1; x <= N; ++x) perState[x - 1] = My(net.H(x));
    return selectColumns(net, perState);
}

LogicalMatrix expandSubstateFeedback(const Network& net, const LogicalMatrix& Msub) {
    int S = checkedPow2(net.s), group = checkedPow2(net.n - net.s);
    if (Msub.rows != checkedPow2(net.m) || Msub.colCount() != S)
        throw Error(ErrorCode::DimensionMismatch, "substate feedback must be 2^m x 2^s");
    std::vector<int> cols(static_cast<size_t>(S) * group);
    for (int k = 1; k <= S; ++k)
        for (int g = 0; g < group; ++g) cols[static_cast<size_t>(k - 1) * group + g] = Msub(k);
    return LogicalMatrix(Msub.rows, std::move(cols));
}

Trajectory simulate(const Network& net, const SimulationSpec& spec) {
    int N = checkedPow2(net.n);
    if (net.L.rows != N)
        throw Error(ErrorCode::DimensionMismatch, "simulate needs a full-state matrix");
    if (spec.x0 < 1 || spec.x0 > N)
        throw Error(ErrorCode::IndexOutOfRange, "initial state out of range");
    Trajectory tr;
    tr.states.push_back(spec.x0);
    tr.outputs.push_back(net.H(spec.x0));
    for (int step = 0; step < spec.horizon; ++step) {
        int x = tr.states.back();
        int u = 1;
        if (net.m > 0) {
            if (spec.feedback) {
                const FeedbackLaw& law = *spec.feedback;
                if (law.kind == FeedbackKind::State)
                    u = law.M(x);
                else if (law.kind == FeedbackKind::Output)
                    u = law.M(net.H(x));
                else
                    u = law.M(1);
            } else {
                if (static_cast<int>(spec.inputs.size()) <= step)
                    throw Error(ErrorCode::DimensionMismatch, "input sequence shorter than horizon");
                u = spec.inputs[step];
            }
        }
        int xd = net.d > 0 && step < static_cast<int>(spec.disturbances.size())
                     ? spec.disturbances[step]
                     : 1;
        int xf = net.t > 0 && step < static_cast<int>(spec.faults.size()) ? spec.faults[step] : 1;
        if (u < 1 || u > checkedPow2(net.m) || xd < 1 || xd > checkedPow2(net.d) || xf < 1 ||
            xf > checkedPow2(net.t))
            throw Error(ErrorCode::IndexOutOfRange, "signal index out of range during simulation");
        int next = net.L(net.colIndex(u, x, xd, xf));
        tr.states.push_back(next);
        tr.outputs.push_back(net.H(next));
        tr.inputs.push_back(u);
        if (net.d > 0) tr.disturbances.push_back(xd);
        if (net.t > 0) tr.faults.push_back(xf);
    }
    return tr;
}

LogicalMatrix closedLoopPower(const LogicalMatrix& Ltilde, int k) {
    if (k < 1) throw Error(ErrorCode::IndexOutOfRange, "power must be >= 1");
    int rows = Ltilde.rows;
    if (Ltilde.colCount() % rows != 0)
        throw Error(ErrorCode::DimensionMismatch, "closed-loop matrix columns must be rows * 2^(d+t)");
    int w = Ltilde.colCount() / rows;
    LogicalMatrix acc = Ltilde;
    for (int step = 1; step < k; ++step) {
        // acc maps (x0, word) -> state; extend by one more tail symbol.
        long long newCols = static_cast<long long>(acc.colCount()) * w;
        if (newCols > (1LL << 26))
            throw Error(ErrorCode::BudgetExceeded, "closed-loop power exceeds the supported size");
        std::vector<int> cols(static_cast<size_t>(newCols));
        for (int c = 1; c <= acc.colCount(); ++c) {
            int mid = acc(c);
            for (int j = 0; j < w; ++j)
                cols[static_cast<size_t>(c - 1) * w + j] = Ltilde((mid - 1) * w + j + 1);
        }
        acc = LogicalMatrix(rows, std::move(cols));
    }
    return acc;
}

AttractorReport attractors(const LogicalMatrix& L) {
    int N = L.rows;
    if (L.colCount() != N)
        throw Error(ErrorCode::DimensionMismatch, "attractors needs a square matrix");
    AttractorReport rep;
    rep.basin.assign(N, -1);
    rep.distance.assign(N, -1);
    std::vector<int> onCycle(N, 0);

    // Find cycle states: iterate the functional map N steps from each state.
    std::vector<int> reachEnd(N);
    for (int x = 1; x <= N; ++x) {
        int cur = x;
        for (int i = 0; i < N; ++i) cur = L(cur);
        reachEnd[x - 1] = cur; // guaranteed on a cycle
    }
    for (int x = 1; x <= N; ++x) {
        int c = reachEnd[x - 1];
        if (!onCycle[c - 1]) {
            // Walk the cycle containing c.
            std::vector<int> cyc;
            int cur = c;
            do {
                cyc.push_back(cur);
                onCycle[cur - 1] = 1;
                cur = L(cur);
            } while (cur != c);
        }
    }
    // Collect cycles in canonical form, ordered by smallest member.
    std::vector<std::vector<int>> cycles;
    std::vector<int> seen(N, 0);
    for (int x = 1; x <= N; ++x) {
        if (!onCycle[x - 1] || seen[x - 1]) continue;
        std::vector<int> cyc;
        int cur = x;
        do {
            cyc.push_back(cur);
            seen[cur - 1] = 1;
            cur = L(cur);
        } while (cur != x);
        // Rotate so the smallest index leads.
        auto mn = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), mn, cyc.end());
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    rep.attractors = cycles;

    std::vector<int> cycleId(N, -1);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (int v : cycles[i]) cycleId[v - 1] = static_cast<int>(i);
    for (int x = 1; x <= N; ++x) {
        int cur = x, dist = 0;
        while (cycleId[cur - 1] < 0) {
            cur = L(cur);
            ++dist;
        }
        rep.basin[x - 1] = cycleId[cur - 1];
        rep.distance[x - 1] = dist;
    }
    return rep;
}

} // namespace bcn
