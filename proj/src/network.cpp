#include "network.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bcn {

using nlohmann::json;

std::string signalOrderName(SignalOrder o) {
    return o == SignalOrder::UXDF ? "u,x,d,f" : "u,x,f,d";
}

int Network::rowsExp() const { return log2Exact(L.rows); }

int Network::colIndex(int u, int x, int xiD, int xiF) const {
    int tailD = checkedPow2(d), tailF = checkedPow2(t);
    int tail;
    if (order == SignalOrder::UXDF)
        tail = (xiD - 1) * tailF + (xiF - 1);
    else
        tail = (xiF - 1) * tailD + (xiD - 1);
    int perState = tailD * tailF;
    int perInput = checkedPow2(n) * perState;
    return (u - 1) * perInput + (x - 1) * perState + tail + 1;
}

int Network::substateOf(int x) const {
    int group = checkedPow2(n - s);
    return (x - 1) / group + 1;
}

namespace {

void validateDims(int n, int m, int d, int t) {
    if (n < 1) throw Error(ErrorCode::SchemaError, "need at least one state variable");
    if (m < 0 || d < 0 || t < 0) throw Error(ErrorCode::SchemaError, "negative signal count");
    if (n + m + d + t > 24)
        throw Error(ErrorCode::SchemaError,
                    "n+m+d+t exceeds the supported desk scale of 24 variables");
}

LogicalMatrix substateIdentityH(int n, int s) {
    int N = checkedPow2(n), group = checkedPow2(n - s);
    std::vector<int> cols(N);
    for (int x = 1; x <= N; ++x) cols[x - 1] = (x - 1) / group + 1;
    return LogicalMatrix(checkedPow2(s), std::move(cols));
}

} // namespace

Network compileAlgebraicForm(const UpdateRuleSet& rules, int n, int m, int d, int t,
                             SignalOrder order, const std::string& name) {
    validateDims(n, m, d, t);
    if (static_cast<int>(rules.state.size()) != n)
        throw Error(ErrorCode::ArityMismatch, "expected one state rule per state variable");
    SignalCounts counts{n, m, d, t};
    for (const auto& e : rules.state) checkIdentifiers(e, counts);
    for (const auto& e : rules.output) {
        checkIdentifiers(e, counts);
        // Output rules reference state variables only.
        std::vector<ExprPtr> stack{e};
        while (!stack.empty()) {
            ExprPtr cur = stack.back();
            stack.pop_back();
            if (!cur) continue;
            if (cur->op == ExprOp::Var && cur->varKind != 'x')
                throw Error(ErrorCode::SchemaError, "output rules may reference state variables only");
            stack.push_back(cur->lhs);
            stack.push_back(cur->rhs);
        }
    }

    Network net;
    net.name = name;
    net.n = n;
    net.m = m;
    net.d = d;
    net.t = t;
    net.order = order;
    net.rules = rules;

    int p = static_cast<int>(rules.output.size());
    net.p = p > 0 ? p : 0;

    // Output-friendly variables must come first; reorder state variables when
    // the output rules reference later ones, recording the permutation.
    std::set<int> used;
    for (const auto& e : rules.output) {
        std::vector<ExprPtr> stack{e};
        while (!stack.empty()) {
            ExprPtr cur = stack.back();
            stack.pop_back();
            if (!cur) continue;
            if (cur->op == ExprOp::Var && cur->varKind == 'x') used.insert(cur->varIndex);
            stack.push_back(cur->lhs);
            stack.push_back(cur->rhs);
        }
    }
    std::vector<int> perm; // internal position -> source variable index
    for (int v : used) perm.push_back(v);
    for (int v = 1; v <= n; ++v)
        if (!used.count(v)) perm.push_back(v);
    net.statePermutation = perm;
    net.s = used.empty() ? n : static_cast<int>(used.size());

    std::vector<int> sourcePos(n + 1); // source variable -> internal position (0-based)
    for (int i = 0; i < n; ++i) sourcePos[perm[i]] = i;

    int cols = checkedPow2(n + m + d + t);
    int N = checkedPow2(n);
    std::vector<int> Lcols(cols);
    int tailD = checkedPow2(d), tailF = checkedPow2(t);
    for (int c = 0; c < cols; ++c) {
        int rem = c;
        int tail2, tail1, xIdx, uIdx;
        tail2 = rem % (order == SignalOrder::UXDF ? tailF : tailD);
        rem /= (order == SignalOrder::UXDF ? tailF : tailD);
        tail1 = rem % (order == SignalOrder::UXDF ? tailD : tailF);
        rem /= (order == SignalOrder::UXDF ? tailD : tailF);
        xIdx = rem % N;
        uIdx = rem / N;

        Assignment a;
        a.u.resize(m);
        a.x.resize(n);
        a.d.resize(d);
        a.f.resize(t);
        for (int i = 0; i < m; ++i) a.u[i] = ((uIdx >> (m - 1 - i)) & 1) == 0;
        std::vector<bool> internalBits(n);
        for (int i = 0; i < n; ++i) internalBits[i] = ((xIdx >> (n - 1 - i)) & 1) == 0;
        for (int i = 0; i < n; ++i) a.x[perm[i] - 1] = internalBits[i];
        int dIdx = order == SignalOrder::UXDF ? tail1 : tail2;
        int fIdx = order == SignalOrder::UXDF ? tail2 : tail1;
        for (int i = 0; i < d; ++i) a.d[i] = ((dIdx >> (d - 1 - i)) & 1) == 0;
        for (int i = 0; i < t; ++i) a.f[i] = ((fIdx >> (t - 1 - i)) & 1) == 0;

        std::vector<bool> nextInternal(n);
        for (int i = 0; i < n; ++i) nextInternal[i] = evalExpression(rules.state[perm[i] - 1], a);
        Lcols[c] = encodeState(nextInternal).index;
    }
    net.L = LogicalMatrix(N, std::move(Lcols));

    if (p > 0) {
        int P = checkedPow2(p);
        std::vector<int> Hcols(N);
        for (int xIdx = 0; xIdx < N; ++xIdx) {
            Assignment a;
            a.x.resize(n);
            std::vector<bool> internalBits(n);
            for (int i = 0; i < n; ++i) internalBits[i] = ((xIdx >> (n - 1 - i)) & 1) == 0;
            for (int i = 0; i < n; ++i) a.x[perm[i] - 1] = internalBits[i];
            std::vector<bool> outBits(p);
            for (int i = 0; i < p; ++i) outBits[i] = evalExpression(rules.output[i], a);
            Hcols[xIdx] = encodeState(outBits).index;
        }
        net.H = LogicalMatrix(P, std::move(Hcols));
        net.explicitH = true;
    } else {
        net.p = net.s;
        net.H = substateIdentityH(n, net.s);
        net.explicitH = false;
    }
    return net;
}

OutputPartition outputSets(const Network& net) {
    OutputPartition part;
    part.sets.assign(net.H.rows, {});
    for (int x = 1; x <= net.H.colCount(); ++x) part.sets[net.H(x) - 1].push_back(x);
    return part;
}

std::vector<int> subsystemSuccessors(const Network& net, int k, int i) {
    int S = checkedPow2(net.s);
    int M = checkedPow2(net.m);
    if (k < 1 || k > S || i < 1 || i > M)
        throw Error(ErrorCode::IndexOutOfRange, "subsystemSuccessors index out of range");
    int group = checkedPow2(net.n - net.s);
    int tail = checkedPow2(net.tailExp());
    int perState = tail;
    int perInput = checkedPow2(net.n) * perState;
    int proj = checkedPow2(net.rowsExp() - net.s);
    std::set<int> out;
    for (int g = 0; g < group; ++g) {
        int x = (k - 1) * group + g + 1;
        int base = (i - 1) * perInput + (x - 1) * perState;
        for (int j = 0; j < tail; ++j) {
            int v = net.L(base + j + 1);
            out.insert((v - 1) / proj + 1);
        }
    }
    return std::vector<int>(out.begin(), out.end());
}

std::vector<int> fullSuccessors(const Network& net, int x, int i) {
    int N = checkedPow2(net.n);
    if (net.L.rows != N)
        throw Error(ErrorCode::DimensionMismatch, "fullSuccessors needs a full-state matrix");
    if (x < 1 || x > N || i < 1 || i > checkedPow2(net.m))
        throw Error(ErrorCode::IndexOutOfRange, "fullSuccessors index out of range");
    int tail = checkedPow2(net.tailExp());
    int base = (i - 1) * N * tail + (x - 1) * tail;
    std::set<int> out;
    for (int j = 0; j < tail; ++j) out.insert(net.L(base + j + 1));
    return std::vector<int>(out.begin(), out.end());
}

LogicalMatrix subsystemH(const Network& net) {
    int group = checkedPow2(net.n - net.s);
    int S = checkedPow2(net.s);
    std::vector<int> cols(S);
    for (int k = 1; k <= S; ++k) {
        int first = net.H((k - 1) * group + 1);
        for (int g = 1; g < group; ++g)
            if (net.H((k - 1) * group + g + 1) != first)
                throw Error(ErrorCode::SchemaError,
                            "H is not constant on substate " + std::to_string(k) +
                                "; the declared s does not cover the output variables");
        cols[k - 1] = first;
    }
    return LogicalMatrix(net.H.rows, std::move(cols));
}

namespace {

LogicalMatrix parseMatrix(const json& j, const char* what) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
        throw Error(ErrorCode::SchemaError, std::string(what) + " must be {rows, cols}");
    int rows = j.at("rows").get<int>();
    if (!isPowerOfTwo(rows))
        throw Error(ErrorCode::SchemaError, std::string(what) + " rows must be a power of 2");
    std::vector<int> cols = j.at("cols").get<std::vector<int>>();
    try {
        return LogicalMatrix(rows, std::move(cols));
    } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, std::string(what) + ": " + e.what());
    }
}

} // namespace

Network parseNetworkFile(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "network document must be an object");
    Network net;
    net.name = doc.value("name", "");
    if (!doc.contains("n")) throw Error(ErrorCode::SchemaError, "missing field n");
    net.n = doc.at("n").get<int>();
    net.m = doc.value("m", 0);
    net.d = doc.value("d", 0);
    net.t = doc.value("t", 0);
    validateDims(net.n, net.m, net.d, net.t);
    net.s = doc.value("s", net.n);
    if (net.s < 1 || net.s > net.n)
        throw Error(ErrorCode::SchemaError, "s must satisfy 1 <= s <= n");
    if (doc.contains("signal_order") && !doc.at("signal_order").is_null()) {
        auto so = doc.at("signal_order").get<std::vector<std::string>>();
        if (so == std::vector<std::string>{"u", "x", "d", "f"})
            net.order = SignalOrder::UXDF;
        else if (so == std::vector<std::string>{"u", "x", "f", "d"})
            net.order = SignalOrder::UXFD;
        else
            throw Error(ErrorCode::SchemaError, "signal_order must be [u,x,d,f] or [u,x,f,d]");
    }

    bool hasL = doc.contains("L") && !doc.at("L").is_null();
    bool hasRules = doc.contains("rules") && !doc.at("rules").is_null();
    bool hasH = doc.contains("H") && !doc.at("H").is_null();
    if (!hasL && !hasRules)
        throw Error(ErrorCode::SchemaError, "either L or rules must be given");

    std::optional<Network> compiled;
    if (hasRules) {
        const json& r = doc.at("rules");
        UpdateRuleSet rules;
        for (const auto& sText : r.value("state", std::vector<std::string>{})) {
            rules.stateText.push_back(sText);
            rules.state.push_back(parseExpression(sText));
        }
        for (const auto& oText : r.value("output", std::vector<std::string>{})) {
            rules.outputText.push_back(oText);
            rules.output.push_back(parseExpression(oText));
        }
        compiled = compileAlgebraicForm(rules, net.n, net.m, net.d, net.t, net.order, net.name);
    }

    if (hasL) {
        net.L = parseMatrix(doc.at("L"), "L");
        int expCols = checkedPow2(net.n + net.m + net.d + net.t);
        if (net.L.colCount() != expCols)
            throw Error(ErrorCode::SchemaError,
                        "L must have 2^(n+m+d+t) = " + std::to_string(expCols) + " columns");
        if (net.L.rows != checkedPow2(net.n) && net.L.rows != checkedPow2(net.s))
            throw Error(ErrorCode::SchemaError, "L rows must be 2^n or 2^s");
        if (compiled && compiled->L != net.L)
            throw Error(ErrorCode::ConflictingDefinition,
                        "explicit L disagrees with the compiled update rules");
    } else {
        net.L = compiled->L;
        net.statePermutation = compiled->statePermutation;
        net.s = doc.contains("s") ? net.s : compiled->s;
    }

    if (compiled) {
        net.rules = compiled->rules;
        if (net.statePermutation.empty()) net.statePermutation = compiled->statePermutation;
    }
    if (net.statePermutation.empty()) {
        net.statePermutation.resize(net.n);
        for (int i = 0; i < net.n; ++i) net.statePermutation[i] = i + 1;
    }

    if (hasH) {
        net.H = parseMatrix(doc.at("H"), "H");
        if (net.H.colCount() != checkedPow2(net.n))
            throw Error(ErrorCode::SchemaError, "H must have 2^n columns");
        net.p = doc.value("p", log2Exact(net.H.rows));
        if (checkedPow2(net.p) != net.H.rows)
            throw Error(ErrorCode::SchemaError, "declared p disagrees with H rows");
        net.explicitH = true;
        if (compiled && compiled->explicitH && compiled->H != net.H)
            throw Error(ErrorCode::ConflictingDefinition,
                        "explicit H disagrees with the compiled output rules");
    } else if (compiled && compiled->explicitH) {
        net.H = compiled->H;
        net.p = compiled->p;
        net.explicitH = true;
    } else {
        net.p = net.s;
        net.H = substateIdentityH(net.n, net.s);
        net.explicitH = false;
    }
    // Surface inconsistent s declarations early.
    subsystemH(net);
    return net;
}

Network parseNetworkString(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
    }
    return parseNetworkFile(doc);
}

Network parseNetworkPath(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open network file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parseNetworkString(ss.str());
}

json writeNetworkFile(const Network& net) {
    json doc;
    doc["name"] = net.name;
    doc["n"] = net.n;
    doc["m"] = net.m;
    doc["d"] = net.d;
    doc["t"] = net.t;
    doc["p"] = net.p;
    doc["s"] = net.s;
    doc["signal_order"] = net.order == SignalOrder::UXDF
                              ? std::vector<std::string>{"u", "x", "d", "f"}
                              : std::vector<std::string>{"u", "x", "f", "d"};
    doc["L"] = {{"rows", net.L.rows}, {"cols", net.L.cols}};
    if (net.explicitH)
        doc["H"] = {{"rows", net.H.rows}, {"cols", net.H.cols}};
    else
        doc["H"] = nullptr;
    if (net.rules) {
        doc["rules"] = {{"state", net.rules->stateText}, {"output", net.rules->outputText}};
    } else {
        doc["rules"] = nullptr;
    }
    return doc;
}

std::string networkFingerprint(const Network& net) {
    // FNV-1a over the canonical serialization.
    std::string bytes = writeNetworkFile(net).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << net.n << "n" << net.m << "m" << net.d << "d" << net.t << "t" << net.p << "p"
       << net.s << "s-" << std::hex << h;
    return os.str();
}

} // namespace bcn
