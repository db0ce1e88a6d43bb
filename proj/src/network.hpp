#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "expr.hpp"
#include "logical.hpp"

namespace bcn {

// Column-indexing order for L. The input block always comes first and the
// state follows it; disturbance and fault tails appear in the declared order.
enum class SignalOrder { UXDF, UXFD };

std::string signalOrderName(SignalOrder o);

struct UpdateRuleSet {
    std::vector<ExprPtr> state;  // one per state variable
    std::vector<ExprPtr> output; // one per output variable (may be empty)
    std::vector<std::string> stateText;
    std::vector<std::string> outputText;
};

// A Boolean control network x+ = L u x xi, y = H x. With m=d=t=0 this
// degenerates to a plain Boolean network x+ = L x. L may be a full-state
// matrix (rows 2^n) or an output-friendly subsystem matrix (rows 2^s).
struct Network {
    std::string name;
    int n = 0, m = 0, d = 0, t = 0, p = 0, s = 0;
    SignalOrder order = SignalOrder::UXDF;
    LogicalMatrix L;
    LogicalMatrix H;        // rows 2^p, cols 2^n; synthesized substate identity when absent
    bool explicitH = false; // H (or output rules) given by the source document
    std::optional<UpdateRuleSet> rules;
    std::vector<int> statePermutation; // source variable order -> internal order (1-based)

    int rowsExp() const;             // log2 of L.rows (n or s)
    int tailExp() const { return d + t; }
    int colIndex(int u, int x, int xiD, int xiF) const; // 1-based column of L
    int substateOf(int x) const;     // 1-based substate for full state x
    bool isSubsystemMatrix() const { return rowsExp() == s && s < n; }
    bool isBN() const { return m == 0 && d == 0 && t == 0 && L.rows == checkedPow2(n); }
};

struct OutputPartition {
    // sets[i] (0-based output i+1) = ascending state indices producing it.
    std::vector<std::vector<int>> sets;
};

Network compileAlgebraicForm(const UpdateRuleSet& rules, int n, int m, int d, int t,
                             SignalOrder order, const std::string& name = "");

OutputPartition outputSets(const Network& net);

// Successor substates of substate k under input i, quantified over all
// non-output-friendly state completions and disturbance/fault values.
std::vector<int> subsystemSuccessors(const Network& net, int k, int i);

// Full-state successors over all disturbance/fault completions (rows must be 2^n).
std::vector<int> fullSuccessors(const Network& net, int x, int i);

// H as a map on substates; requires H constant on each substate block.
LogicalMatrix subsystemH(const Network& net);

Network parseNetworkFile(const nlohmann::json& doc);
Network parseNetworkString(const std::string& text);
Network parseNetworkPath(const std::string& path);
nlohmann::json writeNetworkFile(const Network& net);

std::string networkFingerprint(const Network& net); // dims + content hash

} // namespace bcn
