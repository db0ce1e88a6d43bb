#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "counting.hpp"
#include "decoupling.hpp"
#include "equivalence.hpp"
#include "fault.hpp"
#include "reachability.hpp"

namespace bcn {

using nlohmann::json;

namespace {

json jLogical(const LogicalMatrix& M) {
    return json{{"rows", M.rows}, {"cols", M.cols}, {"delta", M.toString()}};
}

LogicalMatrix parseLogical(const json& j, int rows, const std::string& what) {
    std::vector<int> cols;
    if (j.is_array()) {
        cols = j.get<std::vector<int>>();
    } else if (j.is_object() && j.contains("cols")) {
        cols = j.at("cols").get<std::vector<int>>();
        if (j.contains("rows")) rows = j.at("rows").get<int>();
    } else {
        throw Error(ErrorCode::SchemaError, what + ": expected a column array");
    }
    for (int c : cols)
        if (c < 1 || c > rows)
            throw Error(ErrorCode::IndexOutOfRange, what + ": column index out of range");
    return LogicalMatrix(rows, std::move(cols));
}

std::string str(const json& options, const std::string& key, const std::string& dflt) {
    if (!options.contains(key)) return dflt;
    return options.at(key).get<std::string>();
}

int num(const json& options, const std::string& key, int dflt) {
    if (!options.contains(key)) return dflt;
    return options.at(key).get<int>();
}

json candidatesJson(const ControlCandidateSets& cand) {
    json c = json::array();
    for (const auto& set : cand.C) c.push_back(set);
    return json{{"C", c}, {"controller_count", cand.controllerCount.str()}};
}

json synthesisJson(const SynthesisResult& res) {
    json r;
    r["feasible"] = res.feasible;
    r["candidates"] = candidatesJson(res.candidates);
    if (res.sampleController) r["sample_controller"] = jLogical(*res.sampleController);
    if (!res.diagnostics.empty()) r["diagnostics"] = res.diagnostics;
    if (res.onlineOnly) r["online_only"] = true;
    return r;
}

json layersJson(const DecompositionLayers& layers) {
    json l = json::array();
    for (const auto& layer : layers.layers) l.push_back(layer);
    json r{{"layers", l}};
    if (!layers.remainder.empty()) r["remainder"] = layers.remainder;
    return r;
}

DDMode parseDDMode(const json& options, const std::string& dflt) {
    std::string m = str(options, "mode", dflt);
    DDMode mode;
    if (m == "mapping") mode.kind = DDModeKind::Mapping;
    else if (m == "invariant") mode.kind = DDModeKind::Invariant;
    else if (m == "clean-reach") mode.kind = DDModeKind::CleanReach;
    else if (m == "definite-reach") mode.kind = DDModeKind::DefiniteReach;
    else if (m == "indefinite-reach") mode.kind = DDModeKind::IndefiniteReach;
    else if (m == "iteration") mode.kind = DDModeKind::Iteration;
    else throw Error(ErrorCode::SchemaError, "unknown mode: " + m);
    mode.target = num(options, "target", 0);
    return mode;
}

GraphKind parseGraphKind(const json& options) {
    std::string k = str(options, "mode", "definite");
    if (k == "definite") return GraphKind::Definite;
    if (k == "indefinite") return GraphKind::Indefinite;
    throw Error(ErrorCode::SchemaError, "unknown graph kind: " + k);
}

VertexMode parseVertexMode(const json& options) {
    std::string v = str(options, "vertices", "substates");
    if (v == "substates") return VertexMode::Substates;
    if (v == "output-sets") return VertexMode::OutputSets;
    throw Error(ErrorCode::SchemaError, "unknown vertex mode: " + v);
}

json graphJson(const ReachabilityGraph& g) {
    json edges = json::array();
    for (const auto& [e, inputs] : g.edges)
        edges.push_back(json{{"from", e.first},
                             {"to", e.second},
                             {"inputs", std::vector<int>(inputs.begin(), inputs.end())}});
    return json{{"kind", g.kind == GraphKind::Definite ? "definite" : "indefinite"},
                {"vertices", g.vertices},
                {"edges", edges}};
}

CommandResult cmdInfo(const Network& net) {
    json r;
    r["name"] = net.name;
    r["n"] = net.n;
    r["m"] = net.m;
    r["d"] = net.d;
    r["t"] = net.t;
    r["p"] = net.p;
    r["s"] = net.s;
    r["signal_order"] = signalOrderName(net.order);
    r["subsystem_matrix"] = net.isSubsystemMatrix();
    r["L"] = jLogical(net.L);
    r["H"] = jLogical(net.H);
    OutputPartition part = outputSets(net);
    json sets = json::array();
    for (const auto& set : part.sets) sets.push_back(set);
    r["output_sets"] = sets;
    return {0, r};
}

CommandResult cmdAttractors(const Network& net, const json& options) {
    LogicalMatrix closed;
    if (options.contains("controller")) {
        if (net.tailExp() != 0)
            throw Error(ErrorCode::DimensionMismatch,
                        "attractor analysis needs a disturbance-free closed loop");
        LogicalMatrix Mx = parseLogical(options.at("controller"), checkedPow2(net.m), "controller");
        closed = applyStateFeedback(net, {FeedbackKind::State, Mx});
    } else if (net.isBN()) {
        closed = net.L;
    } else {
        throw Error(ErrorCode::DimensionMismatch,
                    "attractor analysis needs an autonomous network or a controller");
    }
    AttractorReport rep = attractors(closed);
    json r;
    json cycles = json::array();
    for (const auto& c : rep.attractors) cycles.push_back(c);
    r["attractors"] = cycles;
    r["basin"] = rep.basin;
    r["distance"] = rep.distance;
    return {0, r};
}

CommandResult cmdSimulate(const Network& net, const json& options) {
    SimulationSpec spec;
    spec.x0 = num(options, "x0", 1);
    spec.horizon = num(options, "horizon", 10);
    if (options.contains("inputs")) spec.inputs = options.at("inputs").get<std::vector<int>>();
    if (options.contains("disturbances"))
        spec.disturbances = options.at("disturbances").get<std::vector<int>>();
    if (options.contains("faults")) spec.faults = options.at("faults").get<std::vector<int>>();
    if (options.contains("controller")) {
        std::string kind = str(options, "feedback", "state");
        FeedbackLaw law;
        if (kind == "state") {
            law.kind = FeedbackKind::State;
            law.M = parseLogical(options.at("controller"), checkedPow2(net.m), "controller");
        } else if (kind == "output") {
            law.kind = FeedbackKind::Output;
            law.M = parseLogical(options.at("controller"), checkedPow2(net.m), "controller");
        } else if (kind == "pinning") {
            law.kind = FeedbackKind::Pinning;
            law.M = parseLogical(options.at("controller"), checkedPow2(net.m), "controller");
        } else {
            throw Error(ErrorCode::SchemaError, "unknown feedback kind: " + kind);
        }
        spec.feedback = law;
    }
    Trajectory t = simulate(net, spec);
    json r;
    r["states"] = t.states;
    if (!t.outputs.empty()) r["outputs"] = t.outputs;
    if (!t.inputs.empty()) r["inputs"] = t.inputs;
    if (!t.disturbances.empty()) r["disturbances"] = t.disturbances;
    if (!t.faults.empty()) r["faults"] = t.faults;
    return {0, r};
}

EquivCriterion parseCriterion(const std::string& c) {
    if (c == "state-transition") return EquivCriterion::StateTransition;
    if (c == "output-sequence") return EquivCriterion::OutputSequence;
    if (c == "attractor") return EquivCriterion::Attractor;
    if (c == "output-steady-state") return EquivCriterion::OutputSteadyState;
    throw Error(ErrorCode::SchemaError, "unknown criterion: " + c);
}

CommandResult cmdEquiv(const Network& net, const json& options) {
    if (!options.contains("reference"))
        throw Error(ErrorCode::SchemaError, "equiv needs a reference network");
    Network bn = parseNetworkFile(options.at("reference"));
    EquivCriterion criterion = parseCriterion(str(options, "mode", "state-transition"));

    std::string regimeName = str(options, "regime", "all-inputs");
    EquivRegime regime;
    if (regimeName == "all-inputs") regime = EquivRegime::AllInputs;
    else if (regimeName == "state-feedback") regime = EquivRegime::StateFeedback;
    else if (regimeName == "output-feedback") regime = EquivRegime::OutputFeedback;
    else throw Error(ErrorCode::SchemaError, "unknown regime: " + regimeName);

    if (options.value("search", false)) {
        long long budget = num(options, "budget", 1 << 24);
        std::vector<LogicalMatrix> laws =
            searchEquivalenceFeedback(bn, net, criterion, regime, budget);
        json list = json::array();
        for (const auto& M : laws) list.push_back(jLogical(M));
        json r{{"laws", list}, {"count", laws.size()}};
        return {laws.empty() ? 1 : 0, r};
    }

    EquivalenceQuery q;
    q.criterion = criterion;
    q.regime = regime;
    std::string dm = str(options, "disturbance", net.tailExp() == 0 ? "none" : "bcn-only");
    if (dm == "none") q.disturbanceMode = DisturbanceMode::None;
    else if (dm == "bcn-only") q.disturbanceMode = DisturbanceMode::BcnOnly;
    else if (dm == "both") q.disturbanceMode = DisturbanceMode::Both;
    else throw Error(ErrorCode::SchemaError, "unknown disturbance mode: " + dm);
    if (options.contains("feedback")) {
        int cols = regime == EquivRegime::OutputFeedback ? checkedPow2(net.p) : checkedPow2(net.n);
        LogicalMatrix M = parseLogical(options.at("feedback"), checkedPow2(net.m), "feedback");
        if (M.colCount() != cols)
            throw Error(ErrorCode::DimensionMismatch, "feedback matrix has the wrong width");
        q.feedback = M;
    }
    EquivalenceReport rep = checkEquivalence(bn, net, q);
    json r{{"verdict", rep.verdict}};
    if (!rep.witness.empty()) r["witness"] = rep.witness;
    return {rep.verdict ? 0 : 1, r};
}

CommandResult cmdReach(const Network& net, const json& options) {
    ReachabilityGraph g = buildReachabilityGraph(net, parseGraphKind(options), parseVertexMode(options));
    json r{{"graph", graphJson(g)}};
    int code = 0;
    if (options.contains("from") && options.contains("to")) {
        ReachResult q = reachQuery(g, options.at("from").get<int>(), options.at("to").get<int>());
        r["reachable"] = q.reachable;
        if (q.reachable) r["path"] = q.path;
        code = q.reachable ? 0 : 1;
    }
    return {code, r};
}

CommandResult cmdDdCheck(const Network& net, const json& options) {
    std::string mode = str(options, "mode", "baseline");
    json r;
    bool verdict;
    if (mode == "baseline") {
        RankConditionReport rep = rankConditionDD(net);
        verdict = rep.verdict;
        json per = json::array();
        for (const auto& inputs : rep.rankOneInputs) per.push_back(inputs);
        r["rank_one_inputs"] = per;
    } else if (mode == "output-eq") {
        verdict = ddOutputEquationCheck(net, net.L);
    } else if (mode == "block-rank") {
        BlockRankReport rep = rankConditionClosedLoop(net.L, net.s);
        verdict = rep.verdict;
        r["block_rank_one"] = rep.blockRankOne;
    } else {
        throw Error(ErrorCode::SchemaError, "unknown check mode: " + mode);
    }
    r["verdict"] = verdict;
    return {verdict ? 0 : 1, r};
}

CommandResult cmdDdSynth(const Network& net, const json& options) {
    std::string mode = str(options, "mode", "iteration");
    if (mode == "output-feedback") {
        std::string condName = str(options, "condition", "block-rank");
        DDCondition cond;
        if (condName == "block-rank") cond = DDCondition::BlockRank;
        else if (condName == "output-group") cond = DDCondition::OutputGroup;
        else throw Error(ErrorCode::SchemaError, "unknown condition: " + condName);
        long long budget = num(options, "budget", 1 << 24);
        std::vector<LogicalMatrix> laws = ddOutputFeedbackSynthesize(net, cond, budget);
        json list = json::array();
        for (const auto& M : laws) list.push_back(jLogical(M));
        json r{{"laws", list}, {"count", laws.size()}};
        return {laws.empty() ? 1 : 0, r};
    }
    DDMode ddMode = parseDDMode(options, "iteration");
    SynthesisResult res = ddSynthesize(net, ddMode);
    json r = synthesisJson(res);
    if (ddMode.kind == DDModeKind::Iteration)
        r["decomposition"] = layersJson(invariantSetDecomposition(net));
    return {res.feasible ? 0 : 1, r};
}

CommandResult cmdStabilize(const Network& net, const json& options) {
    StabilizationTarget target;
    if (options.contains("target_matrix")) {
        target.value = parseLogical(options.at("target_matrix"), net.L.rows, "target_matrix");
    } else if (options.contains("target_set")) {
        target.value = options.at("target_set").get<std::vector<int>>();
    } else if (options.contains("target")) {
        target.value = options.at("target").get<int>();
    } else {
        throw Error(ErrorCode::SchemaError, "stabilize needs target, target_set, or target_matrix");
    }
    long long budget = num(options, "budget", 1 << 24);
    std::vector<LogicalMatrix> laws = stabilizationSynthesize(net, target, budget);
    json list = json::array();
    for (const auto& M : laws) list.push_back(jLogical(M));
    json r{{"laws", list}, {"count", laws.size()}};
    return {laws.empty() ? 1 : 0, r};
}

CommandResult cmdVerify(const Network& net, const json& options) {
    if (!options.contains("controller"))
        throw Error(ErrorCode::SchemaError, "verify needs a controller");
    LogicalMatrix Mx = parseLogical(options.at("controller"), checkedPow2(net.m), "controller");
    std::string kind = str(options, "kind", "dd");
    json r;
    bool verdict;
    if (kind == "dd") {
        DDMode mode = parseDDMode(options, "iteration");
        int horizon = num(options, "horizon", checkedPow2(net.s));
        VerifyReport rep = verifyDD(net, Mx, mode, horizon);
        verdict = rep.verdict;
        r["kstar"] = rep.kstar;
        if (!rep.witness.empty()) r["witness"] = rep.witness;
    } else if (kind == "fd") {
        std::string m = str(options, "mode", "state-known");
        FDVerifyMode mode;
        if (m == "state-known") mode = FDVerifyMode::StateKnown;
        else if (m == "output-only") mode = FDVerifyMode::OutputOnly;
        else throw Error(ErrorCode::SchemaError, "unknown fd verify mode: " + m);
        FDVerifyReport rep = verifyFaultDetection(net, Mx, mode);
        verdict = rep.verdict;
        if (!rep.witness.empty()) r["witness"] = rep.witness;
    } else {
        throw Error(ErrorCode::SchemaError, "unknown verify kind: " + kind);
    }
    r["verdict"] = verdict;
    return {verdict ? 0 : 1, r};
}

CommandResult cmdObserve(const Network& net, const json& options) {
    if (!options.contains("outputs"))
        throw Error(ErrorCode::SchemaError, "observe needs an output sequence");
    std::vector<int> outputs = options.at("outputs").get<std::vector<int>>();
    std::optional<std::vector<int>> inputs;
    if (options.contains("inputs")) inputs = options.at("inputs").get<std::vector<int>>();
    bool autoPolicy = options.value("auto", !inputs.has_value());
    ObserverTrace trace = observerRun(net, outputs, inputs, autoPolicy);
    json steps = json::array();
    bool fault = false;
    for (const auto& st : trace.steps) {
        json s;
        s["possible"] = st.possible;
        if (st.lastInput) s["input"] = st.lastInput;
        s["reconstructed"] = st.reconstructed;
        s["fault"] = st.faultFlag;
        fault = fault || st.faultFlag;
        steps.push_back(s);
    }
    json r{{"steps", steps}, {"fault_detected", fault}};
    return {0, r};
}

CommandResult cmdCount(const Network& net, const json& options) {
    json r;
    if (net.n >= 1) r["total_networks"] = totalNetworks(net.n).str();
    if (options.contains("sr")) {
        int sr = options.at("sr").get<int>();
        int sc = num(options, "sc", 1);
        StructureCountReport rep = countStructures(sc, sr);
        json s;
        s["sc"] = rep.Sc;
        s["sr"] = rep.Sr;
        s["n_mod"] = rep.Nmod.str();
        s["n_mod_invariant"] = rep.NmodInv.str();
        s["n_1"] = rep.N1.str();
        json loops = json::array();
        for (const auto& v : rep.Nloop) loops.push_back(v.str());
        s["n_loop"] = loops;
        s["n_mod_connected"] = rep.NmodC.str();
        s["n_total"] = rep.NT.str();
        if (options.value("oracle", false) && sr <= 6)
            s["oracle_count"] = bruteForceStructureCount(sc, sr).str();
        r["structures"] = s;
    }
    return {0, r};
}

CommandResult cmdExportDot(const Network& net, const json& options) {
    std::string graph = str(options, "graph", "reach");
    std::string dot;
    if (graph == "reach") {
        dot = toDot(buildReachabilityGraph(net, parseGraphKind(options), parseVertexMode(options)));
    } else if (graph == "layers") {
        dot = layersToDot(invariantSetDecomposition(net));
    } else {
        throw Error(ErrorCode::SchemaError, "unknown graph flavor: " + graph);
    }
    return {0, json{{"dot", dot}}};
}

CommandResult cmdIfd(const Network& net, bool combined) {
    SynthesisResult res = combined ? ddIfdSynthesize(net) : ifdSynthesize(net);
    return {res.feasible ? 0 : 1, synthesisJson(res)};
}

} // namespace

CommandResult runCommand(const Network& net, const std::string& command, const json& options) {
    CommandResult res;
    if (command == "info") res = cmdInfo(net);
    else if (command == "attractors") res = cmdAttractors(net, options);
    else if (command == "simulate") res = cmdSimulate(net, options);
    else if (command == "equiv") res = cmdEquiv(net, options);
    else if (command == "reach") res = cmdReach(net, options);
    else if (command == "dd-check") res = cmdDdCheck(net, options);
    else if (command == "dd-synth") res = cmdDdSynth(net, options);
    else if (command == "stabilize") res = cmdStabilize(net, options);
    else if (command == "ifd-synth") res = cmdIfd(net, false);
    else if (command == "ddifd-synth") res = cmdIfd(net, true);
    else if (command == "verify") res = cmdVerify(net, options);
    else if (command == "observe") res = cmdObserve(net, options);
    else if (command == "count") res = cmdCount(net, options);
    else if (command == "export-dot") res = cmdExportDot(net, options);
    else throw Error(ErrorCode::SchemaError, "unknown command: " + command);

    json envelope;
    envelope["command"] = command;
    envelope["network"] = json{{"name", net.name}, {"fingerprint", networkFingerprint(net)}};
    envelope["result"] = res.report;
    res.report = envelope;
    return res;
}

namespace {

void renderValue(std::ostream& os, const std::string& key, const json& v, int indent);

void renderObject(std::ostream& os, const json& obj, int indent) {
    for (const auto& [key, v] : obj.items()) renderValue(os, key, v, indent);
}

void renderValue(std::ostream& os, const std::string& key, const json& v, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    if (v.is_object()) {
        if (v.contains("delta")) {
            os << pad << key << ": " << v.at("delta").get<std::string>() << "\n";
            return;
        }
        os << pad << key << ":\n";
        renderObject(os, v, indent + 1);
    } else if (v.is_array()) {
        os << pad << key << ": " << v.dump() << "\n";
    } else if (v.is_string()) {
        os << pad << key << ": " << v.get<std::string>() << "\n";
    } else {
        os << pad << key << ": " << v.dump() << "\n";
    }
}

} // namespace

std::string renderText(const json& report) {
    std::ostringstream os;
    // DOT payloads are emitted verbatim so the output pipes into graphviz.
    if (report.contains("result") && report.at("result").is_object() &&
        report.at("result").contains("dot"))
        return report.at("result").at("dot").get<std::string>();
    if (report.contains("command"))
        os << "command: " << report.at("command").get<std::string>() << "\n";
    if (report.contains("network"))
        os << "network: " << report.at("network").at("name").get<std::string>() << " ("
           << report.at("network").at("fingerprint").get<std::string>() << ")\n";
    if (report.contains("result")) renderObject(os, report.at("result"), 0);
    return os.str();
}

} // namespace bcn
