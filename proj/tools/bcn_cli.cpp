#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcn/bcn.h"

namespace {

struct Options {
    std::string networkFile;
    std::string mode;
    std::string vertices;
    std::string condition;
    std::string kind;
    std::string graph;
    std::string refFile;
    std::string regime;
    std::string disturbance;
    std::string logFile;
    std::string outFile;
    std::string controller;
    std::string feedback;
    std::string feedbackKind;
    std::string inputs, disturbances, faults, outputs;
    std::string targetSet, targetMatrix;
    int target = 0;
    int horizon = -1;
    int x0 = 1;
    int from = 0, to = 0;
    int sc = 1, sr = -1;
    long long budget = -1;
    bool json = false;
    bool search = false;
    bool oracle = false;
    bool autoPolicy = false;
};

std::vector<int> parseIntList(const std::string& text) {
    std::vector<int> out;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

void appendList(std::string& doc, bool& first, const std::string& key, const std::string& csv) {
    if (csv.empty()) return;
    if (!first) doc += ",";
    first = false;
    doc += "\"" + key + "\":[";
    std::vector<int> vals = parseIntList(csv);
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) doc += ",";
        doc += std::to_string(vals[i]);
    }
    doc += "]";
}

void appendStr(std::string& doc, bool& first, const std::string& key, const std::string& val) {
    if (val.empty()) return;
    if (!first) doc += ",";
    first = false;
    doc += "\"" + key + "\":\"" + val + "\"";
}

void appendNum(std::string& doc, bool& first, const std::string& key, long long val) {
    if (!first) doc += ",";
    first = false;
    doc += "\"" + key + "\":" + std::to_string(val);
}

void appendBool(std::string& doc, bool& first, const std::string& key, bool val) {
    if (!first) doc += ",";
    first = false;
    doc += std::string("\"") + key + "\":" + (val ? "true" : "false");
}

int readObserverLog(const std::string& path, std::string& doc, bool& first) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "bcn: cannot open log file " << path << "\n";
        return 2;
    }
    std::vector<int> outputs, inputs;
    int step, input, output;
    while (in >> step >> input >> output) {
        outputs.push_back(output);
        if (step > 0) inputs.push_back(input);
    }
    if (!first) doc += ",";
    first = false;
    doc += "\"outputs\":[";
    for (size_t i = 0; i < outputs.size(); ++i)
        doc += (i ? "," : "") + std::to_string(outputs[i]);
    doc += "]";
    if (!inputs.empty()) {
        doc += ",\"inputs\":[";
        for (size_t i = 0; i < inputs.size(); ++i)
            doc += (i ? "," : "") + std::to_string(inputs[i]);
        doc += "]";
    }
    return 0;
}

int readFileInto(const std::string& path, std::string& out) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "bcn: cannot open " << path << "\n";
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return 0;
}

int runOne(const std::string& command, const Options& o) {
    std::string doc = "{";
    bool first = true;
    appendStr(doc, first, "mode", o.mode);
    appendStr(doc, first, "vertices", o.vertices);
    appendStr(doc, first, "condition", o.condition);
    appendStr(doc, first, "kind", o.kind);
    appendStr(doc, first, "graph", o.graph);
    appendStr(doc, first, "regime", o.regime);
    appendStr(doc, first, "disturbance", o.disturbance);
    appendStr(doc, first, "feedback", command == "simulate" ? o.feedbackKind : "");
    if (o.target > 0) appendNum(doc, first, "target", o.target);
    if (o.horizon >= 0) appendNum(doc, first, "horizon", o.horizon);
    if (o.budget >= 0) appendNum(doc, first, "budget", o.budget);
    if (command == "simulate") appendNum(doc, first, "x0", o.x0);
    if (o.from > 0) appendNum(doc, first, "from", o.from);
    if (o.to > 0) appendNum(doc, first, "to", o.to);
    if (o.sr >= 0) {
        appendNum(doc, first, "sr", o.sr);
        appendNum(doc, first, "sc", o.sc);
    }
    if (o.search) appendBool(doc, first, "search", true);
    if (o.oracle) appendBool(doc, first, "oracle", true);
    if (o.autoPolicy) appendBool(doc, first, "auto", true);
    appendList(doc, first, "controller", o.controller);
    if (command == "equiv") appendList(doc, first, "feedback", o.feedback);
    appendList(doc, first, "inputs", o.inputs);
    appendList(doc, first, "disturbances", o.disturbances);
    appendList(doc, first, "faults", o.faults);
    appendList(doc, first, "outputs", o.outputs);
    appendList(doc, first, "target_set", o.targetSet);
    appendList(doc, first, "target_matrix", o.targetMatrix);
    if (!o.refFile.empty()) {
        std::string refText;
        if (int rc = readFileInto(o.refFile, refText)) return rc;
        if (!first) doc += ",";
        first = false;
        doc += "\"reference\":" + refText;
    }
    if (!o.logFile.empty())
        if (int rc = readObserverLog(o.logFile, doc, first)) return rc;
    doc += "}";

    bcn_network* net = nullptr;
    if (bcn_network_load_file(o.networkFile.c_str(), &net) != 0) {
        std::cerr << "bcn: " << bcn_last_error() << "\n";
        return 2;
    }
    char* report = nullptr;
    int rc = bcn_run(net, command.c_str(), doc.c_str(), &report);
    if (rc == 2 || !report) {
        std::cerr << "bcn: " << bcn_last_error() << "\n";
        bcn_network_free(net);
        return 2;
    }
    std::string text;
    if (o.json) {
        text = report;
        text += "\n";
    } else {
        char* rendered = bcn_render_text(report);
        if (rendered) {
            text = rendered;
            bcn_string_free(rendered);
        }
    }
    bcn_string_free(report);
    bcn_network_free(net);
    if (!o.outFile.empty()) {
        std::ofstream out(o.outFile);
        if (!out) {
            std::cerr << "bcn: cannot write " << o.outFile << "\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return rc;
}

void addCommonFlags(CLI::App* app, Options& o) {
    app->add_flag("--json", o.json, "emit the structured JSON report");
    app->add_option("--out", o.outFile, "write the report to a file");
    app->add_option("--budget", o.budget, "candidate budget for searches");
    app->add_option("network", o.networkFile, "network JSON file")->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean control network analysis toolbox"};
    app.require_subcommand(1);
    Options o;
    std::string command;

    auto simple = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->callback([&command, name]() { command = name; });
        addCommonFlags(sub, o);
        return sub;
    };

    simple("info", "network dimensions and structure");

    CLI::App* attr = simple("attractors", "attractor cycles and basins");
    attr->add_option("--controller", o.controller, "state-feedback columns (comma list)");

    CLI::App* sim = simple("simulate", "simulate a trajectory");
    sim->add_option("--x0", o.x0, "initial state index");
    sim->add_option("--horizon", o.horizon, "number of steps");
    sim->add_option("--controller", o.controller, "feedback columns (comma list)");
    sim->add_option("--feedback", o.feedbackKind, "feedback kind: state|output|pinning");
    sim->add_option("--inputs", o.inputs, "input sequence (comma list)");
    sim->add_option("--disturbances", o.disturbances, "disturbance sequence");
    sim->add_option("--faults", o.faults, "fault sequence");

    CLI::App* equiv = simple("equiv", "behavioural equivalence against a reference network");
    equiv->add_option("--ref", o.refFile, "reference network JSON file")->required();
    equiv->add_option("--mode", o.mode,
                      "criterion: state-transition|output-sequence|attractor|output-steady-state");
    equiv->add_option("--regime", o.regime, "all-inputs|state-feedback|output-feedback");
    equiv->add_option("--feedback", o.feedback, "feedback columns (comma list)");
    equiv->add_option("--disturbance", o.disturbance, "none|bcn-only|both");
    equiv->add_flag("--search", o.search, "search for equivalence-inducing feedback laws");

    CLI::App* reach = simple("reach", "reachability graph and queries");
    reach->add_option("--mode", o.mode, "definite|indefinite");
    reach->add_option("--vertices", o.vertices, "substates|output-sets");
    reach->add_option("--from", o.from, "query source vertex");
    reach->add_option("--to", o.to, "query target vertex");

    CLI::App* dd = app.add_subcommand("dd", "disturbance decoupling");
    dd->require_subcommand(1);
    {
        CLI::App* check = dd->add_subcommand("check", "decoupling conditions on the given matrix");
        check->callback([&command]() { command = "dd-check"; });
        addCommonFlags(check, o);
        check->add_option("--mode", o.mode, "baseline|output-eq|block-rank");
        check->add_flag_callback("--baseline", [&o]() { o.mode = "baseline"; },
                                 "baseline per-substate rank condition");
        check->add_flag_callback("--output-eq", [&o]() { o.mode = "output-eq"; },
                                 "output-equation condition");
        check->add_flag_callback("--block-rank", [&o]() { o.mode = "block-rank"; },
                                 "closed-loop block-rank condition");

        CLI::App* synth = dd->add_subcommand("synth", "synthesize decoupling controllers");
        synth->callback([&command]() { command = "dd-synth"; });
        addCommonFlags(synth, o);
        synth->add_option("--mode", o.mode,
                          "iteration|mapping|invariant|clean-reach|definite-reach|"
                          "indefinite-reach|output-feedback");
        synth->add_option("--target", o.target, "target output index for reach modes");
        synth->add_option("--condition", o.condition, "output-feedback condition: block-rank|output-group");
    }

    CLI::App* stab = simple("stabilize", "output-feedback stabilization");
    stab->add_option("--target", o.target, "target state index");
    stab->add_option("--target-set", o.targetSet, "target cycle states (comma list)");
    stab->add_option("--target-matrix", o.targetMatrix, "target closed-loop columns (comma list)");

    CLI::App* ifd = app.add_subcommand("ifd", "instantaneous fault detection");
    ifd->require_subcommand(1);
    {
        CLI::App* synth = ifd->add_subcommand("synth", "synthesize fault-detecting controllers");
        synth->callback([&command]() { command = "ifd-synth"; });
        addCommonFlags(synth, o);
    }
    CLI::App* ddifd = app.add_subcommand("ddifd", "combined decoupling and fault detection");
    ddifd->require_subcommand(1);
    {
        CLI::App* synth = ddifd->add_subcommand("synth", "synthesize combined controllers");
        synth->callback([&command]() { command = "ddifd-synth"; });
        addCommonFlags(synth, o);
    }

    CLI::App* verify = simple("verify", "verify a controller exhaustively");
    verify->add_option("--controller", o.controller, "controller columns (comma list)")->required();
    verify->add_option("--kind", o.kind, "dd|fd");
    verify->add_option("--mode", o.mode, "dd: iteration|mapping|...; fd: state-known|output-only");
    verify->add_option("--target", o.target, "target output for reach modes");
    verify->add_option("--horizon", o.horizon, "verification horizon");

    CLI::App* observe = simple("observe", "set-membership observer replay");
    observe->add_option("--log", o.logFile, "log file with 'step input output' lines");
    observe->add_option("--outputs", o.outputs, "observed outputs (comma list)");
    observe->add_option("--inputs", o.inputs, "applied inputs (comma list)");
    observe->add_flag("--auto", o.autoPolicy, "input selection by the observer policy");

    CLI::App* count = simple("count", "network and structure counts");
    count->add_option("--sc", o.sc, "fixed sub-network size");
    count->add_option("--sr", o.sr, "free node count");
    count->add_flag("--oracle", o.oracle, "run the enumeration oracle");

    CLI::App* dot = simple("export-dot", "DOT digraph export");
    dot->add_option("--graph", o.graph, "reach|layers");
    dot->add_option("--mode", o.mode, "definite|indefinite");
    dot->add_option("--vertices", o.vertices, "substates|output-sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return runOne(command, o);
}
