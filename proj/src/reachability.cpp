#include "reachability.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace bcn {

std::set<int> cleanReach(const Network& net, int b, int a) {
    int S = checkedPow2(net.s);
    if (b < 1 || b > S || a < 1 || a > S)
        throw Error(ErrorCode::IndexOutOfRange, "cleanReach substate out of range");
    std::set<int> witnesses;
    for (int i = 1; i <= checkedPow2(net.m); ++i) {
        std::vector<int> succ = subsystemSuccessors(net, b, i);
        if (succ.size() == 1 && succ[0] == a) witnesses.insert(i);
    }
    return witnesses;
}

ReachabilityGraph buildReachabilityGraph(const Network& net, GraphKind kind, VertexMode mode) {
    ReachabilityGraph g;
    g.kind = kind;
    g.mode = mode;
    int S = checkedPow2(net.s);
    int M = checkedPow2(net.m);
    if (mode == VertexMode::Substates) {
        for (int k = 1; k <= S; ++k) g.vertices.push_back(k);
        for (int b = 1; b <= S; ++b) {
            for (int i = 1; i <= M; ++i) {
                std::vector<int> succ = subsystemSuccessors(net, b, i);
                if (kind == GraphKind::Definite) {
                    if (succ.size() == 1) g.edges[{b, succ[0]}].insert(i);
                } else {
                    for (int a : succ) g.edges[{b, a}].insert(i);
                }
            }
        }
        return g;
    }

    LogicalMatrix Hs = subsystemH(net);
    std::vector<std::vector<int>> groups(Hs.rows);
    for (int k = 1; k <= S; ++k) groups[Hs(k) - 1].push_back(k);
    for (int o = 1; o <= Hs.rows; ++o)
        if (!groups[o - 1].empty()) g.vertices.push_back(o);

    for (int from : g.vertices) {
        for (int to : g.vertices) {
            std::set<int> enabling;
            bool all = true, some = false;
            for (int k : groups[from - 1]) {
                bool member = false;
                for (int i = 1; i <= M; ++i) {
                    std::vector<int> succ = subsystemSuccessors(net, k, i);
                    bool certain = true, possible = false;
                    for (int a : succ) {
                        if (Hs(a) == to) possible = true;
                        else certain = false;
                    }
                    if (kind == GraphKind::Definite ? certain : possible) {
                        member = true;
                        enabling.insert(i);
                    }
                }
                all = all && member;
                some = some || member;
            }
            bool present = kind == GraphKind::Definite ? all : some;
            if (present) g.edges[{from, to}] = enabling;
        }
    }
    return g;
}

ReachResult reachQuery(const ReachabilityGraph& g, int from, int to) {
    std::set<int> verts(g.vertices.begin(), g.vertices.end());
    if (!verts.count(from) || !verts.count(to))
        throw Error(ErrorCode::IndexOutOfRange, "reachQuery vertex not in graph");
    // BFS over nonempty paths: start from the successors of `from`.
    std::map<int, int> parent;
    std::deque<int> queue;
    for (const auto& [e, ins] : g.edges) {
        (void)ins;
        if (e.first == from && !parent.count(e.second)) {
            parent[e.second] = from;
            queue.push_back(e.second);
        }
    }
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (cur == to) {
            std::vector<int> path{cur};
            int walk = cur;
            while (walk != from || path.size() == 1) {
                walk = parent[walk];
                path.push_back(walk);
                if (walk == from) break;
            }
            std::reverse(path.begin(), path.end());
            return {true, path};
        }
        for (const auto& [e, ins] : g.edges) {
            (void)ins;
            if (e.first == cur && !parent.count(e.second)) {
                parent[e.second] = cur;
                queue.push_back(e.second);
            }
        }
    }
    return {false, {}};
}

DecompositionLayers invariantSetDecomposition(const Network& net) {
    int S = checkedPow2(net.s);
    int M = checkedPow2(net.m);
    // Clean-reach edges b -> a.
    std::vector<std::set<int>> cleanEdges(S + 1);
    for (int b = 1; b <= S; ++b)
        for (int i = 1; i <= M; ++i) {
            std::vector<int> succ = subsystemSuccessors(net, b, i);
            if (succ.size() == 1) cleanEdges[b].insert(succ[0]);
        }

    DecompositionLayers out;
    std::vector<int> classified(S + 1, 0);

    // S_1: substates that can return to themselves along clean edges.
    std::vector<int> s1;
    for (int v = 1; v <= S; ++v) {
        std::vector<int> stack(cleanEdges[v].begin(), cleanEdges[v].end());
        std::set<int> seen(stack.begin(), stack.end());
        bool cycles = seen.count(v) > 0;
        while (!cycles && !stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int nxt : cleanEdges[cur])
                if (!seen.count(nxt)) {
                    if (nxt == v) { cycles = true; break; }
                    seen.insert(nxt);
                    stack.push_back(nxt);
                }
        }
        if (cycles) s1.push_back(v);
    }
    if (!s1.empty()) {
        out.layers.push_back(s1);
        for (int v : s1) {
            classified[v] = 1;
            for (int i = 1; i <= M; ++i) {
                std::vector<int> succ = subsystemSuccessors(net, v, i);
                if (succ.size() == 1) out.witness[v].insert(i);
            }
        }
    }

    // Later layers: entire successor set inside the union of earlier layers.
    std::set<int> classifiedSet(s1.begin(), s1.end());
    while (true) {
        std::vector<int> layer;
        std::map<int, std::set<int>> layerWitness;
        for (int v = 1; v <= S; ++v) {
            if (classified[v]) continue;
            for (int i = 1; i <= M; ++i) {
                std::vector<int> succ = subsystemSuccessors(net, v, i);
                bool inside = !succ.empty();
                for (int a : succ)
                    if (!classifiedSet.count(a)) { inside = false; break; }
                if (inside) layerWitness[v].insert(i);
            }
            if (layerWitness.count(v)) layer.push_back(v);
        }
        if (layer.empty()) break;
        for (int v : layer) {
            classified[v] = 1;
            classifiedSet.insert(v);
            out.witness[v] = layerWitness[v];
        }
        out.layers.push_back(layer);
    }
    for (int v = 1; v <= S; ++v)
        if (!classified[v]) out.remainder.push_back(v);
    return out;
}

ControlCandidateSets decompositionControllers(const Network& net,
                                              const DecompositionLayers& layers) {
    if (!layers.remainder.empty())
        throw Error(ErrorCode::Unclassifiable,
                    "unclassified substates remain; disturbance can not be decoupled");
    int S = checkedPow2(net.s);
    int M = checkedPow2(net.m);
    std::vector<int> layerOf(S + 1, 0);
    for (size_t l = 0; l < layers.layers.size(); ++l)
        for (int v : layers.layers[l]) layerOf[v] = static_cast<int>(l) + 1;

    std::set<int> earlier; // union of layers strictly before the current one
    std::vector<std::set<int>> unions(layers.layers.size() + 1);
    for (size_t l = 0; l < layers.layers.size(); ++l) {
        unions[l] = earlier;
        for (int v : layers.layers[l]) earlier.insert(v);
    }

    ControlCandidateSets cand;
    cand.C.assign(S, {});
    for (int v = 1; v <= S; ++v) {
        int l = layerOf[v];
        for (int i = 1; i <= M; ++i) {
            std::vector<int> succ = subsystemSuccessors(net, v, i);
            bool admissible;
            if (l == 1) {
                admissible = succ.size() == 1; // rank-1 sub-block
            } else {
                admissible = true;
                for (int a : succ)
                    if (!unions[l - 1].count(a)) { admissible = false; break; }
            }
            if (admissible) cand.C[v - 1].push_back(i);
        }
    }
    BigInt count = 1;
    BigInt group = checkedPow2(net.n - net.s);
    for (int v = 1; v <= S; ++v) {
        BigInt per = 1;
        for (BigInt g = 0; g < group; ++g) per *= static_cast<int>(cand.C[v - 1].size());
        count *= per;
    }
    cand.controllerCount = count;
    return cand;
}

LogicalMatrix sampleFromCandidates(const Network& net, const ControlCandidateSets& cand) {
    int S = checkedPow2(net.s);
    std::vector<int> cols(S);
    for (int v = 1; v <= S; ++v) {
        if (cand.C[v - 1].empty())
            throw Error(ErrorCode::Unclassifiable,
                        "no admissible input for substate " + std::to_string(v));
        cols[v - 1] = cand.C[v - 1].front();
    }
    return expandSubstateFeedback(net, LogicalMatrix(checkedPow2(net.m), std::move(cols)));
}

namespace {

std::string vertexLabel(const ReachabilityGraph& g, int v) {
    return g.mode == VertexMode::Substates ? "X_" + std::to_string(v)
                                           : "O_S" + std::to_string(v);
}

} // namespace

std::string toDot(const ReachabilityGraph& g) {
    std::ostringstream os;
    os << "digraph reach {\n";
    os << "  graph [kind=\"" << (g.kind == GraphKind::Definite ? "definite" : "indefinite")
       << "\", vertices=\"" << (g.mode == VertexMode::Substates ? "substates" : "output-sets")
       << "\"];\n";
    for (int v : g.vertices)
        os << "  v" << v << " [label=\"" << vertexLabel(g, v) << "\"];\n";
    for (const auto& [e, inputs] : g.edges) {
        os << "  v" << e.first << " -> v" << e.second << " [label=\"";
        bool first = true;
        for (int i : inputs) {
            if (!first) os << ",";
            os << i;
            first = false;
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string layersToDot(const DecompositionLayers& layers) {
    std::ostringstream os;
    os << "digraph layers {\n";
    for (size_t l = 0; l < layers.layers.size(); ++l) {
        os << "  s" << (l + 1) << " [label=\"S_" << (l + 1) << " {";
        for (size_t i = 0; i < layers.layers[l].size(); ++i) {
            if (i) os << ",";
            os << layers.layers[l][i];
        }
        os << "}\"];\n";
    }
    if (!layers.layers.empty()) os << "  s1 -> s1;\n";
    for (size_t l = 1; l < layers.layers.size(); ++l)
        os << "  s" << (l + 1) << " -> s" << l << ";\n";
    if (!layers.remainder.empty()) {
        os << "  rs [label=\"S_rs {";
        for (size_t i = 0; i < layers.remainder.size(); ++i) {
            if (i) os << ",";
            os << layers.remainder[i];
        }
        os << "}\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace bcn
