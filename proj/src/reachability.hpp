#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynamics.hpp"
#include "network.hpp"

namespace bcn {

using BigInt = boost::multiprecision::cpp_int;

enum class GraphKind { Definite, Indefinite };
enum class VertexMode { Substates, OutputSets };

struct ReachabilityGraph {
    GraphKind kind = GraphKind::Definite;
    VertexMode mode = VertexMode::Substates;
    std::vector<int> vertices;                      // ascending ids (substates or output ids)
    std::map<std::pair<int, int>, std::set<int>> edges; // (from,to) -> enabling inputs
};

// Witness inputs under which substate b transitions to substate a with
// certainty (singleton successor set); empty = not cleanly reachable.
std::set<int> cleanReach(const Network& net, int b, int a);

ReachabilityGraph buildReachabilityGraph(const Network& net, GraphKind kind, VertexMode mode);

struct ReachResult {
    bool reachable = false;
    std::vector<int> path; // vertex sequence including endpoints when reachable
};

// Nonempty-path semantics: reachQuery(v,v) is true only when v lies on a cycle.
ReachResult reachQuery(const ReachabilityGraph& g, int from, int to);

struct DecompositionLayers {
    std::vector<std::vector<int>> layers; // S_1, S_2, ...
    std::vector<int> remainder;
    std::map<int, std::set<int>> witness; // substate -> enabling inputs for its layer
};

// S_1 = substates on a cycle of the clean-reach graph; later layers collect
// substates with an input whose entire successor set lies in earlier layers.
DecompositionLayers invariantSetDecomposition(const Network& net);

struct ControlCandidateSets {
    std::vector<std::vector<int>> C; // per substate (1-based index k -> C[k-1])
    BigInt controllerCount = 0;
};

ControlCandidateSets decompositionControllers(const Network& net, const DecompositionLayers& layers);

// Smallest admissible input per substate, expanded to all 2^n states.
LogicalMatrix sampleFromCandidates(const Network& net, const ControlCandidateSets& cand);

std::string toDot(const ReachabilityGraph& g);
std::string layersToDot(const DecompositionLayers& layers);

} // namespace bcn
