#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace bcn {

using boost::multiprecision::cpp_int;

// 2^{n * 2^n}: Boolean networks on n variables, equivalently maps on 2^n points.
cpp_int totalNetworks(int n);

struct StructureCountReport {
    int Sc = 0, Sr = 0;
    cpp_int Nmod;        // (Sr+1)^(Sr+1)
    cpp_int NmodInv;     // Nmod / (Sr+1)
    cpp_int N1;          // Sr^Sr
    std::vector<cpp_int> Nloop; // Nloop[k] = count with a loop of length k+2, k in [0, Sr-2]
    cpp_int NmodC;       // N1 - sum Nloop
    cpp_int NT;          // Sc * NmodC
};

// Counts of network structures with Sr free nodes attached to a fixed
// invariant sub-network of Sc nodes.
StructureCountReport countStructures(int Sc, int Sr);

// Exact enumeration oracle: maps from Sr free nodes into {free nodes, sink}
// where every free node eventually reaches the sink.
cpp_int bruteForceStructureCount(int Sc, int Sr);

} // namespace bcn
