#include "counting.hpp"

#include "logical.hpp"

namespace bcn {

namespace {

cpp_int ipow(cpp_int base, int exp) {
    cpp_int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

cpp_int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    cpp_int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

cpp_int factorial(int n) {
    cpp_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

cpp_int totalNetworks(int n) {
    if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "totalNetworks needs n >= 1");
    return ipow(2, n * checkedPow2(n));
}

StructureCountReport countStructures(int Sc, int Sr) {
    if (Sr < 0 || Sc < 1)
        throw Error(ErrorCode::IndexOutOfRange, "countStructures needs Sr >= 0, Sc >= 1");
    StructureCountReport rep;
    rep.Sc = Sc;
    rep.Sr = Sr;
    rep.Nmod = ipow(Sr + 1, Sr + 1);
    rep.NmodInv = rep.Nmod / (Sr + 1);
    rep.N1 = ipow(Sr, Sr); // empty product = 1 at Sr = 0
    rep.NmodC = rep.N1;
    for (int n = 2; n <= Sr; ++n) {
        cpp_int Nn = binom(Sr, n) * factorial(n - 1) * ipow(Sr, Sr - n);
        rep.Nloop.push_back(Nn);
        rep.NmodC -= Nn;
    }
    rep.NT = Sc * rep.NmodC;
    return rep;
}

cpp_int bruteForceStructureCount(int Sc, int Sr) {
    if (Sr < 0 || Sc < 1)
        throw Error(ErrorCode::IndexOutOfRange, "bruteForceStructureCount needs Sr >= 0, Sc >= 1");
    if (Sr > 6)
        throw Error(ErrorCode::BudgetExceeded, "enumeration limited to Sr <= 6");
    // Maps f : free node -> {sink = 0, free nodes 1..Sr}; count the maps in
    // which iterating f from every free node reaches the sink.
    std::vector<int> f(Sr, 0);
    cpp_int count = 0;
    while (true) {
        bool ok = true;
        for (int v = 1; v <= Sr && ok; ++v) {
            int cur = v;
            for (int step = 0; step <= Sr; ++step) {
                cur = cur == 0 ? 0 : f[cur - 1];
            }
            ok = cur == 0;
        }
        if (ok) ++count;
        int pos = Sr - 1;
        while (pos >= 0 && f[pos] == Sr) f[pos--] = 0;
        if (pos < 0) break;
        ++f[pos];
    }
    return count;
}

} // namespace bcn
