#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bcn {

// Dense integer matrix. Exists as the slow verification oracle for the
// logical-matrix fast paths; everything here is exact integer arithmetic.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> a; // row-major

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    std::int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    std::int64_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RealMatrix identity(int n);

    bool operator==(const RealMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

// Column-indexed delta matrix: delta_rows[cols[0] cols[1] ...], 1-based.
struct LogicalMatrix {
    int rows = 0;
    std::vector<int> cols;

    LogicalMatrix() = default;
    LogicalMatrix(int r, std::vector<int> c);

    int colCount() const { return static_cast<int>(cols.size()); }
    // 1-based column accessor returning the 1-based row index of the 1.
    int operator()(int j) const { return cols[static_cast<size_t>(j) - 1]; }

    RealMatrix dense() const;
    std::string toString() const; // "d4[1 2 3 4]" style

    bool operator==(const LogicalMatrix& o) const {
        return rows == o.rows && cols == o.cols;
    }
    bool operator!=(const LogicalMatrix& o) const { return !(*this == o); }
};

// Basis vector delta_dim^index; identical to a one-column LogicalMatrix.
struct DeltaVector {
    int dim = 0;
    int index = 0;

    DeltaVector() = default;
    DeltaVector(int d, int i);

    LogicalMatrix asMatrix() const { return LogicalMatrix(dim, {index}); }
};

RealMatrix kronecker(const RealMatrix& A, const RealMatrix& B);
RealMatrix matmul(const RealMatrix& A, const RealMatrix& B);

// Semi-tensor product via t = lcm(cols(A), rows(B)); reduces to the ordinary
// product when the dimensions are conformable.
RealMatrix stp(const RealMatrix& A, const RealMatrix& B);

// Fast path for logical operands; must agree with stp on dense forms.
LogicalMatrix stpLogical(const LogicalMatrix& A, const LogicalMatrix& B);

// psi_n in L_{2^{2n} x 2^n} with Col_i = delta_{2^n}^i (x) delta_{2^n}^i.
LogicalMatrix powerReducingMatrix(int n);

// E_du for k dropped leading variables: 1_{2^k}^T (x) I_2, a 2 x 2^{k+1}
// matrix; semi-tensor padding extends it to arbitrary trailing factors.
LogicalMatrix dummyOperator(int k);

enum class LogicOp { Negation, Conjunction, Disjunction };
LogicalMatrix structureMatrix(LogicOp op);

DeltaVector encodeState(const std::vector<bool>& bits);
std::vector<bool> decodeState(const DeltaVector& v, int n);

int checkedPow2(int e); // throws DimensionMismatch past 30
bool isPowerOfTwo(int v);
int log2Exact(int v);

} // namespace bcn
