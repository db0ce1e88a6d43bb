#include "logical.hpp"

#include <numeric>
#include <sstream>

namespace bcn {

RealMatrix RealMatrix::identity(int n) {
    RealMatrix r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

LogicalMatrix::LogicalMatrix(int r, std::vector<int> c) : rows(r), cols(std::move(c)) {
    if (rows <= 0)
        throw Error(ErrorCode::DimensionMismatch, "logical matrix needs positive row count");
    for (int v : cols)
        if (v < 1 || v > rows)
            throw Error(ErrorCode::IndexOutOfRange,
                        "delta index " + std::to_string(v) + " outside [1," + std::to_string(rows) + "]");
}

RealMatrix LogicalMatrix::dense() const {
    RealMatrix r(rows, colCount());
    for (int j = 0; j < colCount(); ++j) r.at(cols[j] - 1, j) = 1;
    return r;
}

std::string LogicalMatrix::toString() const {
    std::ostringstream os;
    os << "d" << rows << "[";
    for (int j = 0; j < colCount(); ++j) {
        if (j) os << " ";
        os << cols[j];
    }
    os << "]";
    return os.str();
}

DeltaVector::DeltaVector(int d, int i) : dim(d), index(i) {
    if (d <= 0 || i < 1 || i > d)
        throw Error(ErrorCode::IndexOutOfRange, "delta vector index outside range");
}

RealMatrix kronecker(const RealMatrix& A, const RealMatrix& B) {
    RealMatrix r(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            std::int64_t v = A.at(i, j);
            if (v == 0) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    r.at(i * B.rows + k, j * B.cols + l) = v * B.at(k, l);
        }
    return r;
}

RealMatrix matmul(const RealMatrix& A, const RealMatrix& B) {
    if (A.cols != B.rows)
        throw Error(ErrorCode::DimensionMismatch, "matmul dimension mismatch");
    RealMatrix r(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            std::int64_t v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j) r.at(i, j) += v * B.at(k, j);
        }
    return r;
}

RealMatrix stp(const RealMatrix& A, const RealMatrix& B) {
    long long t = std::lcm<long long>(A.cols, B.rows);
    RealMatrix left = (t == A.cols) ? A : kronecker(A, RealMatrix::identity(static_cast<int>(t / A.cols)));
    RealMatrix right = (t == B.rows) ? B : kronecker(B, RealMatrix::identity(static_cast<int>(t / B.rows)));
    return matmul(left, right);
}

bool isPowerOfTwo(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2Exact(int v) {
    if (!isPowerOfTwo(v))
        throw Error(ErrorCode::DimensionMismatch, std::to_string(v) + " is not a power of two");
    int e = 0;
    while ((1 << e) < v) ++e;
    return e;
}

int checkedPow2(int e) {
    if (e < 0 || e > 30)
        throw Error(ErrorCode::DimensionMismatch, "2^" + std::to_string(e) + " out of supported range");
    return 1 << e;
}

LogicalMatrix stpLogical(const LogicalMatrix& A, const LogicalMatrix& B) {
    int nA = A.colCount();
    int mB = B.rows;
    if (!isPowerOfTwo(A.rows) || !isPowerOfTwo(nA) || !isPowerOfTwo(mB) || !isPowerOfTwo(B.colCount()))
        throw Error(ErrorCode::DimensionMismatch, "stpLogical requires power-of-two dimensions");
    if (nA == mB) {
        std::vector<int> out(B.cols.size());
        for (size_t j = 0; j < B.cols.size(); ++j) out[j] = A(B.cols[j]);
        return LogicalMatrix(A.rows, std::move(out));
    }
    if (mB % nA == 0) {
        // B is taller: result = (A (x) I_k) B with k = mB/nA.
        int k = mB / nA;
        std::vector<int> out(B.cols.size());
        for (size_t j = 0; j < B.cols.size(); ++j) {
            int c = B.cols[j] - 1;
            int a = c / k, r = c % k;
            out[j] = (A(a + 1) - 1) * k + r + 1;
        }
        return LogicalMatrix(A.rows * k, std::move(out));
    }
    if (nA % mB == 0) {
        // A is wider: result = A (B (x) I_k) with k = nA/mB.
        int k = nA / mB;
        std::vector<int> out(static_cast<size_t>(B.colCount()) * k);
        for (int b = 0; b < B.colCount(); ++b)
            for (int r = 0; r < k; ++r)
                out[static_cast<size_t>(b) * k + r] = A((B.cols[b] - 1) * k + r + 1);
        return LogicalMatrix(A.rows, std::move(out));
    }
    throw Error(ErrorCode::NotLogicalResult, "stpLogical: incompatible power-of-two dimensions");
}

LogicalMatrix powerReducingMatrix(int n) {
    if (n < 1) throw Error(ErrorCode::DimensionMismatch, "powerReducingMatrix needs n >= 1");
    int N = checkedPow2(n);
    if (2 * n > 30) throw Error(ErrorCode::DimensionMismatch, "powerReducingMatrix dimension too large");
    std::vector<int> cols(N);
    for (int i = 1; i <= N; ++i) cols[i - 1] = (i - 1) * N + i;
    return LogicalMatrix(N * N, std::move(cols));
}

LogicalMatrix dummyOperator(int k) {
    if (k < 1) throw Error(ErrorCode::DimensionMismatch, "dummyOperator needs k >= 1");
    int reps = checkedPow2(k);
    std::vector<int> cols;
    cols.reserve(static_cast<size_t>(reps) * 2);
    for (int i = 0; i < reps; ++i) {
        cols.push_back(1);
        cols.push_back(2);
    }
    return LogicalMatrix(2, std::move(cols));
}

LogicalMatrix structureMatrix(LogicOp op) {
    switch (op) {
        case LogicOp::Negation: return LogicalMatrix(2, {2, 1});
        case LogicOp::Conjunction: return LogicalMatrix(2, {1, 2, 2, 2});
        case LogicOp::Disjunction: return LogicalMatrix(2, {1, 1, 1, 2});
    }
    throw Error(ErrorCode::IndexOutOfRange, "unknown structure matrix");
}

DeltaVector encodeState(const std::vector<bool>& bits) {
    int n = static_cast<int>(bits.size());
    int dim = checkedPow2(n);
    int idx = 1;
    for (int i = 0; i < n; ++i)
        if (!bits[i]) idx += 1 << (n - 1 - i);
    return DeltaVector(dim, idx);
}

std::vector<bool> decodeState(const DeltaVector& v, int n) {
    if (v.dim != checkedPow2(n))
        throw Error(ErrorCode::DimensionMismatch, "decodeState: dim != 2^n");
    std::vector<bool> bits(n);
    int rem = v.index - 1;
    for (int i = 0; i < n; ++i) bits[i] = ((rem >> (n - 1 - i)) & 1) == 0;
    return bits;
}

} // namespace bcn
