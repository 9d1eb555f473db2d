#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qrform/scalar.hpp"

namespace qrform {

// Sparse matrix over Q(t) with multi-index (tensor-leg) row/column structure.
// Entries are stored only when nonzero; iteration order is deterministic.
class QMatrix {
public:
    using Key = std::pair<uint32_t, uint32_t>;
    using EntryMap = std::map<Key, Scalar>;

    QMatrix() = default;
    QMatrix(std::vector<int> row_legs, std::vector<int> col_legs);

    static QMatrix identity(const std::vector<int>& legs);
    static QMatrix zero(std::vector<int> row_legs, std::vector<int> col_legs);

    const std::vector<int>& row_legs() const { return row_legs_; }
    const std::vector<int>& col_legs() const { return col_legs_; }
    uint32_t rows() const { return row_dim_; }
    uint32_t cols() const { return col_dim_; }
    size_t nnz() const { return a_.size(); }
    bool is_zero() const { return a_.empty(); }

    const Scalar& get(uint32_t r, uint32_t c) const;
    void set(uint32_t r, uint32_t c, Scalar v);       // dropping zeros
    void add_to(uint32_t r, uint32_t c, const Scalar& v);
    const EntryMap& entries() const { return a_; }

    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const QMatrix& o) const;  // matrix product
    QMatrix scaled(const Scalar& s) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const;

    // Kronecker product: leg shapes concatenate;
    // (kron(A,B))[(i,k),(j,l)] = A[i,j] * B[k,l].
    static QMatrix kron(const QMatrix& a, const QMatrix& b);

    // Embed a two-adjacent-leg square matrix at legs (pos, pos+1), 1-based,
    // of a total_legs-fold space with uniform leg dimension dim.
    static QMatrix leg_embed(const QMatrix& m, int pos, int total_legs, int dim);

    // Partial transposes and the flip conjugation for square 2-leg matrices.
    QMatrix partial_transpose_second() const;  // out[(i,m),(j,n)] = in[(i,n),(j,m)]
    QMatrix partial_transpose_first() const;   // out[(j,n),(i,m)] = in[(i,n),(j,m)]
    QMatrix flip_conjugate() const;            // P . A . P

    // Numeric mirror at rational t0 (the probabilistic pre-check; exact
    // computation is always authoritative). nullopt if a denominator vanishes.
    std::optional<std::map<Key, mpq_class>> eval_at(const mpq_class& t0) const;

private:
    std::vector<int> row_legs_, col_legs_;
    uint32_t row_dim_ = 1, col_dim_ = 1;
    EntryMap a_;
};

// Sparse row vector used by the elimination routines.
using SparseRow = std::map<uint32_t, Scalar>;

// Incremental exact row echelon basis (Gaussian elimination, leading-column
// pivots normalized to 1). Deterministic.
class Echelon {
public:
    // Reduce the row in place against current pivots; returns the remainder.
    SparseRow reduce(SparseRow row) const;
    // Reduce and, if nonzero, insert as a new pivot row. Returns true if the
    // row enlarged the span.
    bool add_row(SparseRow row);
    long rank() const { return static_cast<long>(pivots_.size()); }
    bool member(const SparseRow& row) const { return reduce(row).empty(); }
    const std::vector<std::pair<uint32_t, SparseRow>>& pivots() const { return pivots_; }

private:
    std::vector<std::pair<uint32_t, SparseRow>> pivots_;  // (leading col, row)
};

// Exact rank over Q(t).
long rank(const QMatrix& a);

// Null space of a (vectors x with a.x = 0), each normalized so the first
// nonzero entry is 1.
std::vector<std::vector<Scalar>> kernel_basis(const QMatrix& a);

// Exact solution x of a.x = rhs for square a; throws SingularMatrix carrying
// the rank found.
QMatrix solve_linear(const QMatrix& a, const QMatrix& rhs);

QMatrix inverse(const QMatrix& a);

}  // namespace qrform
