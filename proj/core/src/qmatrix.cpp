#include "qrform/qmatrix.hpp"

#include <algorithm>

#include "qrform/errors.hpp"

namespace qrform {

namespace {
uint32_t legs_dim(const std::vector<int>& legs) {
    uint64_t d = 1;
    for (int l : legs) {
        if (l <= 0) throw ShapeMismatch("leg dimension must be positive");
        d *= static_cast<uint64_t>(l);
        if (d > (1ull << 31)) throw ResourceBound("leg space too large");
    }
    return static_cast<uint32_t>(d);
}
}  // namespace

QMatrix::QMatrix(std::vector<int> row_legs, std::vector<int> col_legs)
    : row_legs_(std::move(row_legs)), col_legs_(std::move(col_legs)) {
    row_dim_ = legs_dim(row_legs_);
    col_dim_ = legs_dim(col_legs_);
}

QMatrix QMatrix::identity(const std::vector<int>& legs) {
    QMatrix m(legs, legs);
    for (uint32_t i = 0; i < m.row_dim_; ++i) m.a_.emplace(Key{i, i}, Scalar(1));
    return m;
}

QMatrix QMatrix::zero(std::vector<int> row_legs, std::vector<int> col_legs) {
    return QMatrix(std::move(row_legs), std::move(col_legs));
}

const Scalar& QMatrix::get(uint32_t r, uint32_t c) const {
    auto it = a_.find(Key{r, c});
    return it == a_.end() ? Scalar::zero() : it->second;
}

void QMatrix::set(uint32_t r, uint32_t c, Scalar v) {
    if (r >= row_dim_ || c >= col_dim_) throw ShapeMismatch("entry out of range");
    if (v.is_zero()) {
        a_.erase(Key{r, c});
    } else {
        a_[Key{r, c}] = std::move(v);
    }
}

void QMatrix::add_to(uint32_t r, uint32_t c, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = a_.try_emplace(Key{r, c}, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) a_.erase(it);
    }
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows() != o.rows() || cols() != o.cols()) throw ShapeMismatch("add: shape mismatch");
    QMatrix r = *this;
    for (const auto& [k, v] : o.a_) r.add_to(k.first, k.second, v);
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows() != o.rows() || cols() != o.cols()) throw ShapeMismatch("sub: shape mismatch");
    QMatrix r = *this;
    for (const auto& [k, v] : o.a_) r.add_to(k.first, k.second, -v);
    return r;
}

QMatrix QMatrix::scaled(const Scalar& s) const {
    QMatrix r(row_legs_, col_legs_);
    if (s.is_zero()) return r;
    for (const auto& [k, v] : a_) r.a_.emplace(k, v * s);
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols() != o.rows()) throw ShapeMismatch("mul: inner dimension mismatch");
    // group o's entries by row
    std::map<uint32_t, std::vector<std::pair<uint32_t, const Scalar*>>> byrow;
    for (const auto& [k, v] : o.a_) byrow[k.first].emplace_back(k.second, &v);
    QMatrix r(row_legs_, o.col_legs_);
    for (const auto& [k, va] : a_) {
        auto it = byrow.find(k.second);
        if (it == byrow.end()) continue;
        for (const auto& [c, vb] : it->second) r.add_to(k.first, c, va * (*vb));
    }
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(col_legs_, row_legs_);
    for (const auto& [k, v] : a_) r.a_.emplace(Key{k.second, k.first}, v);
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows() == o.rows() && cols() == o.cols() && a_ == o.a_;
}

QMatrix QMatrix::kron(const QMatrix& a, const QMatrix& b) {
    std::vector<int> rl = a.row_legs_;
    rl.insert(rl.end(), b.row_legs_.begin(), b.row_legs_.end());
    std::vector<int> cl = a.col_legs_;
    cl.insert(cl.end(), b.col_legs_.begin(), b.col_legs_.end());
    QMatrix r(rl, cl);
    for (const auto& [ka, va] : a.a_) {
        for (const auto& [kb, vb] : b.a_) {
            r.a_.emplace(Key{ka.first * b.row_dim_ + kb.first, ka.second * b.col_dim_ + kb.second},
                         va * vb);
        }
    }
    return r;
}

QMatrix QMatrix::leg_embed(const QMatrix& m, int pos, int total_legs, int dim) {
    if (m.row_legs_.size() != 2 || m.col_legs_.size() != 2 || m.row_legs_[0] != dim ||
        m.row_legs_[1] != dim || m.col_legs_[0] != dim || m.col_legs_[1] != dim)
        throw ShapeMismatch("leg_embed: m must act on two legs of the given dimension");
    if (pos < 1 || pos + 1 > total_legs) throw ShapeMismatch("leg_embed: bad leg position");
    std::vector<int> legs(static_cast<size_t>(total_legs), dim);
    QMatrix r(legs, legs);
    int left = pos - 1;                   // untouched legs on the left
    int right = total_legs - pos - 1;     // untouched legs on the right
    uint32_t dl = 1, dr = 1;
    for (int i = 0; i < left; ++i) dl *= static_cast<uint32_t>(dim);
    for (int i = 0; i < right; ++i) dr *= static_cast<uint32_t>(dim);
    uint32_t d2 = static_cast<uint32_t>(dim) * static_cast<uint32_t>(dim);
    for (const auto& [k, v] : m.a_) {
        for (uint32_t l = 0; l < dl; ++l) {
            for (uint32_t rr = 0; rr < dr; ++rr) {
                uint32_t row = (l * d2 + k.first) * dr + rr;
                uint32_t col = (l * d2 + k.second) * dr + rr;
                r.a_.emplace(Key{row, col}, v);
            }
        }
    }
    return r;
}

QMatrix QMatrix::partial_transpose_second() const {
    if (row_legs_.size() != 2 || col_legs_.size() != 2 || row_legs_ != col_legs_)
        throw ShapeMismatch("partial transpose needs a square 2-leg matrix");
    uint32_t n = static_cast<uint32_t>(row_legs_[1]);
    QMatrix r(row_legs_, col_legs_);
    for (const auto& [k, v] : a_) {
        uint32_t i = k.first / n, nn = k.first % n;
        uint32_t j = k.second / n, m = k.second % n;
        r.a_.emplace(Key{i * n + m, j * n + nn}, v);
    }
    return r;
}

QMatrix QMatrix::partial_transpose_first() const {
    if (row_legs_.size() != 2 || col_legs_.size() != 2 || row_legs_ != col_legs_)
        throw ShapeMismatch("partial transpose needs a square 2-leg matrix");
    uint32_t n = static_cast<uint32_t>(row_legs_[1]);
    QMatrix r(row_legs_, col_legs_);
    for (const auto& [k, v] : a_) {
        uint32_t i = k.first / n, nn = k.first % n;
        uint32_t j = k.second / n, m = k.second % n;
        r.a_.emplace(Key{j * n + nn, i * n + m}, v);
    }
    return r;
}

QMatrix QMatrix::flip_conjugate() const {
    if (row_legs_.size() != 2 || col_legs_.size() != 2 || row_legs_ != col_legs_ ||
        row_legs_[0] != row_legs_[1])
        throw ShapeMismatch("flip needs a square 2-leg matrix with equal legs");
    uint32_t n = static_cast<uint32_t>(row_legs_[0]);
    QMatrix r(row_legs_, col_legs_);
    for (const auto& [k, v] : a_) {
        uint32_t i = k.first / n, nn = k.first % n;
        uint32_t j = k.second / n, m = k.second % n;
        r.a_.emplace(Key{nn * n + i, m * n + j}, v);
    }
    return r;
}

std::optional<std::map<QMatrix::Key, mpq_class>> QMatrix::eval_at(const mpq_class& t0) const {
    std::map<Key, mpq_class> out;
    for (const auto& [k, v] : a_) {
        auto e = v.eval(t0);
        if (!e) return std::nullopt;
        if (*e != 0) out.emplace(k, *e);
    }
    return out;
}

// --- elimination ---

SparseRow Echelon::reduce(SparseRow row) const {
    for (const auto& [pc, pr] : pivots_) {
        auto it = row.find(pc);
        if (it == row.end()) continue;
        Scalar f = it->second;
        for (const auto& [c, v] : pr) {
            auto jt = row.find(c);
            if (jt == row.end()) {
                row.emplace(c, -(f * v));
            } else {
                jt->second -= f * v;
                if (jt->second.is_zero()) row.erase(jt);
            }
        }
    }
    return row;
}

bool Echelon::add_row(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    uint32_t pc = row.begin()->first;
    Scalar pv = row.begin()->second;
    for (auto& [c, v] : row) v /= pv;
    // keep pivots sorted by leading column for deterministic reduction
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc,
                                [](const auto& p, uint32_t c) { return p.first < c; });
    pivots_.insert(pos, {pc, std::move(row)});
    return true;
}

long rank(const QMatrix& a) {
    // group entries by row, feed into echelon
    Echelon e;
    std::map<uint32_t, SparseRow> rows;
    for (const auto& [k, v] : a.entries()) rows[k.first].emplace(k.second, v);
    for (auto& [r, row] : rows) e.add_row(std::move(row));
    return e.rank();
}

std::vector<std::vector<Scalar>> kernel_basis(const QMatrix& a) {
    // columns as vectors; track coefficient combinations
    uint32_t n = a.cols();
    std::map<uint32_t, SparseRow> cols;
    for (const auto& [k, v] : a.entries()) cols[k.second].emplace(k.first, v);
    std::vector<std::pair<uint32_t, std::pair<SparseRow, std::vector<Scalar>>>> pivots;
    std::vector<std::vector<Scalar>> kernel;
    for (uint32_t j = 0; j < n; ++j) {
        SparseRow col;
        auto it = cols.find(j);
        if (it != cols.end()) col = it->second;
        std::vector<Scalar> combo(n, Scalar());
        combo[j] = Scalar(1);
        for (const auto& [pc, pp] : pivots) {
            auto ct = col.find(pc);
            if (ct == col.end()) continue;
            Scalar f = ct->second;
            for (const auto& [c, v] : pp.first) {
                auto jt = col.find(c);
                if (jt == col.end()) {
                    col.emplace(c, -(f * v));
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) col.erase(jt);
                }
            }
            for (uint32_t k2 = 0; k2 < n; ++k2) {
                if (!pp.second[k2].is_zero()) combo[k2] -= f * pp.second[k2];
            }
        }
        if (col.empty()) {
            // normalize: first nonzero entry is 1
            for (uint32_t k2 = 0; k2 < n; ++k2) {
                if (!combo[k2].is_zero()) {
                    Scalar lead = combo[k2];
                    for (auto& x : combo) x /= lead;
                    break;
                }
            }
            kernel.push_back(std::move(combo));
        } else {
            uint32_t pc = col.begin()->first;
            Scalar pv = col.begin()->second;
            for (auto& [c, v] : col) v /= pv;
            for (auto& x : combo) x /= pv;
            pivots.push_back({pc, {std::move(col), std::move(combo)}});
        }
    }
    return kernel;
}

QMatrix solve_linear(const QMatrix& a, const QMatrix& rhs) {
    if (a.rows() != a.cols()) throw ShapeMismatch("solve_linear: matrix must be square");
    if (rhs.rows() != a.rows()) throw ShapeMismatch("solve_linear: rhs row mismatch");
    uint32_t n = a.rows();
    // augmented rows [A | rhs], rhs columns offset by n
    std::vector<SparseRow> rows(n);
    for (const auto& [k, v] : a.entries()) rows[k.first].emplace(k.second, v);
    for (const auto& [k, v] : rhs.entries()) rows[k.first].emplace(n + k.second, v);

    std::vector<bool> used(n, false);
    // pivot row index per column
    std::vector<uint32_t> pivot_row(n, 0);
    std::vector<bool> has_pivot(n, false);
    long rk = 0;
    for (uint32_t col = 0; col < n; ++col) {
        // deterministic pivot: unused row with entry in col, minimal (nnz, index)
        uint32_t best = n;
        size_t best_nnz = 0;
        for (uint32_t r = 0; r < n; ++r) {
            if (used[r]) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            size_t nz = rows[r].size();
            if (best == n || nz < best_nnz) {
                best = r;
                best_nnz = nz;
            }
        }
        if (best == n) continue;
        used[best] = true;
        has_pivot[col] = true;
        pivot_row[col] = best;
        ++rk;
        Scalar pv = rows[best][col];
        for (auto& [c, v] : rows[best]) v /= pv;
        for (uint32_t r = 0; r < n; ++r) {
            if (r == best) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            Scalar f = it->second;
            for (const auto& [c, v] : rows[best]) {
                auto jt = rows[r].find(c);
                if (jt == rows[r].end()) {
                    rows[r].emplace(c, -(f * v));
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) rows[r].erase(jt);
                }
            }
        }
    }
    for (uint32_t col = 0; col < n; ++col) {
        if (!has_pivot[col]) throw SingularMatrix(rk);
    }
    QMatrix x(a.col_legs(), rhs.col_legs());
    for (uint32_t col = 0; col < n; ++col) {
        const SparseRow& row = rows[pivot_row[col]];
        for (const auto& [c, v] : row) {
            if (c >= n) x.set(col, c - n, v);
        }
    }
    return x;
}

QMatrix inverse(const QMatrix& a) {
    return solve_linear(a, QMatrix::identity(a.row_legs()));
}

}  // namespace qrform
