#include "qrform/rmatrix.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qrform/errors.hpp"

namespace qrform {

QMatrix flip_matrix(int N) {
    QMatrix p({N, N}, {N, N});
    for (uint32_t i = 0; i < static_cast<uint32_t>(N); ++i)
        for (uint32_t j = 0; j < static_cast<uint32_t>(N); ++j)
            p.set(j * N + i, i * N + j, Scalar(1));
    return p;
}

QMatrix braid_defect_of(const QMatrix& m, int N) {
    if (m.rows() != static_cast<uint32_t>(N * N) || m.cols() != m.rows())
        throw ShapeMismatch("braid_defect_of: matrix must be N^2 x N^2");
    QMatrix m12 = QMatrix::leg_embed(m, 1, 3, N);
    QMatrix m23 = QMatrix::leg_embed(m, 2, 3, N);
    return m12 * m23 * m12 - m23 * m12 * m23;
}

std::string default_table_path() {
    if (const char* env = std::getenv("QRFORM_DATA_DIR"))
        return std::string(env) + "/rmatrix_bcd.txt";
#ifdef QRFORM_DATA_DIR
    return std::string(QRFORM_DATA_DIR) + "/rmatrix_bcd.txt";
#else
    return "rmatrix_bcd.txt";
#endif
}

namespace {

QMatrix build_series_a(const SeriesSpec& spec) {
    int N = spec.N();
    Scalar q = spec.q();
    Scalar lam = spec.lambda();
    QMatrix r({N, N}, {N, N});
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            uint32_t d = static_cast<uint32_t>(i * N + j);
            r.set(d, d, i == j ? q : Scalar(1));
        }
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < i; ++j)
            r.set(static_cast<uint32_t>(i * N + j), static_cast<uint32_t>(j * N + i), lam);
    return r;
}

QMatrix load_bcd_table(const SeriesSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConstructionError("cannot open R-matrix table: " + path);
    std::string header;
    std::getline(in, header);
    if (header.rfind("# qrform B/C/D R-matrix entry table, format v1", 0) != 0)
        throw ConstructionError("unrecognized R-matrix table header in " + path);
    int N = spec.N();
    std::string want = series_name(spec.series());
    QMatrix r({N, N}, {N, N});
    std::string line;
    size_t found = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string series;
        int n = 0, i = 0, nn = 0, j = 0, m = 0;
        std::string expr;
        ls >> series >> n >> i >> nn >> j >> m;
        std::getline(ls, expr);
        if (!ls && expr.empty()) throw ConstructionError("malformed table line: " + line);
        if (series != want || n != N) continue;
        if (i < 1 || i > N || nn < 1 || nn > N || j < 1 || j > N || m < 1 || m > N)
            throw ConstructionError("table index out of range: " + line);
        r.set(static_cast<uint32_t>((i - 1) * N + (nn - 1)),
              static_cast<uint32_t>((j - 1) * N + (m - 1)), Scalar::parse(expr));
        ++found;
    }
    if (found == 0)
        throw ConstructionError("no table entries for " + spec.name() + " in " + path);
    return r;
}

class Verifier {
public:
    Verifier(const SeriesSpec& spec, const std::optional<mpq_class>& t0)
        : spec_(spec), t0_(t0) {}

    void require_zero(const QMatrix& m, const std::string& identity) const {
        if (t0_) {
            auto mirror = m.eval_at(*t0_);
            if (mirror && !mirror->empty()) {
                auto& [k, v] = *mirror->begin();
                throw ConstructionError(spec_.name() + ": " + identity +
                                        " violated (numeric pre-check witness at entry (" +
                                        std::to_string(k.first) + "," + std::to_string(k.second) +
                                        "))");
            }
        }
        if (!m.is_zero()) {
            auto& [k, v] = *m.entries().begin();
            throw ConstructionError(spec_.name() + ": " + identity + " violated, witness entry (" +
                                    std::to_string(k.first) + "," + std::to_string(k.second) +
                                    ") = " + v.str());
        }
    }

private:
    SeriesSpec spec_;
    std::optional<mpq_class> t0_;
};

}  // namespace

RMatrixBundle build_rmatrix(const SeriesSpec& spec, const BuildOptions& opts) {
    RMatrixBundle b;
    b.spec = spec;
    int N = spec.N();
    if (spec.is_bcd()) {
        std::string path = opts.data_path.empty() ? default_table_path() : opts.data_path;
        b.R = load_bcd_table(spec, path);
    } else {
        b.R = build_series_a(spec);
    }
    Verifier v(spec, opts.t0);

    QMatrix p = flip_matrix(N);
    b.Rhat = p * b.R;
    b.Rinv = inverse(b.R);
    b.Rhat_inv = b.Rinv * p;

    QMatrix id2 = QMatrix::identity({N, N});
    v.require_zero(b.R * b.Rinv - id2, "R.R^-1 = I");
    v.require_zero(b.Rhat * b.Rhat_inv - id2, "Rhat.Rhat^-1 = I");

    // Yang-Baxter for R: R12 R13 R23 = R23 R13 R12 on three legs.
    QMatrix r12 = QMatrix::leg_embed(b.R, 1, 3, N);
    QMatrix r23 = QMatrix::leg_embed(b.R, 2, 3, N);
    QMatrix p23 = QMatrix::leg_embed(p, 2, 3, N);
    QMatrix r13 = p23 * r12 * p23;
    v.require_zero(r12 * r13 * r23 - r23 * r13 * r12, "Yang-Baxter equation");

    v.require_zero(braid_defect_of(b.Rhat, N), "braid relation for Rhat");

    Scalar q = spec.q();
    QMatrix f1 = b.Rhat - id2.scaled(q);
    QMatrix f2 = b.Rhat + id2.scaled(q.inv());
    if (!spec.is_bcd()) {
        v.require_zero(f1 * f2, "Hecke minimal polynomial (x-q)(x+q^-1)");
        // {Rhat, Rhat^-1, I} is dependent in series A: Rhat^-1 = Rhat - lambda I.
        v.require_zero(b.Rhat_inv - b.Rhat + id2.scaled(spec.lambda()),
                       "Hecke dependency Rhat^-1 = Rhat - lambda I");
        b.hecke_dependent = true;
        // {Rhat, I} independent
        QMatrix two({2}, {static_cast<int>(b.Rhat.rows() * b.Rhat.cols())});
        uint32_t w = b.Rhat.cols();
        for (const auto& [k, val] : b.Rhat.entries()) two.set(0, k.first * w + k.second, val);
        for (const auto& [k, val] : id2.entries()) two.set(1, k.first * w + k.second, val);
        if (rank(two) != 2)
            throw ConstructionError(spec.name() + ": {Rhat, I} unexpectedly dependent");
    } else {
        Scalar mu = spec.mu();
        QMatrix f3 = b.Rhat - id2.scaled(mu.inv());
        v.require_zero(f1 * f2 * f3, "minimal polynomial (x-q)(x+q^-1)(x-mu^-1)");
        // eigen-direction independence; degenerates to 2 for Sp(2), where the
        // antisymmetric line coincides with the metric direction
        QMatrix three({3}, {static_cast<int>(b.Rhat.rows() * b.Rhat.cols())});
        uint32_t w = b.Rhat.cols();
        for (const auto& [k, val] : b.Rhat.entries()) three.set(0, k.first * w + k.second, val);
        for (const auto& [k, val] : b.Rhat_inv.entries()) three.set(1, k.first * w + k.second, val);
        for (const auto& [k, val] : id2.entries()) three.set(2, k.first * w + k.second, val);
        b.eigen_directions_rank = static_cast<int>(rank(three));
        if (N > 2 && b.eigen_directions_rank != 3)
            throw ConstructionError(spec.name() + ": {Rhat, Rhat^-1, I} not independent");

        // skein element
        b.ehat = id2 - (b.Rhat - b.Rhat_inv).scaled(spec.lambda().inv());
        QMatrix e2 = b.ehat * b.ehat;
        const auto& first = *b.ehat.entries().begin();
        b.ehat_x = e2.get(first.first.first, first.first.second) / first.second;
        v.require_zero(e2 - b.ehat.scaled(b.ehat_x), "ehat^2 = x ehat");
        Scalar expect_x = Scalar(1) + (mu - mu.inv()) / spec.lambda();
        if (!(b.ehat_x == expect_x))
            throw ConstructionError(spec.name() + ": ehat loop value " + b.ehat_x.str() +
                                    " != 1 + (mu - mu^-1)/lambda");
        v.require_zero(b.Rhat * b.ehat - b.ehat.scaled(mu.inv()), "Rhat.ehat = mu^-1 ehat");
        v.require_zero(b.ehat * b.Rhat - b.ehat.scaled(mu.inv()), "ehat.Rhat = mu^-1 ehat");

        QMatrix e1 = QMatrix::leg_embed(b.ehat, 1, 3, N);
        QMatrix e2leg = QMatrix::leg_embed(b.ehat, 2, 3, N);
        QMatrix g2 = QMatrix::leg_embed(b.Rhat, 2, 3, N);
        v.require_zero(e1 * e2leg * e1 - e1, "e1 e2 e1 = e1");
        v.require_zero(e1 * g2 * e1 - e1.scaled(mu), "e1 g2 e1 = mu e1");

        // metric: ehat is rank one on the metric-paired block, proportional to
        // the outer product of c_i = eps_i q^{-rho_i}.
        b.metric = QMatrix({N}, {N});
        for (int i = 1; i <= N; ++i)
            b.metric.set(static_cast<uint32_t>(i - 1),
                         static_cast<uint32_t>(spec.prime(i) - 1), spec.metric_c(i));
        for (const auto& [k, val] : b.ehat.entries()) {
            int i = static_cast<int>(k.first / N) + 1, nn = static_cast<int>(k.first % N) + 1;
            int j = static_cast<int>(k.second / N) + 1, m = static_cast<int>(k.second % N) + 1;
            if (nn != spec.prime(i) || m != spec.prime(j))
                throw ConstructionError(spec.name() + ": ehat support off the metric block");
        }
        const auto& anchor = *b.ehat.entries().begin();
        int i0 = static_cast<int>(anchor.first.first / N) + 1;
        int j0 = static_cast<int>(anchor.first.second / N) + 1;
        for (const auto& [k, val] : b.ehat.entries()) {
            int i = static_cast<int>(k.first / N) + 1;
            int j = static_cast<int>(k.second / N) + 1;
            Scalar expect = anchor.second * (spec.metric_c(i) / spec.metric_c(i0)) *
                            (spec.metric_c(j) / spec.metric_c(j0));
            if (!(val == expect))
                throw ConstructionError(spec.name() + ": ehat not proportional to c x c");
        }
    }
    return b;
}

}  // namespace qrform
