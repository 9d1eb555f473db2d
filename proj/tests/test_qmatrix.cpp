#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrform/qmatrix.hpp"

using namespace qrform;

namespace {
QMatrix diag(std::initializer_list<Scalar> vals) {
    int n = static_cast<int>(vals.size());
    QMatrix m({n}, {n});
    uint32_t i = 0;
    for (const auto& v : vals) {
        m.set(i, i, v);
        ++i;
    }
    return m;
}
}  // namespace

TEST_CASE("kron basics") {
    Scalar q = Scalar::t_pow(2);
    QMatrix i2 = QMatrix::identity({2});
    CHECK(QMatrix::kron(i2, i2) == QMatrix::identity({2, 2}));
    QMatrix d = diag({q, Scalar(1)});
    QMatrix k = QMatrix::kron(d, i2);
    CHECK(k.get(0, 0) == q);
    CHECK(k.get(1, 1) == q);
    CHECK(k.get(2, 2) == Scalar(1));
    CHECK(k.get(3, 3) == Scalar(1));
    // associativity up to leg grouping
    QMatrix a = diag({q, Scalar(2)});
    QMatrix b = diag({Scalar(1), q.inv()});
    QMatrix c = diag({Scalar(3), q});
    QMatrix l = QMatrix::kron(QMatrix::kron(a, b), c);
    QMatrix r = QMatrix::kron(a, QMatrix::kron(b, c));
    CHECK(l.entries() == r.entries());
}

TEST_CASE("leg_embed") {
    int N = 2;
    QMatrix i4 = QMatrix::identity({N, N});
    CHECK(QMatrix::leg_embed(i4, 1, 3, N) == QMatrix::identity({N, N, N}));
    // flip on legs (1,2) applied to e1 ox e2 ox e1  ->  e2 ox e1 ox e1
    QMatrix p({N, N}, {N, N});
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j) p.set(j * 2 + i, i * 2 + j, Scalar(1));
    QMatrix p12 = QMatrix::leg_embed(p, 1, 3, N);
    // basis vector e1 ox e2 ox e1 has index (0,1,0) -> 0*4+1*2+0 = 2
    // expected image e2 ox e1 ox e1 -> (1,0,0) -> 4
    CHECK(p12.get(4, 2) == Scalar(1));
    CHECK(p12.get(2, 2).is_zero());
}

TEST_CASE("solve_linear") {
    Scalar q = Scalar::t_pow(2);
    QMatrix b({2}, {2});
    b.set(0, 0, q);
    b.set(0, 1, Scalar(3));
    b.set(1, 1, q.inv());
    CHECK(solve_linear(QMatrix::identity({2}), b) == b);
    QMatrix d = diag({q, q.inv()});
    CHECK(solve_linear(d, QMatrix::identity({2})) == diag({q.inv(), q}));
    // singular signals rank
    QMatrix s({2}, {2});
    s.set(0, 0, Scalar(1));
    s.set(0, 1, Scalar(2));
    s.set(1, 0, Scalar(3));
    s.set(1, 1, Scalar(6));
    CHECK_THROWS_AS(solve_linear(s, QMatrix::identity({2})), SingularMatrix);
    try {
        solve_linear(s, QMatrix::identity({2}));
    } catch (const SingularMatrix& e) {
        CHECK(e.rank_found == 1);
    }
}

TEST_CASE("rank and kernel") {
    CHECK(rank(QMatrix::identity({5})) == 5);
    QMatrix a({2}, {3});
    // rows: (1, 2, 3), (2, 4, 6): rank 1, kernel dim 2
    a.set(0, 0, Scalar(1));
    a.set(0, 1, Scalar(2));
    a.set(0, 2, Scalar(3));
    a.set(1, 0, Scalar(2));
    a.set(1, 1, Scalar(4));
    a.set(1, 2, Scalar(6));
    CHECK(rank(a) == 1);
    auto ker = kernel_basis(a);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        // A v = 0
        Scalar r0, r1;
        r0 = v[0] * Scalar(1) + v[1] * Scalar(2) + v[2] * Scalar(3);
        CHECK(r0.is_zero());
        // first nonzero entry is 1
        for (const auto& x : v) {
            if (!x.is_zero()) {
                CHECK(x.is_one());
                break;
            }
        }
    }
}

TEST_CASE("rank + kernel dim = column count (random)") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 4);
        int cols = 2 + static_cast<int>(rng() % 4);
        QMatrix a({rows}, {cols});
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 3)
                    a.set(static_cast<uint32_t>(r), static_cast<uint32_t>(c),
                          Scalar(static_cast<long>(rng() % 7) - 3));
        long rk = rank(a);
        auto ker = kernel_basis(a);
        CHECK(rk + static_cast<long>(ker.size()) == cols);
    }
}

TEST_CASE("solve then multiply back reproduces rhs") {
    std::mt19937 rng(21);
    Scalar t = Scalar::t_pow(1);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3;
        QMatrix a({n}, {n});
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                long co = static_cast<long>(rng() % 5) - 2;
                if (co) a.set(r, c, Scalar(co) + (rng() % 2 ? t : Scalar()));
            }
        QMatrix rhs({n}, {1});
        for (int r = 0; r < n; ++r) rhs.set(r, 0, Scalar(static_cast<long>(rng() % 5)));
        try {
            QMatrix x = solve_linear(a, rhs);
            CHECK(a * x == rhs);
        } catch (const SingularMatrix&) {
            // fine; singularity is detected exactly
        }
    }
}

TEST_CASE("numeric mirror commutes with operations") {
    mpq_class t0(7, 5);
    QMatrix a({2}, {2}), b({2}, {2});
    a.set(0, 0, Scalar::parse("t^2-1"));
    a.set(0, 1, Scalar::parse("t"));
    a.set(1, 1, Scalar::parse("1/t"));
    b.set(0, 0, Scalar::parse("2"));
    b.set(1, 0, Scalar::parse("t^3"));
    auto ma = a.eval_at(t0), mb = b.eval_at(t0), mab = (a * b).eval_at(t0);
    REQUIRE(ma.has_value());
    REQUIRE(mb.has_value());
    REQUIRE(mab.has_value());
    // (a.b) at t0 == a(t0).b(t0), spot entry (0,0)
    mpq_class expect = (*ma)[{0, 0}] * (*mb)[{0, 0}] + (*ma)[{0, 1}] * (*mb)[{1, 0}];
    CHECK((*mab)[{0, 0}] == expect);
}

TEST_CASE("partial transposes and flip") {
    QMatrix a({2, 2}, {2, 2});
    a.set(0 * 2 + 1, 1 * 2 + 0, Scalar(5));  // a[(0,1),(1,0)]
    QMatrix t2 = a.partial_transpose_second();
    CHECK(t2.get(0 * 2 + 0, 1 * 2 + 1) == Scalar(5));
    QMatrix t1 = a.partial_transpose_first();
    CHECK(t1.get(1 * 2 + 1, 0 * 2 + 0) == Scalar(5));
    QMatrix fl = a.flip_conjugate();
    CHECK(fl.get(1 * 2 + 0, 0 * 2 + 1) == Scalar(5));
}
