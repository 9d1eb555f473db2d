#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrform/rmatrix.hpp"

using namespace qrform;

TEST_CASE("series spec constants") {
    auto sp4 = build_series(Series::Sp, 4);
    CHECK(sp4.eps() == -1);
    CHECK(sp4.mu() == -Scalar::t_pow(10));  // -q^5
    auto o3 = build_series(Series::O, 3);
    CHECK(o3.eps() == 1);
    CHECK(o3.mu() == Scalar::t_pow(4));  // q^2
    CHECK_THROWS_AS(build_series(Series::Sp, 3), InadmissibleParam);
    CHECK_THROWS_AS(build_series(Series::GL, 1), InadmissibleParam);
}

TEST_CASE("sl z default lies in Q(t)") {
    auto sl2 = build_series(Series::SL, 2);
    CHECK(sl2.t_exp() == 1);
    CHECK(sl2.z_admissible(sl2.default_z()));
    auto sl3 = build_series(Series::SL, 3);
    CHECK(sl3.t_exp() == 3);
    CHECK(sl3.q() == Scalar::t_pow(6));
    CHECK(sl3.z_admissible(sl3.default_z()));
    CHECK(!sl3.z_admissible(Scalar(1)));
}

TEST_CASE("gl2 R-matrix entries and Hecke") {
    auto spec = build_series(Series::GL, 2);
    auto b = build_rmatrix(spec);
    Scalar q = spec.q();
    int N = 2;
    // R^{ii}_{ii} = q, R^{ij}_{ij} = 1 (i != j)
    CHECK(b.R.get(0 * N + 0, 0 * N + 0) == q);
    CHECK(b.R.get(0 * N + 1, 0 * N + 1) == Scalar(1));
    CHECK(b.R.get(1 * N + 0, 1 * N + 0) == Scalar(1));
    CHECK(b.R.get(1 * N + 1, 1 * N + 1) == q);
    CHECK(b.hecke_dependent);
    // minimal polynomial (x-q)(x+q^-1) certified at construction; cross-check here
    QMatrix id = QMatrix::identity({N, N});
    CHECK(((b.Rhat - id.scaled(q)) * (b.Rhat + id.scaled(q.inv()))).is_zero());
}

TEST_CASE("full catalog passes the construction-time identity suite") {
    BuildOptions opts;
    opts.t0 = mpq_class(7, 5);
    for (auto [s, n] : std::initializer_list<std::pair<Series, int>>{
             {Series::GL, 2}, {Series::GL, 3}, {Series::SL, 2}, {Series::SL, 3},
             {Series::O, 3}, {Series::O, 4}, {Series::Sp, 2}, {Series::Sp, 4}}) {
        auto spec = build_series(s, n);
        CHECK_NOTHROW(build_rmatrix(spec, opts));
    }
}

TEST_CASE("braid defect detects perturbations") {
    auto spec = build_series(Series::GL, 2);
    auto b = build_rmatrix(spec);
    CHECK(braid_defect_of(b.Rhat, 2).is_zero());
    CHECK(braid_defect_of(QMatrix::identity({2, 2}), 2).is_zero());
    QMatrix bad = b.Rhat + QMatrix::identity({2, 2});
    CHECK(!braid_defect_of(bad, 2).is_zero());
}

TEST_CASE("o3 skein element") {
    auto spec = build_series(Series::O, 3);
    auto b = build_rmatrix(spec);
    // ehat^2 = x ehat with x = 1 + q + q^-1
    Scalar q = spec.q();
    CHECK(b.ehat_x == Scalar(1) + q + q.inv());
    CHECK((b.ehat * b.ehat) == b.ehat.scaled(b.ehat_x));
}

TEST_CASE("table tampering is caught") {
    // write a corrupted copy of the table and expect a ConstructionError
    std::string src = default_table_path();
    std::ifstream in(src);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto pos = content.find("o 3 1 1 1 1 t^2");
    REQUIRE(pos != std::string::npos);
    content.replace(pos, 15, "o 3 1 1 1 1 t^4");
    std::string tmp = "/tmp/qrform_bad_table.txt";
    std::ofstream out(tmp);
    out << content;
    out.close();
    BuildOptions opts;
    opts.data_path = tmp;
    CHECK_THROWS_AS(build_rmatrix(build_series(Series::O, 3), opts), ConstructionError);
}
