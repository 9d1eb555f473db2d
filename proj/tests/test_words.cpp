#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "qrform/words.hpp"

using namespace qrform;

TEST_CASE("coproduct splittings") {
    // Delta(1) = 1 ox 1
    auto s0 = coproduct_splittings(GenWord::unit(), 2);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0].first.empty());
    // Delta(u^1_2), N = 2
    auto s1 = coproduct_splittings(GenWord::gen(1, 2), 2);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0].first == GenWord::gen(1, 1));
    CHECK(s1[0].second == GenWord::gen(1, 2));
    CHECK(s1[1].first == GenWord::gen(1, 2));
    CHECK(s1[1].second == GenWord::gen(2, 2));
    // Delta(u^1_1 u^1_1), N = 2: 4 splittings
    auto s2 = coproduct_splittings(GenWord::gen(1, 1) * GenWord::gen(1, 1), 2);
    CHECK(s2.size() == 4);
    // antipoded letter: Delta(S(u^i_j)) = sum_k S(u^k_j) ox S(u^i_k)
    auto s3 = coproduct_splittings(GenWord::gen(1, 2, 1), 2);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0].first == GenWord::gen(1, 2, 1));
    CHECK(s3[0].second == GenWord::gen(1, 1, 1));
}

TEST_CASE("coassociativity at degree <= 3, N = 2") {
    int N = 2;
    std::vector<GenWord> words = {GenWord::gen(1, 2),
                                  GenWord::gen(1, 1) * GenWord::gen(2, 1),
                                  GenWord::gen(1, 2) * GenWord::gen(2, 2) * GenWord::gen(1, 1)};
    for (const auto& w : words) {
        // (Delta ox id)Delta vs (id ox Delta)Delta as multisets of triples
        std::map<std::tuple<GenWord, GenWord, GenWord>, int> left, right;
        for (const auto& [a, b] : coproduct_splittings(w, N))
            for (const auto& [a1, a2] : coproduct_splittings(a, N)) left[{a1, a2, b}]++;
        for (const auto& [a, b] : coproduct_splittings(w, N))
            for (const auto& [b1, b2] : coproduct_splittings(b, N)) right[{a, b1, b2}]++;
        CHECK(left == right);
    }
}

TEST_CASE("counit laws") {
    CHECK(counit(GenWord::unit()).is_one());
    CHECK(counit(GenWord::gen(1, 2)).is_zero());
    CHECK(counit(GenWord::gen(1, 1) * GenWord::gen(2, 2)).is_one());
    CHECK(counit(GenWord::gen(1, 1, 1)).is_one());
    // contracting eps against either leg of Delta(w) returns w, degree <= 2
    int N = 2;
    for (const GenWord& w : {GenWord::gen(1, 2), GenWord::gen(2, 1) * GenWord::gen(1, 1)}) {
        WordCombo left, right;
        for (const auto& [a, b] : coproduct_splittings(w, N)) {
            left.add(b, counit(a));
            right.add(a, counit(b));
        }
        CHECK(left == WordCombo(w));
        CHECK(right == WordCombo(w));
    }
}

TEST_CASE("antipode on words") {
    CHECK(antipode_word(GenWord::unit()) == WordCombo::unit());
    // antihomomorphism: S(u^1_1 u^2_1) = S(u^2_1) S(u^1_1)
    WordCombo s = antipode_word(GenWord::gen(1, 1) * GenWord::gen(2, 1));
    CHECK(s == WordCombo(GenWord::gen(2, 1, 1) * GenWord::gen(1, 1, 1)));
    // S^2 without matrices is an error
    CHECK_THROWS_AS(antipode_word(GenWord::gen(1, 1, 1)), Error);
    // with matrices: S(S(u^i_j)) = sum fbar(u^i_k) u^k_l f(u^l_j)
    S2Data s2{QMatrix::identity({2}), QMatrix::identity({2})};
    WordCombo ss = antipode_word(GenWord::gen(1, 2, 1), &s2);
    CHECK(ss == WordCombo(GenWord::gen(1, 2)));
}

TEST_CASE("gl2 relation slice") {
    auto b = build_rmatrix(build_series(Series::GL, 2));
    RelationIdealSlice slice(b, 2);
    CHECK(slice.rank() == 6);
    CHECK(slice.member(WordCombo()));
    // ab - q ba (a = u^1_1, b = u^1_2)
    Scalar q = b.spec.q();
    WordCombo c(GenWord::gen(1, 1) * GenWord::gen(1, 2));
    c.add(GenWord::gen(1, 2) * GenWord::gen(1, 1), -q);
    CHECK(slice.member(c));
    // a generator of the ideal is a member
    CHECK(slice.member(relation_generators(b)[1]));
    // something outside
    CHECK(!slice.member(WordCombo(GenWord::gen(1, 1))));
    CHECK(!slice.member(WordCombo::unit()));
}

TEST_CASE("sl2 det_q relation and centrality") {
    auto b = build_rmatrix(build_series(Series::SL, 2));
    Scalar q = b.spec.q();
    WordCombo det = detq_combo(2, q);
    // det_q = u^1_1 u^2_2 - q u^1_2 u^2_1
    WordCombo expect(GenWord::gen(1, 1) * GenWord::gen(2, 2));
    expect.add(GenWord::gen(1, 2) * GenWord::gen(2, 1), -q);
    CHECK(det == expect);
    RelationIdealSlice s3(b, 3);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            WordCombo g(GenWord::gen(i, j));
            CHECK(s3.member(det * g - g * det));
        }
    // det_q - 1 itself is in the SL slice
    WordCombo rel = det;
    rel.add(GenWord::unit(), Scalar(-1));
    RelationIdealSlice s2(b, 2);
    CHECK(s2.member(rel));
}

TEST_CASE("antipode law via the ideal") {
    for (auto [s, n] : std::initializer_list<std::pair<Series, int>>{
             {Series::SL, 2}, {Series::O, 3}, {Series::Sp, 2}, {Series::Sp, 4}}) {
        auto b = build_rmatrix(build_series(s, n));
        RelationIdealSlice slice(b, 2);
        int N = b.spec.N();
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                WordCombo lhs, rhs;
                for (int k = 1; k <= N; ++k) {
                    lhs = lhs + antipode_poly(b, i, k) * WordCombo(GenWord::gen(k, j));
                    rhs = rhs + WordCombo(GenWord::gen(i, k)) * antipode_poly(b, k, j);
                }
                if (i == j) {
                    lhs.add(GenWord::unit(), Scalar(-1));
                    rhs.add(GenWord::unit(), Scalar(-1));
                }
                CHECK(slice.member(lhs));
                CHECK(slice.member(rhs));
            }
    }
}

TEST_CASE("sl3 antipode law needs degree 3") {
    auto b = build_rmatrix(build_series(Series::SL, 3));
    RelationIdealSlice slice(b, 3);
    int N = 3;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            WordCombo lhs;
            for (int k = 1; k <= N; ++k)
                lhs = lhs + antipode_poly(b, i, k) * WordCombo(GenWord::gen(k, j));
            if (i == j) lhs.add(GenWord::unit(), Scalar(-1));
            CHECK(slice.member(lhs));
        }
}

TEST_CASE("resource bounds") {
    auto b = build_rmatrix(build_series(Series::GL, 2));
    CHECK_THROWS_AS(RelationIdealSlice(b, 4), ResourceBound);
    CHECK_THROWS_AS(RelationIdealSlice(b, 2, /*max_words=*/4), ResourceBound);
}
