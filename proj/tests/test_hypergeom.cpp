#include <catch2/catch_amalgamated.hpp>

#include "ffhyper/hypergeom.hpp"
#include "oracles.hpp"

using namespace ffhyper;

TEST_CASE("2F1 point-sum fixtures") {
    FieldCtx F3 = FieldCtx::build(3);
    CharIdx chi = make_char(F3, 1), eps = trivial_char(F3);
    CHECK(f21_point(F3, chi, chi, eps, F3.zero()).is_zero());
    CHECK(f21_point(F3, chi, chi, eps, F3.one()).as_integer() == 1);
    CHECK(f21_charsum(F3, chi, chi, eps, F3.one()).as_integer() == 1);
    CHECK(f21_charsum(F3, chi, chi, eps, F3.zero()).is_zero());
}

TEST_CASE("point sum and character sum are the same function") {
    for (int q : oracle::prime_powers_upto(8)) {
        CAPTURE(q);
        FieldCtx F = FieldCtx::build(q);
        int m = q - 1;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int x = 0; x < q; ++x)
                        CHECK(cyc_eq(f21_point(F, {a, m}, {b, m}, {c, m}, {x}),
                                     f21_charsum(F, {a, m}, {b, m}, {c, m}, {x})));
    }
}

TEST_CASE("2F1 at x=1 reduces to a single binomial") {
    for (int q : oracle::prime_powers_upto(16)) {
        CAPTURE(q);
        FieldCtx F = FieldCtx::build(q);
        int m = q - 1;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    CharIdx A{a, m}, B{b, m}, C{c, m};
                    CycVal rhs = binom(F, B, conj(A) * C).scaled(char_sign_at_minus_one(F, A));
                    CHECK(cyc_eq(f21_point(F, A, B, C, F.one()), rhs));
                }
    }
}

TEST_CASE("point sum agrees with the float oracle") {
    FieldCtx F = FieldCtx::build(9);
    int m = 8;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int x = 0; x < 9; ++x) {
                CharIdx A{a, m}, B{b, m}, C{(a + b) % m, m};
                CHECK(oracle::close(f21_point(F, A, B, C, {x}).to_complex(),
                                    oracle::f21_point_float(F, A, B, C, {x})));
            }
}

TEST_CASE("hyper_charsum generalizes f21_charsum") {
    FieldCtx F = FieldCtx::build(7);
    int m = 6;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int x = 0; x < 7; ++x) {
                    HyperParams hp{{{a, m}, {b, m}}, {{c, m}}, {x}};
                    CHECK(cyc_eq(hyper_charsum(F, hp), f21_charsum(F, {a, m}, {b, m}, {c, m}, {x})));
                }
}

TEST_CASE("hyper_charsum validates arity") {
    FieldCtx F = FieldCtx::build(5);
    CharIdx e = trivial_char(F);
    CHECK_THROWS_AS(hyper_charsum(F, {{e, e}, {e, e}, F.one()}), ArityMismatch);
    CHECK_THROWS_AS(hyper_charsum(F, {{}, {}, F.one()}), ArityMismatch);
    CHECK(hyper_charsum(F, {{e, e, e}, {e, e}, F.zero()}).is_zero());
}

TEST_CASE("lower-parameter reductions") {
    for (int q : oracle::prime_powers_upto(9)) {
        CAPTURE(q);
        FieldCtx F = FieldCtx::build(q);
        int m = q - 1;
        CharIdx eps = trivial_char(F);
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c)
                for (int x = 0; x < q; ++x) {
                    CharIdx A{a, m}, C{c, m};
                    CHECK(cyc_eq(f21_charsum(F, A, eps, C, {x}), rhs_2f1_eps(F, A, C, {x})));
                    CHECK(cyc_eq(f21_charsum(F, A, C, A, {x}), rhs_2f1_same(F, A, C, {x})));
                }
    }
}

TEST_CASE("reduction delta terms activate at x=1") {
    FieldCtx F = FieldCtx::build(5);
    int m = 4;
    // 2F1(A, eps; A | 1): the (q-1)A(-1) delta term is present
    for (int a = 0; a < m; ++a) {
        CharIdx A{a, m};
        CycVal lhs = f21_charsum(F, A, trivial_char(F), A, F.one());
        CHECK(cyc_eq(lhs, rhs_2f1_eps(F, A, A, F.one())));
    }
}

TEST_CASE("3F2 reduction, exhaustive over small fields") {
    for (int q : oracle::prime_powers_upto(7)) {
        CAPTURE(q);
        FieldCtx F = FieldCtx::build(q);
        int m = q - 1;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d)
                        for (int x = 0; x < q; ++x) {
                            CharIdx A{a, m}, B{b, m}, C{c, m}, D{d, m};
                            HyperParams hp{{A, B, C}, {A, D}, {x}};
                            CHECK(cyc_eq(hyper_charsum(F, hp), rhs_3f2_reduction(F, A, B, C, D, {x})));
                        }
    }
}
