#pragma once

// Gauss 2F1 and generalized (n+1)Fn over F_q, in both the point-sum and
// the character-sum (binomial) form, plus the three classical reduction
// formulas for lower-parameter cases.  Point sums carry den 1, character
// sums den q-1; the two routes share no code so that their agreement is
// a genuine cross-check.

#include <vector>

#include "ffhyper/characters.hpp"

namespace ffhyper {

struct HyperParams {
    std::vector<CharIdx> upper; // A_0 .. A_n
    std::vector<CharIdx> lower; // B_1 .. B_n
    FElem x;
};

// eps(x) B C(-1) * sum over y of B(y) conj(B)C(1-y) conj(A)(1-x y)
inline CycVal f21_point(const FieldCtx& F, CharIdx A, CharIdx B, CharIdx C, FElem x) {
    int m = F.q() - 1;
    CycVal acc = CycVal::zero(m);
    if (x.idx == 0) return acc;
    CharIdx BbarC = conj(B) * C;
    CharIdx Abar = conj(A);
    for (int y = 0; y < F.q(); ++y) {
        CharValue v1 = char_eval(F, B, {y});
        if (v1.is_zero()) continue;
        CharValue v2 = char_eval(F, BbarC, F.sub(F.one(), {y}));
        if (v2.is_zero()) continue;
        CharValue v3 = char_eval(F, Abar, F.sub(F.one(), F.mul(x, {y})));
        if (v3.is_zero()) continue;
        acc.add_root(static_cast<long long>(v1.exponent()) + v2.exponent() + v3.exponent());
    }
    return acc.scaled(char_sign_at_minus_one(F, B * C));
}

// 1/(q-1) * sum over chi of {A chi choose chi}{B chi choose C chi} chi(x)
inline CycVal f21_charsum(const FieldCtx& F, CharIdx A, CharIdx B, CharIdx C, FElem x) {
    int m = F.q() - 1;
    CycVal acc = CycVal::zero(m);
    if (x.idx != 0) {
        auto cache = BinomCache::get(F);
        for (int j = 0; j < m; ++j) {
            CharIdx chi{j, m};
            CycVal term = cache->binom(F, A * chi, chi) * cache->binom(F, B * chi, C * chi);
            acc = acc + term.mul_root(char_eval(F, chi, x).exponent());
        }
    }
    return acc.div_int(m);
}

// 1/(q-1) * sum over chi of {A0 chi choose chi} prod_i {Ai chi choose Bi chi} chi(x)
inline CycVal hyper_charsum(const FieldCtx& F, const HyperParams& params) {
    if (params.upper.size() != params.lower.size() + 1 || params.upper.empty())
        throw ArityMismatch("upper parameter list must be one longer than lower");
    int m = F.q() - 1;
    CycVal acc = CycVal::zero(m);
    if (params.x.idx != 0) {
        auto cache = BinomCache::get(F);
        for (int j = 0; j < m; ++j) {
            CharIdx chi{j, m};
            CycVal term = cache->binom(F, params.upper[0] * chi, chi);
            for (size_t i = 0; i < params.lower.size(); ++i)
                term = term * cache->binom(F, params.upper[i + 1] * chi, params.lower[i] * chi);
            acc = acc + term.mul_root(char_eval(F, chi, params.x).exponent());
        }
    }
    return acc.div_int(m);
}

// 2F1(A, eps; C | x) = {C choose A} A(-1) conj(C)(x) conj(A)C(1-x)
//                      - C(-1) eps(x) + (q-1) A(-1) delta(1-x) delta(conj(A)C)
inline CycVal rhs_2f1_eps(const FieldCtx& F, CharIdx A, CharIdx C, FElem x) {
    int m = F.q() - 1;
    auto cache = BinomCache::get(F);
    FElem one_minus_x = F.sub(F.one(), x);
    CycVal t1 = (cache->binom(F, C, A).scaled(cache->sign_minus_one(A)) * char_cyc(F, conj(C), x)) *
                char_cyc(F, conj(A) * C, one_minus_x);
    CycVal t2 = char_cyc(F, trivial_char(F), x).scaled(-cache->sign_minus_one(C));
    CycVal t3 = CycVal::from_int(
        m, static_cast<long long>(m) * cache->sign_minus_one(A) * delta_point(one_minus_x) * delta_char(conj(A) * C));
    return t1 + t2 + t3;
}

// 2F1(A, B; A | x) = {B choose A} eps(x) conj(B)(1-x) - conj(A)(-x)
//                    + (q-1) A(-1) delta(1-x) delta(B)
inline CycVal rhs_2f1_same(const FieldCtx& F, CharIdx A, CharIdx B, FElem x) {
    int m = F.q() - 1;
    auto cache = BinomCache::get(F);
    FElem one_minus_x = F.sub(F.one(), x);
    CycVal t1 = cache->binom(F, B, A) * (char_cyc(F, trivial_char(F), x) * char_cyc(F, conj(B), one_minus_x));
    CycVal t2 = char_cyc(F, conj(A), F.neg(x)).scaled(-1);
    CycVal t3 =
        CycVal::from_int(m, static_cast<long long>(m) * cache->sign_minus_one(A) * delta_point(one_minus_x) * delta_char(B));
    return t1 + t2 + t3;
}

// 3F2(A, B, C; A, D | x) = {B choose A} 2F1(B, C; D | x) - conj(A)(-x) {C conj(A) choose D conj(A)}
//                          + (q-1) A(-1) conj(D)(x) conj(C)D(1-x) delta(B)
inline CycVal rhs_3f2_reduction(const FieldCtx& F, CharIdx A, CharIdx B, CharIdx C, CharIdx D, FElem x) {
    int m = F.q() - 1;
    auto cache = BinomCache::get(F);
    FElem one_minus_x = F.sub(F.one(), x);
    CycVal t1 = cache->binom(F, B, A) * f21_charsum(F, B, C, D, x);
    CycVal t2 = (char_cyc(F, conj(A), F.neg(x)) * cache->binom(F, C * conj(A), D * conj(A))).scaled(-1);
    CycVal t3 = (char_cyc(F, conj(D), x) * char_cyc(F, conj(C) * D, one_minus_x))
                    .scaled(static_cast<long long>(m) * cache->sign_minus_one(A) * delta_char(B));
    return t1 + t2 + t3;
}

} // namespace ffhyper
