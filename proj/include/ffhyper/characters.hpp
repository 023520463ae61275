#pragma once

// Multiplicative characters of F_q^*, extended to F_q by chi(0) = 0.
//
// chi_j sends generator^k to zeta_{q-1}^{j*k}; the index j lives modulo
// q-1, j = 0 is the trivial character.  All character-sum values are
// exact CycVal elements of Z[zeta_{q-1}].

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/field.hpp"

namespace ffhyper {

struct CharIdx {
    int j = 0; // canonical in [0, m)
    int m = 1; // q - 1
    friend bool operator==(CharIdx, CharIdx) = default;
};

inline CharIdx make_char(const FieldCtx& F, long long j) {
    int m = F.q() - 1;
    long long r = j % m;
    if (r < 0) r += m;
    return {static_cast<int>(r), m};
}

inline CharIdx trivial_char(const FieldCtx& F) { return {0, F.q() - 1}; }

inline CharIdx operator*(CharIdx a, CharIdx b) {
    if (a.m != b.m) throw OrderMismatch("characters of different fields");
    return {(a.j + b.j) % a.m, a.m};
}

// the inverse (conjugate) character
inline CharIdx conj(CharIdx a) { return {(a.m - a.j) % a.m, a.m}; }

inline bool is_trivial(CharIdx a) { return a.j == 0; }

// delta(chi): 1 iff chi is trivial
inline int delta_char(CharIdx a) { return is_trivial(a) ? 1 : 0; }

// delta(x): 1 iff x = 0
inline int delta_point(FElem x) { return x.idx == 0 ? 1 : 0; }

// a character value: 0 (argument was 0) or zeta_{q-1}^e
class CharValue {
public:
    static CharValue zero_value() { return CharValue(true, 0); }
    static CharValue root(long long e, int m) {
        long long r = e % m;
        if (r < 0) r += m;
        return CharValue(false, static_cast<int>(r));
    }
    bool is_zero() const { return zero_; }
    int exponent() const { return e_; }

private:
    CharValue(bool z, int e) : zero_(z), e_(e) {}
    bool zero_;
    int e_;
};

inline CharValue char_eval(const FieldCtx& F, CharIdx chi, FElem x) {
    if (x.idx == 0) return CharValue::zero_value();
    return CharValue::root(static_cast<long long>(chi.j) * F.dlog(x), chi.m);
}

// chi(-1) as an integer sign (+1 or -1)
inline int char_sign_at_minus_one(const FieldCtx& F, CharIdx chi) {
    CharValue v = char_eval(F, chi, F.minus_one());
    int e = v.exponent();
    if (e == 0) return 1;
    if (2 * e == chi.m) return -1;
    throw Error("chi(-1) is not a sign"); // unreachable: (-1)^2 = 1
}

// J(chi, lam) = sum over u in F_q of chi(u) lam(1-u); exact, den 1
inline CycVal jacobi(const FieldCtx& F, CharIdx chi, CharIdx lam) {
    int m = F.q() - 1;
    CycVal acc = CycVal::zero(m);
    for (int u = 0; u < F.q(); ++u) {
        CharValue a = char_eval(F, chi, {u});
        if (a.is_zero()) continue;
        CharValue b = char_eval(F, lam, F.sub(F.one(), {u}));
        if (b.is_zero()) continue;
        acc.add_root(a.exponent() + b.exponent());
    }
    return acc;
}

// {A choose B} = B(-1) J(A, conj(B))
inline CycVal binom(const FieldCtx& F, CharIdx A, CharIdx B) {
    return jacobi(F, A, conj(B)).scaled(char_sign_at_minus_one(F, B));
}

// Per-field memo of all (q-1)^2 binomial values and the chi(-1) signs.
// Built once, then shared read-only; the dense table is skipped above
// kBinomMemoQMax (8 q^3 bytes) and values are recomputed on demand.
class BinomCache {
public:
    static constexpr int kBinomMemoQMax = 128;

    static std::shared_ptr<const BinomCache> get(const FieldCtx& F) {
        static std::mutex mu;
        static std::map<std::tuple<int, int, int>, std::shared_ptr<const BinomCache>> registry;
        std::tuple<int, int, int> key{F.q(), detail::encode_digits(F.modulus(), F.p()), F.generator().idx};
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = registry[key];
        if (!slot) slot = std::shared_ptr<const BinomCache>(new BinomCache(F));
        return slot;
    }

    CycVal binom(const FieldCtx& F, CharIdx A, CharIdx B) const {
        if (!table_.empty()) return table_[static_cast<size_t>(A.j) * static_cast<size_t>(m_) + static_cast<size_t>(B.j)];
        return ffhyper::binom(F, A, B);
    }

    int sign_minus_one(CharIdx chi) const { return signs_[static_cast<size_t>(chi.j)]; }

private:
    explicit BinomCache(const FieldCtx& F) : m_(F.q() - 1) {
        signs_.resize(static_cast<size_t>(m_));
        for (int j = 0; j < m_; ++j) signs_[static_cast<size_t>(j)] = char_sign_at_minus_one(F, {j, m_});
        if (F.q() <= kBinomMemoQMax) {
            table_.reserve(static_cast<size_t>(m_) * static_cast<size_t>(m_));
            for (int a = 0; a < m_; ++a)
                for (int b = 0; b < m_; ++b) table_.push_back(ffhyper::binom(F, {a, m_}, {b, m_}));
        }
    }

    int m_;
    std::vector<CycVal> table_;
    std::vector<int> signs_;
};

// RHS of the binomial theorem:
// delta(x) + 1/(q-1) * sum over chi of {A choose chi} chi(x); den q-1
inline CycVal binomial_theorem_rhs(const FieldCtx& F, CharIdx A, FElem x) {
    int m = F.q() - 1;
    auto cache = BinomCache::get(F);
    CycVal sum = CycVal::zero(m);
    if (x.idx != 0) {
        for (int j = 0; j < m; ++j) {
            CharValue cx = char_eval(F, {j, m}, x);
            sum = sum + cache->binom(F, A, {j, m}).mul_root(cx.exponent());
        }
    }
    return CycVal::from_int(m, delta_point(x)) + sum.div_int(m);
}

// the value chi(x) as a CycVal (zero vector when x = 0)
inline CycVal char_cyc(const FieldCtx& F, CharIdx chi, FElem x) {
    CharValue v = char_eval(F, chi, x);
    if (v.is_zero()) return CycVal::zero(chi.m);
    return CycVal::from_root(chi.m, v.exponent());
}

} // namespace ffhyper
