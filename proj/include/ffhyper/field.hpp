#pragma once

// Small finite fields F_q (q = p^n <= kQMax) with table-driven arithmetic.
//
// Elements are canonical indices in [0, q): the residue itself for prime
// fields, the base-p digit encoding of the polynomial representative for
// extensions.  Construction is deterministic: the modulus is the monic
// irreducible polynomial of degree n whose coefficient word
// (c_{n-1}, ..., c_0) is smallest, and the generator is the element of
// smallest index with multiplicative order q-1.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ffhyper/errors.hpp"

namespace ffhyper {

struct FElem {
    int idx = 0;
    friend bool operator==(FElem, FElem) = default;
};

namespace detail {

inline bool is_prime(int m) {
    if (m < 2) return false;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// digits[i] is the coefficient of x^i; size n, values in [0, p)
inline std::vector<int> decode_digits(int idx, int p, int n) {
    std::vector<int> d(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        d[static_cast<size_t>(i)] = idx % p;
        idx /= p;
    }
    return d;
}

inline int encode_digits(const std::vector<int>& d, int p) {
    int idx = 0;
    for (size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
    return idx;
}

// product of two degree-<n polynomials reduced by the monic modulus
// (modulus holds the n low coefficients; the leading 1 is implicit)
inline std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& modulus, int p, int n) {
    std::vector<int> prod(static_cast<size_t>(2 * n - 1), 0);
    for (int i = 0; i < n; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j)
            prod[static_cast<size_t>(i + j)] =
                (prod[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % p;
    }
    for (int i = 2 * n - 2; i >= n; --i) {
        int c = prod[static_cast<size_t>(i)];
        if (c == 0) continue;
        prod[static_cast<size_t>(i)] = 0;
        for (int j = 0; j < n; ++j) {
            int& r = prod[static_cast<size_t>(i - n + j)];
            r = (r + (p - modulus[static_cast<size_t>(j)]) % p * c) % p;
        }
    }
    prod.resize(static_cast<size_t>(n));
    return prod;
}

// remainder of a monic-divisor long division over Z_p; poly low-to-high
inline std::vector<int> poly_rem(std::vector<int> r, const std::vector<int>& div, int p) {
    int dd = static_cast<int>(div.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= dd; --i) {
        int c = r[static_cast<size_t>(i)];
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) {
            int& v = r[static_cast<size_t>(i - dd + j)];
            v = (v + (p - div[static_cast<size_t>(j)]) % p * c) % p;
        }
    }
    r.resize(static_cast<size_t>(std::max(dd, 1)));
    return r;
}

// low n coefficients of a monic degree-n polynomial; irreducible over Z_p
// iff it has no root and no monic factor of degree 2..n/2
inline bool is_irreducible(const std::vector<int>& low, int p, int n) {
    auto full = low;
    full.push_back(1);
    for (int x = 0; x < p; ++x) {
        int v = 0;
        for (int i = n; i >= 0; --i) v = (v * x + full[static_cast<size_t>(i)]) % p;
        if (v == 0) return false;
    }
    for (int d = 2; 2 * d <= n; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int enc = 0; enc < count; ++enc) {
            auto div = decode_digits(enc, p, d);
            div.push_back(1);
            auto rem = poly_rem(full, div, p);
            if (std::all_of(rem.begin(), rem.end(), [](int c) { return c == 0; })) return false;
        }
    }
    return true;
}

} // namespace detail

class FieldCtx {
public:
    static FieldCtx build(int q);

    int p() const { return p_; }
    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    FElem generator() const { return gen_; }
    const std::vector<int>& exp_table() const { return exp_; }
    const std::vector<int>& log_table() const { return log_; }

    FElem zero() const { return {0}; }
    FElem one() const { return {1}; }
    FElem minus_one() const { return neg(one()); }

    FElem element(int idx) const {
        if (idx < 0 || idx >= q_) throw Error("element index out of range");
        return {idx};
    }

    FElem add(FElem a, FElem b) const {
        if (n_ == 1) return {(a.idx + b.idx) % p_};
        int r = 0;
        for (int i = 0, ai = a.idx, bi = b.idx, pw = 1; i < n_; ++i, ai /= p_, bi /= p_, pw *= p_)
            r += (ai % p_ + bi % p_) % p_ * pw;
        return {r};
    }

    FElem neg(FElem a) const {
        if (n_ == 1) return {(p_ - a.idx) % p_};
        int r = 0;
        for (int i = 0, ai = a.idx, pw = 1; i < n_; ++i, ai /= p_, pw *= p_)
            r += (p_ - ai % p_) % p_ * pw;
        return {r};
    }

    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }

    FElem mul(FElem a, FElem b) const {
        if (a.idx == 0 || b.idx == 0) return {0};
        return {exp_[static_cast<size_t>((log_[static_cast<size_t>(a.idx)] + log_[static_cast<size_t>(b.idx)]) % (q_ - 1))]};
    }

    FElem inv(FElem a) const {
        if (a.idx == 0) throw DivisionByZero("inv(0)");
        int l = log_[static_cast<size_t>(a.idx)];
        return {exp_[static_cast<size_t>((q_ - 1 - l) % (q_ - 1))]};
    }

    int dlog(FElem a) const {
        if (a.idx == 0) throw DlogOfZero("dlog(0)");
        return log_[static_cast<size_t>(a.idx)];
    }

    // generator^k for any integer k
    FElem exp(long long k) const {
        int m = q_ - 1;
        long long r = k % m;
        if (r < 0) r += m;
        return {exp_[static_cast<size_t>(r)]};
    }

    // multiplication without tables; used during construction and by the
    // cache loader to validate tables before trusting them
    FElem mul_slow(FElem a, FElem b) const {
        if (n_ == 1) return {a.idx * b.idx % p_};
        auto r = detail::poly_mul_mod(detail::decode_digits(a.idx, p_, n_),
                                      detail::decode_digits(b.idx, p_, n_), modulus_, p_, n_);
        return {detail::encode_digits(r, p_)};
    }

    int multiplicative_order(FElem a) const {
        if (a.idx == 0) throw DlogOfZero("order of 0");
        int ord = 1;
        FElem x = a;
        while (x.idx != 1) {
            x = mul_slow(x, a);
            ++ord;
            if (ord > q_) throw Error("order computation diverged");
        }
        return ord;
    }

    // used by the cache loader; throws Error on any violated invariant
    void check_invariants() const;

    // exposed for the cache loader, which must populate and then validate
    static FieldCtx from_parts(int p, int n, std::vector<int> modulus, int generator,
                               std::vector<int> log_table);

private:
    FieldCtx() = default;

    int p_ = 0, n_ = 0, q_ = 0;
    std::vector<int> modulus_; // low n coefficients, monic leading 1 implicit; empty for n = 1
    FElem gen_{0};
    std::vector<int> exp_; // k -> generator^k, length q-1
    std::vector<int> log_; // element -> k, log_[0] = -1
};

inline FieldCtx FieldCtx::build(int q) {
    if (q < 2) throw NotAPrimePower("q must be at least 2");
    if (q > kQMax) throw LimitExceeded("q exceeds Q_MAX = " + std::to_string(kQMax));

    int p = 0;
    for (int d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q; // q itself prime
    int n = 0, m = q;
    while (m > 1) {
        if (m % p != 0) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
        m /= p;
        ++n;
    }

    FieldCtx F;
    F.p_ = p;
    F.n_ = n;
    F.q_ = q;

    if (n > 1) {
        int count = 1;
        for (int i = 0; i < n; ++i) count *= p;
        for (int enc = 0; enc < count; ++enc) {
            auto low = detail::decode_digits(enc, p, n);
            if (detail::is_irreducible(low, p, n)) {
                F.modulus_ = low;
                break;
            }
        }
    }

    for (int g = 1; g < q; ++g) {
        if (F.multiplicative_order({g}) == q - 1) {
            F.gen_ = {g};
            break;
        }
    }

    F.exp_.assign(static_cast<size_t>(q - 1), 0);
    F.log_.assign(static_cast<size_t>(q), -1);
    FElem x = F.one();
    for (int k = 0; k < q - 1; ++k) {
        F.exp_[static_cast<size_t>(k)] = x.idx;
        F.log_[static_cast<size_t>(x.idx)] = k;
        x = F.mul_slow(x, F.gen_);
    }
    return F;
}

inline FieldCtx FieldCtx::from_parts(int p, int n, std::vector<int> modulus, int generator,
                                     std::vector<int> log_table) {
    FieldCtx F;
    F.p_ = p;
    F.n_ = n;
    F.q_ = 1;
    for (int i = 0; i < n; ++i) {
        F.q_ *= p;
        if (F.q_ > kQMax) throw LimitExceeded("q exceeds Q_MAX");
    }
    F.modulus_ = std::move(modulus);
    F.gen_ = {generator};
    F.log_ = std::move(log_table);
    F.exp_.assign(static_cast<size_t>(F.q_ - 1), 0);
    if (F.log_.size() != static_cast<size_t>(F.q_)) throw Error("log table has wrong length");
    for (int i = 1; i < F.q_; ++i) {
        int k = F.log_[static_cast<size_t>(i)];
        if (k < 0 || k >= F.q_ - 1) throw Error("log table entry out of range");
        F.exp_[static_cast<size_t>(k)] = i;
    }
    return F;
}

inline void FieldCtx::check_invariants() const {
    if (!detail::is_prime(p_)) throw Error("characteristic is not prime");
    if (n_ < 1) throw Error("extension degree must be >= 1");
    if (n_ == 1 && !modulus_.empty()) throw Error("prime field must have empty modulus");
    if (n_ > 1) {
        if (modulus_.size() != static_cast<size_t>(n_)) throw Error("modulus has wrong degree");
        for (int c : modulus_)
            if (c < 0 || c >= p_) throw Error("modulus coefficient out of range");
        if (!detail::is_irreducible(modulus_, p_, n_)) throw Error("modulus is reducible");
    }
    if (gen_.idx <= 0 || gen_.idx >= q_) throw Error("generator out of range");
    if (log_[0] != -1) throw Error("log of zero must be the sentinel");
    // exp and log must be mutually inverse and consistent with multiplication
    std::vector<char> seen(static_cast<size_t>(q_ - 1), 0);
    for (int i = 1; i < q_; ++i) {
        int k = log_[static_cast<size_t>(i)];
        if (k < 0 || k >= q_ - 1 || exp_[static_cast<size_t>(k)] != i) throw Error("exp/log tables inconsistent");
        if (seen[static_cast<size_t>(k)]) throw Error("log table is not injective");
        seen[static_cast<size_t>(k)] = 1;
    }
    if (exp_[0] != 1) throw Error("exp[0] must be 1");
    FElem x = one();
    for (int k = 0; k + 1 < q_ - 1; ++k) {
        x = mul_slow(x, gen_);
        if (exp_[static_cast<size_t>(k + 1)] != x.idx) throw Error("exp table disagrees with multiplication");
    }
    if (mul_slow(x, gen_).idx != 1) throw Error("generator order is not q-1");
}

} // namespace ffhyper
