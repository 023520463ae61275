#pragma once

// Exact values in (1/den) * Z[zeta_n], stored in the group ring
// Z[x]/(x^n - 1): a length-n integer coefficient vector plus a positive
// integer denominator.  Sums of character values accumulate as plain
// vector increments; reduction modulo the cyclotomic polynomial Phi_n
// happens only when equality is decided.
//
// Coefficients are 64-bit with overflow-checked arithmetic that throws
// ValueOverflow.  At the field sizes this library enumerates (q <= 64 in
// the shipped suites) the worst-case magnitudes stay far below 2^63; the
// checks make any excursion loud instead of silently wrong.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "ffhyper/errors.hpp"

namespace ffhyper {

namespace detail {

inline long long ck_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw ValueOverflow("integer overflow in addition");
    return r;
}

inline long long ck_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw ValueOverflow("integer overflow in subtraction");
    return r;
}

inline long long ck_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ValueOverflow("integer overflow in multiplication");
    return r;
}

} // namespace detail

// Phi_n as an integer coefficient list, low degree first, monic.
using CycloPoly = std::vector<long long>;

inline CycloPoly cyclotomic_poly(int n) {
    if (n < 1 || n > kQMax) throw Error("cyclotomic_poly: order out of range");
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n
    std::vector<long long> f(static_cast<size_t>(n + 1), 0);
    f[0] = -1;
    f[static_cast<size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        CycloPoly phi = cyclotomic_poly(d);
        // exact division by the monic phi
        std::vector<long long> quot(f.size() - phi.size() + 1, 0);
        for (size_t i = quot.size(); i-- > 0;) {
            long long c = f[i + phi.size() - 1];
            quot[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phi.size(); ++j)
                f[i + j] = detail::ck_sub(f[i + j], detail::ck_mul(c, phi[j]));
        }
        f = std::move(quot);
    }
    return f;
}

namespace detail {

inline const CycloPoly& cyclotomic_poly_cached(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloPoly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<CycloPoly>(cyclotomic_poly(n));
    return *slot;
}

// remainder of v modulo the monic Phi_n
inline std::vector<long long> reduce_mod_cyclo(std::vector<long long> v, int n) {
    const CycloPoly& phi = cyclotomic_poly_cached(n);
    size_t deg = phi.size() - 1;
    for (size_t i = v.size(); i-- > deg;) {
        long long c = v[i];
        if (c == 0) continue;
        v[i] = 0;
        for (size_t j = 0; j < deg; ++j) v[i - deg + j] = ck_sub(v[i - deg + j], ck_mul(c, phi[j]));
    }
    v.resize(std::max<size_t>(deg, 1));
    return v;
}

} // namespace detail

class CycVal {
public:
    CycVal() : coeffs_(1, 0) {}

    static CycVal zero(int order) { return CycVal(order); }

    static CycVal from_int(int order, long long k) {
        CycVal v(order);
        v.coeffs_[0] = k;
        return v;
    }

    // zeta_order^e as a value (unit coefficient vector, den 1)
    static CycVal from_root(int order, long long e) {
        CycVal v(order);
        long long r = e % order;
        if (r < 0) r += order;
        v.coeffs_[static_cast<size_t>(r)] = 1;
        return v;
    }

    int order() const { return static_cast<int>(coeffs_.size()); }
    long long den() const { return den_; }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    // direct accumulation of a single root; the workhorse of character sums
    void add_root(long long e) {
        int n = order();
        long long r = e % n;
        if (r < 0) r += n;
        coeffs_[static_cast<size_t>(r)] = detail::ck_add(coeffs_[static_cast<size_t>(r)], den_);
    }

    friend CycVal operator+(const CycVal& a, const CycVal& b) {
        a.require_same_order(b);
        long long g = std::gcd(a.den_, b.den_);
        long long l = detail::ck_mul(a.den_ / g, b.den_);
        long long fa = l / a.den_, fb = l / b.den_;
        CycVal r(a.order());
        r.den_ = l;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            r.coeffs_[i] = detail::ck_add(detail::ck_mul(a.coeffs_[i], fa), detail::ck_mul(b.coeffs_[i], fb));
        return r;
    }

    friend CycVal operator-(const CycVal& a, const CycVal& b) { return a + b.scaled(-1); }

    // cyclic convolution
    friend CycVal operator*(const CycVal& a, const CycVal& b) {
        a.require_same_order(b);
        int n = a.order();
        CycVal r(n);
        r.den_ = detail::ck_mul(a.den_, b.den_);
        for (int i = 0; i < n; ++i) {
            long long c = a.coeffs_[static_cast<size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) {
                long long d = b.coeffs_[static_cast<size_t>(j)];
                if (d == 0) continue;
                size_t k = static_cast<size_t>((i + j) % n);
                r.coeffs_[k] = detail::ck_add(r.coeffs_[k], detail::ck_mul(c, d));
            }
        }
        return r;
    }

    CycVal scaled(long long k) const {
        CycVal r = *this;
        for (auto& c : r.coeffs_) c = detail::ck_mul(c, k);
        return r;
    }

    CycVal div_int(long long m) const {
        if (m <= 0) throw Error("div_int requires a positive divisor");
        CycVal r = *this;
        r.den_ = detail::ck_mul(r.den_, m);
        return r;
    }

    // multiplication by zeta^e, a cyclic rotation
    CycVal mul_root(long long e) const {
        int n = order();
        long long s = e % n;
        if (s < 0) s += n;
        CycVal r(n);
        r.den_ = den_;
        for (int i = 0; i < n; ++i)
            r.coeffs_[static_cast<size_t>((i + s) % n)] = coeffs_[static_cast<size_t>(i)];
        return r;
    }

    bool is_zero() const {
        auto rem = detail::reduce_mod_cyclo(coeffs_, order());
        for (long long c : rem)
            if (c != 0) return false;
        return true;
    }

    // exact equality modulo Phi_n, decided on cross-multiplied numerators
    friend bool cyc_eq(const CycVal& a, const CycVal& b) {
        a.require_same_order(b);
        std::vector<long long> diff(a.coeffs_.size());
        for (size_t i = 0; i < diff.size(); ++i)
            diff[i] = detail::ck_sub(detail::ck_mul(a.coeffs_[i], b.den_), detail::ck_mul(b.coeffs_[i], a.den_));
        auto rem = detail::reduce_mod_cyclo(std::move(diff), a.order());
        for (long long c : rem)
            if (c != 0) return false;
        return true;
    }

    // the represented value when it is a rational integer
    std::optional<long long> as_integer() const {
        auto rem = detail::reduce_mod_cyclo(coeffs_, order());
        for (size_t i = 1; i < rem.size(); ++i)
            if (rem[i] != 0) return std::nullopt;
        if (rem[0] % den_ != 0) return std::nullopt;
        return rem[0] / den_;
    }

    // floating-point evaluation at zeta_n = exp(2*pi*i/n); diagnostics only
    std::complex<double> to_complex() const {
        int n = order();
        long double re = 0, im = 0;
        const long double tau = 6.283185307179586476925286766559L;
        for (int e = 0; e < n; ++e) {
            long long c = coeffs_[static_cast<size_t>(e)];
            if (c == 0) continue;
            long double ang = tau * e / n;
            re += static_cast<long double>(c) * std::cos(ang);
            im += static_cast<long double>(c) * std::sin(ang);
        }
        return {static_cast<double>(re / den_), static_cast<double>(im / den_)};
    }

private:
    explicit CycVal(int order) : coeffs_(static_cast<size_t>(order), 0) {
        if (order < 1 || order > kQMax) throw Error("CycVal order out of range");
    }

    void require_same_order(const CycVal& o) const {
        if (coeffs_.size() != o.coeffs_.size()) throw OrderMismatch("cyclotomic orders differ");
    }

    std::vector<long long> coeffs_;
    long long den_ = 1;
};

inline CycVal cyc_from_root(int n, long long e) { return CycVal::from_root(n, e); }
inline CycVal cyc_add(const CycVal& a, const CycVal& b) { return a + b; }
inline CycVal cyc_mul(const CycVal& a, const CycVal& b) { return a * b; }
inline CycVal cyc_scale(const CycVal& a, long long k) { return a.scaled(k); }
inline CycVal cyc_div_int(const CycVal& a, long long m) { return a.div_int(m); }
inline bool cyc_is_zero(const CycVal& a) { return a.is_zero(); }

} // namespace ffhyper
