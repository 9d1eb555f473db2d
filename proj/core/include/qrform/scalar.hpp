#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrform/errors.hpp"

namespace qrform {

// Dense integer-coefficient polynomial in t. c_[k] is the coefficient of t^k;
// no trailing zeros are stored (zero polynomial has empty c_).
class Poly {
public:
    Poly() = default;
    explicit Poly(long c);
    explicit Poly(mpz_class c);
    static Poly t_power(int k);  // k >= 0

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int low_degree() const;  // t-adic valuation; -1 for zero
    const mpz_class& lc() const { return c_.back(); }
    mpz_class coeff(int k) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }
    void set_coeff(int k, mpz_class v);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly shifted(int k) const;            // * t^k, k >= 0
    Poly shifted_down(int k) const;       // / t^k, requires valuation >= k
    Poly reversed() const;                // coefficient reversal (t -> 1/t up to t^deg)
    mpz_class content() const;            // gcd of coefficients, >= 0 (0 for zero poly)
    Poly primitive() const;               // content removed; sign of lc preserved

    static Poly divexact(const Poly& a, const Poly& b);  // exact division
    static Poly pseudo_rem(const Poly& a, const Poly& b);
    static Poly gcd(const Poly& a, const Poly& b);  // primitive, positive lc

    mpq_class eval(const mpq_class& t0) const;

private:
    std::vector<mpz_class> c_;
    void trim();
};

// An element of Q(t): reduced fraction of integer-coefficient polynomials.
// Canonical form: gcd(num, den) = 1, joint integer content 1, den lc > 0.
// q is represented as t^2 (so q^{1/2} = t is available).
class Scalar {
public:
    Scalar() : den_(Poly(1)) {}
    Scalar(long n) : num_(Poly(n)), den_(Poly(1)) {}  // NOLINT: implicit by design
    Scalar(long num, long den);
    Scalar(Poly num, Poly den);

    static Scalar t_pow(int k);  // t^k, any sign
    static const Scalar& zero();
    static const Scalar& one();
    // Parse an expression in {integers, rationals, t, q, + - * / ^, parens}.
    // q expands to t^q_texp (default q = t^2).
    static Scalar parse(std::string_view s, int q_texp = 2);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws DivisionByZero
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }

    Scalar inv() const;       // throws DivisionByZero on zero
    Scalar pow(int k) const;  // any sign
    Scalar subst_t_inverse() const;  // t -> 1/t

    // Evaluation at a rational point; nullopt when the denominator vanishes.
    std::optional<mpq_class> eval(const mpq_class& t0) const;

    std::string str() const;

private:
    Poly num_;
    Poly den_;
    void normalize();
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace qrform
