#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sdimlab {

/// Exact arbitrary-precision fraction. Always canonical: the denominator is
/// positive, numerator and denominator are coprime, zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d);
    explicit Rational(mpq_class v);

    /// Accepts "p/q" or "p" (optional sign on p). Decimals are rejected.
    static Rational parse(std::string_view text);

    /// 2^e for any integer e.
    static Rational pow2(long e);

    /// Canonical "p/q" form; integers are written with "/1".
    std::string str() const;
    double to_double() const { return v_.get_d(); }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    /// Largest integer <= *this.
    mpz_class floor() const;
    /// Smallest integer >= *this.
    mpz_class ceil() const;

    const mpq_class& raw() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// If r is the square of a rational, returns true and stores the root.
bool exact_sqrt(const Rational& r, Rational& root);

}  // namespace sdimlab
