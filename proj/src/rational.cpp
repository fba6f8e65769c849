#include "sdimlab/rational.h"

#include "sdimlab/errors.h"

#include <cctype>

namespace sdimlab {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class to_mpz(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long n, long d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    if (v_.get_den() == 0) throw InvalidArgument("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num, true)) {
        throw ParseError("not a rational \"p/q\": '" + std::string(text) + "'");
    }
    mpq_class q;
    q.get_num() = to_mpz(num);
    q.get_den() = 1;
    if (slash != std::string_view::npos) {
        const auto den = text.substr(slash + 1);
        if (!is_integer_literal(den, false)) {
            throw ParseError("not a rational \"p/q\": '" + std::string(text) + "'");
        }
        q.get_den() = to_mpz(den);
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::pow2(long e) {
    mpq_class q(1);
    if (e >= 0) {
        mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

bool exact_sqrt(const Rational& r, Rational& root) {
    if (r.sign() < 0) return false;
    const mpz_class n = r.num();
    const mpz_class d = r.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
        return false;
    }
    mpq_class q;
    mpz_sqrt(q.get_num_mpz_t(), n.get_mpz_t());
    mpz_sqrt(q.get_den_mpz_t(), d.get_mpz_t());
    root = Rational(std::move(q));
    return true;
}

}  // namespace sdimlab
