#include "causal/semiring.hpp"

#include <cctype>

namespace causal {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string text(s);
    if (!text.empty() && text[0] == '+') text.erase(0, 1);
    return mpz_class(text, 10);
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num)) throw CausalError("malformed rational '" + std::string(text) + "'");
    mpq_class q;
    if (slash == std::string_view::npos) {
        q = mpq_class(parse_integer(num));
    } else {
        const std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
            throw CausalError("malformed rational '" + std::string(text) + "'");
        }
        const mpz_class d = parse_integer(den);
        if (d == 0) throw CausalError("zero denominator in '" + std::string(text) + "'");
        q = mpq_class(parse_integer(num), d);
        q.canonicalize();
    }
    return q;
}

std::string rational_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational::Rational(long num, long den) {
    if (den == 0) throw CausalError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (sgn(o.value_) == 0) throw CausalError("division by zero");
    return Rational(mpq_class(value_ / o.value_));
}

NonNegRational::NonNegRational(long v) : value_(v) {
    if (v < 0) throw CausalError("negative value for a non-negative rational");
}

NonNegRational::NonNegRational(const Rational& v) : NonNegRational(v.value()) {}

NonNegRational::NonNegRational(mpq_class v) : value_(std::move(v)) {
    value_.canonicalize();
    if (sgn(value_) < 0) throw CausalError("negative value for a non-negative rational: " + rational_string(value_));
}

NonNegRational::NonNegRational(long num, long den) : NonNegRational(Rational(num, den)) {}

NonNegRational NonNegRational::operator+(const NonNegRational& o) const {
    NonNegRational r;
    r.value_ = value_ + o.value_;
    return r;
}

NonNegRational NonNegRational::operator*(const NonNegRational& o) const {
    NonNegRational r;
    r.value_ = value_ * o.value_;
    return r;
}

}  // namespace causal
