#include "hoeffding_urn/rational.hpp"

#include "hoeffding_urn/error.hpp"

#include <mpfr.h>

#include <cctype>

namespace hoeffding_urn {

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'"); };
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) fail();
    if (i < text.size()) {
        if (text[i] != '/') fail();
        const std::size_t den_begin = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin || i != text.size()) fail();
    }
    Rational q;
    if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) fail();
    q.canonicalize();
    return q;
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

double to_double(const Rational& q) {
    // mpq_get_d truncates; go through MPFR for correct rounding.
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

}  // namespace hoeffding_urn
