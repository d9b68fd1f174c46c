#pragma once

// Exact rationals backed by GMP.  mpq_class keeps values in lowest terms
// with a positive denominator as long as every literal is canonicalized on entry.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "abelcp/error.hpp"

namespace abelcp {

using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q".  Whitespace is not accepted.
inline Scalar parse_scalar(std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        fail(ErrorKind::MalformedInput, "bad scalar literal '" + std::string(text) + "'");
    Scalar q;
    q.get_num() = Integer(num, 10);
    q.get_den() = Integer(den, 10);
    if (q.get_den() == 0) fail(ErrorKind::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(10); }

inline Scalar pow(const Scalar& q, unsigned long e) {
    Scalar out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return out;
}

}  // namespace abelcp
