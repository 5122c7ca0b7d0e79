#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ratmod/errors.hpp"

namespace ratmod {

using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

// mpq_class(p, q) does not canonicalize; every two-argument construction
// must go through here (or call canonicalize itself).
inline Rat make_rat(const Int& p, const Int& q) {
    if (q == 0) throw DivisionByZero("zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}
inline Rat make_rat(long p, long q) { return make_rat(Int(p), Int(q)); }

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& n) { return sgn(n); }

// Exact integer square root test.
inline std::optional<Int> integer_square_root(const Int& n) {
    if (sign(n) < 0) return std::nullopt;
    Int r = sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Nonnegative r with r^2 = q, if it exists in Q.
inline std::optional<Rat> rational_square_root(const Rat& q) {
    auto rn = integer_square_root(num(q));
    if (!rn) return std::nullopt;
    auto rd = integer_square_root(den(q));
    if (!rd) return std::nullopt;
    Rat r(*rn, *rd);
    r.canonicalize();
    return r;
}

// r in Q with r^n = q, if it exists; for even n the nonnegative root.
inline std::optional<Rat> rational_nth_root(const Rat& q, unsigned n) {
    if (n == 0) throw PreconditionViolated("0th root");
    if (n == 1) return q;
    if (sign(q) < 0 && n % 2 == 0) return std::nullopt;
    Int rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num(q).get_mpz_t(), n)) {
        // mpz_root returns nonzero iff exact; but for negative odd case it
        // still computes the (negative) root, so re-check below.
        Int p;
        mpz_pow_ui(p.get_mpz_t(), rn.get_mpz_t(), n);
        if (p != num(q)) return std::nullopt;
    }
    if (!mpz_root(rd.get_mpz_t(), den(q).get_mpz_t(), n)) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), rd.get_mpz_t(), n);
        if (p != den(q)) return std::nullopt;
    }
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

inline Rat pow_rat(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0) {
        if (e < 0) throw DivisionByZero("0^negative");
        return Rat(0);
    }
    Rat base = e < 0 ? Rat(den(q), num(q)) : q;
    base.canonicalize();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), num(base).get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), den(base).get_mpz_t(), k);
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Text form: "p" or "p/q" with the sign on the numerator.
inline std::string rat_to_string(const Rat& q) {
    if (den(q) == 1) return num(q).get_str();
    return num(q).get_str() + "/" + den(q).get_str();
}

inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw ParseError("bad rational: " + s);
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("bad rational: " + s);
    if (den(q) == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

}  // namespace ratmod
