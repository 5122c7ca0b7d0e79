#pragma once

#include <numeric>
#include <vector>

#include "ratmod/invariants2.hpp"
#include "ratmod/invariants3.hpp"

namespace ratmod {

// Equality in a weighted projective space over kbar: P ~ Q iff there is an
// alpha with alpha^(w_i) P_i = Q_i for all i. Supports must agree; the
// ratios r_i = Q_i/P_i must satisfy r_i^(w_j) = r_j^(w_i); with
// g = gcd of the supported weights, a Bezout combination recovers
// alpha^g, whose consistency is then checked (a g-th root always exists
// in kbar).
inline bool wp_equal_weighted(const std::vector<Fel>& P, const std::vector<Fel>& Q, const std::vector<int>& w) {
    if (P.size() != Q.size() || P.size() != w.size()) throw PreconditionViolated("size mismatch");
    bool allP = true, allQ = true;
    for (const auto& x : P) allP = allP && x.is_zero();
    for (const auto& x : Q) allQ = allQ && x.is_zero();
    if (allP || allQ) throw ZeroPoint("zero tuple is not a projective point");
    std::vector<size_t> supp;
    for (size_t i = 0; i < P.size(); ++i) {
        if (P[i].is_zero() != Q[i].is_zero()) return false;
        if (!P[i].is_zero()) supp.push_back(i);
    }
    std::vector<Fel> r(P.size(), Fel(0));
    for (size_t i : supp) r[i] = Q[i] / P[i];
    for (size_t i : supp)
        for (size_t j : supp)
            if (i < j && r[i].pow(w[j]) != r[j].pow(w[i])) return false;
    // Bezout: g = gcd of supported weights as sum m_i w_i
    long g = 0;
    for (size_t i : supp) g = std::gcd(g, static_cast<long>(w[i]));
    // iterative extended gcd over the supported weights
    std::vector<long> m(P.size(), 0);
    long acc = 0;
    for (size_t i : supp) {
        if (acc == 0) {
            acc = w[i];
            m[i] = 1;
            continue;
        }
        long a = acc, b = w[i];
        // extended gcd(a, b) = ua + vb
        long u0 = 1, u1 = 0, v0 = 0, v1 = 1;
        while (b != 0) {
            long qq = a / b;
            std::swap(a -= qq * b, b);
            std::swap(u0 -= qq * u1, u1);
            std::swap(v0 -= qq * v1, v1);
        }
        for (size_t k = 0; k < P.size(); ++k) m[k] *= u0;
        m[i] = v0;
        acc = a;
    }
    Fel rho_g(1);
    for (size_t i : supp) rho_g *= r[i].pow(m[i]);
    for (size_t i : supp)
        if (rho_g.pow(w[i] / g) != r[i]) return false;
    return true;
}

// Weighted projective coordinates [d:i:j:a:b:c] with weights (2,2,3,3,4,6).
struct ModuliPoint3 {
    InvariantTuple3 coords;

    static const std::vector<int>& weights() {
        static const std::vector<int> w = {2, 2, 3, 3, 4, 6};
        return w;
    }
    std::vector<Fel> as_vector() const {
        auto a = coords.as_array();
        return {a.begin(), a.end()};
    }
    bool is_zero() const {
        for (const auto& x : coords.as_array())
            if (!x.is_zero()) return false;
        return true;
    }
};

// Coordinates [s1:s2:s3:r] with weights (4,4,4,6).
struct ModuliPoint2 {
    InvariantTuple2 coords;

    static const std::vector<int>& weights() {
        static const std::vector<int> w = {4, 4, 4, 6};
        return w;
    }
    std::vector<Fel> as_vector() const {
        auto a = coords.as_array();
        return {a.begin(), a.end()};
    }
};

inline bool wp_equal(const ModuliPoint3& P, const ModuliPoint3& Q) {
    return wp_equal_weighted(P.as_vector(), Q.as_vector(), ModuliPoint3::weights());
}
inline bool wp_equal(const ModuliPoint2& P, const ModuliPoint2& Q) {
    return wp_equal_weighted(P.as_vector(), Q.as_vector(), ModuliPoint2::weights());
}

// Automorphism strata of M3 (Table 4); the poset order of Figure 1.
enum class Stratum { Trivial, C2_1, C2_2, C3, D4_1, D4_2, D8, A4 };

inline const char* stratum_name(Stratum s) {
    switch (s) {
        case Stratum::Trivial: return "Trivial";
        case Stratum::C2_1: return "C2_1";
        case Stratum::C2_2: return "C2_2";
        case Stratum::C3: return "C3";
        case Stratum::D4_1: return "D4_1";
        case Stratum::D4_2: return "D4_2";
        case Stratum::D8: return "D8";
        case Stratum::A4: return "A4";
    }
    return "?";
}

// Deepest stratum whose ideal vanishes at P, tested bottom-up:
// A4 (c,b,a,i,d); D8 (d,j,a,b,c); D4^1 (a,j,c,ctilde); D4^2 (d,a,b,c);
// C3 (d,i,b); C2^1 (c,ctilde); C2^2 (a,j).
inline Stratum classify_aut(const ModuliPoint3& P) {
    if (P.is_zero()) throw ZeroPoint("classify_aut");
    const auto& t = P.coords;
    Fel ct = c_tilde(t);
    auto z = [](const Fel& x) { return x.is_zero(); };
    if (z(t.c) && z(t.b) && z(t.a) && z(t.i) && z(t.d)) return Stratum::A4;
    if (z(t.d) && z(t.j) && z(t.a) && z(t.b) && z(t.c)) return Stratum::D8;
    if (z(t.a) && z(t.j) && z(t.c) && z(ct)) return Stratum::D4_1;
    if (z(t.d) && z(t.a) && z(t.b) && z(t.c)) return Stratum::D4_2;
    if (z(t.d) && z(t.i) && z(t.b)) return Stratum::C3;
    if (z(t.c) && z(ct)) return Stratum::C2_1;
    if (z(t.a) && z(t.j)) return Stratum::C2_2;
    return Stratum::Trivial;
}

enum class Validity3 { ok, violates_syzygy, degenerate_rho };

inline Validity3 validate3(const ModuliPoint3& P) {
    if (!check_relation3(P.coords)) return Validity3::violates_syzygy;
    if (rho_from_invariants(P.coords).is_zero()) return Validity3::degenerate_rho;
    return Validity3::ok;
}

enum class Validity2 { ok, violates_syzygy, degenerate_rho };

inline Validity2 validate2(const ModuliPoint2& P) {
    if (!check_relation2(P.coords)) return Validity2::violates_syzygy;
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel rho = q(1, 27) * P.coords.s1 - q(1, 6) * P.coords.s2 + q(1, 2) * P.coords.s3;
    if (rho.is_zero()) return Validity2::degenerate_rho;
    return Validity2::ok;
}

}  // namespace ratmod
