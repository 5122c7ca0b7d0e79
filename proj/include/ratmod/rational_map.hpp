#pragma once

#include <utility>

#include "ratmod/binary_form.hpp"

namespace ratmod {

// Sylvester resultant of two forms of common order d >= 1, as the 2d x 2d
// determinant, computed by fraction-free-ish Gaussian elimination over the
// field (exact division, column pivoting).
inline Fel resultant(const BinaryForm& F, const BinaryForm& G) {
    int d = F.order();
    if (G.order() != d || d < 1) throw OrderMismatch("resultant needs equal orders >= 1");
    int n = 2 * d;
    std::vector<std::vector<Fel>> M(n, std::vector<Fel>(n, Fel(0)));
    for (int r = 0; r < d; ++r)
        for (int k = 0; k <= d; ++k) {
            M[r][r + k] = F[k];
            M[d + r][r + k] = G[k];
        }
    Fel det(1);
    int swaps = 0;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Fel(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            ++swaps;
        }
        det *= M[col][col];
        Fel inv = M[col][col].inverse();
        for (int r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            Fel factor = M[r][col] * inv;
            for (int k = col; k < n; ++k) M[r][k] -= factor * M[col][k];
        }
    }
    return swaps % 2 ? -det : det;
}

// The Clebsch-Gordan pair: f of order d-1, g of order d+1.
struct FormPair {
    BinaryForm f, g;

    int degree() const {
        int d = f.order() + 1;
        if (g.order() != d + 1) throw OrderMismatch("form pair orders must differ by 2");
        return d;
    }
};

// A degree-d rational map [F0 : F1] with Res(F0, F1) != 0.
struct RationalMap {
    int degree;
    BinaryForm F0, F1;

    RationalMap(int d, BinaryForm F0_, BinaryForm F1_) : degree(d), F0(std::move(F0_)), F1(std::move(F1_)) {
        if (degree < 2) throw PreconditionViolated("degree must be >= 2");
        if (F0.order() != degree || F1.order() != degree) throw OrderMismatch("map form orders");
        if (resultant(F0, F1).is_zero()) throw DegenerateMap("Res(F0, F1) = 0");
    }
};

// f = div(F0, F1), g = X0 F1 - X1 F0 (the Clebsch-Gordan projection; its
// zero set is the fixed-point locus).
inline FormPair split(const RationalMap& m) {
    int d = m.degree;
    BinaryForm f(d - 1), g(d + 1);
    f = m.F0.dX0() + m.F1.dX1();
    BinaryForm x0(1, {Fel(1), Fel(0)}), x1(1, {Fel(0), Fel(1)});
    g = x0 * m.F1 - x1 * m.F0;
    return {f, g};
}

// Inverse of split: F0 = (X0 f - dg/dX1)/(d+1), F1 = (X1 f + dg/dX0)/(d+1).
inline RationalMap merge(const FormPair& pair) {
    int d = pair.degree();
    BinaryForm x0(1, {Fel(1), Fel(0)}), x1(1, {Fel(0), Fel(1)});
    Fel s = Fel(static_cast<long>(d + 1)).inverse();
    BinaryForm F0 = (x0 * pair.f - pair.g.dX1()) * s;
    BinaryForm F1 = (x1 * pair.f + pair.g.dX0()) * s;
    return RationalMap(d, F0, F1);  // throws DegenerateMap on vanishing resultant
}

// Multiplier of a fixed point (xi0 : xi1), i.e. g(xi) = 0. With
// mu = F_i(xi)/xi_i, rescaling xi by c with c^(d-1) = 1/mu gives
// F_i(xi) = xi_i and the multiplier f(xi) - d becomes f(xi)/mu - d,
// which is already in the field.
inline Fel fixed_point_multiplier(const RationalMap& m, const Fel& xi0, const Fel& xi1) {
    if (xi0.is_zero() && xi1.is_zero()) throw PreconditionViolated("(0,0) is not a point");
    FormPair p = split(m);
    if (!p.g.eval(xi0, xi1).is_zero()) throw NotAFixedPoint("g(xi) != 0");
    Fel mu = xi0.is_zero() ? m.F1.eval(xi0, xi1) / xi1 : m.F0.eval(xi0, xi1) / xi0;
    if (mu.is_zero()) throw NonRescalable("F(xi) = 0 at a fixed point");
    return p.f.eval(xi0, xi1) / mu - Fel(static_cast<long>(m.degree));
}

inline std::array<std::array<Fel, 2>, 2> adjugate(const std::array<std::array<Fel, 2>, 2>& M) {
    return {{{M[1][1], -M[0][1]}, {-M[1][0], M[0][0]}}};
}

inline Fel det2(const std::array<std::array<Fel, 2>, 2>& M) {
    return M[0][0] * M[1][1] - M[0][1] * M[1][0];
}

// Conjugate by M in GL2: representative adj(M) . (F0, F1) o M. For M in SL2
// this is exactly the conjugation action on Rat_d.
inline RationalMap conjugate(const RationalMap& m, const std::array<std::array<Fel, 2>, 2>& M) {
    if (det2(M).is_zero()) throw PreconditionViolated("singular conjugation matrix");
    BinaryForm A = m.F0.substitute(M), B = m.F1.substitute(M);
    auto adj = adjugate(M);
    BinaryForm G0 = adj[0][0] * A + adj[0][1] * B;
    BinaryForm G1 = adj[1][0] * A + adj[1][1] * B;
    return RationalMap(m.degree, G0, G1);
}

// The induced substitution action on a pair (f, g).
inline FormPair substitute_pair(const FormPair& p, const std::array<std::array<Fel, 2>, 2>& M) {
    return {p.f.substitute(M), p.g.substitute(M)};
}

}  // namespace ratmod
