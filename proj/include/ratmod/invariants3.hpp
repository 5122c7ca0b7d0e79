#pragma once

#include <array>

#include "ratmod/rational_map.hpp"

namespace ratmod {

// The six basic invariants of a quadratic/quartic pair (f, g), i.e. of a
// cubic rational map: degrees 2,2,3,3,4,6 and multidegrees
// (2,0),(0,2),(0,3),(2,1),(2,2),(3,3).
struct InvariantTuple3 {
    Fel d, i, j, a, b, c;

    std::array<Fel, 6> as_array() const { return {d, i, j, a, b, c}; }
    static InvariantTuple3 from_array(const std::array<Fel, 6>& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    bool operator==(const InvariantTuple3& o) const {
        return d == o.d && i == o.i && j == o.j && a == o.a && b == o.b && c == o.c;
    }
};

inline void require_orders_24(const FormPair& p) {
    if (p.f.order() != 2 || p.g.order() != 4) throw OrderMismatch("need orders (2,4)");
}

// d=(f,f)2, i=(g,g)4, j=(H,g)4, a=(g,f^2)4, b=(H,f^2)4, c=(T,f^3)6
// with H=(g,g)2, T=(g,H)1.
inline InvariantTuple3 invariants3(const FormPair& p) {
    require_orders_24(p);
    BinaryForm H = transvect(p.g, p.g, 2);
    BinaryForm T = transvect(p.g, H, 1);
    BinaryForm f2 = p.f * p.f;
    BinaryForm f3 = f2 * p.f;
    InvariantTuple3 t;
    t.d = as_scalar(transvect(p.f, p.f, 2));
    t.i = as_scalar(transvect(p.g, p.g, 4));
    t.j = as_scalar(transvect(H, p.g, 4));
    t.a = as_scalar(transvect(p.g, f2, 4));
    t.b = as_scalar(transvect(H, f2, 4));
    t.c = as_scalar(transvect(T, f3, 6));
    return t;
}

// Closed-form invariants in the coefficients c1..c3 of f and c4..c8 of g;
// the convention oracle for the transvectant pipeline.
inline InvariantTuple3 invariants3_appendix(const std::array<Fel, 8>& v) {
    const Fel &c1 = v[0], &c2 = v[1], &c3 = v[2], &c4 = v[3], &c5 = v[4], &c6 = v[5], &c7 = v[6], &c8 = v[7];
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    InvariantTuple3 t;
    t.d = q(-1, 2) * c2 * c2 + Fel(2) * c1 * c3;
    t.i = q(1, 6) * c6 * c6 + q(-1, 2) * c5 * c7 + Fel(2) * c4 * c8;
    t.j = q(-1, 36) * c6 * c6 * c6 + q(1, 8) * c5 * c6 * c7 + q(-3, 8) * c4 * c7 * c7 + q(-3, 8) * c5 * c5 * c8 +
          c4 * c6 * c8;
    t.a = c3 * c3 * c4 + q(-1, 2) * c2 * c3 * c5 + q(1, 6) * c2 * c2 * c6 + q(1, 3) * c1 * c3 * c6 +
          q(-1, 2) * c1 * c2 * c7 + c1 * c1 * c8;
    t.b = q(-1, 8) * c3 * c3 * c5 * c5 + q(1, 3) * c3 * c3 * c4 * c6 + q(1, 12) * c2 * c3 * c5 * c6 +
          q(-1, 36) * c2 * c2 * c6 * c6 + q(-1, 18) * c1 * c3 * c6 * c6 + q(-1, 2) * c2 * c3 * c4 * c7 +
          q(1, 24) * c2 * c2 * c5 * c7 + q(1, 12) * c1 * c3 * c5 * c7 + q(1, 12) * c1 * c2 * c6 * c7 +
          q(-1, 8) * c1 * c1 * c7 * c7 + q(1, 3) * c2 * c2 * c4 * c8 + q(2, 3) * c1 * c3 * c4 * c8 +
          q(-1, 2) * c1 * c2 * c5 * c8 + q(1, 3) * c1 * c1 * c6 * c8;
    t.c = q(1, 32) * c3 * c3 * c3 * c5 * c5 * c5 + q(-1, 8) * c3 * c3 * c3 * c4 * c5 * c6 +
          q(-1, 32) * c2 * c3 * c3 * c5 * c5 * c6 + q(1, 8) * c2 * c3 * c3 * c4 * c6 * c6 +
          q(1, 4) * c3 * c3 * c3 * c4 * c4 * c7 + q(-1, 16) * c2 * c3 * c3 * c4 * c5 * c7 +
          q(1, 32) * c2 * c2 * c3 * c5 * c5 * c7 + q(1, 32) * c1 * c3 * c3 * c5 * c5 * c7 +
          q(-1, 8) * c2 * c2 * c3 * c4 * c6 * c7 + q(-1, 8) * c1 * c3 * c3 * c4 * c6 * c7 +
          q(1, 32) * c2 * c2 * c2 * c4 * c7 * c7 + q(3, 16) * c1 * c2 * c3 * c4 * c7 * c7 +
          q(-1, 32) * c1 * c2 * c2 * c5 * c7 * c7 + q(-1, 32) * c1 * c1 * c3 * c5 * c7 * c7 +
          q(1, 32) * c1 * c1 * c2 * c6 * c7 * c7 + q(-1, 32) * c1 * c1 * c1 * c7 * c7 * c7 +
          q(-1, 2) * c2 * c3 * c3 * c4 * c4 * c8 + q(1, 4) * c2 * c2 * c3 * c4 * c5 * c8 +
          q(1, 4) * c1 * c3 * c3 * c4 * c5 * c8 + q(-1, 32) * c2 * c2 * c2 * c5 * c5 * c8 +
          q(-3, 16) * c1 * c2 * c3 * c5 * c5 * c8 + q(1, 8) * c1 * c2 * c2 * c5 * c6 * c8 +
          q(1, 8) * c1 * c1 * c3 * c5 * c6 * c8 + q(-1, 8) * c1 * c1 * c2 * c6 * c6 * c8 +
          q(-1, 4) * c1 * c2 * c2 * c4 * c7 * c8 + q(-1, 4) * c1 * c1 * c3 * c4 * c7 * c8 +
          q(1, 16) * c1 * c1 * c2 * c5 * c7 * c8 + q(1, 8) * c1 * c1 * c1 * c6 * c7 * c8 +
          q(1, 2) * c1 * c1 * c2 * c4 * c8 * c8 + q(-1, 4) * c1 * c1 * c1 * c5 * c8 * c8;
    return t;
}

inline InvariantTuple3 invariants3_appendix(const FormPair& p) {
    require_orders_24(p);
    return invariants3_appendix({p.f[0], p.f[1], p.f[2], p.g[0], p.g[1], p.g[2], p.g[3], p.g[4]});
}

// ctilde = (1/6) d^2 i - (1/2) a^2 + (1/2) d b
inline Fel c_tilde(const InvariantTuple3& t) {
    return Fel(Rat(1, 6)) * t.d * t.d * t.i - Fel(Rat(1, 2)) * t.a * t.a + Fel(Rat(1, 2)) * t.d * t.b;
}

// Res(F0, F1) of the corresponding map, in the invariants.
inline Fel rho_from_invariants(const InvariantTuple3& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    return q(1, 8) * t.i * t.i * t.i + q(1, 384) * t.i * t.d * t.d + q(-3, 4) * t.j * t.j + q(-3, 16) * t.j * t.a +
           q(1, 256) * t.a * t.a + q(3, 16) * t.i * t.b + q(-1, 64) * t.d * t.b + q(-1, 8) * t.c;
}

// 2c^2 = (1/54)d^3i^3 - (1/9)d^3j^2 - (1/12)di^2a^2 - (1/3)ja^3 + djab
//        + (1/2)ia^2b - (1/2)dib^2 - b^3
inline bool check_relation3(const InvariantTuple3& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel lhs = Fel(2) * t.c * t.c;
    Fel rhs = q(1, 54) * t.d.pow(3) * t.i.pow(3) + q(-1, 9) * t.d.pow(3) * t.j * t.j +
              q(-1, 12) * t.d * t.i * t.i * t.a * t.a + q(-1, 3) * t.j * t.a.pow(3) + t.d * t.j * t.a * t.b +
              q(1, 2) * t.i * t.a * t.a * t.b + q(-1, 2) * t.d * t.i * t.b * t.b - t.b.pow(3);
    return lhs == rhs;
}

enum class CovariantVariant { Plain, Tilde };

// Quadratic covariants u_i, their xi_i, and the associated invariants.
// Plain: u1=f, u2=(g,f)2, u3=(H,f)2. Tilde: u1=f, u2=(f,g)2, u3=(u2,f)1.
struct CovariantSystem3 {
    CovariantVariant variant;
    std::array<BinaryForm, 3> u, xi;
    std::array<Fel, 3> A;
    std::array<std::array<Fel, 3>, 3> B, C;
    Fel r;  // determinant invariant of the u-system; equals c for Plain
};

inline CovariantSystem3 covariant_system3(const FormPair& p, CovariantVariant variant) {
    require_orders_24(p);
    CovariantSystem3 s;
    s.variant = variant;
    BinaryForm H = transvect(p.g, p.g, 2);
    s.u[0] = p.f;
    if (variant == CovariantVariant::Plain) {
        s.u[1] = transvect(p.g, p.f, 2);
        s.u[2] = transvect(H, p.f, 2);
    } else {
        s.u[1] = transvect(p.f, p.g, 2);
        s.u[2] = transvect(s.u[1], p.f, 1);
    }
    s.xi[0] = transvect(s.u[1], s.u[2], 1);
    s.xi[1] = transvect(s.u[2], s.u[0], 1);
    s.xi[2] = transvect(s.u[0], s.u[1], 1);
    for (int i = 0; i < 3; ++i) {
        s.A[i] = as_scalar(transvect(p.f, s.u[i], 2));
        for (int j = 0; j < 3; ++j) {
            s.C[i][j] = as_scalar(transvect(s.u[i], s.u[j], 2));
            s.B[i][j] = as_scalar(
                gen_transvect({p.g, s.u[i], s.u[j]}, {{1, 2, 2}, {1, 3, 2}}));
        }
    }
    // with our omega orientation this product realizes det[u_i]/2, and
    // r = c holds for the plain system
    s.r = as_scalar(gen_transvect({s.u[0], s.u[1], s.u[2]}, {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}}));
    return s;
}

// Closed forms of the C, A, B lists in the basic invariants. B23 and B33
// carry corrected signs on their middle terms; the typical presentation
// c^2 g = sum B_ij xi_i xi_j pins them.
inline std::array<std::array<Fel, 3>, 3> closed_C(const InvariantTuple3& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel C22 = t.b + q(1, 3) * t.i * t.d;
    Fel C23 = q(1, 6) * t.i * t.a + q(1, 3) * t.j * t.d;
    Fel C33 = q(1, 3) * t.j * t.a - q(1, 6) * t.i * t.b + q(1, 18) * t.i * t.i * t.d;
    return {{{t.d, t.a, t.b}, {t.a, C22, C23}, {t.b, C23, C33}}};
}

inline std::array<Fel, 3> closed_A(const InvariantTuple3& t) { return {t.d, t.a, t.b}; }

inline std::array<std::array<Fel, 3>, 3> closed_B(const InvariantTuple3& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel B12 = t.b + q(1, 3) * t.i * t.d;
    Fel B13 = q(1, 6) * t.i * t.a + q(1, 3) * t.j * t.d;
    Fel B22 = q(1, 2) * t.i * t.a + q(1, 3) * t.j * t.d;
    Fel B23 = q(1, 3) * t.j * t.a + q(1, 6) * t.i * t.b + q(1, 18) * t.i * t.i * t.d;
    Fel B33 = q(1, 3) * t.j * t.b + q(1, 36) * t.i * t.i * t.a + q(1, 18) * t.d * t.i * t.j;
    return {{{t.a, B12, B13}, {B12, B22, B23}, {B13, B23, B33}}};
}

// Tilde lists: Ct13 = Ct23 = 0, Ct33 = ctilde; Bt13 = 0, Bt23 = -c.
inline std::array<std::array<Fel, 3>, 3> closed_C_tilde(const InvariantTuple3& t) {
    Fel C22 = t.b + Fel(Rat(1, 3)) * t.i * t.d;
    return {{{t.d, t.a, Fel(0)}, {t.a, C22, Fel(0)}, {Fel(0), Fel(0), c_tilde(t)}}};
}

inline std::array<std::array<Fel, 3>, 3> closed_B_tilde(const InvariantTuple3& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel B12 = t.b + q(1, 3) * t.i * t.d;
    Fel B22 = q(1, 2) * t.i * t.a + q(1, 3) * t.j * t.d;
    Fel B33 = q(1, 2) * t.a * t.b - q(1, 12) * t.i * t.a * t.d - q(1, 6) * t.j * t.d * t.d;
    return {{{t.a, B12, Fel(0)}, {B12, B22, -t.c}, {Fel(0), -t.c, B33}}};
}

}  // namespace ratmod
