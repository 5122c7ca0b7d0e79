#pragma once

#include <optional>

#include "ratmod/conic.hpp"
#include "ratmod/moduli.hpp"

namespace ratmod {

// Outcome of descending a moduli point to its field of moduli.
struct DescentResult {
    enum class Outcome { Model, Obstruction, NeedsExtension, SearchExhausted };
    Outcome outcome = Outcome::SearchExhausted;
    std::optional<FormPair> model;
    FieldDesc model_field = FieldDesc::rationals();
    std::optional<Conic> conic;  // obstruction conic, or the conic whose search ran out
    std::optional<PointCertificate> certificate;
    unsigned long bound = 0;
    Stratum stratum = Stratum::Trivial;
};

namespace detail {

inline Rat fel_to_rat(const Fel& x, const char* what) {
    if (!x.is_rational()) throw UnsupportedField(std::string(what) + " has irrational coordinates");
    return x.a();
}

inline std::array<Rat, 6> rational_coords(const ModuliPoint3& P) {
    auto v = P.coords.as_array();
    std::array<Rat, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = fel_to_rat(v[i], "moduli point");
    return out;
}

}  // namespace detail

// The obstruction conic sum C_ij x_i x_j of the covariants method; needs
// c != 0 (else C_P is singular).
inline Conic conic_CP(const ModuliPoint3& P) {
    if (P.coords.c.is_zero()) throw OnBadLocus("c = 0: conic C_P is singular");
    auto C = closed_C(P.coords);
    Mat3 M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = detail::fel_to_rat(C[i][j], "C_P entry");
    return Conic{M};
}

// Tilde companion: sum Ct_ij x_i x_j with Ct13 = Ct23 = 0, Ct33 = ctilde;
// needs ctilde != 0.
inline Conic conic_CP_tilde(const ModuliPoint3& P) {
    if (c_tilde(P.coords).is_zero()) throw OnBadLocus("ctilde = 0: conic C~_P is singular");
    auto C = closed_C_tilde(P.coords);
    Mat3 M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = detail::fel_to_rat(C[i][j], "C~_P entry");
    return Conic{M};
}

// The conic D~_P, k-isomorphic to C~_P:
// Ct11 x2^2 - 2 Ct12 x1 x2 + Ct22 x1^2 + 2 x3^2 = 0.
inline Conic conic_DP_tilde(const ModuliPoint3& P) {
    if (c_tilde(P.coords).is_zero()) throw OnBadLocus("ctilde = 0");
    auto C = closed_C_tilde(P.coords);
    Rat P11 = detail::fel_to_rat(C[0][0], "D~ entry");
    Rat Q12 = detail::fel_to_rat(C[0][1], "D~ entry");
    Rat S22 = detail::fel_to_rat(C[1][1], "D~ entry");
    return Conic::from_entries(S22, -Q12, Rat(0), P11, Rat(0), Rat(2));
}

// Recover beta from the degsbeta exponents (2,4,6,4,6,9): candidate tuple
// t1 = beta^(w_i) t. gcd of the supported exponents is 1 or 3 when c != 0.
inline Fel recover_beta(const InvariantTuple3& t1, const InvariantTuple3& t) {
    static const int w[6] = {2, 4, 6, 4, 6, 9};
    auto v1 = t1.as_array(), v = t.as_array();
    long g = 0;
    for (int i = 0; i < 6; ++i) {
        if (v[i].is_zero() != v1[i].is_zero()) throw PreconditionViolated("support mismatch in beta recovery");
        if (!v[i].is_zero()) g = std::gcd(g, static_cast<long>(w[i]));
    }
    if (g == 0) throw ZeroPoint("beta recovery on zero tuple");
    // Bezout combination of the supported exponents
    Fel beta_g(1);
    long acc = 0;
    std::array<long, 6> m{};
    for (int i = 0; i < 6; ++i) {
        if (v[i].is_zero()) continue;
        if (acc == 0) {
            acc = w[i];
            m[i] = 1;
            continue;
        }
        long a = acc, b = w[i], u0 = 1, u1 = 0, q0 = 0, q1 = 1;
        while (b != 0) {
            long qq = a / b;
            std::swap(a -= qq * b, b);
            std::swap(u0 -= qq * u1, u1);
            std::swap(q0 -= qq * q1, q1);
        }
        for (auto& mm : m) mm *= u0;
        m[i] = q0;  // gcd(acc, w_i) = u0*acc + q0*w_i
        acc = a;
    }
    for (int i = 0; i < 6; ++i)
        if (m[i] != 0) beta_g *= (v1[i] / v[i]).pow(m[i]);
    if (g == 1) return beta_g;
    // g == 3: rational cube root (unique when it exists)
    if (!beta_g.is_rational()) throw BetaNotInField("beta^3 not rational");
    auto root = rational_nth_root(beta_g.to_rational(), static_cast<unsigned>(g));
    if (!root) throw BetaNotInField("no rational " + std::to_string(g) + "-th root of beta^" + std::to_string(g));
    return Fel(*root);
}

// Covariants-method reconstruction at a rational point of C_P:
// f1 = (1/c) sum A_i theta_i, g1 = (1/c^2) sum B_ij theta_i theta_j,
// then divide out beta. The result has invariants exactly equal to P's
// coordinates.
inline FormPair reconstruct3_generic(const ModuliPoint3& P, const std::array<Rat, 3>& pt) {
    const auto& t = P.coords;
    if (t.c.is_zero()) throw OnBadLocus("c = 0");
    Conic CP = conic_CP(P);
    auto theta = parametrize(CP, pt);
    auto A = closed_A(t);
    auto B = closed_B(t);
    BinaryForm f1(2), g1(4);
    for (int i = 0; i < 3; ++i) f1 += A[i] * theta[i];
    f1 = f1 * t.c.inverse();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g1 += B[i][j] * (theta[i] * theta[j]);
    g1 = g1 * (t.c * t.c).inverse();
    InvariantTuple3 t1 = invariants3_appendix(FormPair{f1, g1});
    Fel beta = recover_beta(t1, t);
    FormPair out{f1 * beta.inverse(), g1 * (beta * beta).inverse()};
    if (!(invariants3_appendix(out) == t)) throw PreconditionViolated("generic reconstruction postcondition");
    return out;
}

// Tilde-method reconstruction at a point (t1, t2, t3) of D~_P with t3 != 0:
// f = tau_1/beta', g = (1/(ctilde^2 beta'^2)) sum Bhat_pq tau_p tau_q where
// Bhat = L^T B~ L and L is the change-of-frame xi~ = L u~ from the covariant
// theory of quadratic pairs. beta' = 2 t3 up to sign; the sign is fixed by
// the invariant check (both work when c = 0).
inline FormPair reconstruct3_tilde(const ModuliPoint3& P, const std::array<Fel, 3>& tpt) {
    const auto& t = P.coords;
    Fel ct = c_tilde(t);
    if (ct.is_zero()) throw OnBadLocus("ctilde = 0");
    auto C = closed_C_tilde(t);
    auto tau = tau_parametrize(C[0][0], C[0][1], C[1][1], tpt);
    auto Bt = closed_B_tilde(t);
    // Bhat = L^T Bt L with L = [[S/2, -Q/2, 0], [-Q/2, P/2, 0], [0, 0, -1]]
    const Fel &Pc = C[0][0], &Qc = C[0][1], &Sc = C[1][1];
    Fel half = Fel(Rat(1, 2));
    std::array<std::array<Fel, 3>, 3> L = {{{Sc * half, -Qc * half, Fel(0)},
                                            {-Qc * half, Pc * half, Fel(0)},
                                            {Fel(0), Fel(0), Fel(-1)}}};
    std::array<std::array<Fel, 3>, 3> Bh{};
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            Fel s(0);
            for (int r = 0; r < 3; ++r)
                for (int s2 = 0; s2 < 3; ++s2) s += L[r][p] * Bt[r][s2] * L[s2][q];
            Bh[p][q] = s;
        }
    Fel ct2 = ct * ct;
    for (int sgn : {1, -1}) {
        Fel bp = Fel(2 * sgn) * tpt[2];
        BinaryForm f = tau[0] * bp.inverse();
        BinaryForm g(4);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) g += Bh[p][q] * (tau[p] * tau[q]);
        g = g * (ct2 * bp * bp).inverse();
        FormPair out{f, g};
        if (invariants3_appendix(out) == t) return out;
    }
    throw PreconditionViolated("tilde reconstruction postcondition");
}

namespace detail {

// A point with z != 0 on a rank-3 conic that has some rational point:
// reparametrize through the found point if necessary.
inline std::array<Rat, 3> point_with_nonzero_coord(const Conic& C, const std::array<Int, 3>& pt, int coord) {
    if (pt[coord] != 0) return {Rat(pt[0]), Rat(pt[1]), Rat(pt[2])};
    auto theta = parametrize(C, {Rat(pt[0]), Rat(pt[1]), Rat(pt[2])});
    for (long x0 = 0; x0 <= 8; ++x0)
        for (long x1 = -8; x1 <= 8; ++x1) {
            if (x0 == 0 && x1 == 0) continue;
            Fel a{Rat(x0)}, b{Rat(x1)};
            std::array<Rat, 3> cand;
            bool zero = true;
            for (int i = 0; i < 3; ++i) {
                cand[i] = theta[i].eval(a, b).to_rational();
                zero = zero && cand[i] == 0;
            }
            if (!zero && cand[coord] != 0) return cand;
        }
    throw PreconditionViolated("no point with nonzero coordinate found");  // not reachable: rank 3
}

inline ModuliPoint3 rescale_even(const ModuliPoint3& P, const Fel& alpha2) {
    // act by alpha with alpha^2 = alpha2; only even-weight coordinates may
    // be nonzero here (j = a = 0)
    const auto& t = P.coords;
    if (!t.j.is_zero() || !t.a.is_zero()) throw PreconditionViolated("odd-weight coordinate nonzero");
    InvariantTuple3 s;
    s.d = alpha2 * t.d;
    s.i = alpha2 * t.i;
    s.j = Fel(0);
    s.a = Fel(0);
    s.b = alpha2 * alpha2 * t.b;
    s.c = alpha2.pow(3) * t.c;
    return ModuliPoint3{s};
}

}  // namespace detail

// Ad hoc constructions on the automorphism strata (and the C2^(1) conic of
// the Groebner proposition). `stratum` must come from classify_aut.
inline DescentResult reconstruct3_special(const ModuliPoint3& P, Stratum stratum, unsigned long height_bound = 10000) {
    const auto& t = P.coords;
    DescentResult res;
    res.stratum = stratum;
    res.model_field = FieldDesc::rationals();
    auto finish_model = [&](const FormPair& fp, const FieldDesc& fd) {
        ModuliPoint3 Q{invariants3_appendix(fp)};
        if (!wp_equal(Q, P)) throw PreconditionViolated("special-locus model postcondition");
        res.outcome = DescentResult::Outcome::Model;
        res.model = fp;
        res.model_field = fd;
    };
    auto F = [](long v) { return Fel(Rat(v)); };
    switch (stratum) {
        case Stratum::C2_2: {
            // coordinates have a = j = 0; ctilde != 0 on this stratum forces d != 0.
            Fel ct = c_tilde(t);
            if (ct.is_zero()) throw UnhandledLocus("C2_2 with ctilde = 0");
            Fel lam = t.d;
            ModuliPoint3 Pn = detail::rescale_even(P, F(-2) * t.d);  // d-coordinate becomes -2 lam^2
            if (!t.c.is_zero()) {
                FormPair fp = reconstruct3_tilde(Pn, {Fel(0), Fel(1), lam});
                finish_model(fp, FieldDesc::rationals());
                return res;
            }
            // c = 0: direct model f = -2 lam X0 X1,
            // g = lam^-3 (d i/3 + b) X0^3 X1 + 2 lam X0 X1^3 (rescaled coords)
            const auto& s = Pn.coords;
            Fel S = Fel(Rat(1, 3)) * s.d * s.i + s.b;
            BinaryForm f(2, {Fel(0), F(-2) * lam, Fel(0)});
            BinaryForm g(4, {Fel(0), S * lam.pow(-3), Fel(0), F(2) * lam, Fel(0)});
            finish_model(FormPair{f, g}, FieldDesc::rationals());
            return res;
        }
        case Stratum::C3: {
            // d = i = b = 0; a != 0 (else A4); 2c^2 = -j a^3/3
            if (t.j.is_zero()) {
                finish_model(FormPair{BinaryForm(2, {F(1), F(0), F(0)}), BinaryForm(4, {F(0), F(0), F(0), F(0), F(1)})},
                             FieldDesc::rationals());
                return res;
            }
            const Fel &j = t.j, &a = t.a, &c = t.c;
            if (c.is_zero()) throw UnhandledLocus("C3 with j != 0 but c = 0");
            Fel c2 = c * c;
            BinaryForm f(2, {-j * j * a * a / (F(9) * c), F(-2) * j * a * a / (F(3) * c), -a * a / c});
            BinaryForm g(4, {(F(2) * j.pow(4) * a.pow(4) + F(9) * j * j * a.pow(3)) / (F(81) * c2),
                             F(2) * j.pow(3) * a.pow(3) / (F(9) * c2), F(2) * j * j * a.pow(3) / (F(3) * c2),
                             F(2) * j * a.pow(3) / (F(3) * c2), Fel(0)});
            finish_model(FormPair{f, g}, FieldDesc::rationals());
            return res;
        }
        case Stratum::D4_2: {
            // d = a = b = c = 0, i != 0, j != 0
            Fel i3 = t.i.pow(3), j2 = t.j * t.j;
            BinaryForm f(2);
            BinaryForm g(4, {F(-27) * i3, F(-27) * i3, Fel(0), F(24) * j2, Fel(0)});
            finish_model(FormPair{f, g}, FieldDesc::rationals());
            return res;
        }
        case Stratum::D8: {
            finish_model(FormPair{BinaryForm(2), BinaryForm(4, {F(1), F(0), F(0), F(0), F(1)})},
                         FieldDesc::rationals());
            return res;
        }
        case Stratum::A4: {
            // model over Q(sqrt(-3)); the obstruction class contains
            // X^2 + 3Y^2 - 2Z^2 = 0
            Fel zero3(Rat(0), Rat(0), -3), one3(Rat(1), Rat(0), -3);
            Fel two_s3(Rat(0), Rat(2), -3);
            BinaryForm f(2, {zero3, zero3, zero3});
            BinaryForm g(4, {one3, zero3, two_s3, zero3, one3});
            ModuliPoint3 Q{invariants3_appendix(FormPair{f, g})};
            if (!wp_equal(Q, P)) throw PreconditionViolated("A4 model postcondition");
            res.outcome = DescentResult::Outcome::NeedsExtension;
            res.model = FormPair{f, g};
            res.model_field = FieldDesc::quad_ext(-3);
            res.conic = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(3), Rat(0), Rat(-2));
            return res;
        }
        case Stratum::C2_1:
        case Stratum::D4_1: {
            // Prop (Groebner) part 1: d != 0 here. Conic
            // 9d^3 X^2 + 8d^2 Y^2 - 24da YZ + (-36d^2 i + 72a^2) Z^2 = 0.
            Rat d = detail::fel_to_rat(t.d, "point"), i = detail::fel_to_rat(t.i, "point"),
                a = detail::fel_to_rat(t.a, "point");
            if (d == 0) throw UnhandledLocus("C2_1 with d = 0");
            Conic con = Conic::from_entries(9 * d * d * d, Rat(0), Rat(0), 8 * d * d, -12 * d * a,
                                            -36 * d * d * i + 72 * a * a);
            auto sr = has_rational_point(con, height_bound);
            if (sr.outcome == PointSearchResult::Outcome::Impossible) {
                res.outcome = DescentResult::Outcome::Obstruction;
                res.conic = con;
                res.certificate = sr.certificate;
                return res;
            }
            if (sr.outcome == PointSearchResult::Outcome::Exhausted) {
                res.outcome = DescentResult::Outcome::SearchExhausted;
                res.conic = con;
                res.bound = sr.bound;
                return res;
            }
            auto xyz = detail::point_with_nonzero_coord(con, sr.point, 2);
            Fel c5(Rat(xyz[0] / xyz[2])), c6(Rat(xyz[1] / xyz[2]));
            Fel c3(d / 2);
            Fel c4 = Fel(2 * a / (d * d)) - c6 * Fel(Rat(1, 3)) / Fel(d);
            BinaryForm f(2, {F(1), F(0), c3});
            BinaryForm g(4, {c4, c5, c6, -c3 * c5, c3 * c3 * c4});
            finish_model(FormPair{f, g}, FieldDesc::rationals());
            return res;
        }
        case Stratum::Trivial:
            throw PreconditionViolated("reconstruct3_special on the trivial stratum");
    }
    throw UnhandledLocus("unreachable");
}

// End-to-end descent of a valid moduli point: route by stratum, with the
// covariants method (c != 0), the tilde method (c = 0 != ctilde), or the
// ad hoc special-locus constructions. Model outcomes are wp-verified.
inline DescentResult descend3(const ModuliPoint3& P, unsigned long height_bound = 10000) {
    if (validate3(P) != Validity3::ok) throw PreconditionViolated("descend3 needs a valid moduli point");
    (void)detail::rational_coords(P);  // conic decisions are over Q only
    Stratum st = classify_aut(P);
    DescentResult res;
    res.stratum = st;
    if (st != Stratum::Trivial) {
        res = reconstruct3_special(P, st, height_bound);
        res.stratum = st;
        return res;
    }
    if (!P.coords.c.is_zero()) {
        Conic CP = conic_CP(P);
        auto sr = has_rational_point(CP, height_bound);
        if (sr.outcome == PointSearchResult::Outcome::Impossible) {
            res.outcome = DescentResult::Outcome::Obstruction;
            res.conic = CP;
            res.certificate = sr.certificate;
            return res;
        }
        if (sr.outcome == PointSearchResult::Outcome::Exhausted) {
            res.outcome = DescentResult::Outcome::SearchExhausted;
            res.conic = CP;
            res.bound = sr.bound;
            return res;
        }
        FormPair fp = reconstruct3_generic(P, {Rat(sr.point[0]), Rat(sr.point[1]), Rat(sr.point[2])});
        res.outcome = DescentResult::Outcome::Model;
        res.model = fp;
        res.model_field = FieldDesc::rationals();
        return res;
    }
    // c = 0, trivial stratum implies ctilde != 0
    Conic DP = conic_DP_tilde(P);
    auto sr = has_rational_point(DP, height_bound);
    if (sr.outcome == PointSearchResult::Outcome::Impossible) {
        res.outcome = DescentResult::Outcome::Obstruction;
        res.conic = conic_CP_tilde(P);
        res.certificate = sr.certificate;
        return res;
    }
    if (sr.outcome == PointSearchResult::Outcome::Exhausted) {
        res.outcome = DescentResult::Outcome::SearchExhausted;
        res.conic = DP;
        res.bound = sr.bound;
        return res;
    }
    auto tpt = detail::point_with_nonzero_coord(DP, sr.point, 2);
    FormPair fp = reconstruct3_tilde(P, {Fel(tpt[0]), Fel(tpt[1]), Fel(tpt[2])});
    ModuliPoint3 Q{invariants3_appendix(fp)};
    if (!wp_equal(Q, P)) throw PreconditionViolated("tilde descent postcondition");
    res.outcome = DescentResult::Outcome::Model;
    res.model = fp;
    res.model_field = FieldDesc::rationals();
    return res;
}

// Degree-2 reconstruction from [s1:s2:s3:r], r != 0, and a choice of
// SL2(k) frame W (rows are the linear forms W0, W1):
// f = b0 W0 - b1 W1, g = (9/2r) sum (-1)^(i+j+k) a_ijk W_[i+1] W_[j+1] W_[k+1]
// with indices mod 2.
inline FormPair reconstruct2(const ModuliPoint2& P, const std::array<std::array<Fel, 2>, 2>& W) {
    const auto& t = P.coords;
    if (t.r.is_zero()) throw AutomorphismLocus("r = 0: nontrivial automorphism group");
    if (det2(W) != Fel(1)) throw PreconditionViolated("W must have determinant 1");
    ReconstructionData2 rd = reconstruction_data2(t);
    BinaryForm W0(1, {W[0][0], W[0][1]}), W1(1, {W[1][0], W[1][1]});
    std::array<BinaryForm, 2> Wf = {W0, W1};
    BinaryForm f = rd.b0 * W0 - rd.b1 * W1;
    auto aval = [&](int i, int j, int k) {
        int s = i + j + k;
        if (s == 0) return rd.a000;
        if (s == 1) return rd.a100;
        if (s == 2) return rd.a110;
        return rd.a111;
    };
    BinaryForm g(3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Fel sgn = ((i + j + k) % 2) ? Fel(-1) : Fel(1);
                g += sgn * aval(i, j, k) * (Wf[(i + 1) % 2] * Wf[(j + 1) % 2] * Wf[(k + 1) % 2]);
            }
    // det[V0, V1] = -r in the orientation fixed by R = r, so a frame with
    // det W = +1 picks up alpha^2 = -1/r and the g-side changes sign.
    g = g * (Fel(Rat(-9, 2)) / t.r);
    FormPair out{f, g};
    ModuliPoint2 Q{invariants2(out)};
    if (!wp_equal(Q, P)) throw PreconditionViolated("reconstruct2 postcondition");
    return out;
}

}  // namespace ratmod
