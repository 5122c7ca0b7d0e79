#pragma once

#include <array>

#include "ratmod/rational_map.hpp"

namespace ratmod {

// Basic invariants of a linear/cubic pair (f, g), i.e. of a quadratic map:
// degrees 4, 4, 4, 6.
struct InvariantTuple2 {
    Fel s1, s2, s3, r;

    std::array<Fel, 4> as_array() const { return {s1, s2, s3, r}; }
    static InvariantTuple2 from_array(const std::array<Fel, 4>& v) { return {v[0], v[1], v[2], v[3]}; }
    bool operator==(const InvariantTuple2& o) const {
        return s1 == o.s1 && s2 == o.s2 && s3 == o.s3 && r == o.r;
    }
};

struct SigmaPair {
    Fel sigma1, sigma2;
};

inline void require_orders_13(const FormPair& p) {
    if (p.f.order() != 1 || p.g.order() != 3) throw OrderMismatch("need orders (1,3)");
}

// Table-5 covariants of the pair. t is the order-3 covariant (g,H)1.
struct CovariantSystem2 {
    BinaryForm H, t, V0, V1;
    Fel s1, s2, s3, R, b0, b1, r;
};

inline CovariantSystem2 covariants2(const FormPair& p) {
    require_orders_13(p);
    CovariantSystem2 s;
    s.H = transvect(p.g, p.g, 2);
    s.t = transvect(p.g, s.H, 1);
    BinaryForm f2 = p.f * p.f, f3 = f2 * p.f;
    s.s1 = as_scalar(transvect(p.g, f3, 3));
    s.s2 = as_scalar(transvect(s.H, f2, 2));
    s.s3 = as_scalar(transvect(s.t, p.g, 3));
    s.R = as_scalar(transvect(s.t, f3, 3));
    s.V0 = transvect(s.H, p.f, 1);
    s.V1 = transvect(p.g, f2, 2);
    s.b0 = as_scalar(transvect(s.V1, p.f, 1));
    s.b1 = as_scalar(transvect(s.V0, p.f, 1));
    // degree-6 invariant; (V1,V0)_1 = det[V1,V0] realizes it and R = r holds
    s.r = as_scalar(transvect(s.V1, s.V0, 1));
    return s;
}

inline InvariantTuple2 invariants2(const FormPair& p) {
    CovariantSystem2 s = covariants2(p);
    if (s.r != s.R) throw PreconditionViolated("R != r");  // identity; cannot happen
    return {s.s1, s.s2, s.s3, s.r};
}

// a_ijk as generalized transvectants (symmetric in ijk). These equal
// (9/2) times the closed forms used by reconstruction_data2.
inline Fel a_ijk_transvectant(const FormPair& p, int i, int j, int k) {
    CovariantSystem2 s = covariants2(p);
    std::array<BinaryForm, 2> V = {s.V0, s.V1};
    return as_scalar(gen_transvect({p.g, V[i], V[j], V[k]}, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}}));
}

// Inverse of the linear bridge s = L (tau1, tau2, rho):
//   s1 = 5 tau1 + 2 tau2 + 6 rho
//   s2 = (2/3) tau1 + (2/3) tau2 - 4 rho
//   s3 = (-4/27) tau1 + (2/27) tau2 + (2/9) rho
// det L = 4; the exact inverse is hard-coded.
inline std::pair<SigmaPair, Fel> sigma_from_s(const InvariantTuple2& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    Fel tau1 = q(1, 9) * t.s1 - Fel(3) * t.s3;
    Fel tau2 = q(1, 9) * t.s1 + q(1, 2) * t.s2 + Fel(6) * t.s3;
    Fel rho = q(1, 27) * t.s1 - q(1, 6) * t.s2 + q(1, 2) * t.s3;
    if (rho.is_zero()) throw DegenerateLocus("rho = 0 (boundary of M2)");
    return {SigmaPair{tau1 / rho, tau2 / rho}, rho};
}

// The degree-2 reconstruction data: printed closed forms for a_ijk
// (a100 = 0) and the b_i, which coincide with s1, s2.
struct ReconstructionData2 {
    Fel a000, a100, a110, a111;
    Fel b0, b1;
};

inline ReconstructionData2 reconstruction_data2(const InvariantTuple2& t) {
    auto q = [](long n, long d) { return Fel(Rat(n, d)); };
    ReconstructionData2 r;
    r.a000 = q(1, 9) * t.s3 * t.r;
    r.a100 = Fel(0);
    r.a110 = q(-1, 9) * t.s2 * t.r;
    r.a111 = q(-2, 9) * t.s1 * t.r;
    r.b0 = t.s1;
    r.b1 = t.s2;
    return r;
}

// Single relation among the four basic invariants.
inline bool check_relation2(const InvariantTuple2& t) {
    return t.r * t.r - Fel(Rat(1, 2)) * t.s1 * t.s1 * t.s3 + Fel(Rat(1, 2)) * t.s2.pow(3) == Fel(0);
}

}  // namespace ratmod
