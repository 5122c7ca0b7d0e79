#pragma once

#include <array>
#include <vector>

#include "ratmod/multipoly.hpp"

namespace ratmod {

// Homogeneous form of a given order in X0, X1; coeffs[i] is the coefficient
// of X0^(n-i) X1^i. The zero form of any order is allowed.
class BinaryForm {
  public:
    BinaryForm() : coeffs_(1, Fel(0)) {}
    explicit BinaryForm(int order) : coeffs_(order + 1, Fel(0)) {
        if (order < 0) throw PreconditionViolated("negative order");
    }
    BinaryForm(int order, std::vector<Fel> coeffs) : coeffs_(std::move(coeffs)) {
        if (static_cast<int>(coeffs_.size()) != order + 1)
            throw PreconditionViolated("coefficient count != order + 1");
    }
    static BinaryForm from_coeffs(std::vector<Fel> coeffs) {
        int n = static_cast<int>(coeffs.size()) - 1;
        return BinaryForm(n, std::move(coeffs));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Fel& operator[](int i) const { return coeffs_[i]; }
    Fel& operator[](int i) { return coeffs_[i]; }
    const std::vector<Fel>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend BinaryForm operator+(const BinaryForm& f, const BinaryForm& g) {
        if (f.order() != g.order()) throw OrderMismatch("form addition");
        BinaryForm r(f.order());
        for (int i = 0; i <= f.order(); ++i) r[i] = f[i] + g[i];
        return r;
    }
    friend BinaryForm operator-(const BinaryForm& f, const BinaryForm& g) {
        if (f.order() != g.order()) throw OrderMismatch("form subtraction");
        BinaryForm r(f.order());
        for (int i = 0; i <= f.order(); ++i) r[i] = f[i] - g[i];
        return r;
    }
    friend BinaryForm operator*(const BinaryForm& f, const Fel& s) {
        BinaryForm r(f.order());
        for (int i = 0; i <= f.order(); ++i) r[i] = f[i] * s;
        return r;
    }
    friend BinaryForm operator*(const Fel& s, const BinaryForm& f) { return f * s; }
    friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
        BinaryForm r(f.order() + g.order());
        for (int i = 0; i <= f.order(); ++i)
            for (int j = 0; j <= g.order(); ++j) r[i + j] += f[i] * g[j];
        return r;
    }
    BinaryForm& operator+=(const BinaryForm& g) { return *this = *this + g; }

    BinaryForm pow(int e) const {
        BinaryForm r(0, {Fel(1)});
        for (int k = 0; k < e; ++k) r = r * (*this);
        return r;
    }

    bool operator==(const BinaryForm& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const BinaryForm& o) const { return !(*this == o); }

    Fel eval(const Fel& x0, const Fel& x1) const {
        // Horner in two stages to stay exact and simple
        Fel r(0);
        for (int i = 0; i <= order(); ++i) r += coeffs_[i] * x0.pow(order() - i) * x1.pow(i);
        return r;
    }

    BinaryForm dX0() const {
        int n = order();
        if (n == 0) return BinaryForm(0);
        BinaryForm r(n - 1);
        for (int i = 0; i < n; ++i) r[i] = coeffs_[i] * Fel(static_cast<long>(n - i));
        return r;
    }
    BinaryForm dX1() const {
        int n = order();
        if (n == 0) return BinaryForm(0);
        BinaryForm r(n - 1);
        for (int i = 1; i <= n; ++i) r[i - 1] = coeffs_[i] * Fel(static_cast<long>(i));
        return r;
    }

    // F(p X0 + q X1, r X0 + s X1); same order, M need not be invertible.
    BinaryForm substitute(const std::array<std::array<Fel, 2>, 2>& M) const {
        int n = order();
        BinaryForm l(1, {M[0][0], M[0][1]});  // p X0 + q X1
        BinaryForm m(1, {M[1][0], M[1][1]});  // r X0 + s X1
        BinaryForm r(n);
        std::vector<BinaryForm> lp(n + 1, BinaryForm(0, {Fel(1)})), mp = lp;
        for (int k = 1; k <= n; ++k) {
            lp[k] = lp[k - 1] * l;
            mp[k] = mp[k - 1] * m;
        }
        for (int i = 0; i <= n; ++i) {
            if (coeffs_[i].is_zero()) continue;
            r += coeffs_[i] * (lp[n - i] * mp[i]);
        }
        return r;
    }

    // As a MultiPoly in the copy variables Z0_p, Z1_p of a host polynomial ring.
    MultiPoly to_copy(const std::vector<std::string>& vars, int p) const;

  private:
    std::vector<Fel> coeffs_;
};

inline MultiPoly BinaryForm::to_copy(const std::vector<std::string>& vars, int p) const {
        MultiPoly r(vars);
        int z0 = r.var_index("Z0_" + std::to_string(p));
        int z1 = r.var_index("Z1_" + std::to_string(p));
        if (z0 < 0 || z1 < 0) throw UnknownVariablePair("Z^(" + std::to_string(p) + ")");
        int n = order();
        MultiPoly::Exp e(vars.size(), 0);
        for (int i = 0; i <= n; ++i) {
            if (coeffs_[i].is_zero()) continue;
            e[z0] = n - i;
            e[z1] = i;
            r.add_term(e, coeffs_[i]);
        }
        return r;
}

inline Fel factorial_fel(int n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Fel(Rat(f));
}

namespace detail {
// Identify every copy pair Z^(l) with (X0, X1) and read off a binary form.
inline BinaryForm identify_copies(const MultiPoly& p, int m, int out_order) {
    BinaryForm r(out_order);
    const auto& vars = p.vars();
    std::vector<int> z0(m), z1(m);
    for (int l = 0; l < m; ++l) {
        z0[l] = p.var_index("Z0_" + std::to_string(l + 1));
        z1[l] = p.var_index("Z1_" + std::to_string(l + 1));
    }
    for (const auto& [e, c] : p.terms()) {
        unsigned d0 = 0, d1 = 0;
        for (size_t k = 0; k < vars.size(); ++k) {
            bool is_z0 = false, is_z1 = false;
            for (int l = 0; l < m; ++l) {
                if (static_cast<int>(k) == z0[l]) is_z0 = true;
                if (static_cast<int>(k) == z1[l]) is_z1 = true;
            }
            if (is_z0) d0 += e[k];
            if (is_z1) d1 += e[k];
        }
        if (static_cast<int>(d0 + d1) != out_order) throw PreconditionViolated("inhomogeneous omega result");
        r[d1] += c;
    }
    return r;
}

inline std::vector<std::string> copy_vars(int m) {
    std::vector<std::string> v;
    for (int l = 1; l <= m; ++l) {
        v.push_back("Z0_" + std::to_string(l));
        v.push_back("Z1_" + std::to_string(l));
    }
    return v;
}
}  // namespace detail

// r-th transvectant (überschiebung) with the factorial normalization
// (m-r)!(n-r)!/(m! n!).
inline BinaryForm transvect(const BinaryForm& F, const BinaryForm& G, int r) {
    int m = F.order(), n = G.order();
    if (r > m || r > n) throw IndexTooLarge("transvectant index " + std::to_string(r));
    auto vars = detail::copy_vars(2);
    MultiPoly P = F.to_copy(vars, 1) * G.to_copy(vars, 2);
    for (int k = 0; k < r; ++k) P = omega(P, 1, 2);
    BinaryForm out = detail::identify_copies(P, 2, m + n - 2 * r);
    Fel pref = factorial_fel(m - r) * factorial_fel(n - r) / (factorial_fel(m) * factorial_fel(n));
    return out * pref;
}

struct TransvectantPair {
    int p, q, r;  // 1-based form indices and the power of Omega_pq
};

// Generalized transvectant of the forms G_1..G_m for a sequence of pairs,
// with prefactor prod (s_l - kappa_l)!/s_l!.
inline BinaryForm gen_transvect(const std::vector<BinaryForm>& forms, const std::vector<TransvectantPair>& pairs) {
    int m = static_cast<int>(forms.size());
    std::vector<int> kappa(m + 1, 0);
    int total_r = 0;
    for (const auto& pr : pairs) {
        if (pr.p < 1 || pr.p > m || pr.q < 1 || pr.q > m || pr.p == pr.q)
            throw PreconditionViolated("bad pair indices");
        kappa[pr.p] += pr.r;
        kappa[pr.q] += pr.r;
        total_r += pr.r;
    }
    int out_order = 0;
    for (int l = 1; l <= m; ++l) {
        if (kappa[l] > forms[l - 1].order())
            throw IndexTooLarge("kappa_" + std::to_string(l) + " exceeds form order");
        out_order += forms[l - 1].order();
    }
    out_order -= 2 * total_r;
    auto vars = detail::copy_vars(m);
    MultiPoly P(vars);
    {
        MultiPoly::Exp e(vars.size(), 0);
        P.add_term(e, Fel(1));
    }
    for (int l = 1; l <= m; ++l) P = P * forms[l - 1].to_copy(vars, l);
    for (const auto& pr : pairs)
        for (int k = 0; k < pr.r; ++k) P = omega(P, pr.p, pr.q);
    BinaryForm out = detail::identify_copies(P, m, out_order);
    Fel pref(1);
    for (int l = 1; l <= m; ++l)
        pref *= factorial_fel(forms[l - 1].order() - kappa[l]) / factorial_fel(forms[l - 1].order());
    return out * pref;
}

// Invariant as scalar: order-0 transvectant output.
inline Fel as_scalar(const BinaryForm& f) {
    if (f.order() != 0) throw OrderMismatch("expected an invariant (order 0)");
    return f[0];
}

}  // namespace ratmod
