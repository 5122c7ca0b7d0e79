#pragma once

#include <map>
#include <string>
#include <vector>

#include "ratmod/field.hpp"

namespace ratmod {

// Sparse multivariate polynomial over a declared, ordered variable list.
// Exponent vectors are dense with fixed arity; zero coefficients are never
// stored. The variable families in use are X0, X1, Y0, Y1 and the omega
// process copies Z0_p, Z1_p.
class MultiPoly {
  public:
    using Exp = std::vector<unsigned>;

    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, Fel>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int var_index(const std::string& name) const {
        for (size_t k = 0; k < vars_.size(); ++k)
            if (vars_[k] == name) return static_cast<int>(k);
        return -1;
    }

    void add_term(const Exp& e, const Fel& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) {
        MultiPoly r = p;
        for (const auto& [e, c] : q.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) {
        MultiPoly r = p;
        for (const auto& [e, c] : q.terms_) r.add_term(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
        MultiPoly r(p.vars_);
        Exp e(p.vars_.size());
        for (const auto& [e1, c1] : p.terms_)
            for (const auto& [e2, c2] : q.terms_) {
                for (size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly operator*(const Fel& s) const {
        MultiPoly r(vars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    MultiPoly diff(int var) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exp e2 = e;
            e2[var] -= 1;
            r.add_term(e2, c * Fel(static_cast<long>(e[var])));
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  private:
    std::vector<std::string> vars_;
    std::map<Exp, Fel> terms_;
};

// Omega_ab = d^2/dZ0_a dZ1_b - d^2/dZ0_b dZ1_a.
inline MultiPoly omega(const MultiPoly& p, int a, int b) {
    int z0a = p.var_index("Z0_" + std::to_string(a));
    int z1a = p.var_index("Z1_" + std::to_string(a));
    int z0b = p.var_index("Z0_" + std::to_string(b));
    int z1b = p.var_index("Z1_" + std::to_string(b));
    if (z0a < 0 || z1a < 0 || z0b < 0 || z1b < 0)
        throw UnknownVariablePair("Z^(" + std::to_string(a) + "), Z^(" + std::to_string(b) + ")");
    return p.diff(z0a).diff(z1b) - p.diff(z0b).diff(z1a);
}

}  // namespace ratmod
