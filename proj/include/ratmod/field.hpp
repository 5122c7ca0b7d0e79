#pragma once

#include <optional>
#include <string>

#include "ratmod/rational.hpp"

namespace ratmod {

// Base field of a computation: Q, or a quadratic extension Q(sqrt(D)) with
// D a squarefree integer, D != 0, 1 (D = -1 gives the Gaussian field).
struct FieldDesc {
    enum class Kind { Rationals, QuadExt };
    Kind kind = Kind::Rationals;
    long long D = 0;

    static FieldDesc rationals() { return {}; }
    static FieldDesc quad_ext(long long D) {
        if (D == 0 || D == 1) throw PreconditionViolated("D must be a squarefree integer != 0, 1");
        Int n(static_cast<long>(D < 0 ? -D : D));
        // squarefree check by trial division (D values here are small)
        for (Int p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) throw PreconditionViolated("D must be squarefree");
        return {Kind::QuadExt, D};
    }

    bool is_rationals() const { return kind == Kind::Rationals; }
    bool operator==(const FieldDesc& o) const { return kind == o.kind && (is_rationals() || D == o.D); }
    bool operator!=(const FieldDesc& o) const { return !(*this == o); }
};

// Exact scalar a + b*sqrt(D). Over Q the b-part is identically zero.
// Rationals embed in any Q(sqrt(D)), so mixed arithmetic with a plain
// rational promotes; two distinct extensions do not mix.
class Fel {
  public:
    Fel() : a_(0), b_(0), D_(0) {}
    Fel(const Rat& a) : a_(a), b_(0), D_(0) { a_.canonicalize(); }
    Fel(const Int& a) : a_(Rat(a)), b_(0), D_(0) {}
    Fel(long a) : a_(a), b_(0), D_(0) {}
    Fel(int a) : a_(a), b_(0), D_(0) {}
    Fel(const Rat& a, const Rat& b, long long D) : a_(a), b_(b), D_(D) {
        if (D_ == 0 && b_ != 0) throw PreconditionViolated("sqrt part over Q");
        normalize();
    }

    static Fel sqrt_gen(long long D) { return Fel(Rat(0), Rat(1), D); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    long long D() const { return D_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    FieldDesc field() const {
        return D_ == 0 ? FieldDesc::rationals() : FieldDesc{FieldDesc::Kind::QuadExt, D_};
    }

    friend Fel operator+(const Fel& x, const Fel& y) {
        long long D = unify(x, y);
        return Fel(x.a_ + y.a_, x.b_ + y.b_, D);
    }
    friend Fel operator-(const Fel& x, const Fel& y) {
        long long D = unify(x, y);
        return Fel(x.a_ - y.a_, x.b_ - y.b_, D);
    }
    friend Fel operator-(const Fel& x) { return Fel(-x.a_, -x.b_, x.D_); }
    friend Fel operator*(const Fel& x, const Fel& y) {
        long long D = unify(x, y);
        if (D == 0) return Fel(x.a_ * y.a_);
        Rat a = x.a_ * y.a_ + Rat(static_cast<long>(D)) * x.b_ * y.b_;
        Rat b = x.a_ * y.b_ + x.b_ * y.a_;
        return Fel(a, b, D);
    }
    friend Fel operator/(const Fel& x, const Fel& y) { return x * y.inverse(); }

    Fel& operator+=(const Fel& y) { return *this = *this + y; }
    Fel& operator-=(const Fel& y) { return *this = *this - y; }
    Fel& operator*=(const Fel& y) { return *this = *this * y; }
    Fel& operator/=(const Fel& y) { return *this = *this / y; }

    bool operator==(const Fel& o) const {
        if (is_rational() && o.is_rational()) return a_ == o.a_;
        if (!is_rational() && !o.is_rational() && D_ != o.D_) return false;
        return a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const Fel& o) const { return !(*this == o); }

    Fel conjugate() const { return Fel(a_, -b_, D_); }

    // a^2 - D b^2; nonzero for nonzero elements since D is squarefree.
    Rat norm() const {
        Rat n = a_ * a_;
        if (b_ != 0) n -= Rat(static_cast<long>(D_)) * b_ * b_;
        return n;
    }

    Fel inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        if (is_rational()) return Fel(Rat(den(a_), num(a_)), Rat(0), D_);
        Rat n = norm();
        return Fel(a_ / n, -b_ / n, D_);
    }

    Fel pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Fel r(1), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // Rational value; errors if the sqrt part is present.
    Rat to_rational() const {
        if (!is_rational()) throw PreconditionViolated("element not rational");
        return a_;
    }

    // Square root within the same field, when one exists.
    // Over Q: plain rational square root. Over Q(sqrt(D)): try both the
    // rational and the b*sqrt(D) shapes for elements with b = 0; for general
    // elements solve (x + y*sqrt(D))^2 = a + b*sqrt(D) exactly.
    std::optional<Fel> sqrt_in_field() const {
        if (is_zero()) return Fel(Rat(0), Rat(0), D_);
        if (is_rational()) {
            if (auto r = rational_square_root(a_)) return Fel(*r, Rat(0), D_);
            if (D_ != 0) {
                // a = D * y^2 => sqrt = y sqrt(D)
                if (auto y = rational_square_root(a_ / Rat(static_cast<long>(D_))))
                    return Fel(Rat(0), *y, D_);
            }
            return std::nullopt;
        }
        // x^2 + D y^2 = a, 2xy = b  =>  x^2 solves t^2 - a t + D b^2/4 = 0
        Rat disc = a_ * a_ - Rat(static_cast<long>(D_)) * b_ * b_;
        auto sd = rational_square_root(disc);
        if (!sd) return std::nullopt;
        for (int s : {1, -1}) {
            Rat x2 = (a_ + Rat(s) * (*sd)) / 2;
            if (auto x = rational_square_root(x2)) {
                if (*x == 0) continue;
                Rat y = b_ / (2 * (*x));
                Fel cand(*x, y, D_);
                if (cand * cand == *this) return cand;
            }
        }
        return std::nullopt;
    }

    // keeps the declared field even when b = 0; equality handles the embedding
    void normalize() {
        a_.canonicalize();
        b_.canonicalize();
    }

    // "p/q" over Q; "p/q+r/s*sqrt(D)" over extensions.
    std::string to_string() const {
        if (is_rational() && D_ == 0) return rat_to_string(a_);
        std::string s = rat_to_string(a_);
        if (sign(b_) >= 0)
            s += "+" + rat_to_string(b_);
        else
            s += "-" + rat_to_string(-b_);
        s += "*sqrt(" + std::to_string(D_) + ")";
        return s;
    }

  private:
    static long long unify(const Fel& x, const Fel& y) {
        if (x.D_ == y.D_) return x.D_;
        if (x.D_ == 0) return y.D_;
        if (y.D_ == 0) return x.D_;
        throw FieldMismatch("Q(sqrt(" + std::to_string(x.D_) + ")) vs Q(sqrt(" + std::to_string(y.D_) + "))");
    }

    Rat a_, b_;
    long long D_;
};

inline Fel parse_fel(const std::string& s, const FieldDesc& field) {
    auto star = s.find("*sqrt(");
    if (star == std::string::npos) {
        Rat a = rat_from_string(s);
        return field.is_rationals() ? Fel(a) : Fel(a, Rat(0), field.D);
    }
    if (field.is_rationals()) throw ParseError("sqrt term in rational field: " + s);
    auto close = s.find(')', star);
    if (close == std::string::npos || close + 1 != s.size()) throw ParseError("bad element: " + s);
    long long D = std::stoll(s.substr(star + 6, close - star - 6));
    if (D != field.D) throw FieldMismatch("element sqrt(" + std::to_string(D) + ") in field sqrt(" + std::to_string(field.D) + ")");
    // split the b-part from the a-part at the last '+'/'-' not at position 0
    // and not part of the b-part itself
    std::string head = s.substr(0, star);
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' && head[i - 1] != '-') {
            split = i;
            break;
        }
    }
    Rat a(0), b;
    if (split == std::string::npos) {
        b = rat_from_string(head);
    } else {
        a = rat_from_string(head.substr(0, split));
        std::string bs = head.substr(split + 1);
        b = rat_from_string(bs);
        if (head[split] == '-') b = -b;
    }
    return Fel(a, b, D);
}

}  // namespace ratmod
