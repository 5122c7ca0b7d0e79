#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ratmod/binary_form.hpp"

namespace ratmod {

// ---------------------------------------------------------------------------
// integer number theory helpers
// ---------------------------------------------------------------------------

inline bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0; }

namespace detail {

inline Int pollard_rho(const Int& n) {
    // Brent's cycle variant; deterministic parameter sweep.
    for (long c = 1; c < 64; ++c) {
        Int x(2), y(2), d(1);
        auto step = [&](Int v) { return Int((v * v + c) % n); };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
    throw PreconditionViolated("factorization failed");  // not reachable for our sizes
}

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

inline std::map<Int, int> factorize(Int n) {
    std::map<Int, int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (n % p == 0) {
            out[Int(p)] += 1;
            n /= p;
        }
    }
    for (Int p = 17; p * p <= n && p < 100000; p += 2) {
        while (n % p == 0) {
            out[p] += 1;
            n /= p;
        }
    }
    detail::factor_into(n, out);
    return out;
}

// n = squarefree * square_part^2 (sign kept on the squarefree part)
inline std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n == 0) return {Int(0), Int(1)};
    Int sf = n < 0 ? Int(-1) : Int(1), sq = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e % 2) sf *= p;
        for (int k = 0; k < e / 2; ++k) sq *= p;
    }
    return {sf, sq};
}

// Legendre symbol (a | p) for odd prime p.
inline int legendre_symbol(const Int& a, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (r == 0) return 0;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

// Square root of a mod odd prime p (a must be a QR); Tonelli-Shanks.
inline Int sqrt_mod_p(const Int& a0, const Int& p) {
    Int a;
    mpz_mod(a.get_mpz_t(), a0.get_mpz_t(), p.get_mpz_t());
    if (a == 0) return Int(0);
    if (legendre_symbol(a, p) != 1) throw PreconditionViolated("not a quadratic residue");
    auto powm = [&](Int b, Int e) {
        Int r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (p % 4 == 3) return powm(a, (p + 1) / 4);
    Int q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (legendre_symbol(z, p) != -1) ++z;
    Int m(static_cast<long>(s)), c = powm(z, q), t = powm(a, q), r = powm(a, (q + 1) / 2);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (long k = 0; k < m.get_si() - i - 1; ++k) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

// Hilbert symbol (a, b)_2.
inline int hilbert_symbol_2(Int a, Int b) {
    auto v2 = [](Int& n) {
        int v = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++v;
        }
        return v;
    };
    int alpha = v2(a), beta = v2(b);
    auto eps = [](const Int& u) { return ((u - 1) / 2) % 2 != 0; };   // (u-1)/2 mod 2
    auto omg = [](const Int& u) { return ((u * u - 1) / 8) % 2 != 0; };  // (u^2-1)/8 mod 2
    bool e = (eps(a) && eps(b)) ^ (alpha % 2 != 0 && omg(b)) ^ (beta % 2 != 0 && omg(a));
    return e ? -1 : 1;
}

// Hilbert symbol (a, b)_p for odd prime p.
inline int hilbert_symbol_odd(Int a, Int b, const Int& p) {
    int alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    int r = 1;
    if (alpha % 2 && beta % 2 && (p % 4 == 3)) r = -r;
    if (beta % 2) r *= legendre_symbol(a, p);
    if (alpha % 2) r *= legendre_symbol(b, p);
    return r;
}

inline int hilbert_symbol(const Int& a, const Int& b, const Int& p) {
    if (a == 0 || b == 0) throw PreconditionViolated("hilbert symbol of zero");
    return p == 2 ? hilbert_symbol_2(a, b) : hilbert_symbol_odd(a, b, p);
}

// ---------------------------------------------------------------------------
// conics
// ---------------------------------------------------------------------------

using Mat3 = std::array<std::array<Rat, 3>, 3>;
using Vec3 = std::array<Rat, 3>;

// Ternary quadratic form x^T M x over Q, M symmetric.
struct Conic {
    Mat3 M;

    static Conic from_entries(const Rat& q11, const Rat& q12, const Rat& q13, const Rat& q22, const Rat& q23,
                              const Rat& q33) {
        return Conic{{{{q11, q12, q13}, {q12, q22, q23}, {q13, q23, q33}}}};
    }

    Rat eval(const Vec3& x) const {
        Rat s(0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += M[i][j] * x[i] * x[j];
        return s;
    }

    bool is_zero() const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (M[i][j] != 0) return false;
        return true;
    }

    Rat det() const {
        const Mat3& m = M;
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    int rank() const {
        Mat3 m = M;
        int rk = 0;
        for (int col = 0, row = 0; col < 3 && row < 3; ++col) {
            int piv = -1;
            for (int r = row; r < 3; ++r)
                if (m[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[piv], m[row]);
            for (int r = row + 1; r < 3; ++r) {
                if (m[r][col] == 0) continue;
                Rat f = m[r][col] / m[row][col];
                for (int k = 0; k < 3; ++k) m[r][k] -= f * m[row][k];
            }
            ++row;
            ++rk;
        }
        return rk;
    }
};

inline Mat3 mat3_identity() {
    Mat3 T{};
    for (int i = 0; i < 3; ++i) T[i][i] = 1;
    return T;
}

inline Vec3 mat3_apply(const Mat3& T, const Vec3& x) {
    Vec3 y{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += T[i][j] * x[j];
    return y;
}

inline Mat3 mat3_mul(const Mat3& A, const Mat3& B) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) C[i][j] += A[i][k] * B[k][j];
    return C;
}

// Exact rational congruence: returns (diag, T) with T invertible and
// T^T M T = diag(diag). Symmetric Gaussian elimination with pivot search;
// zero rows give zero diagonal entries.
inline std::pair<Vec3, Mat3> diagonalize(const Conic& C) {
    Mat3 m = C.M;
    Mat3 T = mat3_identity();
    auto congr_colop = [&](int dst, int src, const Rat& f) {
        // col_dst += f * col_src, and the same row op (congruence)
        for (int k = 0; k < 3; ++k) m[k][dst] += f * m[k][src];
        for (int k = 0; k < 3; ++k) m[dst][k] += f * m[src][k];
        for (int k = 0; k < 3; ++k) T[k][dst] += f * T[k][src];
    };
    auto congr_swap = [&](int i, int j) {
        for (int k = 0; k < 3; ++k) std::swap(m[k][i], m[k][j]);
        for (int k = 0; k < 3; ++k) std::swap(m[i][k], m[j][k]);
        for (int k = 0; k < 3; ++k) std::swap(T[k][i], T[k][j]);
    };
    for (int k = 0; k < 3; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < 3; ++r)
                if (m[r][r] != 0) {
                    piv = r;
                    break;
                }
            if (piv >= 0) {
                congr_swap(k, piv);
            } else {
                int ro = -1, co = -1;
                for (int r = k; r < 3 && ro < 0; ++r)
                    for (int s = r + 1; s < 3; ++s)
                        if (m[r][s] != 0) {
                            ro = r;
                            co = s;
                            break;
                        }
                if (ro < 0) break;      // remaining block is zero
                congr_colop(ro, co, 1); // makes m[ro][ro] = 2 m[ro][co] != 0
                if (ro != k) congr_swap(k, ro);
            }
        }
        if (m[k][k] == 0) continue;
        for (int r = k + 1; r < 3; ++r) {
            if (m[r][k] == 0) continue;
            congr_colop(r, k, -m[r][k] / m[k][k]);
        }
    }
    Vec3 d{m[0][0], m[1][1], m[2][2]};
    return {d, T};
}

struct PointCertificate {
    enum class Kind { RealDefinite, PAdic };
    Kind kind = Kind::RealDefinite;
    Int p = 0;             // the obstructing prime for PAdic
    Int hil_a = 0, hil_b = 0;  // Hilbert symbol arguments (-ac, -bc) with (hil_a, hil_b)_p = -1
};

struct PointSearchResult {
    enum class Outcome { Point, Impossible, Exhausted };
    Outcome outcome = Outcome::Exhausted;
    std::array<Int, 3> point{};  // primitive, satisfies x^T M x = 0
    PointCertificate certificate{};
    unsigned long bound = 0;
};

namespace detail {

inline std::array<Int, 3> make_primitive(std::array<Rat, 3> v) {
    Int L = 1;
    for (auto& q : v) {
        q.canonicalize();
        Int l;
        mpz_lcm(l.get_mpz_t(), L.get_mpz_t(), den(q).get_mpz_t());
        L = l;
    }
    std::array<Int, 3> w{};
    for (int i = 0; i < 3; ++i) w[i] = num(v[i]) * (L / den(v[i]));
    Int g = 0;
    for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : w) x /= g;
    for (const auto& x : w) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : w) y = -y;
            break;
        }
    }
    return w;
}

// Gauss-reduce the lattice basis {u, v} in Z^2 under the positive definite
// norm N(x, y) = A x^2 + B y^2 (A, B > 0).
inline void gauss_reduce(std::array<Int, 2>& u, std::array<Int, 2>& v, const Int& A, const Int& B) {
    auto norm = [&](const std::array<Int, 2>& w) -> Int { return A * w[0] * w[0] + B * w[1] * w[1]; };
    auto dot = [&](const std::array<Int, 2>& w1, const std::array<Int, 2>& w2) -> Int {
        return A * w1[0] * w2[0] + B * w1[1] * w2[1];
    };
    if (norm(u) > norm(v)) std::swap(u, v);
    for (int it = 0; it < 256; ++it) {
        // round(dot(u,v)/norm(u)) with exact arithmetic
        Int n = dot(u, v), d = norm(u);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), Int(2 * n + d).get_mpz_t(), Int(2 * d).get_mpz_t());  // round(n/d)
        std::array<Int, 2> w{v[0] - q * u[0], v[1] - q * u[1]};
        if (norm(w) >= norm(u)) {
            v = w;
            return;
        }
        v = u;
        u = w;
    }
}

struct SearchFrame {
    // original <- T . diag(scale) . found
    Mat3 T;
    Vec3 scale;
};

inline std::optional<std::array<Int, 3>> finish_point(const Conic& C, const SearchFrame& fr,
                                                      const std::array<Int, 3>& found) {
    Vec3 x{Rat(found[0]) * fr.scale[0], Rat(found[1]) * fr.scale[1], Rat(found[2]) * fr.scale[2]};
    Vec3 y = mat3_apply(fr.T, x);
    auto pt = make_primitive({y[0], y[1], y[2]});
    if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) return std::nullopt;
    Vec3 chk{Rat(pt[0]), Rat(pt[1]), Rat(pt[2])};
    if (C.eval(chk) != 0) return std::nullopt;
    return pt;
}

}  // namespace detail

// Decide/solve x^T M x = 0 over Q. Strategy: exact diagonalization, square
// stripping and pairwise-coprime reduction to a X^2 + b Y^2 + c Z^2 with
// abc squarefree; real + p-adic solvability tests (Hilbert symbols at
// p | 2abc); then point production by small shells plus a lattice sweep
// (square roots of -a/b mod c index rank-2 lattices containing all
// primitive solutions; Gauss reduction finds short candidates).
inline PointSearchResult has_rational_point(const Conic& C, unsigned long height_bound = 10000) {
    PointSearchResult res;
    res.bound = height_bound;
    if (C.is_zero()) {
        res.outcome = PointSearchResult::Outcome::Point;
        res.point = {Int(1), Int(0), Int(0)};
        return res;
    }
    auto [d, T] = diagonalize(C);
    detail::SearchFrame fr{T, {Rat(1), Rat(1), Rat(1)}};
    // rank < 3: a radical vector is itself a point
    for (int k = 0; k < 3; ++k) {
        if (d[k] == 0) {
            std::array<Int, 3> e{Int(k == 0), Int(k == 1), Int(k == 2)};
            auto pt = detail::finish_point(C, fr, e);
            if (pt) {
                res.outcome = PointSearchResult::Outcome::Point;
                res.point = *pt;
                return res;
            }
        }
    }
    // integer diagonal
    Int L = 1;
    for (int i = 0; i < 3; ++i) {
        Int l;
        mpz_lcm(l.get_mpz_t(), L.get_mpz_t(), den(d[i]).get_mpz_t());
        L = l;
    }
    std::array<Int, 3> n{};
    for (int i = 0; i < 3; ++i) n[i] = num(d[i]) * (L / den(d[i]));
    Int g = 0;
    for (const auto& x : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& x : n) x /= g;
    // strip squares: n_i = sf_i m_i^2, variable x_i -> x_i / m_i
    for (int i = 0; i < 3; ++i) {
        auto [sf, sq] = squarefree_decompose(n[i]);
        n[i] = sf;
        fr.scale[i] /= Rat(sq);
    }
    // pairwise coprime: p | n_i, n_j  =>  (n_i/p, n_j/p, p n_k), x_k *= p
    for (bool again = true; again;) {
        again = false;
        for (int i = 0; i < 3 && !again; ++i)
            for (int j = 0; j < 3 && !again; ++j) {
                if (i == j) continue;
                Int gij;
                mpz_gcd(gij.get_mpz_t(), n[i].get_mpz_t(), n[j].get_mpz_t());
                if (gij > 1) {
                    Int p = factorize(gij).begin()->first;
                    int k = 3 - i - j;
                    n[i] /= p;
                    n[j] /= p;
                    n[k] *= p;
                    fr.scale[k] *= Rat(p);
                    auto [sf, sq] = squarefree_decompose(n[k]);
                    n[k] = sf;
                    fr.scale[k] /= Rat(sq);
                    again = true;
                }
            }
    }
    const Int a = n[0], b = n[1], c = n[2];
    // real solvability
    if (sign(a) == sign(b) && sign(b) == sign(c)) {
        res.outcome = PointSearchResult::Outcome::Impossible;
        res.certificate = {PointCertificate::Kind::RealDefinite, Int(0)};
        return res;
    }
    // p-adic solvability at p | 2abc via Hilbert symbols (-ac, -bc)_p
    {
        std::map<Int, int> ps = factorize(a * b * c);
        ps[Int(2)] += 1;
        for (const auto& [p, e] : ps) {
            if (hilbert_symbol(-a * c, -b * c, p) != 1) {
                res.outcome = PointSearchResult::Outcome::Impossible;
                res.certificate = {PointCertificate::Kind::PAdic, p, -a * c, -b * c};
                return res;
            }
        }
    }
    // --- stage 1: small shells, each variable role in turn
    auto try_xy = [&](const Int& A, const Int& B, const Int& Cc, const Int& x, const Int& y,
                      int px, int py, int pz) -> std::optional<std::array<Int, 3>> {
        Int s = A * x * x + B * y * y;
        if (s % Cc != 0) return std::nullopt;
        Int t = -s / Cc;
        if (t < 0) return std::nullopt;
        auto z = integer_square_root(t);
        if (!z) return std::nullopt;
        std::array<Int, 3> w{};
        w[px] = x;
        w[py] = y;
        w[pz] = *z;
        auto pt = detail::finish_point(C, fr, w);
        if (!pt) return std::nullopt;
        return pt;
    };
    unsigned long small_h = std::min<unsigned long>(height_bound, 48);
    for (unsigned long h = 0; h <= small_h; ++h) {
        for (long x = -static_cast<long>(h); x <= static_cast<long>(h); ++x) {
            for (long y : {-static_cast<long>(h), static_cast<long>(h)}) {
                for (auto [A, B, Cc, px, py, pz] :
                     {std::tuple{a, b, c, 0, 1, 2}, std::tuple{a, c, b, 0, 2, 1}, std::tuple{b, c, a, 1, 2, 0}}) {
                    if (auto pt = try_xy(A, B, Cc, Int(x), Int(y), px, py, pz)) {
                        res.outcome = PointSearchResult::Outcome::Point;
                        res.point = *pt;
                        return res;
                    }
                    if (auto pt = try_xy(A, B, Cc, Int(y), Int(x), px, py, pz)) {
                        res.outcome = PointSearchResult::Outcome::Point;
                        res.point = *pt;
                        return res;
                    }
                }
            }
        }
    }
    // --- stage 2: lattice sweep. All primitive solutions have
    // y = w x (mod m) for some square root w of -A/B mod m = |Cc|.
    auto lattice_stage = [&](const Int& A, const Int& B, const Int& Cc, int px, int py,
                             int pz) -> std::optional<std::array<Int, 3>> {
        Int m = Cc < 0 ? Int(-Cc) : Cc;
        if (m == 1) return std::nullopt;  // small shells already covered this
        auto fac = factorize(m);
        if (fac.size() > 12) return std::nullopt;
        std::vector<std::pair<Int, Int>> roots;  // (p, w_p) with w_p^2 = -A/B mod p
        for (const auto& [p, e] : fac) {
            if (p == 2) {
                // A, B odd here, so x, y odd for primitive solutions: w = 1
                roots.push_back({p, Int(1)});
                continue;
            }
            Int Binv;
            if (!mpz_invert(Binv.get_mpz_t(), B.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
            Int target = ((-A % p) + p) % p * Binv % p;
            if (legendre_symbol(target, p) == -1) return std::nullopt;  // excluded by Hilbert test
            roots.push_back({p, sqrt_mod_p(target, p)});
        }
        size_t npr = roots.size();
        for (size_t mask = 0; mask < (size_t{1} << npr); ++mask) {
            // CRT combine w = +-w_p
            Int w = 0, mod = 1;
            for (size_t t = 0; t < npr; ++t) {
                Int p = roots[t].first;
                Int wp = (mask >> t) & 1 ? (p - roots[t].second) % p : roots[t].second;
                // w' = w mod `mod`, wp mod p
                Int inv;
                mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t());
                Int k = ((wp - w) % p + p) % p * inv % p;
                w = w + mod * k;
                mod *= p;
            }
            std::array<Int, 2> u{Int(1), w}, v{Int(0), m};
            Int Aa = A < 0 ? Int(-A) : A, Bb = B < 0 ? Int(-B) : B;
            detail::gauss_reduce(u, v, Aa, Bb);
            long K = 32;
            for (long k1 = -K; k1 <= K; ++k1)
                for (long k2 = 0; k2 <= K; ++k2) {
                    if (k1 == 0 && k2 == 0) continue;
                    Int x = k1 * u[0] + k2 * v[0];
                    Int y = k1 * u[1] + k2 * v[1];
                    if (x == 0 && y == 0) continue;
                    if (auto pt = try_xy(A, B, Cc, x, y, px, py, pz)) return pt;
                }
        }
        return std::nullopt;
    };
    if (height_bound >= 64) {
        for (auto [A, B, Cc, px, py, pz] :
             {std::tuple{a, b, c, 0, 1, 2}, std::tuple{a, c, b, 0, 2, 1}, std::tuple{b, c, a, 1, 2, 0}}) {
            if (auto pt = lattice_stage(A, B, Cc, px, py, pz)) {
                res.outcome = PointSearchResult::Outcome::Point;
                res.point = *pt;
                return res;
            }
        }
    }
    res.outcome = PointSearchResult::Outcome::Exhausted;
    return res;
}

// Line-pencil parametrization of a rank-3 conic through a rational point:
// three quadratics (theta_1, theta_2, theta_3) with sum M_ij theta_i theta_j
// identically zero and theta(0 : 1) proportional to p.
inline std::array<BinaryForm, 3> parametrize(const Conic& C, const std::array<Rat, 3>& p) {
    if (C.rank() < 3) throw SingularConic("rank < 3");
    if (C.eval(p) != 0) throw PointNotOnConic("p not on conic");
    for (auto [ia, ib] : {std::pair{1, 2}, std::pair{0, 2}, std::pair{0, 1}}) {
        // u-line e_ia X0 + e_ib X1; theta = (u^T M u) p - 2 (p^T M u) u
        std::array<std::array<Rat, 3>, 3> th{};  // th[i] = coeffs of theta_i in X0^2, X0X1, X1^2
        Rat uu00 = C.M[ia][ia], uu01 = C.M[ia][ib], uu11 = C.M[ib][ib];
        Rat pu0(0), pu1(0);
        for (int k = 0; k < 3; ++k) {
            pu0 += p[k] * C.M[k][ia];
            pu1 += p[k] * C.M[k][ib];
        }
        for (int i = 0; i < 3; ++i) {
            th[i][0] = uu00 * p[i];
            th[i][1] = 2 * uu01 * p[i];
            th[i][2] = uu11 * p[i];
        }
        th[ia][0] -= 2 * pu0;
        th[ia][1] -= 2 * pu1;
        th[ib][1] -= 2 * pu0;
        th[ib][2] -= 2 * pu1;
        // invertibility of the coefficient matrix = honest parametrization
        Rat det = th[0][0] * (th[1][1] * th[2][2] - th[1][2] * th[2][1]) -
                  th[0][1] * (th[1][0] * th[2][2] - th[1][2] * th[2][0]) +
                  th[0][2] * (th[1][0] * th[2][1] - th[1][1] * th[2][0]);
        if (det == 0) continue;
        // canonical scaling: primitive integer coefficients, first nonzero > 0
        Int L = 1;
        for (auto& row : th)
            for (auto& q : row) {
                Int l;
                mpz_lcm(l.get_mpz_t(), L.get_mpz_t(), den(q).get_mpz_t());
                L = l;
            }
        Int G = 0;
        for (auto& row : th)
            for (auto& q : row) {
                Int z = num(q) * (L / den(q));
                mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), z.get_mpz_t());
            }
        Rat scale = Rat(L) / Rat(G);
        int lead = 0;
        for (auto& row : th)
            for (auto& q : row) {
                if (lead == 0 && q != 0) lead = sign(q);
            }
        if (lead < 0) scale = -scale;
        std::array<BinaryForm, 3> out{BinaryForm(2), BinaryForm(2), BinaryForm(2)};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) out[i][k] = Fel(th[i][k] * scale);
        return out;
    }
    throw SingularConic("no valid pencil line");  // unreachable for rank 3
}

// k-parametrization of D~_P: C11 x2^2 - 2 C12 x1 x2 + C22 x1^2 + 2 x3^2 = 0
// through the point (t1, t2, t3), t3 != 0. The pairings satisfy
// (tau_i, tau_j)_2 = 4 t3^2 Ct_ij.
inline std::array<BinaryForm, 3> tau_parametrize(const Fel& Ct11, const Fel& Ct12, const Fel& Ct22,
                                                 const std::array<Fel, 3>& t) {
    const Fel &t1 = t[0], &t2 = t[1], &t3 = t[2];
    if (t3.is_zero()) throw PreconditionViolated("t3 = 0");
    if (!(Ct11 * t2 * t2 - Fel(2) * Ct12 * t1 * t2 + Ct22 * t1 * t1 + Fel(2) * t3 * t3).is_zero())
        throw PreconditionViolated("(t1, t2, t3) not on D~");
    BinaryForm tau1(2, {-Ct11 * t1, -Fel(2) * Ct11 * t2, Ct22 * t1 - Fel(2) * Ct12 * t2});
    BinaryForm tau2(2, {Ct11 * t2 - Fel(2) * Ct12 * t1, -Fel(2) * Ct22 * t1, -Ct22 * t2});
    BinaryForm tau3(2, {-t3 * Ct11, -Fel(2) * t3 * Ct12, -t3 * Ct22});
    return {tau1, tau2, tau3};
}

// Exhaustive verification helpers for local certificates (test support).
// For odd p the insolvability criterion is checked against the full residue
// tables mod p; for p = 2 primitive triples mod 32 are enumerated.
inline bool verify_local_certificate(const Int& a, const Int& b, const Int& c, const Int& p) {
    if (p == 2) {
        const long m = 64;
        long al = mpz_fdiv_ui(a.get_mpz_t(), m), bl = mpz_fdiv_ui(b.get_mpz_t(), m), cl = mpz_fdiv_ui(c.get_mpz_t(), m);
        for (long x = 0; x < m; ++x)
            for (long y = 0; y < m; ++y)
                for (long z = 0; z < m; ++z) {
                    if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
                    if ((al * x * x + bl * y * y + cl * z * z) % m == 0) return false;  // primitive solution mod 64
                }
        return true;
    }
    // identify the coefficient divisible by p; the others are units
    Int A = a, B = b, Cc = c;
    if (b % p == 0) {
        A = a;
        B = c;
        Cc = b;
    } else if (a % p == 0) {
        A = b;
        B = c;
        Cc = a;
    }
    if (Cc % p != 0 || A % p == 0 || B % p == 0) return false;
    // insolvable iff -A/B is a non-residue mod p: exhaust the squares table
    std::vector<bool> sq(mpz_get_ui(p.get_mpz_t()), false);
    unsigned long pp = mpz_get_ui(p.get_mpz_t());
    for (unsigned long t = 0; t < pp; ++t) sq[(t * t) % pp] = true;
    Int Binv;
    mpz_invert(Binv.get_mpz_t(), B.get_mpz_t(), p.get_mpz_t());
    Int target = (((-A % p) + p) % p) * Binv % p;
    return !sq[mpz_get_ui(target.get_mpz_t())];
}

}  // namespace ratmod
