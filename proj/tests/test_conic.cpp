#include <catch2/catch_amalgamated.hpp>

#include "ratmod/conic.hpp"
#include "ratmod/sampling.hpp"

using namespace ratmod;

namespace {
Conic silverman_conic() {
    // 144 x1^2 + 576 x1 x2 + 1152 x2^2 + 384 x1 x3 + 768 x2 x3 + 1408 x3^2
    return Conic::from_entries(Rat(144), Rat(288), Rat(192), Rat(1152), Rat(384), Rat(1408));
}
}  // namespace

TEST_CASE("number theory helpers") {
    CHECK(factorize(Int(2 * 3 * 3 * 17)).at(Int(3)) == 2);
    auto [sf, sq] = squarefree_decompose(Int(-720));  // -720 = -5 * 144
    CHECK(sf == Int(-5));
    CHECK(sq == Int(12));
    CHECK(legendre_symbol(Int(2), Int(7)) == 1);
    CHECK(legendre_symbol(Int(3), Int(7)) == -1);
    for (long p : {5L, 13L, 17L, 97L, 10007L}) {
        Int P(p);
        for (long a = 1; a < 20; ++a) {
            if (legendre_symbol(Int(a), P) != 1) continue;
            Int r = sqrt_mod_p(Int(a), P);
            CHECK((r * r - a) % P == 0);
        }
    }
    // Hilbert symbol product formula on a few pairs: prod over p of (a,b)_p = 1
    Sampler S(26);
    for (int t = 0; t < 40; ++t) {
        Int a(S.integer(-30, 30)), b(S.integer(-30, 30));
        if (a == 0 || b == 0) continue;
        int prod = (a < 0 && b < 0) ? -1 : 1;  // (a,b)_infinity
        for (const auto& [p, e] : factorize(2 * a * b)) prod *= hilbert_symbol(a, b, p);
        CHECK(prod == 1);
    }
}

TEST_CASE("diagonalize is an exact congruence") {
    Sampler S(27);
    for (int t = 0; t < 120; ++t) {
        Mat3 M{};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) M[i][j] = M[j][i] = make_rat(S.integer(-9, 9), S.integer(1, 3));
        if (t % 7 == 0) M[0][0] = M[1][1] = M[2][2] = 0;  // exercise the off-diagonal pivot path
        Conic C{M};
        auto [d, T] = diagonalize(C);
        // T^T M T == diag(d)
        Mat3 Tt{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Tt[i][j] = T[j][i];
        Mat3 P = mat3_mul(Tt, mat3_mul(M, T));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(P[i][j] == (i == j ? d[i] : Rat(0)));
        // T invertible
        Rat det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                  T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
        CHECK(det != 0);
    }
    // already diagonal stays fixed with T = identity
    Conic D = Conic::from_entries(Rat(2), Rat(0), Rat(0), Rat(-3), Rat(0), Rat(5));
    auto [d, T] = diagonalize(D);
    CHECK((d[0] == 2 && d[1] == -3 && d[2] == 5));
    CHECK(T == mat3_identity());
    // zero form
    auto [dz, Tz] = diagonalize(Conic{});
    CHECK((dz[0] == 0 && dz[1] == 0 && dz[2] == 0));
    CHECK(Tz == mat3_identity());
}

TEST_CASE("silverman conic: diagonal entries in the right square classes") {
    auto [d, T] = diagonalize(silverman_conic());
    // reference diagonal form: 144 X1^2 + 576 X2^2 + 1152 X3^2
    const Rat expect[3] = {Rat(144), Rat(576), Rat(1152)};
    for (int i = 0; i < 3; ++i) {
        CHECK(d[i] > 0);
        CHECK(rational_square_root(d[i] / expect[i]).has_value());
    }
    auto r = has_rational_point(silverman_conic());
    REQUIRE(r.outcome == PointSearchResult::Outcome::Impossible);
    CHECK(r.certificate.kind == PointCertificate::Kind::RealDefinite);
}

TEST_CASE("A4 obstruction conic X^2 + 3Y^2 - 2Z^2 has no rational point") {
    Conic C = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(3), Rat(0), Rat(-2));
    auto r = has_rational_point(C);
    REQUIRE(r.outcome == PointSearchResult::Outcome::Impossible);
    REQUIRE(r.certificate.kind == PointCertificate::Kind::PAdic);
    // the obstructed places are exactly 2 and 3; the solver reports the first
    CHECK((r.certificate.p == 2 || r.certificate.p == 3));
    // both p-adic certificates verify exhaustively
    CHECK(verify_local_certificate(Int(1), Int(3), Int(-2), Int(2)));
    CHECK(verify_local_certificate(Int(1), Int(3), Int(-2), Int(3)));
}

TEST_CASE("the C3-locus conic has an easy point") {
    // a X0 X1 - (1/3) j a X3^2 with a = 5, j = 6; [1 : 2 : 1] is the printed
    // style of point, and the search must find some point
    Rat a(5), j(6);
    Conic C = Conic::from_entries(Rat(0), a / 2, Rat(0), Rat(0), Rat(0), -j * a / 3);
    Vec3 printed{Rat(1), j / 3, Rat(1)};
    CHECK(C.eval(printed) == 0);
    auto r = has_rational_point(C);
    REQUIRE(r.outcome == PointSearchResult::Outcome::Point);
}

TEST_CASE("search soundness: constructed points are always found solvable") {
    Sampler S(28);
    int found = 0;
    for (int t = 0; t < 200; ++t) {
        // build a conic through a chosen point: M = A + lambda e e^T style;
        // take random symmetric M, then adjust M[2][2] so that p is on it
        Vec3 p{Rat(S.integer(-9, 9)), Rat(S.integer(-9, 9)), Rat(S.integer(1, 9))};
        Mat3 M{};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) M[i][j] = M[j][i] = Rat(S.integer(-9, 9));
        Conic C{M};
        Rat v = C.eval(p);
        M[2][2] -= v / (p[2] * p[2]);
        C = Conic{M};
        REQUIRE(C.eval(p) == 0);
        auto r = has_rational_point(C);
        CHECK(r.outcome != PointSearchResult::Outcome::Impossible);
        if (r.outcome == PointSearchResult::Outcome::Point) {
            ++found;
            Vec3 q{Rat(r.point[0]), Rat(r.point[1]), Rat(r.point[2])};
            CHECK(C.eval(q) == 0);
            Int g = 0;
            for (const auto& x : r.point) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            CHECK(g == 1);
        }
    }
    CHECK(found >= 190);  // the searcher may rarely exhaust, never refuse
}

TEST_CASE("impossible verdicts carry verified certificates") {
    Sampler S(29);
    int impossible = 0;
    for (int t = 0; t < 300 && impossible < 25; ++t) {
        Int a(S.integer(-20, 20)), b(S.integer(-20, 20)), c(S.integer(-20, 20));
        if (a == 0 || b == 0 || c == 0) continue;
        Conic C = Conic::from_entries(Rat(a), Rat(0), Rat(0), Rat(b), Rat(0), Rat(c));
        auto r = has_rational_point(C);
        if (r.outcome != PointSearchResult::Outcome::Impossible) continue;
        ++impossible;
        if (r.certificate.kind == PointCertificate::Kind::RealDefinite) {
            CHECK(sign(a) == sign(b));
            CHECK(sign(b) == sign(c));
        } else {
            // reduce to the squarefree pairwise-coprime frame, as the solver does
            Int n[3];
            std::tie(n[0], std::ignore) = squarefree_decompose(a);
            std::tie(n[1], std::ignore) = squarefree_decompose(b);
            std::tie(n[2], std::ignore) = squarefree_decompose(c);
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
                            n[k] = squarefree_decompose(n[k] * p).first;
                            again = true;
                        }
                    }
            }
            CHECK((2 * n[0] * n[1] * n[2]) % r.certificate.p == 0);
            CHECK(verify_local_certificate(n[0], n[1], n[2], r.certificate.p));
        }
    }
    CHECK(impossible >= 10);
}

TEST_CASE("parametrize: the unit circle gives the Pythagorean triple") {
    Conic circle = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1));
    auto th = parametrize(circle, {Rat(1), Rat(0), Rat(1)});
    CHECK(th[0] == BinaryForm(2, {Fel(1), Fel(0), Fel(-1)}));
    CHECK(th[1] == BinaryForm(2, {Fel(0), Fel(2), Fel(0)}));
    CHECK(th[2] == BinaryForm(2, {Fel(1), Fel(0), Fel(1)}));
    CHECK_THROWS_AS(parametrize(circle, {Rat(1), Rat(1), Rat(1)}), PointNotOnConic);
    Conic sing = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0));
    CHECK_THROWS_AS(parametrize(sing, {Rat(1), Rat(1), Rat(0)}), SingularConic);
}

TEST_CASE("parametrize: substitution back vanishes identically") {
    Sampler S(30);
    int done = 0;
    for (int t = 0; t < 200 && done < 30; ++t) {
        Vec3 p{Rat(S.integer(-6, 6)), Rat(S.integer(-6, 6)), Rat(S.integer(1, 6))};
        Mat3 M{};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) M[i][j] = M[j][i] = Rat(S.integer(-6, 6));
        M[2][2] -= Conic{M}.eval(p) / (p[2] * p[2]);
        Conic C{M};
        if (C.rank() < 3) continue;
        auto th = parametrize(C, p);
        BinaryForm acc(4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += Fel(C.M[i][j]) * (th[i] * th[j]);
        CHECK(acc.is_zero());
        ++done;
    }
    CHECK(done == 30);
}

TEST_CASE("tau parametrization of D~") {
    Sampler S(31);
    int done = 0;
    for (int t = 0; t < 4000 && done < 25; ++t) {
        Fel P = S.nonzero_int(8), Q = S.small_int(8), Sc = S.nonzero_int(8);
        // find a point with t3 != 0: need P t2^2 - 2 Q t1 t2 + S t1^2 = -2 t3^2
        Fel t1 = S.small_int(5), t2 = S.small_int(5);
        Fel v = P * t2 * t2 - Fel(2) * Q * t1 * t2 + Sc * t1 * t1;
        Fel half = v * Fel(Rat(-1, 2));
        auto t3 = half.sqrt_in_field();
        if (!t3 || t3->is_zero()) continue;
        auto tau = tau_parametrize(P, Q, Sc, {t1, t2, *t3});
        // printed tau3 shape with the corrected doubled middle coefficient
        CHECK(tau[2] == BinaryForm(2, {-(*t3) * P, -Fel(2) * (*t3) * Q, -(*t3) * Sc}));
        // substitution into D~ vanishes identically
        BinaryForm lhs = P * (tau[1] * tau[1]) - Fel(2) * Q * (tau[0] * tau[1]) + Sc * (tau[0] * tau[0]) +
                         Fel(2) * (tau[2] * tau[2]);
        CHECK(lhs.is_zero());
        // pairings (tau_i, tau_j)_2 = 4 t3^2 Ct_ij
        Fel beta2 = Fel(4) * (*t3) * (*t3);
        Fel ct = (P * Sc - Q * Q) * Fel(Rat(1, 2));
        std::array<std::array<Fel, 3>, 3> Ct = {{{P, Q, Fel(0)}, {Q, Sc, Fel(0)}, {Fel(0), Fel(0), ct}}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(as_scalar(transvect(tau[i], tau[j], 2)) == beta2 * Ct[i][j]);
        ++done;
    }
    CHECK(done == 25);
    CHECK_THROWS_AS(tau_parametrize(Fel(1), Fel(0), Fel(1), {Fel(1), Fel(0), Fel(0)}), PreconditionViolated);
}
