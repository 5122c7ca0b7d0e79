#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ratmod/io.hpp"
#include "ratmod/sampling.hpp"

namespace ratmod {

struct CommandResult {
    int exit_code = 0;
    Json output;
};

namespace cli {

struct Args {
    std::string verb;
    std::map<std::string, std::string> flags;
    std::vector<std::string> positional;
    bool human = false;

    std::string need(const std::string& name) const {
        auto it = flags.find(name);
        if (it == flags.end()) throw ParseError("missing --" + name);
        return it->second;
    }
    std::string get(const std::string& name, const std::string& dflt) const {
        auto it = flags.find(name);
        return it == flags.end() ? dflt : it->second;
    }
};

inline Args parse_args(const std::vector<std::string>& argv) {
    Args a;
    if (argv.empty()) throw ParseError("no command given");
    a.verb = argv[0];
    for (size_t i = 1; i < argv.size(); ++i) {
        const std::string& s = argv[i];
        if (s == "--human") {
            a.human = true;
        } else if (s.rfind("--", 0) == 0) {
            if (i + 1 >= argv.size()) throw ParseError("flag " + s + " needs a value");
            a.flags[s.substr(2)] = argv[++i];
        } else {
            a.positional.push_back(s);
        }
    }
    return a;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

inline unsigned long default_height_bound() {
    if (const char* env = std::getenv("RATMOD_HEIGHT_BOUND")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10000;
}

// compact self-test battery; throws on the first failing check
inline int selftest_run() {
    int checks = 0;
    auto expect = [&](bool ok, const char* what) {
        ++checks;
        if (!ok) throw PreconditionViolated(std::string("selftest: ") + what);
    };
    Sampler S(20260810);
    // transvectant pipeline vs closed forms
    for (int t = 0; t < 40; ++t) {
        FormPair p = S.pair(3);
        expect(invariants3(p) == invariants3_appendix(p), "invariants3 == appendix");
    }
    // syzygies
    for (int t = 0; t < 25; ++t) {
        FormPair p = S.map_pair(3);
        InvariantTuple3 v = invariants3(p);
        expect(check_relation3(v), "relfull");
        expect(rho_from_invariants(v) == resultant(merge(p).F0, merge(p).F1), "rho = Res");
    }
    for (int t = 0; t < 25; ++t) {
        FormPair p = S.map_pair(2);
        InvariantTuple2 v = invariants2(p);
        expect(check_relation2(v), "deg2rel");
    }
    // SL2 invariance
    for (int t = 0; t < 10; ++t) {
        FormPair p = S.pair(3);
        auto N = S.sl2();
        expect(invariants3(substitute_pair(p, N)) == invariants3(p), "SL2 invariance (3)");
        FormPair q = S.pair(2);
        expect(invariants2(substitute_pair(q, N)) == invariants2(q), "SL2 invariance (2)");
    }
    // split/merge round trips
    for (int t = 0; t < 10; ++t)
        for (int deg : {2, 3}) {
            RationalMap m = S.map(deg);
            RationalMap m2 = merge(split(m));
            expect(m2.F0 == m.F0 && m2.F1 == m.F1, "merge(split) = id");
        }
    // the worked example over Q(i)
    {
        Fel i1 = Fel::sqrt_gen(-1);
        BinaryForm F0(3, {i1, Fel(-3) * i1, Fel(3) * i1, -i1});
        BinaryForm F1(3, {Fel(Rat(1), Rat(0), -1), Fel(Rat(3), Rat(0), -1), Fel(Rat(3), Rat(0), -1),
                          Fel(Rat(1), Rat(0), -1)});
        InvariantTuple3 v = invariants3(split(RationalMap(3, F0, F1)));
        expect(v.d == Fel(Rat(0), Rat(72), -1) && v.c == Fel(Rat(0), Rat(864), -1), "Silverman tuple");
        ModuliPoint3 Pq{InvariantTuple3{Fel(144), Fel(20), Fel(-12), Fel(288), Fel(192), Fel(-6912)}};
        expect(wp_equal(ModuliPoint3{v}, Pq), "Silverman wp-equivalence");
        expect(classify_aut(Pq) == Stratum::Trivial, "Silverman stratum");
    }
    // z^3 and z^2
    {
        RationalMap z3(3, BinaryForm(3, {Fel(1), Fel(0), Fel(0), Fel(0)}), BinaryForm(3, {Fel(0), Fel(0), Fel(0), Fel(1)}));
        InvariantTuple3 v = invariants3(split(z3));
        expect(v == InvariantTuple3{Fel(18), Fel(Rat(1, 2)), Fel(0), Fel(0), Fel(-3), Fel(0)}, "z^3 tuple");
        expect(classify_aut(ModuliPoint3{v}) == Stratum::D4_1, "z^3 stratum");
        RationalMap z2(2, BinaryForm(2, {Fel(1), Fel(0), Fel(0)}), BinaryForm(2, {Fel(0), Fel(0), Fel(1)}));
        InvariantTuple2 s = invariants2(split(z2));
        expect(s == InvariantTuple2{Fel(16), Fel(Rat(-8, 3)), Fel(Rat(-2, 27)), Fel(0)}, "z^2 s-tuple");
        auto [sig, rho] = sigma_from_s(s);
        expect(sig.sigma1 == Fel(2) && sig.sigma2 == Fel(0) && rho == Fel(1), "z^2 sigma");
    }
    // conics
    {
        Conic circle = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1));
        auto th = parametrize(circle, {Rat(1), Rat(0), Rat(1)});
        BinaryForm zero(4);
        BinaryForm acc(4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += Fel(circle.M[i][j]) * (th[i] * th[j]);
        expect(acc == zero, "parametrization identity");
        Conic a4 = Conic::from_entries(Rat(1), Rat(0), Rat(0), Rat(3), Rat(0), Rat(-2));
        expect(has_rational_point(a4).outcome == PointSearchResult::Outcome::Impossible, "A4 conic impossible");
    }
    // descent round trips
    {
        Sampler S2(7);
        int done = 0;
        while (done < 2) {
            FormPair p = S2.map_pair(3, 4);
            InvariantTuple3 v = invariants3_appendix(p);
            ModuliPoint3 P{v};
            if (validate3(P) != Validity3::ok || classify_aut(P) != Stratum::Trivial || v.c.is_zero()) continue;
            DescentResult r = descend3(P);
            if (r.outcome == DescentResult::Outcome::SearchExhausted) continue;
            expect(r.outcome == DescentResult::Outcome::Model, "descend3 finds a model");
            expect(wp_equal(ModuliPoint3{invariants3_appendix(*r.model)}, P), "descend3 postcondition");
            ++done;
        }
        FormPair q = S2.map_pair(2, 5);
        InvariantTuple2 s = invariants2(q);
        if (!s.r.is_zero()) {
            auto W = std::array<std::array<Fel, 2>, 2>{{{Fel(1), Fel(0)}, {Fel(0), Fel(1)}}};
            FormPair rec = reconstruct2(ModuliPoint2{s}, W);
            expect(wp_equal(ModuliPoint2{invariants2(rec)}, ModuliPoint2{s}), "reconstruct2 round trip");
        }
    }
    return checks;
}

}  // namespace cli

// Dispatch a parsed command line; never throws (all failures are encoded in
// the result). Identical inputs produce byte-identical JSON.
inline CommandResult run_command(const std::vector<std::string>& argv) {
    using cli::Args;
    CommandResult res;
    try {
        Args a = cli::parse_args(argv);
        Json& out = res.output;
        if (a.verb == "invariants") {
            int deg = std::stoi(a.need("degree"));
            auto [m, field] = map_from_json(cli::load_json(a.need("map")));
            if (m.degree != deg) throw ParseError("map degree mismatch");
            if (deg == 3) {
                InvariantTuple3 t = invariants3(split(m));
                out = invariants3_to_json(t);
                if (a.human) out["summary"] = "invariants (d,i,j,a,b,c) of the degree-3 map";
            } else if (deg == 2) {
                InvariantTuple2 t = invariants2(split(m));
                out = invariants2_to_json(t);
                if (a.human) out["summary"] = "invariants (s1,s2,s3,r) of the degree-2 map";
            } else {
                throw ParseError("only degrees 2 and 3 are supported");
            }
        } else if (a.verb == "classify") {
            ModuliPoint3 P{InvariantTuple3{}};
            if (a.flags.count("point")) {
                P = point3_from_json(cli::load_json(a.need("point"))).first;
            } else {
                auto [m, field] = map_from_json(cli::load_json(a.need("map")));
                if (m.degree != 3) throw ParseError("classify needs a degree-3 map or point");
                P = ModuliPoint3{invariants3(split(m))};
            }
            out["stratum"] = stratum_name(classify_aut(P));
            if (a.human) out["summary"] = std::string("automorphism stratum: ") + out["stratum"].get<std::string>();
        } else if (a.verb == "validate") {
            int deg = std::stoi(a.get("degree", "3"));
            if (deg == 3) {
                auto [P, field] = point3_from_json(cli::load_json(a.need("point")));
                Validity3 v = validate3(P);
                out["status"] = v == Validity3::ok ? "ok" : v == Validity3::violates_syzygy ? "violates_syzygy" : "degenerate_rho";
            } else if (deg == 2) {
                auto [P, field] = point2_from_json(cli::load_json(a.need("point")));
                Validity2 v = validate2(P);
                out["status"] = v == Validity2::ok ? "ok" : v == Validity2::violates_syzygy ? "violates_syzygy" : "degenerate_rho";
            } else {
                throw ParseError("only degrees 2 and 3 are supported");
            }
        } else if (a.verb == "equivalent") {
            int deg = std::stoi(a.get("degree", "3"));
            if (a.positional.size() != 2) throw ParseError("equivalent needs two point files");
            bool eq;
            if (deg == 3) {
                auto [P, f1] = point3_from_json(cli::load_json(a.positional[0]));
                auto [Q, f2] = point3_from_json(cli::load_json(a.positional[1]));
                if (f1 != f2 && !(f1.is_rationals() || f2.is_rationals()))
                    throw FieldMismatch("points declared over different extensions");
                eq = wp_equal(P, Q);
            } else if (deg == 2) {
                auto [P, f1] = point2_from_json(cli::load_json(a.positional[0]));
                auto [Q, f2] = point2_from_json(cli::load_json(a.positional[1]));
                if (f1 != f2 && !(f1.is_rationals() || f2.is_rationals()))
                    throw FieldMismatch("points declared over different extensions");
                eq = wp_equal(P, Q);
            } else {
                throw ParseError("only degrees 2 and 3 are supported");
            }
            out["equivalent"] = eq;
        } else if (a.verb == "descend") {
            int deg = std::stoi(a.get("degree", "3"));
            if (deg != 3) throw ParseError("descend supports degree 3 (use reconstruct2 for degree 2)");
            auto [P, field] = point3_from_json(cli::load_json(a.need("point")));
            unsigned long bound = cli::default_height_bound();
            if (a.flags.count("height-bound")) bound = std::stoul(a.need("height-bound"));
            DescentResult r = descend3(P, bound);
            out = descent_to_json(r);
            if (a.human) {
                out["summary"] = std::string("descent outcome: ") + out["outcome"].get<std::string>() +
                                 " on stratum " + out["stratum"].get<std::string>();
            }
        } else if (a.verb == "reconstruct2") {
            auto [P, field] = point2_from_json(cli::load_json(a.need("point")));
            auto W = std::array<std::array<Fel, 2>, 2>{{{Fel(1), Fel(0)}, {Fel(0), Fel(1)}}};
            FormPair fp = reconstruct2(P, W);
            out = pair_to_json(fp, field);
            if (a.human) out["summary"] = "degree-2 model (f, g) for the moduli point";
        } else if (a.verb == "selftest") {
            int checks = cli::selftest_run();
            out["selftest"] = "ok";
            out["checks"] = checks;
        } else {
            throw ParseError("unknown verb: " + a.verb);
        }
        res.exit_code = 0;
        return res;
    } catch (const ParseError& e) {
        res.output = Json{{"error", e.code()}, {"detail", e.what()}};
        res.exit_code = 2;
        return res;
    } catch (const Error& e) {
        res.output = Json{{"error", e.code()}, {"detail", e.what()}};
        res.exit_code = 1;
        return res;
    } catch (const std::exception& e) {
        res.output = Json{{"error", "InternalError"}, {"detail", e.what()}};
        res.exit_code = 1;
        return res;
    }
}

}  // namespace ratmod
