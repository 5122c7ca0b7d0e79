#pragma once

#include <json.hpp>

#include "ratmod/reconstruct.hpp"

namespace ratmod {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const FieldDesc& f) {
    Json j;
    if (f.is_rationals()) {
        j["kind"] = "rationals";
    } else {
        j["kind"] = "quadext";
        j["D"] = f.D;
    }
    return j;
}

inline FieldDesc field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("field descriptor");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return FieldDesc::rationals();
    if (kind == "quadext") {
        if (!j.contains("D")) throw ParseError("quadext needs D");
        return FieldDesc::quad_ext(j.at("D").get<long long>());
    }
    throw ParseError("unknown field kind: " + kind);
}

inline Json form_to_json(const BinaryForm& f) {
    Json arr = Json::array();
    for (int i = 0; i <= f.order(); ++i) arr.push_back(f[i].to_string());
    return arr;
}

inline BinaryForm form_from_json(const Json& j, const FieldDesc& field, int order) {
    if (!j.is_array() || static_cast<int>(j.size()) != order + 1)
        throw ParseError("form needs " + std::to_string(order + 1) + " coefficients");
    std::vector<Fel> cs;
    for (const auto& s : j) cs.push_back(parse_fel(s.get<std::string>(), field));
    return BinaryForm(order, std::move(cs));
}

inline Json map_to_json(const RationalMap& m, const FieldDesc& field) {
    Json j;
    j["schema"] = 1;
    j["field"] = field_to_json(field);
    j["degree"] = m.degree;
    j["F0"] = form_to_json(m.F0);
    j["F1"] = form_to_json(m.F1);
    return j;
}

inline std::pair<RationalMap, FieldDesc> map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("F0") || !j.contains("F1") || !j.contains("field"))
        throw ParseError("map file needs field, degree, F0, F1");
    FieldDesc field = field_from_json(j.at("field"));
    int d = j.at("degree").get<int>();
    if (d < 2) throw ParseError("degree must be >= 2");
    BinaryForm F0 = form_from_json(j.at("F0"), field, d);
    BinaryForm F1 = form_from_json(j.at("F1"), field, d);
    return {RationalMap(d, F0, F1), field};
}

inline Json point3_to_json(const ModuliPoint3& P, const FieldDesc& field) {
    Json j;
    j["schema"] = 1;
    j["field"] = field_to_json(field);
    j["weights"] = Json::array({2, 2, 3, 3, 4, 6});
    Json coords = Json::array();
    for (const auto& x : P.coords.as_array()) coords.push_back(x.to_string());
    j["coords"] = coords;
    return j;
}

inline Json point2_to_json(const ModuliPoint2& P, const FieldDesc& field) {
    Json j;
    j["schema"] = 1;
    j["field"] = field_to_json(field);
    j["weights"] = Json::array({4, 4, 4, 6});
    Json coords = Json::array();
    for (const auto& x : P.coords.as_array()) coords.push_back(x.to_string());
    j["coords"] = coords;
    return j;
}

inline std::pair<ModuliPoint3, FieldDesc> point3_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coords") || !j.contains("field")) throw ParseError("point file");
    FieldDesc field = field_from_json(j.at("field"));
    const auto& c = j.at("coords");
    if (!c.is_array() || c.size() != 6) throw ParseError("degree-3 point needs 6 coordinates");
    if (j.contains("weights")) {
        std::vector<int> w = j.at("weights").get<std::vector<int>>();
        if (w != ModuliPoint3::weights()) throw ParseError("expected weights [2,2,3,3,4,6]");
    }
    std::array<Fel, 6> v;
    for (int i = 0; i < 6; ++i) v[i] = parse_fel(c[i].get<std::string>(), field);
    return {ModuliPoint3{InvariantTuple3::from_array(v)}, field};
}

inline std::pair<ModuliPoint2, FieldDesc> point2_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coords") || !j.contains("field")) throw ParseError("point file");
    FieldDesc field = field_from_json(j.at("field"));
    const auto& c = j.at("coords");
    if (!c.is_array() || c.size() != 4) throw ParseError("degree-2 point needs 4 coordinates");
    if (j.contains("weights")) {
        std::vector<int> w = j.at("weights").get<std::vector<int>>();
        if (w != ModuliPoint2::weights()) throw ParseError("expected weights [4,4,4,6]");
    }
    std::array<Fel, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = parse_fel(c[i].get<std::string>(), field);
    return {ModuliPoint2{InvariantTuple2::from_array(v)}, field};
}

inline Json conic_to_json(const Conic& C) {
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j) row.push_back(rat_to_string(C.M[i][j]));
        rows.push_back(row);
    }
    Json j;
    j["matrix"] = rows;
    return j;
}

inline void certificate_into_json(Json& j, const PointCertificate& c) {
    if (c.kind == PointCertificate::Kind::RealDefinite) {
        j["certificate"] = "real-definite";
    } else {
        j["certificate"] = "p-adic";
        j["certificate_prime"] = c.p.get_str();
        j["hilbert_pair"] = Json::array({c.hil_a.get_str(), c.hil_b.get_str()});
    }
}

inline Json invariants3_to_json(const InvariantTuple3& t) {
    Json j;
    j["d"] = t.d.to_string();
    j["i"] = t.i.to_string();
    j["j"] = t.j.to_string();
    j["a"] = t.a.to_string();
    j["b"] = t.b.to_string();
    j["c"] = t.c.to_string();
    return j;
}

inline Json invariants2_to_json(const InvariantTuple2& t) {
    Json j;
    j["s1"] = t.s1.to_string();
    j["s2"] = t.s2.to_string();
    j["s3"] = t.s3.to_string();
    j["r"] = t.r.to_string();
    return j;
}

inline Json pair_to_json(const FormPair& p, const FieldDesc& field) {
    Json j;
    j["field"] = field_to_json(field);
    j["f"] = form_to_json(p.f);
    j["g"] = form_to_json(p.g);
    return j;
}

inline Json descent_to_json(const DescentResult& r) {
    Json j;
    j["stratum"] = stratum_name(r.stratum);
    switch (r.outcome) {
        case DescentResult::Outcome::Model:
            j["outcome"] = "model";
            j["model"] = pair_to_json(*r.model, r.model_field);
            break;
        case DescentResult::Outcome::Obstruction:
            j["outcome"] = "obstruction";
            j["conic"] = conic_to_json(*r.conic);
            if (r.certificate) certificate_into_json(j, *r.certificate);
            break;
        case DescentResult::Outcome::NeedsExtension:
            j["outcome"] = "needs_extension";
            j["model"] = pair_to_json(*r.model, r.model_field);
            j["D"] = r.model_field.D;
            if (r.conic) j["obstruction_conic"] = conic_to_json(*r.conic);
            break;
        case DescentResult::Outcome::SearchExhausted:
            j["outcome"] = "search_exhausted";
            j["conic"] = conic_to_json(*r.conic);
            j["height_bound"] = r.bound;
            break;
    }
    return j;
}

}  // namespace ratmod
