#pragma once

#include "kneadforge/codim1.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kneadforge {

using nlohmann::json;

inline constexpr const char* kSchemaTag = "kneadforge/1";

// Coefficients are serialized lowest degree first as decimal strings so that
// arbitrarily large integers survive the round trip.
inline json to_json(const IntPoly& p) {
    json a = json::array();
    for (const auto& c : p.c) a.push_back(c.str());
    return a;
}

inline json to_json(const RatPoly& p) {
    json a = json::array();
    for (const auto& c : p.c) a.push_back(rat_str(c));
    return a;
}

inline IntPoly int_poly_from_json(const json& a) {
    std::vector<Int> c;
    for (const auto& x : a) c.emplace_back(x.get<std::string>());
    return IntPoly(c);
}

inline RatPoly rat_poly_from_json(const json& a) {
    std::vector<Rat> c;
    for (const auto& x : a) c.push_back(parse_rat(x.get<std::string>()));
    return RatPoly(c);
}

inline json to_json(const AlgebraicNumber& x) {
    json j;
    j["poly"] = to_json(x.poly);
    j["enclosure"] = {rat_str(x.iv.lo), rat_str(x.iv.hi)};
    j["approx"] = sig_digits(x.approx_rat(Rat(1, 1 << 24)));
    return j;
}

inline AlgebraicNumber algebraic_from_json(const json& j) {
    if (j.is_string()) return AlgebraicNumber::from_rational(parse_rat(j.get<std::string>()));
    IntPoly p = int_poly_from_json(j.at("poly"));
    return AlgebraicNumber(p, parse_rat(j.at("enclosure")[0].get<std::string>()),
                           parse_rat(j.at("enclosure")[1].get<std::string>()));
}

inline json to_json(const RatFunc& f) {
    json j;
    j["num"] = to_json(f.num);
    j["den"] = to_json(f.den);
    return j;
}

inline json to_json(const RatFunc& f, const AlgebraicNumber& at) {
    json j = to_json(f);
    j["approx"] = sig_digits(enclose_at(f, at, Rat(1, 1 << 24)).mid());
    return j;
}

inline json to_json(const CombData& X) {
    return json{{"N", X.N}, {"sigma", X.sigma}, {"l", X.l}, {"s", X.s}};
}

inline CombData comb_from_json(const json& j) {
    CombData X;
    X.N = j.at("N").get<int>();
    X.sigma = j.at("sigma").get<std::vector<int>>();
    X.l = j.at("l").get<std::vector<int>>();
    X.s = j.at("s").get<std::vector<int>>();
    return X;
}

inline json to_json(const SpaceReport& r) {
    return json{{"valid", r.valid},
                {"essential", r.essential},
                {"cyclic", r.cyclic},
                {"primitive", r.primitive},
                {"problems", r.problems}};
}

inline json to_json(const Violation& v) {
    return json{{"constraint", v.constraint}, {"detail", v.detail}};
}

inline json to_json(const std::vector<Violation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

inline json to_json(const Itinerary& I) { return format_itinerary(I); }

inline json to_json(const BifurcationEq& eq) {
    json j;
    j["itinerary"] = format_itinerary(eq.itinerary);
    j["chart"] = eq.chart == Chart::Bimodal ? "bimodal" : "unit";
    json q = json::array();
    for (const auto& p : eq.Q) q.push_back(to_json(p));
    j["Q"] = q;
    json pretty = json::array();
    for (size_t i = 0; i < eq.Q.size(); ++i) pretty.push_back(poly_str(eq.Q[i]));
    j["Q_text"] = pretty;
    j["reduced"] = eq.reduced;
    j["cleared_pow2"] = eq.cleared_pow2;
    return j;
}

inline json to_json(const RealizationInterval& R) {
    json j;
    j["empty"] = R.empty;
    if (R.empty) return j;
    j["lo"] = to_json(R.lo, R.lambda);
    j["hi"] = to_json(R.hi, R.lambda);
    j["lo_attained"] = R.lo_attained;
    j["hi_attained"] = R.hi_attained;
    j["point"] = R.is_point();
    return j;
}

inline json to_json(const ExceptionalRecord& r) {
    json j;
    j["base"] = format_itinerary(r.base);
    j["extended"] = format_itinerary(r.extended);
    j["factor"] = to_json(r.factor);
    j["factor_text"] = poly_str(r.factor);
    json roots = json::array();
    for (size_t i = 0; i < r.roots_in_window.size(); ++i) {
        json e;
        e["root"] = to_json(r.roots_in_window[i]);
        e["realization"] = to_json(r.realizations[i]);
        roots.push_back(e);
    }
    j["realized"] = roots;
    json un = json::array();
    for (const auto& u : r.unrealized) un.push_back(to_json(u));
    j["unrealized"] = un;
    return j;
}

inline json to_json(const Codim1Report& r) {
    json j;
    json ctl = json::array();
    for (const auto& I : r.controlled) ctl.push_back(format_itinerary(I));
    j["controlled"] = ctl;
    json m = json::array();
    for (const auto& row : r.matrix) {
        json jr = json::array();
        for (const auto& p : row) jr.push_back(to_json(p));
        m.push_back(jr);
    }
    j["matrix"] = m;
    j["det"] = to_json(r.det);
    j["det_text"] = poly_str(r.det);
    j["det_sign"] = r.det_sign;
    json curve = json::array();
    for (const auto& f : r.curve) curve.push_back(to_json(f, r.lambda));
    j["curve"] = curve;
    j["lambda"] = to_json(r.lambda);
    j["window"] = {rat_str(r.window_lo), rat_str(r.window_hi)};
    j["window_approx"] = {sig_digits(r.window_lo), sig_digits(r.window_hi)};
    j["samples_verified"] = r.samples_verified;
    json sp = json::array();
    for (const auto& s : r.sample_points) sp.push_back(rat_str(s));
    j["sample_points"] = sp;
    return j;
}

inline json to_json(const Classification& c) {
    json j;
    j["kind"] = turning_class_name(c.kind);
    j["horizon"] = c.horizon;
    if (c.kind != TurningClass::NotControlled) {
        j["return_step"] = c.return_step;
        j["itinerary"] = format_itinerary(c.itinerary);
        j["equation"] = to_json(c.eq);
    }
    return j;
}

inline json to_json(const ObstructionReport& r) {
    json j;
    j["verdict"] = r.verdict == Obstruction::Obstructed ? "obstructed" : "not-determined";
    j["reason"] = r.reason;
    json cls = json::array();
    for (const auto& c : r.classifications) cls.push_back(to_json(c));
    j["classifications"] = cls;
    if (r.verdict == Obstruction::Obstructed) {
        j["controlled_index"] = r.controlled_index;
        j["remaining_index"] = r.remaining_index;
        j["remaining_returns"] = r.remaining_returns;
        if (r.remaining_returns) j["remaining_return_step"] = r.remaining_return_step;
    }
    if (r.codim1) j["codim1"] = to_json(*r.codim1);
    return j;
}

inline json to_json(const RenormReport& r, const AlgebraicNumber& lambda) {
    json j;
    j["interval"] = {to_json(r.lo, lambda), to_json(r.hi, lambda)};
    j["image"] = {to_json(r.image_lo, lambda), to_json(r.image_hi, lambda)};
    j["contains_center"] = r.contains_center;
    j["maps_into"] = r.maps_into;
    j["holds"] = r.holds;
    return j;
}

inline json to_json(const NonrigidityReport& r) {
    json j;
    json grid = json::array();
    for (const auto& b : r.grid) grid.push_back(rat_str(b));
    j["grid"] = grid;
    j["itineraries_c1"] = r.itin1;
    j["itineraries_c2"] = r.itin2;
    j["constant_c1"] = r.constant1;
    j["constant_c2"] = r.constant2;
    j["distinct_c1"] = r.distinct1;
    j["distinct_c2"] = r.distinct2;
    return j;
}

inline json to_json(const WBoundReport& r) {
    return json{{"pass", r.pass},
                {"first_failure", r.first_failure},
                {"steps_checked", r.steps_checked}};
}

inline json to_json(const StructureReport& r) {
    return json{{"pass", r.pass},
                {"first_violation", r.first_violation},
                {"joint_sign_deviation", r.joint_sign_deviation}};
}

// PLMap chart descriptor: breakpoints and offsets as polynomial coefficient
// arrays in the slope parameter.
inline json to_json(const PLMap& m) {
    json j;
    j["comb"] = to_json(m.comb);
    j["lambda"] = to_json(m.lambda);
    json a = json::array();
    for (const auto& p : m.a) a.push_back(to_json(p));
    j["a"] = a;
    json b = json::array();
    for (const auto& row : m.b) {
        json jr = json::array();
        for (const auto& p : row) jr.push_back(to_json(p));
        b.push_back(jr);
    }
    j["b"] = b;
    j["collided"] = m.collided;
    return j;
}

inline json wrap_schema(json j) {
    json out;
    out["schema"] = kSchemaTag;
    for (auto& [k, v] : j.items()) out[k] = v;
    return out;
}

}  // namespace kneadforge
