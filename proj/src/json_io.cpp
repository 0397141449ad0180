#include "fw/json_io.hpp"

#include <sstream>

namespace fw {

json to_json(const Eigenvalue& ev) {
    if (ev.is_qpow) return json{{"qpow", ev.e}};
    return json(ev.v.str());
}

json to_json(const Spectrum& s) {
    json H = json::object();
    for (const auto& [d, v] : s.h) {
        json arr = json::array();
        for (const Eigenvalue& ev : v) arr.push_back(to_json(ev));
        H[std::to_string(d)] = std::move(arr);
    }
    return json{{"q", s.q}, {"dim", s.dim}, {"H", std::move(H)}};
}

json to_json(const ZetaFunction& z) {
    json P = json::object();
    for (const auto& [d, coeffs] : z.P) {
        json arr = json::array();
        for (const Int& c : coeffs) arr.push_back(c.str());
        P[std::to_string(d)] = std::move(arr);
    }
    return json{{"q", z.q}, {"P", std::move(P)}};
}

json to_json(const GammaNorm& n) {
    return json{{"num", n.num}, {"den", n.den}};
}

namespace {

json ev_json(const CaseEvidence& e) {
    json j{{"holds", e.holds}};
    j["evidence"] = e.evidence;
    return j;
}

json assumption_json(const std::vector<ExternalAssumption>& as) {
    json arr = json::array();
    for (const ExternalAssumption& a : as) {
        json j{{"m", a.m}, {"r", a.r}};
        if (a.middle_dim_exact) j["middle_dim_exact"] = *a.middle_dim_exact;
        if (a.stable_b_size) j["stable_b_size"] = *a.stable_b_size;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace

json to_json(const CaseReport& r) {
    json factors = json::array();
    for (auto [m, rr] : r.factors) factors.push_back(json{{"m", m}, {"r", rr}});
    json parity = json::object();
    for (auto [m, odd] : r.order_parity) parity[std::to_string(m)] = odd;
    return json{
        {"p", r.p},
        {"factors", std::move(factors)},
        {"all_r_one", r.all_r_one},
        {"all_r_odd", r.all_r_odd},
        {"all_r_even", r.all_r_even},
        {"case1a", ev_json(r.case1a)},
        {"case1b", ev_json(r.case1b)},
        {"case2", json{{"gcd", ev_json(r.case2_gcd)},
                       {"order_parity", std::move(parity)},
                       {"holds", r.case2.holds},
                       {"evidence", r.case2.evidence}}},
        {"case3", json{{"gcd", ev_json(r.case3_gcd)},
                       {"external_assumptions", assumption_json(r.case3_assumptions)}}},
        {"case4", json{{"gcd", ev_json(r.case4_gcd)},
                       {"order", ev_json(r.case4_order)},
                       {"external_assumptions", assumption_json(r.case4_assumptions)}}},
    };
}

} // namespace fw
