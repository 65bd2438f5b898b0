#include "tbcalc/json_io.hpp"

namespace tbcalc {

namespace {

std::int64_t get_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw UsageError(std::string("expected an integer for ") + what);
    return j.get<std::int64_t>();
}

Rational ratio(const Json& num, const Json& den) {
    std::int64_t d = get_int(den, "a denominator");
    if (d == 0) throw UsageError("zero denominator");
    try {
        return make_rational(get_int(num, "a numerator"), d);
    } catch (const std::range_error&) {
        throw UsageError("rational out of range");
    }
}

Json surd_terms(const Surd& s) {
    Json out = Json::array();
    for (const auto& t : s.terms()) out.push_back({t.rad, num_of(t.coef), den_of(t.coef)});
    return out;
}

Surd surd_from_terms(const Json& j) {
    if (!j.is_array()) throw UsageError("surd terms must be an array");
    Surd out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3) throw UsageError("surd term must be [rad, num, den]");
        std::int64_t rad = get_int(t[0], "a radicand");
        if (rad < 2 || squarefree_part(rad, nullptr) != rad) throw UsageError("radicand must be squarefree and > 1");
        out += Surd::sqrt_of(make_rational(rad)) * ratio(t[1], t[2]);
    }
    return out;
}

} // namespace

Json rational_to_json(const Rational& q) { return {{"num", num_of(q)}, {"den", den_of(q)}}; }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw UsageError("rational must be {\"num\":n,\"den\":d}");
    return ratio(j.at("num"), j.at("den"));
}

Json exponent_to_json(const Exponent& z) {
    Rational re = z.re.rational_part(), im = z.im.rational_part();
    Json out = {num_of(re), den_of(re), num_of(im), den_of(im)};
    if (!z.re.is_rational() || !z.im.is_rational()) {
        Json extra = Json::object();
        if (!z.re.is_rational()) extra["re_surd"] = surd_terms(z.re);
        if (!z.im.is_rational()) extra["im_surd"] = surd_terms(z.im);
        out.push_back(extra);
    }
    return out;
}

Exponent exponent_from_json(const Json& j) {
    if (!j.is_array() || (j.size() != 4 && j.size() != 5)) throw UsageError("exponent must be [re_num, re_den, im_num, im_den]");
    Exponent z{Surd(ratio(j[0], j[1])), Surd(ratio(j[2], j[3]))};
    if (j.size() == 5) {
        const Json& extra = j[4];
        if (!extra.is_object()) throw UsageError("fifth exponent element must be an object");
        if (extra.contains("re_surd")) z.re += surd_from_terms(extra.at("re_surd"));
        if (extra.contains("im_surd")) z.im += surd_from_terms(extra.at("im_surd"));
    }
    return z;
}

Json points_to_json(const std::vector<IndexPoint>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) out.push_back({exponent_to_json(p.z), p.k});
    return out;
}

std::vector<IndexPoint> points_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("index set must be an array of points");
    std::vector<IndexPoint> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw UsageError("point must be [exponent, k]");
        std::int64_t k = get_int(p[1], "a log order");
        if (k < 0 || k > 1000000) throw UsageError("log order out of range");
        out.push_back({exponent_from_json(p[0]), static_cast<int>(k)});
    }
    return out;
}

} // namespace tbcalc
