#pragma once

#include "tbcalc/calccomp.hpp"
#include "tbcalc/errors.hpp"

#include "json.hpp"

namespace tbcalc {

using Json = nlohmann::ordered_json;

// Rationals travel as {"num":n,"den":d}.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// An exponent is [re_num, re_den, im_num, im_den], with an optional fifth
// element {"re_surd":[[rad,num,den],...],"im_surd":[...]} carrying the
// irrational parts. A point is [exponent, k].
Json exponent_to_json(const Exponent& z);
Exponent exponent_from_json(const Json& j);
Json points_to_json(const std::vector<IndexPoint>& pts);
std::vector<IndexPoint> points_from_json(const Json& j);

// Sets serialize as their generator list; a view's bound is not carried.
inline Json set_to_json(const IndexSet& e) { return points_to_json(e.generators()); }
inline IndexSet set_from_json(const Json& j) { return IndexSet::normalize(points_from_json(j)); }

template <class C>
Json collection_to_json(const C& c) {
    Json out = Json::object();
    auto f = c.faces();
    for (std::size_t i = 0; i < f.size(); ++i) out[C::names[i]] = set_to_json(*f[i]);
    return out;
}

// Exact truncations of every face at Re <= bound.
template <class C>
Json collection_points_json(const C& c, const Surd& bound) {
    Json out = Json::object();
    auto f = c.faces();
    for (std::size_t i = 0; i < f.size(); ++i) out[C::names[i]] = points_to_json(f[i]->truncate(bound));
    return out;
}

// Missing faces are empty; unknown keys are rejected.
template <class C>
C collection_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("collection must be a JSON object keyed by face name");
    C c;
    auto f = c.faces();
    for (const auto& [key, value] : j.items()) {
        std::size_t i = 0;
        while (i < f.size() && key != C::names[i]) ++i;
        if (i == f.size()) throw UsageError("unknown face '" + key + "'");
        *f[i] = set_from_json(value);
    }
    return c;
}

} // namespace tbcalc
