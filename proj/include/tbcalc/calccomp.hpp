#pragma once

#include "tbcalc/indexset.hpp"

#include <array>
#include <string>

namespace tbcalc {

// Index-set collections keyed by boundary hypersurface. Each type exposes its
// face names and a uniform view of its faces so that generic helpers below and
// the JSON layer can treat them alike.

struct BCollection {
    IndexSet lb, ff, rb;
    static constexpr std::array<const char*, 3> names{"lb", "ff", "rb"};
    std::array<IndexSet*, 3> faces() { return {&lb, &ff, &rb}; }
    std::array<const IndexSet*, 3> faces() const { return {&lb, &ff, &rb}; }
    static BCollection identity() { return {IndexSet(), IndexSet::n0(), IndexSet()}; }
};

struct ScbtCollection {
    IndexSet lb0, rb0, tf, zf;
    static constexpr std::array<const char*, 4> names{"lb0", "rb0", "tf", "zf"};
    std::array<IndexSet*, 4> faces() { return {&lb0, &rb0, &tf, &zf}; }
    std::array<const IndexSet*, 4> faces() const { return {&lb0, &rb0, &tf, &zf}; }
    static ScbtCollection identity() { return {IndexSet(), IndexSet(), IndexSet::n0(), IndexSet::n0()}; }
};

struct ChCollection {
    IndexSet lb, ff, rb, tf;
    static constexpr std::array<const char*, 4> names{"lb", "ff", "rb", "tf"};
    std::array<IndexSet*, 4> faces() { return {&lb, &ff, &rb, &tf}; }
    std::array<const IndexSet*, 4> faces() const { return {&lb, &ff, &rb, &tf}; }
    static ChCollection identity() { return {IndexSet(), IndexSet::n0(), IndexSet(), IndexSet::n0()}; }
};

struct TbCollection {
    IndexSet ffD, ffT, lf, rf, lbD, rbD, lbT, rbT, if_;
    static constexpr std::array<const char*, 9> names{"ffD", "ffT", "lf", "rf", "lbD", "rbD", "lbT", "rbT", "if"};
    std::array<IndexSet*, 9> faces() { return {&ffD, &ffT, &lf, &rf, &lbD, &rbD, &lbT, &rbT, &if_}; }
    std::array<const IndexSet*, 9> faces() const { return {&ffD, &ffT, &lf, &rf, &lbD, &rbD, &lbT, &rbT, &if_}; }
    static TbCollection identity() {
        TbCollection t;
        t.ffD = t.ffT = IndexSet::n0();
        return t;
    }
};

BCollection compose_b(const BCollection& e, const BCollection& f);
ScbtCollection compose_scbt(const ScbtCollection& e, const ScbtCollection& f);
ChCollection compose_ch(const ChCollection& e, const ChCollection& f);
TbCollection compose_3b(const TbCollection& e, const TbCollection& f);

template <class C>
C restricted(const C& c, const Surd& bound) {
    C out = c;
    for (IndexSet* s : out.faces()) *s = s->restricted(bound);
    return out;
}

template <class C>
C face_union(const C& a, const C& b) {
    C out;
    auto o = out.faces();
    auto x = a.faces();
    auto y = b.faces();
    for (std::size_t i = 0; i < o.size(); ++i) *o[i] = set_union(*x[i], *y[i]);
    return out;
}

template <class C>
bool same_below(const C& a, const C& b, const Surd& bound) {
    auto x = a.faces();
    auto y = b.faces();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!same_below(*x[i], *y[i], bound)) return false;
    return true;
}

template <class C>
bool subset_below(const C& a, const C& b, const Surd& bound) {
    auto x = a.faces();
    auto y = b.faces();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!subset_below(*x[i], *y[i], bound)) return false;
    return true;
}

template <class C>
std::string to_string(const C& c) {
    std::string out;
    auto f = c.faces();
    for (std::size_t i = 0; i < f.size(); ++i) out += std::string(i ? " " : "") + C::names[i] + "=" + f[i]->to_string();
    return out;
}

} // namespace tbcalc
