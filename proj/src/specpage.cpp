#include "colocal/specpage.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace colocal {

const FGAbGroup& BigradedPage::at(int p, int q) const {
    static const FGAbGroup zero;
    auto it = entries.find({p, q});
    return it == entries.end() ? zero : it->second;
}

std::vector<int> BigradedPage::nonzero_columns() const {
    std::set<int> cols;
    for (const auto& [key, g] : entries)
        if (!g.is_zero()) cols.insert(key.first);
    return {cols.begin(), cols.end()};
}

bool BigradedPage::respects_grading_bound() const {
    if (!grading_bound) return true;
    for (const auto& [key, g] : entries)
        if (key.second > *grading_bound && !g.is_zero()) return false;
    return true;
}

BigradedPage e2_page(const LocalCohomologyResult& lc) {
    BigradedPage page;
    page.scalars = lc.scalars;
    page.p_min = -static_cast<int>(lc.generators);
    page.p_max = 0;
    page.q_min = lc.lo;
    page.q_max = lc.hi;
    page.grading_bound = lc.grading_bound;
    page.provenance = "local cohomology, p = -i, q = internal degree";
    for (const auto& [key, g] : lc.groups) page.entries[{-key.first, key.second}] = g;
    return page;
}

CollapseVerdict collapse_by_position(const BigradedPage& page) {
    CollapseVerdict v;
    const int span = page.p_max - page.p_min;
    for (const auto& [key, g] : page.entries) {
        if (g.is_zero()) continue;
        const auto [p, q] = key;
        for (int r = 2; r <= span; ++r) {
            const int tp = p - r, tq = page.cohomological ? q - r + 1 : q + r - 1;
            if (page.in_window(tp, tq) && !page.at(tp, tq).is_zero()) v.obstructions.push_back({r, p, q});
        }
    }
    v.collapsed = v.obstructions.empty();
    return v;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::NoTarget: return "no-target";
    }
    return "?";
}

const TotalDegreeReport& AbutmentReport::at(int s) const {
    for (const auto& d : degrees)
        if (d.s == s) return d;
    throw ValidationError("total degree " + std::to_string(s) + " is not covered by the page window");
}

AbutmentReport abutment(const BigradedPage& page, const std::map<int, FGAbGroup>& target) {
    CollapseVerdict cv = collapse_by_position(page);
    if (!cv.collapsed) {
        const auto& o = cv.obstructions.front();
        throw NotCollapsed("possible d^" + std::to_string(o.r) + " out of (" + std::to_string(o.p) + ", " +
                           std::to_string(o.q) + ")");
    }
    // s is reported when the whole antidiagonal lies inside the window
    auto q_for = [&](int p, int s) { return page.cohomological ? p - s : s - p; };
    int s_lo = INT_MAX, s_hi = INT_MIN;
    for (int s_try : {page.total_degree(page.p_min, page.q_min), page.total_degree(page.p_min, page.q_max),
                      page.total_degree(page.p_max, page.q_min), page.total_degree(page.p_max, page.q_max)}) {
        s_lo = std::min(s_lo, s_try);
        s_hi = std::max(s_hi, s_try);
    }
    AbutmentReport rep;
    for (int s = s_lo; s <= s_hi; ++s) {
        bool inside = true;
        for (int p = page.p_min; p <= page.p_max && inside; ++p) inside = page.in_window(p, q_for(p, s));
        if (!inside) continue;
        TotalDegreeReport d;
        d.s = s;
        for (int p = page.p_min; p <= page.p_max; ++p) {
            const FGAbGroup& g = page.at(p, q_for(p, s));
            if (g.is_zero()) continue;
            d.contributions.push_back({p, q_for(p, s), g});
            d.graded = d.graded.direct_sum(g);
        }
        const bool single = d.contributions.size() <= 1;
        d.extension_ambiguous = !single && !page.scalars.is_field();
        if (auto it = target.find(s); it != target.end()) {
            d.target = it->second;
            if (page.scalars.is_field() || single) {
                d.verdict = d.graded == *d.target ? Verdict::Equal : Verdict::Inconsistent;
            } else {
                const bool match = d.graded.free_rank() == d.target->free_rank() &&
                                   d.graded.torsion_order() == d.target->torsion_order();
                d.verdict = match ? Verdict::Consistent : Verdict::Inconsistent;
            }
        }
        rep.degrees.push_back(std::move(d));
    }
    return rep;
}

std::map<int, FGAbGroup> uct_target(const std::map<int, FGAbGroup>& homology) {
    std::map<int, FGAbGroup> out;
    for (const auto& [m, h] : homology) {
        FGAbGroup c = FGAbGroup::free(h.free_rank());
        if (auto it = homology.find(m - 1); it != homology.end()) c = c.direct_sum(FGAbGroup(0, it->second.torsion()));
        out[m] = c;
    }
    return out;
}

std::map<int, FGAbGroup> shifted_target(const std::map<int, FGAbGroup>& cohomology, int a) {
    std::map<int, FGAbGroup> out;
    for (const auto& [m, g] : cohomology) out[-a - m] = g;
    return out;
}

}  // namespace colocal
