#pragma once

#include "colocal/colocal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace colocal {

/// E2-page with entries at (p, q). A homological page has total degree p + q; a
/// cohomological one stores E^{p,q} with total degree p - q.
struct BigradedPage {
    Scalars scalars;
    std::map<Bidegree, FGAbGroup> entries;
    int p_min = 0, p_max = 0, q_min = 0, q_max = 0;
    bool cohomological = false;
    std::optional<int> grading_bound;  // on q, when certified
    std::string provenance;

    const FGAbGroup& at(int p, int q) const;
    bool in_window(int p, int q) const { return p >= p_min && p <= p_max && q >= q_min && q <= q_max; }
    int total_degree(int p, int q) const { return cohomological ? p - q : p + q; }
    /// Columns holding a nonzero entry, ascending.
    std::vector<int> nonzero_columns() const;
    /// No nonzero entry sits above the certified grading bound.
    bool respects_grading_bound() const;
};

BigradedPage e2_page(const LocalCohomologyResult& lc);

struct Obstruction {
    int r, p, q;
    friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct CollapseVerdict {
    bool collapsed = true;
    std::vector<Obstruction> obstructions;  // d^r out of (p, q) may be nonzero
};

/// d^r : E_{p,q} -> E_{p-r, q+r-1} for r >= 2 (E^{p,q} -> E^{p-r, q-r+1} on a cohomological page).
CollapseVerdict collapse_by_position(const BigradedPage& page);

enum class Verdict { Equal, Consistent, Inconsistent, NoTarget };
std::string to_string(Verdict v);

struct Contribution {
    int p, q;
    FGAbGroup group;
};

struct TotalDegreeReport {
    int s = 0;
    std::vector<Contribution> contributions;  // nonzero entries only
    FGAbGroup graded;                         // sum of the contributions
    std::optional<FGAbGroup> target;
    Verdict verdict = Verdict::NoTarget;
    bool extension_ambiguous = false;

    bool consistent() const { return verdict == Verdict::Equal || verdict == Verdict::Consistent; }
};

struct AbutmentReport {
    std::vector<TotalDegreeReport> degrees;  // every total degree fully inside the window

    const TotalDegreeReport& at(int s) const;
};

/// Throws NotCollapsed unless the page collapses by position.
AbutmentReport abutment(const BigradedPage& page, const std::map<int, FGAbGroup>& target);

/// Integral cohomology from integral homology: H^m = Hom(H_m, Z) + Ext(H_{m-1}, Z).
/// Homology below the lowest listed degree is taken to vanish.
std::map<int, FGAbGroup> uct_target(const std::map<int, FGAbGroup>& homology);

/// Reindex cohomology for comparison with a page: total degree s carries H^{-a-s}.
std::map<int, FGAbGroup> shifted_target(const std::map<int, FGAbGroup>& cohomology, int a);

}  // namespace colocal
