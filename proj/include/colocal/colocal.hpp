#pragma once

#include "colocal/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace colocal {

struct StabilizationPolicy {
    unsigned max_power = 64;
    unsigned stable_steps = 2;
    /// 0 = hardware concurrency, further capped by the COLOCAL_THREADS environment variable.
    unsigned threads = 0;
};

enum class Certification { StableSteps, RegularSequence, GradingBound };
std::string to_string(Certification c);

/// Number of worker threads for a run over `jobs` independent degrees.
unsigned worker_count(const StabilizationPolicy& policy, std::size_t jobs);

using Bidegree = std::pair<int, int>;  // (index, internal degree)

/// H^i_I(M)<j> for 0 <= i <= m and j in [lo, hi].
struct LocalCohomologyResult {
    int lo = 0, hi = 0;
    std::size_t generators = 0;  // m
    Scalars scalars;
    std::map<Bidegree, FGAbGroup> groups;
    std::map<Bidegree, unsigned> stabilized_at;
    std::map<Bidegree, Certification> certification;
    std::optional<int> grading_bound;
    bool regular_sequence = false;

    const FGAbGroup& at(int i, int j) const;
    /// Highest level at which the stabilized answer in degree j was read.
    unsigned level(int j) const;
    bool vanishes_above_generators() const;
};

/// Stabilized Koszul colimit. Throws StabilizationNotReached past policy.max_power.
LocalCohomologyResult local_cohomology(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                       const StabilizationPolicy& policy = {});

/// The same colimit computed from the quotients of K(x^t; M) by the x_S^t-torsion of each
/// summand, whose colimit is the Cech complex of localizations.
LocalCohomologyResult cech_cohomology(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                      const StabilizationPolicy& policy = {});

/// Tables in homological index p = -i.
struct TriangleResult {
    int lo = 0, hi = 0;
    LocalCohomologyResult local;
    std::map<Bidegree, FGAbGroup> cell;    // (p, j), p = -i
    std::map<Bidegree, FGAbGroup> module;  // (0, j)
    std::map<Bidegree, FGAbGroup> null;    // (p, j), p = -k for H^k of the positive part
    bool les_verified = false;
};

TriangleResult colocalization_triangle(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                       const StabilizationPolicy& policy = {});

struct CellularVerdict {
    bool cellular = true;
    bool certified = false;
    std::optional<Bidegree> witness;  // a bidegree holding a non-torsion class
};

/// Multiplication by each x_i^t kills every stabilized class (t the level it was read at).
CellularVerdict is_cellular(const LocalCohomologyResult& result, const GradedModule& m, const IdealSpec& ideal);
/// Every homology class of C in [lo, hi] is killed by I^n, with n from the torsion decision procedure.
/// Throws WindowTooSmall when certification is required but no bound on the terms is found.
CellularVerdict is_cellular(const GradedComplex& c, const IdealSpec& ideal, int lo, int hi,
                            const TorsionOptions& options = {});

/// Every group of the result vanishes in internal degrees above b.
bool grading_bound_check(const LocalCohomologyResult& result, int b);

}  // namespace colocal
