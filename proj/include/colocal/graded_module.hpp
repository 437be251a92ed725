#pragma once

#include "colocal/graded_ring.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace colocal {

struct ModuleGenerator {
    std::string name;
    int degree = 0;
};

/// Element of a module presented on generators e_1..e_n: one ring coefficient per generator.
using ModuleElement = std::vector<Polynomial>;

/// Degree d of a module: the symbols (generator, monomial) with
/// deg(generator) + deg(monomial) = d, and their relations.
struct ModuleDegree {
    std::vector<std::pair<std::size_t, Monomial>> symbols;
    std::vector<std::size_t> offsets;  // first symbol index of each generator block
    IntMatrix presentation;
    FGAbGroup group;
    // Reduced coordinates from the Smith form of the presentation: one row per
    // nontrivial invariant factor (order 0 = free). Over Q only free rows are kept.
    IntMatrix to_reduced;    // k x n
    IntMatrix from_reduced;  // n x k
    std::vector<mpz_class> orders;

    std::size_t size() const { return symbols.size(); }
    std::size_t reduced_size() const { return orders.size(); }
    /// Diagonal presentation of the group in reduced coordinates.
    IntMatrix reduced_presentation() const;
    /// Symbol-basis columns to reduced coordinates, entries taken mod the orders.
    IntMatrix reduce(const IntMatrix& symbol_columns) const;
};

/// Finitely presented graded module over a GradedRing. Cheap to copy: the
/// presentation and the per-degree cache are shared, and shifts are views
/// onto the same data.
class GradedModule {
public:
    GradedModule(RingPtr ring, std::vector<ModuleGenerator> generators, std::vector<ModuleElement> relations);

    /// R as a module over itself.
    static GradedModule ring_module(RingPtr ring);
    /// Free module on generators in the given degrees.
    static GradedModule free(RingPtr ring, const std::vector<int>& degrees);
    /// Quotient R / (f_1, ..., f_k) as a cyclic module generated in degree 0.
    static GradedModule cyclic(RingPtr ring, const std::vector<Polynomial>& ideal);
    static GradedModule zero(RingPtr ring) { return GradedModule(std::move(ring), {}, {}); }
    static GradedModule direct_sum(const std::vector<GradedModule>& parts);

    const RingPtr& ring() const { return data_->ring; }
    std::vector<ModuleGenerator> generators() const;
    int generator_degree(std::size_t g) const { return data_->generators[g].degree + shift_; }
    const std::vector<ModuleElement>& relations() const { return data_->relations; }
    std::vector<int> relation_degrees() const;
    std::size_t rank() const { return data_->generators.size(); }
    /// Same presentation and same shift.
    bool same_as(const GradedModule& o) const { return data_ == o.data_ && shift_ == o.shift_; }
    /// Same presentation up to shift.
    bool shares_presentation(const GradedModule& o) const { return data_ == o.data_; }
    int shift_amount() const { return shift_; }

    /// Sigma^n M, with (Sigma^n M)<i> = M<i - n>.
    GradedModule shift(int n) const;
    /// M / (submodule generated by the given homogeneous elements).
    GradedModule with_extra_relations(const std::vector<ModuleElement>& extra) const;

    const ModuleDegree& realize(int d) const;

    std::optional<int> lowest_generator_degree() const;
    std::optional<int> highest_generator_degree() const;
    std::optional<int> highest_relation_degree() const;

    /// Degree of a nonzero homogeneous element; InhomogeneousElement otherwise.
    int element_degree(const ModuleElement& x) const;
    ModuleElement zero_element() const;
    ModuleElement generator_element(std::size_t g) const;
    /// Coordinates of a homogeneous element of degree d in the symbol basis.
    IntMatrix to_vector(const ModuleElement& x, int d) const;
    /// Inverse of to_vector for a single column.
    ModuleElement from_vector(const IntMatrix& column, int d) const;

    /// Matrix of multiplication by a homogeneous ring element, degree d -> d + |f|.
    IntMatrix action_matrix(const Polynomial& f, int d) const;
    /// The same map in reduced coordinates.
    IntMatrix reduced_action(const Polynomial& f, int d) const;

    /// Smallest b with M<i> = 0 for all i > b, when detectable by scanning
    /// degrees up to search_limit: a band of max-variable-degree zero degrees
    /// above every generator forces vanishing above it.
    std::optional<int> detect_grading_bound(int search_limit) const;

    std::string describe() const;

private:
    struct Data {
        RingPtr ring;
        std::vector<ModuleGenerator> generators;
        std::vector<ModuleElement> relations;
        std::vector<int> relation_degrees;
        mutable std::mutex mutex;
        mutable std::map<int, ModuleDegree> cache;  // keyed by unshifted degree
        mutable std::map<std::pair<Polynomial::Terms, int>, IntMatrix> actions;
    };
    std::shared_ptr<Data> data_;
    int shift_ = 0;
};

/// Homogeneous map sending generator g to images[g], raising internal degree by internal_shift.
class GradedMorphism {
public:
    GradedMorphism(GradedModule source, GradedModule target, int internal_shift, std::vector<ModuleElement> images);

    static GradedMorphism identity(const GradedModule& m);
    static GradedMorphism zero(const GradedModule& source, const GradedModule& target, int internal_shift = 0);
    /// Multiplication by a homogeneous ring element f on M (shift |f|).
    static GradedMorphism multiplication(const GradedModule& m, const Polynomial& f);
    /// Multiplication by f between two shifted views of the same module.
    static GradedMorphism scalar(const GradedModule& source, const GradedModule& target, const Polynomial& f);

    GradedMorphism negated() const;

    const GradedModule& source() const { return source_; }
    const GradedModule& target() const { return target_; }
    int internal_shift() const { return shift_; }
    const std::vector<ModuleElement>& images() const { return images_; }

    /// Matrix from source degree d to target degree d + shift on symbol bases.
    IntMatrix matrix(int d) const;
    /// The same map between reduced coordinates.
    IntMatrix reduced_matrix(int d) const;
    /// Image of an element of the source.
    ModuleElement apply(const ModuleElement& x) const;
    GradedMorphism compose_after(const GradedMorphism& first) const;  // this o first

    /// Every source relation of degree in [lo, hi] maps into the target's relations.
    bool well_defined_in(int lo, int hi) const;

private:
    GradedModule source_, target_;
    int shift_;
    std::vector<ModuleElement> images_;
    std::optional<Polynomial> scalar_;  // set when the map is multiplication by a ring element
};

/// Ideal generated by homogeneous positive-degree ring elements.
struct IdealSpec {
    std::vector<Polynomial> generators;

    void validate(const GradedRing& ring) const;
    int min_degree(const GradedRing& ring) const;
    int max_degree(const GradedRing& ring) const;
    /// All products of generators with exponents summing to n (one per exponent vector).
    std::vector<Polynomial> power_products(const GradedRing& ring, unsigned n) const;
};

enum class TorsionCertification { Certified, WithinWindow };

struct TorsionRadicalDegree {
    int degree = 0;
    Subquotient subgroup;  // in reduced coordinates of M<d>
    IntMatrix generators;  // the same generators in the symbol basis
    FGAbGroup group;
    unsigned power = 0;    // n such that I^n was tested
};

struct TorsionRadical {
    std::vector<TorsionRadicalDegree> degrees;
    TorsionCertification certification = TorsionCertification::WithinWindow;
    std::optional<int> grading_bound;

    const TorsionRadicalDegree& at(int d) const;
};

struct TorsionOptions {
    unsigned max_power = 16;
    bool require_certification = false;
};

/// I-power torsion t(M) degreewise over [lo, hi]. Certified when M is seen to
/// vanish above a bound; otherwise membership is tested with I^max_power.
TorsionRadical torsion_radical(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                               const TorsionOptions& options = {});

/// M / t(M) with the torsion generators found in [lo, hi] added as relations.
GradedModule quotient_by_torsion(const GradedModule& m, const TorsionRadical& t);

}  // namespace colocal
