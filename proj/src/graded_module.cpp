#include "colocal/graded_module.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

namespace colocal {

namespace {

bool in_column_span(const IntMatrix& P, const IntMatrix& v, const Scalars& s) {
    if (v.is_zero()) return true;
    if (s.kind == ScalarKind::Rationals) return rank_rational(P.hcat(v)) == rank_rational(P);
    try {
        solve_in_lattice(lattice_basis(P), v);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

}  // namespace

IntMatrix ModuleDegree::reduced_presentation() const {
    std::size_t nz = 0;
    for (const auto& o : orders)
        if (o != 0) ++nz;
    IntMatrix p(orders.size(), nz);
    std::size_t c = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] != 0) p(i, c++) = orders[i];
    return p;
}

IntMatrix ModuleDegree::reduce(const IntMatrix& symbol_columns) const {
    IntMatrix r = to_reduced * symbol_columns;
    for (std::size_t i = 0; i < r.rows(); ++i)
        if (orders[i] != 0)
            for (std::size_t j = 0; j < r.cols(); ++j) mpz_fdiv_r(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), orders[i].get_mpz_t());
    return r;
}

GradedModule::GradedModule(RingPtr ring, std::vector<ModuleGenerator> generators, std::vector<ModuleElement> relations)
    : data_(std::make_shared<Data>()) {
    data_->ring = std::move(ring);
    data_->generators = std::move(generators);
    for (auto& r : relations) {
        if (r.size() != data_->generators.size())
            throw ValidationError("module relation has " + std::to_string(r.size()) + " coefficients, expected " +
                                  std::to_string(data_->generators.size()));
        bool zero = std::all_of(r.begin(), r.end(), [](const Polynomial& p) { return p.is_zero(); });
        if (zero) continue;
        data_->relation_degrees.push_back(element_degree(r));
        data_->relations.push_back(std::move(r));
    }
}

GradedModule GradedModule::ring_module(RingPtr ring) { return GradedModule(std::move(ring), {{"1", 0}}, {}); }

GradedModule GradedModule::free(RingPtr ring, const std::vector<int>& degrees) {
    std::vector<ModuleGenerator> gens;
    for (std::size_t i = 0; i < degrees.size(); ++i) gens.push_back({"e" + std::to_string(i), degrees[i]});
    return GradedModule(std::move(ring), std::move(gens), {});
}

GradedModule GradedModule::cyclic(RingPtr ring, const std::vector<Polynomial>& ideal) {
    std::vector<ModuleElement> rels;
    for (const auto& f : ideal) rels.push_back({f});
    return GradedModule(std::move(ring), {{"1", 0}}, std::move(rels));
}

GradedModule GradedModule::direct_sum(const std::vector<GradedModule>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum of no modules");
    const RingPtr& ring = parts.front().ring();
    std::vector<ModuleGenerator> gens;
    std::vector<ModuleElement> rels;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.rank();
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (const auto& g : p.generators()) gens.push_back(g);
        for (const auto& r : p.relations()) {
            ModuleElement x(total);
            for (std::size_t g = 0; g < r.size(); ++g) x[offset + g] = r[g];
            rels.push_back(std::move(x));
        }
        offset += p.rank();
    }
    return GradedModule(ring, std::move(gens), std::move(rels));
}

std::vector<ModuleGenerator> GradedModule::generators() const {
    auto gens = data_->generators;
    for (auto& g : gens) g.degree += shift_;
    return gens;
}

std::vector<int> GradedModule::relation_degrees() const {
    auto degs = data_->relation_degrees;
    for (auto& d : degs) d += shift_;
    return degs;
}

GradedModule GradedModule::shift(int n) const {
    GradedModule m = *this;
    m.shift_ += n;
    return m;
}

GradedModule GradedModule::with_extra_relations(const std::vector<ModuleElement>& extra) const {
    auto rels = relations();
    rels.insert(rels.end(), extra.begin(), extra.end());
    return GradedModule(ring(), generators(), std::move(rels));
}

std::optional<int> GradedModule::lowest_generator_degree() const {
    std::optional<int> d;
    for (const auto& g : generators()) d = d ? std::min(*d, g.degree) : g.degree;
    return d;
}

std::optional<int> GradedModule::highest_generator_degree() const {
    std::optional<int> d;
    for (const auto& g : generators()) d = d ? std::max(*d, g.degree) : g.degree;
    return d;
}

std::optional<int> GradedModule::highest_relation_degree() const {
    std::optional<int> d;
    for (int e : relation_degrees()) d = d ? std::max(*d, e) : e;
    for (std::size_t g = 0; g < rank(); ++g)
        for (int e : ring()->relation_degrees()) d = d ? std::max(*d, generator_degree(g) + e) : generator_degree(g) + e;
    return d;
}

int GradedModule::element_degree(const ModuleElement& x) const {
    std::optional<int> d;
    for (std::size_t g = 0; g < x.size(); ++g) {
        if (x[g].is_zero()) continue;
        auto e = ring()->homogeneous_degree(x[g]);
        if (!e || (d && *d != *e + generator_degree(g)))
            throw InhomogeneousElement("inhomogeneous module element");
        d = *e + generator_degree(g);
    }
    if (!d) throw InhomogeneousElement("the zero element has no degree");
    return *d;
}

ModuleElement GradedModule::zero_element() const { return ModuleElement(rank()); }

ModuleElement GradedModule::generator_element(std::size_t g) const {
    ModuleElement x(rank());
    x[g] = ring()->one();
    return x;
}

const ModuleDegree& GradedModule::realize(int shifted_degree) const {
    const int d = shifted_degree - shift_;
    {
        std::lock_guard lock(data_->mutex);
        auto it = data_->cache.find(d);
        if (it != data_->cache.end()) return it->second;
    }
    const GradedRing& R = *ring();
    const auto& gens = data_->generators;
    const auto& rels = data_->relations;
    ModuleDegree md;
    IntMatrix ring_part(0, 0);
    for (std::size_t g = 0; g < rank(); ++g) {
        md.offsets.push_back(md.symbols.size());
        const int rest = d - gens[g].degree;
        const auto& mons = R.monomials(rest);
        for (const auto& m : mons) md.symbols.emplace_back(g, m);
        const DegreeBasis& rb = R.degree_basis(rest);
        ring_part = ring_part.block_sum(rb.presentation);
    }
    const std::size_t n = md.symbols.size();
    std::vector<IntMatrix> module_cols;
    std::size_t count = 0;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        const int rest = d - data_->relation_degrees[r];
        if (rest < 0) continue;
        for (const auto& m : R.monomials(rest)) {
            IntMatrix col(n, 1);
            const auto& rel = rels[r];
            for (std::size_t g = 0; g < rel.size(); ++g)
                for (const auto& [rm, c] : rel[g].terms()) {
                    Monomial prod = monomial_product(rm, m);
                    col(md.offsets[g] + R.monomial_index(d - gens[g].degree, prod), 0) += c;
                }
            module_cols.push_back(std::move(col));
            ++count;
        }
    }
    IntMatrix mod_part(n, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i < n; ++i) mod_part(i, j) = module_cols[j](i, 0);
    md.presentation = (ring_part.rows() == n ? ring_part : IntMatrix(n, 0)).hcat(mod_part);
    {
        SmithForm f = smith_normal_form(md.presentation);
        const bool rational = R.scalars().kind == ScalarKind::Rationals;
        std::vector<std::size_t> keep;
        std::vector<mpz_class> tors;
        std::size_t free_rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mpz_class o = i < f.rank ? f.D(i, i) : mpz_class(0);
            if (o == 1 || (rational && o != 0)) continue;
            keep.push_back(i);
            md.orders.push_back(o);
            if (o == 0) ++free_rank;
            else tors.push_back(o);
        }
        md.to_reduced = IntMatrix(keep.size(), n);
        md.from_reduced = IntMatrix(n, keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) {
                md.to_reduced(k, i) = f.U(keep[k], i);
                md.from_reduced(i, k) = f.U_inv(i, keep[k]);
            }
        md.group = FGAbGroup(free_rank, tors).as_vector_space(R.scalars());
    }
    std::lock_guard lock(data_->mutex);
    return data_->cache.emplace(d, std::move(md)).first->second;
}

IntMatrix GradedModule::to_vector(const ModuleElement& x, int d) const {
    const ModuleDegree& md = realize(d);
    IntMatrix v(md.size(), 1);
    for (std::size_t g = 0; g < x.size(); ++g)
        for (const auto& [m, c] : x[g].terms()) {
            if (ring()->monomial_degree(m) + generator_degree(g) != d)
                throw InhomogeneousElement("element term outside degree " + std::to_string(d));
            v(md.offsets[g] + ring()->monomial_index(d - generator_degree(g), m), 0) += c;
        }
    return v;
}

ModuleElement GradedModule::from_vector(const IntMatrix& column, int d) const {
    const ModuleDegree& md = realize(d);
    ModuleElement x(rank());
    for (std::size_t i = 0; i < md.size(); ++i)
        if (column(i, 0) != 0) x[md.symbols[i].first].add_term(md.symbols[i].second, column(i, 0));
    return x;
}

IntMatrix GradedModule::action_matrix(const Polynomial& f, int d) const {
    const ModuleDegree& src = realize(d);
    if (f.is_zero()) return IntMatrix(0, src.size());
    const int e = ring()->degree_of(f);
    const ModuleDegree& dst = realize(d + e);
    IntMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        const auto& [g, mono] = src.symbols[j];
        const int target_rest = d + e - generator_degree(g);
        for (const auto& [fm, c] : f.terms())
            m(dst.offsets[g] + ring()->monomial_index(target_rest, monomial_product(fm, mono)), j) += c;
    }
    return m;
}

IntMatrix GradedModule::reduced_action(const Polynomial& f, int d) const {
    const ModuleDegree& src = realize(d);
    if (f.is_zero()) return IntMatrix(0, src.reduced_size());
    auto key = std::make_pair(f.terms(), d - shift_);
    {
        std::lock_guard lock(data_->mutex);
        auto it = data_->actions.find(key);
        if (it != data_->actions.end()) return it->second;
    }
    const ModuleDegree& dst = realize(d + ring()->degree_of(f));
    IntMatrix m = dst.reduce(action_matrix(f, d) * src.from_reduced);
    std::lock_guard lock(data_->mutex);
    data_->actions.emplace(std::move(key), m);
    return m;
}

std::optional<int> GradedModule::detect_grading_bound(int search_limit) const {
    auto lo = lowest_generator_degree();
    if (!lo) return INT_MIN / 4;  // zero module
    const int hi_gen = *highest_generator_degree();
    const int band = ring()->nvars() ? ring()->max_variable_degree() : 0;
    auto nonzero = [&](int d) { return !realize(d).group.is_zero(); };
    if (band == 0) {
        int b = *lo - 1;
        for (int d = *lo; d <= hi_gen; ++d)
            if (nonzero(d)) b = d;
        return b;
    }
    for (int b = hi_gen; b <= search_limit; ++b) {
        bool clear = true;
        for (int d = b + 1; d <= b + band && clear; ++d) clear = !nonzero(d);
        if (!clear) continue;
        int top = *lo - 1;
        for (int d = *lo; d <= b; ++d)
            if (nonzero(d)) top = d;
        return top;
    }
    return std::nullopt;
}

std::string GradedModule::describe() const {
    auto names = ring()->variable_names();
    std::string s = "generators:";
    for (const auto& g : generators()) s += " " + g.name + "<" + std::to_string(g.degree) + ">";
    s += "; relations:";
    for (const auto& r : relations()) {
        s += " (";
        for (std::size_t g = 0; g < r.size(); ++g) s += (g ? ", " : "") + r[g].to_string(names);
        s += ")";
    }
    return s;
}

GradedMorphism::GradedMorphism(GradedModule source, GradedModule target, int internal_shift,
                               std::vector<ModuleElement> images)
    : source_(std::move(source)), target_(std::move(target)), shift_(internal_shift), images_(std::move(images)) {
    if (images_.size() != source_.rank()) throw ValidationError("morphism needs one image per source generator");
    for (std::size_t g = 0; g < images_.size(); ++g) {
        if (images_[g].size() != target_.rank()) throw ValidationError("morphism image has wrong length");
        bool zero = std::all_of(images_[g].begin(), images_[g].end(), [](const Polynomial& p) { return p.is_zero(); });
        if (!zero && target_.element_degree(images_[g]) != source_.generator_degree(g) + shift_)
            throw InhomogeneousElement("morphism image of generator " + std::to_string(g) + " has the wrong degree");
    }
}

GradedMorphism GradedMorphism::identity(const GradedModule& m) {
    std::vector<ModuleElement> images;
    for (std::size_t g = 0; g < m.rank(); ++g) images.push_back(m.generator_element(g));
    return GradedMorphism(m, m, 0, std::move(images));
}

GradedMorphism GradedMorphism::zero(const GradedModule& source, const GradedModule& target, int internal_shift) {
    return GradedMorphism(source, target, internal_shift,
                          std::vector<ModuleElement>(source.rank(), target.zero_element()));
}

GradedMorphism GradedMorphism::multiplication(const GradedModule& m, const Polynomial& f) {
    const int e = m.ring()->degree_of(f);
    std::vector<ModuleElement> images;
    for (std::size_t g = 0; g < m.rank(); ++g) {
        ModuleElement x = m.zero_element();
        x[g] = f;
        images.push_back(std::move(x));
    }
    GradedMorphism mu(m, m, e, std::move(images));
    mu.scalar_ = f;
    return mu;
}

GradedMorphism GradedMorphism::scalar(const GradedModule& source, const GradedModule& target, const Polynomial& f) {
    if (!source.shares_presentation(target)) throw std::invalid_argument("scalar morphism between different modules");
    const int e = f.is_zero() ? 0 : source.ring()->degree_of(f);
    std::vector<ModuleElement> images;
    for (std::size_t g = 0; g < source.rank(); ++g) {
        ModuleElement x = target.zero_element();
        x[g] = f;
        images.push_back(std::move(x));
    }
    GradedMorphism m(source, target, e + target.shift_amount() - source.shift_amount(), std::move(images));
    m.scalar_ = f;
    return m;
}

GradedMorphism GradedMorphism::negated() const {
    auto images = images_;
    for (auto& x : images)
        for (auto& p : x) p = p.scaled(-1);
    GradedMorphism m(source_, target_, shift_, std::move(images));
    if (scalar_) m.scalar_ = scalar_->scaled(-1);
    return m;
}

IntMatrix GradedMorphism::matrix(int d) const {
    const ModuleDegree& src = source_.realize(d);
    const ModuleDegree& dst = target_.realize(d + shift_);
    const GradedRing& R = *source_.ring();
    IntMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        const auto& [g, mono] = src.symbols[j];
        const auto& image = images_[g];
        for (std::size_t h = 0; h < image.size(); ++h) {
            const int rest = d + shift_ - target_.generator_degree(h);
            for (const auto& [im, c] : image[h].terms())
                m(dst.offsets[h] + R.monomial_index(rest, monomial_product(im, mono)), j) += c;
        }
    }
    return m;
}

IntMatrix GradedMorphism::reduced_matrix(int d) const {
    if (scalar_) {
        if (scalar_->is_zero())
            return IntMatrix(target_.realize(d + shift_).reduced_size(), source_.realize(d).reduced_size());
        return source_.reduced_action(*scalar_, d);
    }
    return target_.realize(d + shift_).reduce(matrix(d) * source_.realize(d).from_reduced);
}

ModuleElement GradedMorphism::apply(const ModuleElement& x) const {
    ModuleElement y = target_.zero_element();
    for (std::size_t g = 0; g < x.size(); ++g) {
        if (x[g].is_zero()) continue;
        for (std::size_t h = 0; h < y.size(); ++h) y[h] = y[h] + x[g] * images_[g][h];
    }
    return y;
}

GradedMorphism GradedMorphism::compose_after(const GradedMorphism& first) const {
    std::vector<ModuleElement> images;
    for (const auto& img : first.images()) images.push_back(apply(img));
    return GradedMorphism(first.source(), target_, first.internal_shift() + shift_, std::move(images));
}

bool GradedMorphism::well_defined_in(int lo, int hi) const {
    for (std::size_t r = 0; r < source_.relations().size(); ++r) {
        const int e = source_.relation_degrees()[r];
        if (e < lo || e > hi) continue;
        ModuleElement img = apply(source_.relations()[r]);
        IntMatrix v = target_.to_vector(img, e + shift_);
        if (!in_column_span(target_.realize(e + shift_).presentation, v, source_.ring()->scalars())) return false;
    }
    return true;
}

void IdealSpec::validate(const GradedRing& ring) const {
    for (const auto& f : generators) {
        if (f.is_zero()) continue;  // the zero element is admitted (it generates nothing)
        if (ring.degree_of(f) <= 0) throw ValidationError("ideal generators must have positive degree");
    }
}

int IdealSpec::min_degree(const GradedRing& ring) const {
    int m = 0;
    for (const auto& f : generators)
        if (!f.is_zero()) m = m == 0 ? ring.degree_of(f) : std::min(m, ring.degree_of(f));
    return m;
}

int IdealSpec::max_degree(const GradedRing& ring) const {
    int m = 0;
    for (const auto& f : generators)
        if (!f.is_zero()) m = std::max(m, ring.degree_of(f));
    return m;
}

std::vector<Polynomial> IdealSpec::power_products(const GradedRing& ring, unsigned n) const {
    std::vector<Polynomial> out;
    const std::size_t k = generators.size();
    if (k == 0) return out;
    std::vector<unsigned> a(k, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == k) {
            a[i] = left;
            Polynomial p = ring.one();
            for (std::size_t j = 0; j < k; ++j) p = p * generators[j].pow(a[j], ring.nvars());
            if (!p.is_zero()) out.push_back(std::move(p));
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            a[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, n);
    return out;
}

const TorsionRadicalDegree& TorsionRadical::at(int d) const {
    for (const auto& t : degrees)
        if (t.degree == d) return t;
    throw std::out_of_range("degree outside torsion radical window");
}

TorsionRadical torsion_radical(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                               const TorsionOptions& options) {
    if (lo > hi) throw ValidationError("empty window");
    const GradedRing& R = *m.ring();
    ideal.validate(R);
    TorsionRadical result;
    const int min_deg = ideal.min_degree(R);
    int limit = std::max(hi, m.highest_relation_degree().value_or(hi));
    limit = std::max(limit, m.highest_generator_degree().value_or(hi));
    limit += static_cast<int>(options.max_power) * std::max(min_deg, 1);
    result.grading_bound = m.detect_grading_bound(limit);
    if (result.grading_bound) result.certification = TorsionCertification::Certified;
    else if (options.require_certification)
        throw WindowTooSmall("torsion radical: no vanishing bound found up to degree " + std::to_string(limit));

    const bool all_zero_ideal = min_deg == 0;
    for (int d = lo; d <= hi; ++d) {
        TorsionRadicalDegree td;
        td.degree = d;
        const ModuleDegree& md = m.realize(d);
        unsigned n = options.max_power;
        if (result.grading_bound) {
            const int b = *result.grading_bound;
            n = d > b ? 1u : static_cast<unsigned>((b - d) / std::max(min_deg, 1) + 1);
        }
        td.power = n;
        const std::size_t k = md.reduced_size();
        IntMatrix stacked(0, k);
        IntMatrix target_pres(0, 0);
        if (!all_zero_ideal && k > 0) {
            for (const auto& mu : ideal.power_products(R, n)) {
                const int e = R.degree_of(mu);
                stacked = stacked.vcat(m.reduced_action(mu, d));
                target_pres = target_pres.block_sum(m.realize(d + e).reduced_presentation());
            }
        }
        if (target_pres.rows() != stacked.rows()) target_pres = IntMatrix(stacked.rows(), 0);
        td.subgroup = presented_homology(md.reduced_presentation(), IntMatrix(k, 0), stacked, target_pres);
        td.generators = md.from_reduced * td.subgroup.cycles;
        td.group = td.subgroup.group.as_vector_space(R.scalars());
        result.degrees.push_back(std::move(td));
    }
    return result;
}

GradedModule quotient_by_torsion(const GradedModule& m, const TorsionRadical& t) {
    std::vector<ModuleElement> extra;
    for (const auto& td : t.degrees)
        for (std::size_t c = 0; c < td.generators.cols(); ++c) {
            ModuleElement x = m.from_vector(td.generators.column(c), td.degree);
            bool zero = std::all_of(x.begin(), x.end(), [](const Polynomial& p) { return p.is_zero(); });
            if (!zero) extra.push_back(std::move(x));
        }
    return m.with_extra_relations(extra);
}

}  // namespace colocal
