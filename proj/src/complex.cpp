#include "colocal/complex.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace colocal {

namespace {

const Summands kNoSummands;
const std::vector<Block> kNoBlocks;

// Orders sit on the diagonal of the presentation; free rows have no column.
void reduce_rows(IntMatrix& m, const RealizedTerm& t) {
    std::size_t col = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (col < t.presentation.cols() && t.presentation(r, col) != 0) {
            const mpz_class& o = t.presentation(r, col);
            for (std::size_t j = 0; j < m.cols(); ++j) mpz_fdiv_r(m(r, j).get_mpz_t(), m(r, j).get_mpz_t(), o.get_mpz_t());
            ++col;
        }
    }
}

void place(IntMatrix& dst, const IntMatrix& block, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) dst(r0 + r, c0 + c) += block(r, c);
}

IntMatrix assemble(const std::vector<Block>& blocks, const RealizedTerm& src, const RealizedTerm& dst, int j) {
    IntMatrix m(dst.size, src.size);
    for (const auto& b : blocks) place(m, b.map.reduced_matrix(j), dst.offsets.at(b.target), src.offsets.at(b.source));
    reduce_rows(m, dst);
    return m;
}

}  // namespace

bool congruent(const IntMatrix& a, const IntMatrix& b, const RealizedTerm& target) {
    IntMatrix diff = a - b;
    reduce_rows(diff, target);
    return diff.is_zero();
}

GradedComplex GradedComplex::single(const GradedModule& m, int index) {
    GradedComplex c(m.ring());
    c.set_term(index, {m});
    return c;
}

void GradedComplex::set_term(int i, Summands summands) {
    if (summands.empty()) {
        terms_.erase(i);
        return;
    }
    terms_[i] = std::move(summands);
}

void GradedComplex::add_block(int i, std::size_t source, std::size_t target, GradedMorphism map) {
    if (source >= term(i).size() || target >= term(i + 1).size())
        throw std::out_of_range("differential block outside the terms");
    if (map.internal_shift() != 0) throw ValidationError("differentials must have internal degree 0");
    blocks_[i].push_back({source, target, std::move(map)});
}

const Summands& GradedComplex::term(int i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? kNoSummands : it->second;
}

const std::vector<Block>& GradedComplex::blocks(int i) const {
    auto it = blocks_.find(i);
    return it == blocks_.end() ? kNoBlocks : it->second;
}

int GradedComplex::min_index() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int GradedComplex::max_index() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

RealizedTerm GradedComplex::realize(int i, int j) const {
    RealizedTerm t;
    t.presentation = IntMatrix(0, 0);
    for (const auto& m : term(i)) {
        const ModuleDegree& md = m.realize(j);
        t.offsets.push_back(t.size);
        t.size += md.reduced_size();
        t.presentation = t.presentation.block_sum(md.reduced_presentation());
    }
    return t;
}

IntMatrix GradedComplex::differential(int i, int j) const {
    return assemble(blocks(i), realize(i, j), realize(i + 1, j), j);
}

void GradedComplex::check_square_zero(int i, int j) const {
    RealizedTerm next = realize(i + 1, j);
    IntMatrix dd = differential(i, j) * differential(i - 1, j);
    if (!congruent(dd, IntMatrix(dd.rows(), dd.cols()), next))
        throw NotAComplex("d^" + std::to_string(i) + " d^" + std::to_string(i - 1) + " is nonzero in internal degree " +
                          std::to_string(j));
}

Subquotient GradedComplex::homology_at(int i, int j) const {
    RealizedTerm here = realize(i, j);
    RealizedTerm next = realize(i + 1, j);
    IntMatrix d_in = differential(i - 1, j);
    IntMatrix d_out = differential(i, j);
    IntMatrix dd = d_out * d_in;
    if (!congruent(dd, IntMatrix(dd.rows(), dd.cols()), next))
        throw NotAComplex("d^" + std::to_string(i) + " d^" + std::to_string(i - 1) + " is nonzero in internal degree " +
                          std::to_string(j));
    return presented_homology(here.presentation, d_in, d_out, next.presentation);
}

FGAbGroup GradedComplex::homology_group(int i, int j) const {
    return homology_at(i, j).group.as_vector_space(scalars());
}

std::map<std::pair<int, int>, FGAbGroup> GradedComplex::homology(int lo, int hi) const {
    std::map<std::pair<int, int>, FGAbGroup> out;
    for (int i = min_index(); i <= max_index(); ++i)
        for (int j = lo; j <= hi; ++j) out[{i, j}] = homology_group(i, j);
    return out;
}

void ChainMap::add_block(int i, std::size_t source, std::size_t target, GradedMorphism map) {
    if (source >= source_.term(i).size() || target >= target_.term(i).size())
        throw std::out_of_range("chain map block outside the terms");
    if (map.internal_shift() != 0) throw ValidationError("chain maps must have internal degree 0");
    blocks_[i].push_back({source, target, std::move(map)});
}

const std::vector<Block>& ChainMap::blocks(int i) const {
    auto it = blocks_.find(i);
    return it == blocks_.end() ? kNoBlocks : it->second;
}

IntMatrix ChainMap::matrix(int i, int j) const {
    return assemble(blocks(i), source_.realize(i, j), target_.realize(i, j), j);
}

bool ChainMap::commutes(int i, int j) const {
    IntMatrix lhs = target_.differential(i, j) * matrix(i, j);
    IntMatrix rhs = matrix(i + 1, j) * source_.differential(i, j);
    return congruent(lhs, rhs, target_.realize(i + 1, j));
}

IntMatrix ChainMap::induced(int i, int j, const Subquotient& source_h, const Subquotient& target_h) const {
    return induced_map(source_h, target_h, matrix(i, j));
}

std::vector<unsigned> subsets_of_size(std::size_t m, std::size_t k) {
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == k) out.push_back(mask);
    return out;
}

int subset_degree(const GradedRing& ring, const IdealSpec& ideal, unsigned mask) {
    int d = 0;
    for (std::size_t i = 0; i < ideal.generators.size(); ++i)
        if ((mask >> i) & 1u)
            if (!ideal.generators[i].is_zero()) d += ring.degree_of(ideal.generators[i]);
    return d;
}

GradedComplex koszul(const GradedModule& m, const IdealSpec& ideal, unsigned t) {
    if (t < 1) throw ValidationError("Koszul power must be at least 1");
    const GradedRing& R = *m.ring();
    ideal.validate(R);
    const std::size_t n = ideal.generators.size();
    if (n > 16) throw ValidationError("too many ideal generators");
    GradedComplex k(m.ring());
    std::vector<std::vector<unsigned>> masks(n + 1);
    std::vector<Polynomial> powers;
    for (const auto& x : ideal.generators) powers.push_back(x.pow(t, R.nvars()));
    for (std::size_t s = 0; s <= n; ++s) {
        masks[s] = subsets_of_size(n, s);
        Summands terms;
        for (unsigned mask : masks[s])
            terms.push_back(m.shift(-static_cast<int>(t) * subset_degree(R, ideal, mask)));
        k.set_term(static_cast<int>(s), std::move(terms));
    }
    for (std::size_t s = 0; s < n; ++s) {
        const auto& src = masks[s];
        const auto& dst = masks[s + 1];
        for (std::size_t a = 0; a < src.size(); ++a)
            for (std::size_t i = 0; i < n; ++i) {
                if ((src[a] >> i) & 1u) continue;
                const unsigned target_mask = src[a] | (1u << i);
                const std::size_t b = std::find(dst.begin(), dst.end(), target_mask) - dst.begin();
                const bool odd = std::popcount(src[a] & ((1u << i) - 1)) % 2 == 1;
                Polynomial f = odd ? powers[i].scaled(-1) : powers[i];
                k.add_block(static_cast<int>(s), a, b,
                            GradedMorphism::scalar(k.term(static_cast<int>(s))[a],
                                                   k.term(static_cast<int>(s) + 1)[b], f));
            }
    }
    return k;
}

ChainMap koszul_transition(const GradedModule& m, const IdealSpec& ideal, unsigned s, unsigned t) {
    if (s > t) throw std::invalid_argument("transition must raise the power");
    GradedComplex src = koszul(m, ideal, s);
    GradedComplex dst = koszul(m, ideal, t);
    ChainMap f(src, dst);
    const GradedRing& R = *m.ring();
    const std::size_t n = ideal.generators.size();
    for (std::size_t k = 0; k <= n; ++k) {
        auto masks = subsets_of_size(n, k);
        for (std::size_t a = 0; a < masks.size(); ++a) {
            Polynomial x = R.one();
            for (std::size_t i = 0; i < n; ++i)
                if ((masks[a] >> i) & 1u) x = x * ideal.generators[i].pow(t - s, R.nvars());
            const int idx = static_cast<int>(k);
            f.add_block(idx, a, a, GradedMorphism::scalar(src.term(idx)[a], dst.term(idx)[a], x));
        }
    }
    return f;
}

GradedComplex shift_complex(const GradedComplex& c, int n) {
    GradedComplex s(c.ring());
    for (int i = c.min_index(); i <= c.max_index(); ++i) s.set_term(i - n, c.term(i));
    for (int i = c.min_index(); i <= c.max_index(); ++i)
        for (const auto& b : c.blocks(i)) s.add_block(i - n, b.source, b.target, n % 2 ? b.map.negated() : b.map);
    return s;
}

GradedComplex cone(const ChainMap& f) {
    const GradedComplex& C = f.source();
    const GradedComplex& D = f.target();
    GradedComplex k(D.ring());
    const int lo = std::min(C.min_index() - 1, D.min_index());
    const int hi = std::max(C.max_index() - 1, D.max_index());
    for (int i = lo; i <= hi; ++i) {
        Summands s = C.term(i + 1);
        for (const auto& m : D.term(i)) s.push_back(m);
        k.set_term(i, std::move(s));
    }
    for (int i = lo; i <= hi; ++i) {
        const std::size_t c_here = C.term(i + 1).size();
        const std::size_t c_next = C.term(i + 2).size();
        for (const auto& b : C.blocks(i + 1)) k.add_block(i, b.source, b.target, b.map.negated());
        for (const auto& b : f.blocks(i + 1)) k.add_block(i, b.source, c_next + b.target, b.map);
        for (const auto& b : D.blocks(i)) k.add_block(i, c_here + b.source, c_next + b.target, b.map);
    }
    return k;
}

ChainMap cone_inclusion(const ChainMap& f) {
    GradedComplex k = cone(f);
    ChainMap inc(f.target(), k);
    const GradedComplex& D = f.target();
    for (int i = D.min_index(); i <= D.max_index(); ++i) {
        const std::size_t offset = f.source().term(i + 1).size();
        for (std::size_t a = 0; a < D.term(i).size(); ++a)
            inc.add_block(i, a, offset + a, GradedMorphism::scalar(D.term(i)[a], D.term(i)[a], D.ring()->one()));
    }
    return inc;
}

ChainMap cone_projection(const ChainMap& f) {
    GradedComplex k = cone(f);
    GradedComplex shifted = shift_complex(f.source(), 1);
    ChainMap proj(k, shifted);
    for (int i = shifted.min_index(); i <= shifted.max_index(); ++i)
        for (std::size_t a = 0; a < shifted.term(i).size(); ++a)
            proj.add_block(i, a, a,
                           GradedMorphism::scalar(shifted.term(i)[a], shifted.term(i)[a], f.source().ring()->one()));
    return proj;
}

GradedModule tensor(const GradedModule& a, const GradedModule& b) {
    const std::size_t na = a.rank(), nb = b.rank();
    std::vector<ModuleGenerator> gens;
    auto ga = a.generators();
    auto gb = b.generators();
    for (std::size_t g = 0; g < na; ++g)
        for (std::size_t h = 0; h < nb; ++h) gens.push_back({ga[g].name + "*" + gb[h].name, ga[g].degree + gb[h].degree});
    std::vector<ModuleElement> rels;
    for (const auto& rho : a.relations())
        for (std::size_t h = 0; h < nb; ++h) {
            ModuleElement x(na * nb);
            for (std::size_t g = 0; g < na; ++g) x[g * nb + h] = rho[g];
            rels.push_back(std::move(x));
        }
    for (const auto& sigma : b.relations())
        for (std::size_t g = 0; g < na; ++g) {
            ModuleElement x(na * nb);
            for (std::size_t h = 0; h < nb; ++h) x[g * nb + h] = sigma[h];
            rels.push_back(std::move(x));
        }
    return GradedModule(a.ring(), std::move(gens), std::move(rels));
}

namespace {

GradedMorphism tensor_into(const GradedMorphism& f, const GradedMorphism& g, const GradedModule& source,
                           const GradedModule& target) {
    const std::size_t ns = g.source().rank(), nt = g.target().rank();
    std::vector<ModuleElement> images;
    for (std::size_t g1 = 0; g1 < f.source().rank(); ++g1)
        for (std::size_t h1 = 0; h1 < ns; ++h1) {
            ModuleElement x(f.target().rank() * nt);
            for (std::size_t g2 = 0; g2 < f.target().rank(); ++g2) {
                if (f.images()[g1][g2].is_zero()) continue;
                for (std::size_t h2 = 0; h2 < nt; ++h2)
                    if (!g.images()[h1][h2].is_zero())
                        x[g2 * nt + h2] = x[g2 * nt + h2] + f.images()[g1][g2] * g.images()[h1][h2];
            }
            images.push_back(std::move(x));
        }
    return GradedMorphism(source, target, f.internal_shift() + g.internal_shift(), std::move(images));
}

}  // namespace

GradedMorphism tensor(const GradedMorphism& f, const GradedMorphism& g) {
    return tensor_into(f, g, tensor(f.source(), g.source()), tensor(f.target(), g.target()));
}

GradedComplex tensor(const GradedComplex& c, const GradedComplex& d) {
    GradedComplex t(c.ring());
    if (c.empty() || d.empty()) return t;
    struct Entry {
        int p;
        std::size_t a, b;
    };
    const int lo = c.min_index() + d.min_index();
    const int hi = c.max_index() + d.max_index();
    std::map<int, std::vector<Entry>> entries;
    for (int n = lo; n <= hi; ++n) {
        Summands s;
        for (int p = c.min_index(); p <= c.max_index(); ++p)
            for (std::size_t a = 0; a < c.term(p).size(); ++a)
                for (std::size_t b = 0; b < d.term(n - p).size(); ++b) {
                    entries[n].push_back({p, a, b});
                    s.push_back(tensor(c.term(p)[a], d.term(n - p)[b]));
                }
        t.set_term(n, std::move(s));
    }
    auto index_of = [&](int n, int p, std::size_t a, std::size_t b) {
        const auto& e = entries[n];
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k].p == p && e[k].a == a && e[k].b == b) return k;
        throw std::logic_error("tensor: missing summand");
    };
    for (int n = lo; n < hi; ++n) {
        for (std::size_t k = 0; k < entries[n].size(); ++k) {
            const auto [p, a, b] = entries[n][k];
            const int q = n - p;
            const GradedModule& src = t.term(n)[k];
            for (const auto& blk : c.blocks(p)) {
                if (blk.source != a) continue;
                const std::size_t target = index_of(n + 1, p + 1, blk.target, b);
                auto id = GradedMorphism::identity(d.term(q)[b]);
                t.add_block(n, k, target, tensor_into(blk.map, id, src, t.term(n + 1)[target]));
            }
            for (const auto& blk : d.blocks(q)) {
                if (blk.source != b) continue;
                const std::size_t target = index_of(n + 1, p, a, blk.target);
                auto id = GradedMorphism::identity(c.term(p)[a]);
                GradedMorphism m = tensor_into(id, blk.map, src, t.term(n + 1)[target]);
                t.add_block(n, k, target, p % 2 ? m.negated() : m);
            }
        }
    }
    return t;
}

}  // namespace colocal
