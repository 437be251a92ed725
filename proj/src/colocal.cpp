#include "colocal/colocal.hpp"

#include "colocal/errors.hpp"
#include "colocal/parallel.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <thread>

namespace colocal {

std::string to_string(Certification c) {
    switch (c) {
    case Certification::StableSteps: return "stable-k-steps";
    case Certification::RegularSequence: return "certified-regular-sequence";
    case Certification::GradingBound: return "certified-grading-bound";
    }
    return "?";
}

unsigned worker_count(const StabilizationPolicy& policy, std::size_t jobs) {
    unsigned n = policy.threads ? policy.threads : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COLOCAL_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    if (jobs < n) n = static_cast<unsigned>(std::max<std::size_t>(jobs, 1));
    return n;
}

const FGAbGroup& LocalCohomologyResult::at(int i, int j) const {
    static const FGAbGroup zero;
    auto it = groups.find({i, j});
    return it == groups.end() ? zero : it->second;
}

unsigned LocalCohomologyResult::level(int j) const {
    unsigned t = 1;
    for (const auto& [key, s] : stabilized_at)
        if (key.second == j) t = std::max(t, s);
    return t;
}

bool LocalCohomologyResult::vanishes_above_generators() const {
    for (const auto& [key, g] : groups)
        if (key.first > static_cast<int>(generators) && !g.is_zero()) return false;
    return true;
}

namespace {

/// Realized Koszul-type complex at one level t and one internal degree j.
struct Level {
    std::vector<IntMatrix> pres;  // index 0..m
    std::vector<IntMatrix> diff;  // d^i for i = 0..m-1
};

Subquotient level_homology(const Level& L, std::size_t i) {
    const std::size_t m = L.pres.size() - 1;
    const std::size_t n = L.pres[i].rows();
    IntMatrix d_in = i > 0 ? L.diff[i - 1] : IntMatrix(n, 0);
    IntMatrix d_out = i < m ? L.diff[i] : IntMatrix(0, n);
    IntMatrix out_pres = i < m ? L.pres[i + 1] : IntMatrix(0, 0);
    if (d_in.cols() == 0) d_in = IntMatrix(n, 0);
    if (d_out.rows() == 0) d_out = IntMatrix(0, n);
    if (out_pres.rows() != d_out.rows()) out_pres = IntMatrix(d_out.rows(), 0);
    return presented_homology(L.pres[i], d_in, d_out, out_pres);
}

class Provider {
public:
    Provider(GradedModule m, IdealSpec ideal, bool cech) : m_(std::move(m)), ideal_(std::move(ideal)), cech_(cech) {}

    std::size_t length() const { return ideal_.generators.size(); }
    const IdealSpec& ideal() const { return ideal_; }
    const GradedModule& module() const { return m_; }

    Level level(unsigned t, int j) const {
        GradedComplex K = koszul(m_, ideal_, t);
        Level L;
        const std::size_t m = length();
        for (std::size_t i = 0; i <= m; ++i) {
            RealizedTerm rt = K.realize(static_cast<int>(i), j);
            IntMatrix pres = rt.presentation;
            if (cech_) pres = augment(K, rt, t, i, j);
            L.pres.push_back(std::move(pres));
        }
        for (std::size_t i = 0; i < m; ++i) L.diff.push_back(K.differential(static_cast<int>(i), j));
        return L;
    }

    std::vector<IntMatrix> transition(unsigned t, int j) const {
        ChainMap f = koszul_transition(m_, ideal_, t, t + 1);
        std::vector<IntMatrix> out;
        for (std::size_t i = 0; i <= length(); ++i) out.push_back(f.matrix(static_cast<int>(i), j));
        return out;
    }

private:
    // Adds the x_S^t-torsion of each summand to its relations.
    IntMatrix augment(const GradedComplex& K, const RealizedTerm& rt, unsigned t, std::size_t i, int j) const {
        const GradedRing& R = *m_.ring();
        auto masks = subsets_of_size(length(), i);
        IntMatrix extra(rt.size, 0);
        for (std::size_t a = 0; a < masks.size(); ++a) {
            if (masks[a] == 0) continue;
            Polynomial xs = R.one();
            for (std::size_t g = 0; g < length(); ++g)
                if ((masks[a] >> g) & 1u) xs = xs * ideal_.generators[g];
            xs = xs.pow(t, R.nvars());
            const GradedModule& summand = K.term(static_cast<int>(i))[a];
            const ModuleDegree& src = summand.realize(j);
            if (src.reduced_size() == 0) continue;
            const ModuleDegree& dst = summand.realize(j + R.degree_of(xs));
            IntMatrix action = summand.reduced_action(xs, j);
            IntMatrix target_pres = dst.reduced_presentation();
            if (action.rows() == 0) action = IntMatrix(0, src.reduced_size());
            if (target_pres.rows() != action.rows()) target_pres = IntMatrix(action.rows(), 0);
            Subquotient ker = presented_homology(src.reduced_presentation(), IntMatrix(src.reduced_size(), 0), action,
                                                 target_pres);
            IntMatrix cols(rt.size, ker.cycles.cols());
            for (std::size_t r = 0; r < ker.cycles.rows(); ++r)
                for (std::size_t c = 0; c < ker.cycles.cols(); ++c) cols(rt.offsets[a] + r, c) = ker.cycles(r, c);
            extra = extra.hcat(cols);
        }
        IntMatrix p = rt.presentation.cols() ? rt.presentation : IntMatrix(rt.size, 0);
        return p.hcat(extra.cols() ? extra : IntMatrix(rt.size, 0));
    }

    GradedModule m_;
    IdealSpec ideal_;
    bool cech_;
};

struct DegreeOutcome {
    std::vector<Subquotient> homology;
    std::vector<unsigned> stabilized;
    unsigned level = 1;
    bool grading_bound = false;
    Level data;
};

IdealSpec nonzero_part(const IdealSpec& ideal) {
    IdealSpec out;
    for (const auto& x : ideal.generators)
        if (!x.is_zero()) out.generators.push_back(x);
    return out;
}

int warm_up_base(const GradedModule& m) {
    int base = m.lowest_generator_degree().value_or(0);
    if (auto r = m.highest_relation_degree()) base = std::max(base, *r);
    return base;
}

unsigned ceil_div_positive(long num, long den) {
    if (num <= 0) return 0;
    return static_cast<unsigned>((num + den - 1) / den);
}

DegreeOutcome stabilize(const Provider& P, int j, const StabilizationPolicy& policy, std::optional<int> bound) {
    const GradedRing& R = *P.module().ring();
    const Scalars& s = R.scalars();
    const std::size_t m = P.length();
    const int min_deg = std::max(1, P.ideal().min_degree(R));
    DegreeOutcome out;
    auto homology_of = [&](const Level& L) {
        std::vector<Subquotient> h;
        for (std::size_t i = 0; i <= m; ++i) h.push_back(level_homology(L, i));
        return h;
    };
    if (bound && m > 0) {
        // above the bound every summand but the first vanishes
        const unsigned t = std::max(1u, static_cast<unsigned>(std::max(0, (*bound - j) / min_deg + 1)));
        out.data = P.level(t, j);
        out.homology = homology_of(out.data);
        out.stabilized.assign(m + 1, t);
        out.level = t;
        out.grading_bound = true;
        return out;
    }
    unsigned t = std::max(1u, ceil_div_positive(static_cast<long>(warm_up_base(P.module())) - j, min_deg));
    if (t > policy.max_power)
        throw StabilizationNotReached("degree " + std::to_string(j) + ": warm-up power " + std::to_string(t) +
                                      " exceeds max_power " + std::to_string(policy.max_power));
    Level cur = P.level(t, j);
    std::vector<Subquotient> h = homology_of(cur);
    std::vector<unsigned> runs(m + 1, 0), start(m + 1, t);
    const unsigned k = std::max(1u, policy.stable_steps);
    while (true) {
        if (t + 1 > policy.max_power)
            throw StabilizationNotReached("degree " + std::to_string(j) + ": no run of " + std::to_string(k) +
                                          " isomorphisms up to power " + std::to_string(policy.max_power));
        Level next = P.level(t + 1, j);
        std::vector<Subquotient> hn = homology_of(next);
        std::vector<IntMatrix> T = P.transition(t, j);
        bool done = true;
        for (std::size_t i = 0; i <= m; ++i) {
            IntMatrix map = induced_map(h[i], hn[i], T[i]);
            if (is_isomorphism(h[i], hn[i], map, s)) {
                ++runs[i];
            } else {
                runs[i] = 0;
                start[i] = t + 1;
            }
            if (runs[i] < k) done = false;
        }
        ++t;
        h = std::move(hn);
        cur = std::move(next);
        if (done) break;
    }
    out.homology = std::move(h);
    out.stabilized = start;
    out.level = t;
    out.data = std::move(cur);
    return out;
}

bool regular_sequence_check(const GradedModule& m, const IdealSpec& ideal) {
    const std::size_t n = ideal.generators.size();
    if (n == 0 || m.rank() == 0) return false;
    const GradedRing& R = *m.ring();
    int total = 0;
    for (const auto& x : ideal.generators) total += R.degree_of(x);
    const int lo = *m.lowest_generator_degree() - total;
    int hi = *m.highest_generator_degree();
    if (auto r = m.highest_relation_degree()) hi = std::max(hi, *r);
    hi += total;
    GradedComplex K = koszul(m, ideal, 1);
    for (int j = lo; j <= hi; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (!K.homology_group(static_cast<int>(i), j).is_zero()) return false;
    return true;
}

std::optional<int> module_bound(const GradedModule& m) {
    const GradedRing& R = *m.ring();
    int limit = m.highest_generator_degree().value_or(0);
    if (auto r = m.highest_relation_degree()) limit = std::max(limit, *r);
    limit += 2 * static_cast<int>(R.nvars() + 1) * std::max(1, R.max_variable_degree());
    return m.detect_grading_bound(limit);
}

struct RunOutput {
    LocalCohomologyResult result;
    std::vector<DegreeOutcome> outcomes;
};

RunOutput run(const GradedModule& m, const IdealSpec& ideal_in, int lo, int hi, const StabilizationPolicy& policy,
              bool cech) {
    if (lo > hi) throw ValidationError("empty window");
    if (policy.max_power < 1) throw ValidationError("max_power must be at least 1");
    const GradedRing& R = *m.ring();
    ideal_in.validate(R);
    IdealSpec ideal = nonzero_part(ideal_in);
    Provider P(m, ideal, cech);
    RunOutput out;
    LocalCohomologyResult& res = out.result;
    res.lo = lo;
    res.hi = hi;
    res.generators = ideal.generators.size();
    res.scalars = R.scalars();
    res.grading_bound = module_bound(m);
    res.regular_sequence = !res.grading_bound && regular_sequence_check(m, ideal);
    const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
    out.outcomes.resize(width);
    parallel_for(width, worker_count(policy, width), [&](std::size_t k) {
        out.outcomes[k] = stabilize(P, lo + static_cast<int>(k), policy, res.grading_bound);
    });
    const std::size_t n = res.generators;
    for (std::size_t k = 0; k < width; ++k) {
        const int j = lo + static_cast<int>(k);
        const DegreeOutcome& o = out.outcomes[k];
        for (std::size_t i = 0; i <= n; ++i) {
            const Bidegree key{static_cast<int>(i), j};
            res.groups[key] = o.homology[i].group.as_vector_space(R.scalars());
            res.stabilized_at[key] = o.stabilized[i];
            Certification c = Certification::StableSteps;
            if (o.grading_bound) c = Certification::GradingBound;
            else if (res.regular_sequence && i < n) c = Certification::RegularSequence;
            res.certification[key] = c;
            if (c == Certification::RegularSequence && !res.groups[key].is_zero())
                throw Error("regular sequence certificate contradicted in degree " + std::to_string(j));
        }
    }
    if (!res.vanishes_above_generators()) throw Error("local cohomology above the number of generators");
    return out;
}

Subquotient empty_subquotient() {
    Subquotient s;
    s.cycles = IntMatrix(0, 0);
    s.relations = IntMatrix(0, 0);
    return s;
}

}  // namespace

LocalCohomologyResult local_cohomology(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                       const StabilizationPolicy& policy) {
    return run(m, ideal, lo, hi, policy, false).result;
}

LocalCohomologyResult cech_cohomology(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                      const StabilizationPolicy& policy) {
    return run(m, ideal, lo, hi, policy, true).result;
}

TriangleResult colocalization_triangle(const GradedModule& m, const IdealSpec& ideal, int lo, int hi,
                                       const StabilizationPolicy& policy) {
    RunOutput r = run(m, ideal, lo, hi, policy, false);
    TriangleResult tri;
    tri.lo = lo;
    tri.hi = hi;
    tri.local = r.result;
    const Scalars& s = m.ring()->scalars();
    const std::size_t n = r.result.generators;
    bool ok = true;
    for (std::size_t k = 0; k < r.outcomes.size(); ++k) {
        const int j = lo + static_cast<int>(k);
        const DegreeOutcome& o = r.outcomes[k];
        const Level& L = o.data;
        for (std::size_t i = 0; i <= n; ++i) tri.cell[{-static_cast<int>(i), j}] = r.result.at(static_cast<int>(i), j);
        Subquotient M = presented_group(L.pres[0]);
        tri.module[{0, j}] = M.group.as_vector_space(s);
        if (n == 0) {
            // K = M and the positive part is zero
            tri.null[{0, j}] = FGAbGroup::zero();
            ok = ok && is_isomorphism(o.homology[0], M, IntMatrix::identity(M.rank()), s);
            continue;
        }
        // H^0 of the positive part: cycles of term 1 modulo its own relations only
        Level pos;
        pos.pres.assign(L.pres.begin() + 1, L.pres.end());
        pos.diff.assign(L.diff.begin() + 1, L.diff.end());
        std::vector<Subquotient> hn;
        for (std::size_t q = 0; q < n; ++q) hn.push_back(level_homology(pos, q));
        for (std::size_t q = 0; q < n; ++q) tri.null[{-static_cast<int>(q), j}] = hn[q].group.as_vector_space(s);

        const Subquotient& h0 = o.homology[0];
        const Subquotient& h1 = o.homology[1];
        const std::size_t n0 = L.pres[0].rows(), n1 = L.pres[1].rows();
        IntMatrix a = induced_map(h0, M, IntMatrix::identity(n0));
        IntMatrix b = induced_map(M, hn[0], L.diff[0]);
        IntMatrix c = induced_map(hn[0], h1, IntMatrix::identity(n1));
        Subquotient zero = empty_subquotient();
        ok = ok && is_exact_at(h0, IntMatrix(h0.rank(), 0), a, M, s);
        ok = ok && is_exact_at(M, a, b, hn[0], s);
        ok = ok && is_exact_at(hn[0], b, c, h1, s);
        ok = ok && is_exact_at(h1, c, IntMatrix(0, h1.rank()), zero, s);
        for (std::size_t q = 1; q < n; ++q) {
            const std::size_t nq = L.pres[q + 1].rows();
            IntMatrix id = induced_map(hn[q], o.homology[q + 1], IntMatrix::identity(nq));
            ok = ok && is_isomorphism(hn[q], o.homology[q + 1], id, s);
        }
    }
    tri.les_verified = ok;
    return tri;
}

namespace {

// Block-diagonal multiplication by f on term i of K(x^t; M), internal degree j -> j + |f|.
IntMatrix term_action(const GradedComplex& K, int i, const Polynomial& f, int j) {
    RealizedTerm src = K.realize(i, j);
    const int e = K.ring()->degree_of(f);
    RealizedTerm dst = K.realize(i, j + e);
    IntMatrix a(dst.size, src.size);
    const auto& summands = K.term(i);
    for (std::size_t s = 0; s < summands.size(); ++s) {
        IntMatrix blk = summands[s].reduced_action(f, j);
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c) a(dst.offsets[s] + r, src.offsets[s] + c) = blk(r, c);
    }
    return a;
}

}  // namespace

CellularVerdict is_cellular(const LocalCohomologyResult& result, const GradedModule& m, const IdealSpec& ideal_in) {
    IdealSpec ideal = nonzero_part(ideal_in);
    const GradedRing& R = *m.ring();
    CellularVerdict v;
    v.certified = true;
    for (const auto& [key, c] : result.certification)
        if (c == Certification::StableSteps) v.certified = false;
    for (const auto& [key, g] : result.groups) {
        if (g.is_zero()) continue;
        const auto [i, j] = key;
        const unsigned t = result.level(j);
        GradedComplex K = koszul(m, ideal, t);
        Subquotient h = K.homology_at(i, j);
        for (const auto& x : ideal.generators) {
            Polynomial f = x.pow(t, R.nvars());
            const int e = R.degree_of(f);
            Subquotient h2 = K.homology_at(i, j + e);
            IntMatrix map = induced_map(h, h2, term_action(K, i, f, j));
            if (!is_zero_map(h2, map, R.scalars())) {
                v.cellular = false;
                v.witness = key;
                return v;
            }
        }
    }
    return v;
}

CellularVerdict is_cellular(const GradedComplex& c, const IdealSpec& ideal, int lo, int hi,
                            const TorsionOptions& options) {
    const GradedRing& R = *c.ring();
    ideal.validate(R);
    CellularVerdict v;
    const int min_deg = ideal.min_degree(R);
    if (c.empty() || min_deg == 0) {
        v.certified = true;
        return v;
    }
    std::optional<int> bound = INT_MIN / 4;
    for (int i = c.min_index(); i <= c.max_index() && bound; ++i)
        for (const auto& mod : c.term(i)) {
            auto b = module_bound(mod);
            if (!b) {
                bound.reset();
                break;
            }
            bound = std::max(*bound, *b);
        }
    if (!bound && options.require_certification)
        throw WindowTooSmall("no grading bound detected for the terms of the complex");
    v.certified = bound.has_value();
    const int top = bound.value_or(0);
    for (int i = c.min_index(); i <= c.max_index(); ++i)
        for (int j = lo; j <= hi; ++j) {
            if (bound && j > top) continue;
            Subquotient h = c.homology_at(i, j);
            if (h.group.as_vector_space(R.scalars()).is_zero()) continue;
            const unsigned n = bound ? static_cast<unsigned>((top - j) / min_deg + 1) : options.max_power;
            for (const auto& mu : ideal.power_products(R, n)) {
                const int e = R.degree_of(mu);
                if (bound && j + e > top) continue;
                Subquotient h2 = c.homology_at(i, j + e);
                IntMatrix map = induced_map(h, h2, term_action(c, i, mu, j));
                if (!is_zero_map(h2, map, R.scalars())) {
                    v.cellular = false;
                    v.witness = Bidegree{i, j};
                    return v;
                }
            }
        }
    return v;
}

bool grading_bound_check(const LocalCohomologyResult& result, int b) {
    for (const auto& [key, g] : result.groups)
        if (key.second > b && !g.is_zero()) return false;
    return true;
}

}  // namespace colocal
