#include "colocal/checks.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace colocal {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string where(const std::string& label, int j) { return label + " at degree " + std::to_string(j); }

bool smith_ok(const IntMatrix& A, std::string& why) {
    SmithForm f = smith_normal_form(A);
    if (!(f.U * A * f.V == f.D)) return why = "U A V != D", false;
    if (!(f.U * f.U_inv == IntMatrix::identity(A.rows()))) return why = "U not invertible over Z", false;
    if (!(f.V * f.V_inv == IntMatrix::identity(A.cols()))) return why = "V not invertible over Z", false;
    for (std::size_t i = 0; i < f.D.rows(); ++i)
        for (std::size_t j = 0; j < f.D.cols(); ++j)
            if (i != j && f.D(i, j) != 0) return why = "D not diagonal", false;
    const std::size_t n = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < n; ++i) {
        const mpz_class& d = f.D(i, i);
        if (i < f.rank && d <= 0) return why = "nonpositive invariant factor", false;
        if (i >= f.rank && d != 0) return why = "nonzero entry past the rank", false;
        if (i + 1 < f.rank && !mpz_divisible_p(f.D(i + 1, i + 1).get_mpz_t(), d.get_mpz_t()))
            return why = "divisibility chain broken", false;
    }
    if (f.rank != rank_rational(A)) return why = "rank disagrees with rational rank", false;
    return true;
}

/// Homogeneous relations between a few generators; every coefficient is a random combination of monomials.
GradedModule random_module(Rng& rng, const RingPtr& R, int gens, int rels, int extra_span) {
    std::vector<ModuleGenerator> g;
    for (int i = 0; i < gens; ++i) g.push_back({"g" + std::to_string(i), uniform(rng, -2, 3)});
    int top = g[0].degree;
    for (const auto& x : g) top = std::max(top, x.degree);
    std::vector<ModuleElement> r;
    for (int k = 0; k < rels; ++k) {
        const int deg = top + uniform(rng, 1, extra_span);
        ModuleElement x(gens);
        bool any = false;
        for (int i = 0; i < gens; ++i)
            for (const auto& m : R->monomials(deg - g[i].degree)) {
                const int c = uniform(rng, -3, 3);
                if (c) x[i].add_term(m, c), any = true;
            }
        if (any) r.push_back(std::move(x));
    }
    return GradedModule(R, g, r);
}

/// Adds x_l^{a_l} g for every generator g, which bounds the grading.
GradedModule bounded_module(Rng& rng, const RingPtr& R, int gens, int rels) {
    GradedModule base = random_module(rng, R, gens, rels, 3);
    std::vector<ModuleElement> kill;
    for (std::size_t i = 0; i < base.rank(); ++i)
        for (std::size_t l = 0; l < R->nvars(); ++l) {
            ModuleElement x = base.zero_element();
            x[i] = R->variable(l).pow(static_cast<unsigned>(uniform(rng, 1, 4)), R->nvars());
            kill.push_back(std::move(x));
        }
    return base.with_extra_relations(kill);
}

bool same_tables(const LocalCohomologyResult& a, const LocalCohomologyResult& b, std::size_t upto,
                 std::string& why) {
    for (int j = a.lo; j <= a.hi; ++j)
        for (std::size_t i = 0; i <= upto; ++i)
            if (!(a.at(static_cast<int>(i), j) == b.at(static_cast<int>(i), j))) {
                why = where("H^" + std::to_string(i), j);
                return false;
            }
    return true;
}

void record(SuiteResult& s, bool ok, const std::string& label, const std::string& why) {
    ++s.cases;
    if (!ok) s.failures.push_back(label + ": " + why);
}

std::vector<std::string> golden_stems(const std::string& data_dir) {
    std::vector<std::string> stems;
    const auto dir = std::filesystem::path(data_dir) / "golden";
    if (!std::filesystem::is_directory(dir)) return stems;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") stems.push_back(e.path().stem().string());
    std::sort(stems.begin(), stems.end());
    return stems;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json suite_json(const SuiteResult& s) {
    return Json{{"name", s.name}, {"cases", s.cases}, {"passed", s.passed()}, {"failures", s.failures}};
}

}  // namespace

CheckConfig load_check_config(const std::string& path) {
    const Json j = load_json(path);
    CheckConfig c;
    try {
        const Json& snf = j.at("snf");
        c.snf_seed = snf.at("seed").get<std::uint64_t>();
        c.snf_count = snf.at("count").get<std::size_t>();
        c.snf_max_dim = snf.at("max_dim").get<std::size_t>();
        c.snf_entry = snf.at("max_entry").get<long>();
        const Json& mods = j.at("modules");
        c.module_seed = mods.at("seed").get<std::uint64_t>();
        c.module_count = mods.at("count").get<std::size_t>();
        c.max_width = mods.at("max_width").get<int>();
        const Json& b = j.at("bounded");
        c.bounded_seed = b.at("seed").get<std::uint64_t>();
        c.bounded_count = b.at("count").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return c;
}

SuiteResult check_snf(std::uint64_t seed, std::size_t count, std::size_t max_dim, long entry) {
    const auto t0 = Clock::now();
    SuiteResult s{"smith-normal-form"};
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<long> val(-entry, entry);
    for (std::size_t k = 0; k < count; ++k) {
        IntMatrix A(dim(rng), dim(rng));
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = val(rng);
        // every fifth matrix is made rank deficient by repeating a row
        if (k % 5 == 4 && A.rows() > 1)
            for (std::size_t j = 0; j < A.cols(); ++j) A(A.rows() - 1, j) = A(0, j);
        std::string why;
        record(s, smith_ok(A, why), "matrix " + std::to_string(k), why);
    }
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return s;
}

std::vector<SuiteResult> check_modules(std::uint64_t seed, std::size_t count, int max_width) {
    const auto t0 = Clock::now();
    SuiteResult h0{"h0-torsion-radical"}, cech{"koszul-vs-cech"}, above{"vanishing-above-m"}, les{"triangle-les"};
    Rng rng(seed);
    RingPtr Zv = GradedRing::make(Scalars::integers(), {{"v", 2}}, {});
    RingPtr F3 = GradedRing::make(Scalars::prime_field(3), {{"u", 2}, {"v", 4}}, {});
    StabilizationPolicy policy;
    for (std::size_t k = 0; k < count; ++k) {
        const bool over_z = k % 2 == 0;
        const RingPtr& R = over_z ? Zv : F3;
        IdealSpec I;
        for (std::size_t l = 0; l < R->nvars(); ++l) I.generators.push_back(R->variable(l));
        GradedModule M = random_module(rng, R, uniform(rng, 1, 2), uniform(rng, 0, 3), 3);
        const int width = uniform(rng, 6, max_width);
        const int lo = uniform(rng, -20, 2);
        const int hi = lo + width - 1;
        const std::string label = std::string(over_z ? "Z[v]" : "F3[u,v]") + " module " + std::to_string(k) + " " +
                                  M.describe() + " window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
        const std::size_t m = I.generators.size();
        try {
            TriangleResult t = colocalization_triangle(M, I, lo, hi, policy);
            const LocalCohomologyResult& a = t.local;
            record(les, t.les_verified, label, "long exact sequence fails");

            TorsionRadical tr = torsion_radical(M, I, lo, hi, TorsionOptions{12, false});
            bool ok = true;
            std::string why;
            for (int j = lo; j <= hi && ok; ++j)
                if (!(a.at(0, j) == tr.at(j).group.as_vector_space(R->scalars()))) ok = false, why = where("H^0", j);
            record(h0, ok, label, why);

            LocalCohomologyResult b = cech_cohomology(M, I, lo, hi, policy);
            record(cech, same_tables(a, b, m, why), label, why);

            // the ideal is also generated by m + 1 elements; the answer may not move and H^{m+1} must vanish
            IdealSpec J = I;
            J.generators.push_back(R->variable(0).pow(2, R->nvars()));
            LocalCohomologyResult c = local_cohomology(M, J, lo, hi, policy);
            ok = a.vanishes_above_generators() && b.vanishes_above_generators() && same_tables(a, c, m, why);
            for (int j = lo; j <= hi && ok; ++j)
                if (!c.at(static_cast<int>(m) + 1, j).is_zero()) ok = false, why = where("H^{m+1}", j);
            record(above, ok, label, why);
        } catch (const std::exception& e) {
            for (SuiteResult* s : {&h0, &cech, &above, &les}) record(*s, false, label, e.what());
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    for (SuiteResult* s : {&h0, &cech, &above, &les}) s->seconds = secs;
    return {h0, cech, above, les};
}

SuiteResult check_bounded(std::uint64_t seed, std::size_t count) {
    const auto t0 = Clock::now();
    SuiteResult s{"grading-bound"};
    Rng rng(seed);
    RingPtr Zv = GradedRing::make(Scalars::integers(), {{"v", 2}}, {});
    RingPtr F3 = GradedRing::make(Scalars::prime_field(3), {{"u", 2}, {"v", 4}}, {});
    RingPtr Zuv = GradedRing::make(Scalars::integers(), {{"u", 2}, {"v", 6}}, {"2*u"});
    for (std::size_t k = 0; k < count; ++k) {
        const RingPtr& R = k % 3 == 0 ? Zv : (k % 3 == 1 ? F3 : Zuv);
        IdealSpec I;
        for (std::size_t l = 0; l < R->nvars(); ++l) I.generators.push_back(R->variable(l));
        GradedModule M = bounded_module(rng, R, uniform(rng, 1, 2), uniform(rng, 0, 2));
        const std::string label = "bounded module " + std::to_string(k) + " " + M.describe();
        try {
            const std::optional<int> q0 = M.detect_grading_bound(200);
            if (!q0) {
                record(s, false, label, "no grading bound detected");
                continue;
            }
            const int lo = *M.lowest_generator_degree() - 4, hi = *q0 + 6;
            LocalCohomologyResult r = local_cohomology(M, I, lo, hi);
            bool ok = r.grading_bound == q0 && grading_bound_check(r, *q0);
            std::string why = ok ? "" : "local cohomology above q0 = " + std::to_string(*q0);
            for (int j = lo; j <= hi && ok; ++j) {
                if (!(r.at(0, j) == M.realize(j).group.as_vector_space(R->scalars()))) ok = false, why = where("H^0 != M", j);
                for (std::size_t i = 1; i <= r.generators && ok; ++i)
                    if (!r.at(static_cast<int>(i), j).is_zero()) ok = false, why = where("H^" + std::to_string(i), j);
                if (ok && r.certification.at({0, j}) != Certification::GradingBound) ok = false, why = where("certification", j);
            }
            record(s, ok, label, why);
        } catch (const std::exception& e) {
            record(s, false, label, e.what());
        }
    }
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return s;
}

Json golden_report(const std::string& data_dir, const std::string& stem) {
    const auto dot = stem.rfind('.');
    if (dot == std::string::npos) throw ValidationError("golden name without command: " + stem);
    const std::string job_name = stem.substr(0, dot), command = stem.substr(dot + 1);
    const JobSpec job = load_job((std::filesystem::path(data_dir) / (job_name + ".json")).string());
    if (command == "lc") return cmd_lc(job).machine;
    if (command == "triangle") return cmd_triangle(job).machine;
    if (command == "page") return cmd_page(job).machine;
    if (command == "equivariant") return cmd_equivariant(job).machine;
    throw ValidationError("unknown command in golden name: " + stem);
}

SuiteResult check_golden(const std::string& data_dir) {
    const auto t0 = Clock::now();
    SuiteResult s{"golden-corpus"};
    for (const auto& stem : golden_stems(data_dir)) {
        try {
            const std::string want = read_file(std::filesystem::path(data_dir) / "golden" / (stem + ".json"));
            const std::string got = dump(golden_report(data_dir, stem));
            record(s, got == want, stem, "report differs from the golden file");
            // parsing the emitted report gives back the same tables
            record(s, report_tables(Json::parse(got)) == report_tables(golden_report(data_dir, stem)), stem + " round trip",
                   "tables changed");
        } catch (const std::exception& e) {
            record(s, false, stem, e.what());
        }
    }
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return s;
}

Report cmd_check(const std::string& data_dir) {
    const auto t0 = Clock::now();
    const CheckConfig c = load_check_config((std::filesystem::path(data_dir) / "property_seeds.json").string());
    std::vector<SuiteResult> suites;
    suites.push_back(check_snf(c.snf_seed, c.snf_count, c.snf_max_dim, c.snf_entry));
    for (auto& r : check_modules(c.module_seed, c.module_count, c.max_width)) suites.push_back(std::move(r));
    suites.push_back(check_bounded(c.bounded_seed, c.bounded_count));
    suites.push_back(check_golden(data_dir));

    Report rep;
    rep.command = "check";
    Json arr = Json::array();
    bool all = true;
    std::ostringstream out;
    for (const auto& s : suites) {
        arr.push_back(suite_json(s));
        all = all && s.passed();
        out << (s.passed() ? "PASS " : "FAIL ") << s.name << "  " << s.cases << " cases, " << s.failures.size()
            << " failures\n";
        for (std::size_t k = 0; k < std::min<std::size_t>(s.failures.size(), 5); ++k) out << "    " << s.failures[k] << "\n";
    }
    rep.machine = Json{{"command", "check"}, {"passed", all}, {"suites", arr}};
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out << (all ? "all suites passed" : "some suites failed") << "  time: " << rep.seconds << " s\n";
    rep.text = out.str();
    return rep;
}

}  // namespace colocal
