// One PASS/FAIL line per acceptance criterion, each with its runtime.
#include "colocal/checks.hpp"
#include "colocal/equivariant.hpp"
#include "colocal/errors.hpp"
#include "colocal/io.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace colocal;

namespace {

const std::string data_dir = COLOCAL_DATA_DIR;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) ok = false, detail = what;
    }
};

std::size_t count_pairs(int a_deg, int b_deg, int total, int a_min = 0) {
    std::size_t n = 0;
    for (int a = a_min; a * a_deg <= total; ++a)
        if ((total - a * a_deg) % b_deg == 0) ++n;
    return n;
}

FGAbGroup elementary(std::size_t free, std::size_t twos) {
    return FGAbGroup(free, std::vector<mpz_class>(twos, mpz_class(2)));
}

std::string at(int i, int j) { return "H^" + std::to_string(i) + "<" + std::to_string(j) + ">"; }

LocalCohomologyResult lc_of(const std::string& name) {
    JobSpec job = load_job(data_dir + "/" + name);
    RingPtr R = job.ring();
    return local_cohomology(job.module_over(R), job.ideal_over(R), job.window_min, job.window_max, job.policy);
}

Outcome ac1(double& limit) {
    limit = 60;
    Outcome o;
    const Report r = cmd_lc(load_job(data_dir + "/stiefel.json"));
    const auto t = report_tables(r.machine).at("groups");
    auto get = [&](int i, int j) {
        auto it = t.find({i, j});
        return it == t.end() ? FGAbGroup() : it->second;
    };
    o.require(r.machine["generators"] == 2, "two ideal generators");
    for (int j = -40; j <= 0; ++j) {
        o.require(get(0, j).is_zero(), at(0, j));
        const bool line = j <= -6 && j >= -36 && j % 6 == 0;
        o.require(get(1, j) == elementary(line ? 1 : 0, 0), at(1, j));
        const std::size_t twos = j <= -8 ? count_pairs(2, 6, -8 - j) : 0;
        o.require(get(2, j) == elementary(0, twos), at(2, j));
    }
    for (const auto& [key, g] : t)
        o.require(key.first <= 2 || g.is_zero(), at(key.first, key.second) + " above the generators");
    return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void ac2q(Outcome& o) {
    const LocalCohomologyResult r = lc_of("qv.json");
    for (int j = -30; j <= 0; ++j) {
        o.require(r.at(0, j).is_zero(), at(0, j));
        o.require(r.at(1, j) == FGAbGroup(j <= -6 && j % 6 == 0 ? 1 : 0, {}), at(1, j));
    }
    for (const auto& [key, g] : r.groups) o.require(key.first <= 1 || g.is_zero(), at(key.first, key.second));
}

void ac2f(Outcome& o) {
    const LocalCohomologyResult r = lc_of("f2uy.json");
    for (int j = -30; j <= 0; ++j) {
        o.require(r.at(0, j).is_zero(), at(0, j));
        o.require(r.at(1, j).is_zero(), at(1, j));
        const std::size_t dim = j <= -5 ? count_pairs(2, 3, -5 - j) : 0;
        o.require(r.at(2, j) == FGAbGroup(dim, {}), at(2, j));
    }
    for (const auto& [key, g] : r.groups) o.require(key.first <= 2 || g.is_zero(), at(key.first, key.second));
}

// each example has its own 10 s budget
Outcome ac2(double& limit) {
    limit = 20;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ac2q(o);
    o.require(seconds_since(t0) <= 10, "Q[v] over 10 s");
    t0 = std::chrono::steady_clock::now();
    ac2f(o);
    o.require(seconds_since(t0) <= 10, "F2[u,y] over 10 s");
    return o;
}

Outcome ac3(double& limit) {
    limit = 60;
    Outcome o;
    // H_m(Z[u,v]/2u): v^b spans a copy of Z, every u^a v^b with a >= 1 a copy of Z/2
    std::map<int, FGAbGroup> homology;
    for (int m = 0; m <= 34; ++m) homology[m] = elementary(m % 6 == 0 ? 1 : 0, count_pairs(2, 6, m, 1));
    const auto target = shifted_target(uct_target(homology), 7);
    const Report r = cmd_page(load_job(data_dir + "/stiefel.json"), target);
    o.require(r.machine["collapse"]["collapsed"] == true, "collapse by position");
    std::set<int> seen;
    for (const auto& d : r.machine["abutment"]) {
        const int s = d["s"].get<int>();
        if (s < -40 || s > -7) continue;
        seen.insert(s);
        const std::string v = d["verdict"].get<std::string>();
        o.require(v == "equal" || v == "consistent", "verdict " + v + " at s = " + std::to_string(s));
    }
    o.require(seen.size() == 34, "every total degree in [-40, -7] compared");
    return o;
}

Outcome ac4(double& limit) {
    limit = 60;
    Outcome o;
    const LocalCohomologyResult r = lc_of("stiefel.json");
    std::set<int> columns;
    for (const auto& [key, g] : r.groups)
        if (!g.rationalized().is_zero()) columns.insert(-key.first);
    o.require(columns == std::set<int>{-1}, "rational columns");
    std::set<int> integral;
    for (const auto& [key, g] : r.groups)
        if (!g.is_zero()) integral.insert(-key.first);
    o.require(integral == std::set<int>({-2, -1}), "integral columns");
    return o;
}

Outcome ac5(double& limit) {
    limit = 10;
    Outcome o;
    JobSpec job;
    job.builder = "rp2n";
    job.n = 2;
    job.window_min = -20;
    job.window_max = 10;
    const Report r = cmd_equivariant(job);
    const auto page = report_tables(r.machine).at("page");
    std::map<Bidegree, FGAbGroup> nonzero;
    for (const auto& [key, g] : page)
        if (!g.is_zero()) nonzero[key] = g;
    const FGAbGroup Q(1, {});
    o.require(nonzero == std::map<Bidegree, FGAbGroup>{{{0, 0}, Q}, {{-1, 3}, Q}}, "page entries");
    o.require(r.machine["page"]["q"]["min"] == -20 && r.machine["page"]["q"]["max"] == 10, "window");
    o.require(r.machine["collapse"]["collapsed"] == true, "collapse");
    std::map<int, FGAbGroup> abut;
    for (const auto& d : r.machine["abutment"]) {
        const FGAbGroup g = group_from_json(d["graded"]);
        if (!g.is_zero()) abut[d["s"].get<int>()] = g;
    }
    o.require(abut == std::map<int, FGAbGroup>{{0, Q}, {-4, Q}}, "abutment");
    return o;
}

Outcome ac6(double& limit) {
    limit = 60;
    Outcome o;
    const Rp2nExample ex = rp2n(2, 26);
    const TableAlgebra& A = ex.algebra.algebra;
    const CornerData c = idempotents(ex.algebra);
    const std::size_t fiber_omega = rank(ex.fiber.act(0, c.omega, 0));
    for (int d = -10; d <= 20; ++d) {
        const std::string deg = " in degree " + std::to_string(d);
        // omega A omega = Q[x^2], omega A = Q[x], Q[Z/2] omega = Q, with |x| = 3
        const std::size_t poly_sq = d >= 0 && d % 6 == 0, poly = d >= 0 && d % 3 == 0, point = d == 0;
        const std::size_t s = d < 0 ? 0 : c.corner_dim(d);
        const std::size_t l = d < 0 ? 0 : c.left_piece[d].cols();
        o.require(s == poly_sq, "omega A omega" + deg);
        o.require(piece_dimension(A, c.omega, c.omega, d) == poly_sq, "piece omega A omega" + deg);
        o.require(l == poly, "omega A" + deg);
        o.require(piece_dimension(A, c.omega, A.unit(), d) == poly, "piece omega A" + deg);
        o.require((d == 0 ? fiber_omega : ex.fiber.dim(d)) == point, "Q[Z/2] omega" + deg);
    }
    return o;
}

Outcome ac7(double& limit) {
    limit = 300;
    Outcome o;
    const Report r = cmd_check(data_dir);
    for (const auto& s : r.machine["suites"]) {
        std::ostringstream what;
        what << s["name"].get<std::string>() << " (" << s["cases"] << " cases)";
        if (!s["failures"].empty()) what << ": " << s["failures"][0].get<std::string>();
        o.require(s["passed"] == true, what.str());
    }
    o.require(r.machine["suites"].size() == 7, "all suites ran");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* what;
        std::function<Outcome(double&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1", "Z[u,v]/2u local cohomology on [-40, 0]", ac1},
        {"2", "Q[v] and F2[u,y] local cohomology on [-30, 0]", ac2},
        {"3", "collapse and abutment consistency on [-40, -7]", ac3},
        {"4", "rationalized tables have one nonzero column", ac4},
        {"5", "rp2n page for n = 2 on [-20, 10]", ac5},
        {"6", "corner dimension tables on [-10, 20]", ac6},
        {"7", "property suites and golden corpus", ac7},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        double limit = 0;
        Outcome o;
        try {
            o = c.run(limit);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(t0);
        if (o.ok && secs > limit) o.ok = false, o.detail = "over the time limit of " + std::to_string(limit) + " s";
        if (!o.ok) ++failed;
        std::printf("AC%s %s  %8.3f s  %s%s%s\n", c.id, o.ok ? "PASS" : "FAIL", secs, c.what, o.ok ? "" : "  -- ",
                    o.detail.c_str());
    }
    return failed ? 1 : 0;
}
