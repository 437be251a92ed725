#include "colocal/io.hpp"

#include "colocal/errors.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace colocal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(where + ": '" + key + "' has the wrong type");
    }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback, const std::string& where) {
    return j.contains(key) ? field<T>(j, key, where) : fallback;
}

Json window_json(int lo, int hi) { return Json{{"min", lo}, {"max", hi}}; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

Json table_json(const std::map<Bidegree, FGAbGroup>& t, const char* first, const char* second) {
    Json arr = Json::array();
    for (const auto& [key, g] : t) arr.push_back(Json{{first, key.first}, {second, key.second}, {"group", group_to_json(g)}});
    return arr;
}

void text_table(std::ostringstream& out, const std::map<Bidegree, FGAbGroup>& t, const Scalars& s,
                const std::string& label) {
    std::size_t shown = 0;
    for (const auto& [key, g] : t) {
        if (g.is_zero()) continue;
        out << "  " << label << "(" << key.first << ", " << key.second << ") = " << render_group(g, s) << "\n";
        ++shown;
    }
    if (!shown) out << "  (all zero)\n";
}

Json lc_json(const LocalCohomologyResult& r) {
    Json arr = Json::array();
    for (const auto& [key, g] : r.groups)
        arr.push_back(Json{{"i", key.first},
                           {"j", key.second},
                           {"group", group_to_json(g)},
                           {"stabilized_at", r.stabilized_at.at(key)},
                           {"certification", to_string(r.certification.at(key))}});
    return arr;
}

Json header(const std::string& command, const JobSpec& job) {
    return Json{{"command", command}, {"job", job.to_json()}};
}

void lc_text(std::ostringstream& out, const LocalCohomologyResult& r) {
    out << "local cohomology H^i<j>, nonzero groups (every other group in the window is zero):\n";
    std::size_t shown = 0;
    for (const auto& [key, g] : r.groups) {
        if (g.is_zero()) continue;
        out << "  H^" << key.first << "<" << key.second << "> = " << render_group(g, r.scalars) << "  ["
            << to_string(r.certification.at(key)) << ", t=" << r.stabilized_at.at(key) << "]\n";
        ++shown;
    }
    if (!shown) out << "  (all zero)\n";
    out << "regular sequence certificate: " << (r.regular_sequence ? "yes" : "no") << "\n";
    out << "grading bound: " << (r.grading_bound ? std::to_string(*r.grading_bound) : "none detected") << "\n";
}

std::string job_line(const std::string& command, const JobSpec& job) {
    std::ostringstream out;
    std::vector<std::string> vars;
    for (const auto& v : job.variables) vars.push_back(v.name + ":" + std::to_string(v.degree));
    out << "colocal " << command << "  scalars " << job.scalars.name() << "  ring [" << join(vars, ", ") << "]";
    if (!job.relations.empty()) out << " / (" << join(job.relations, ", ") << ")";
    out << "  ideal (" << join(job.ideal, ", ") << ")  window [" << job.window_min << ", " << job.window_max << "]\n";
    return out.str();
}

Json page_json(const BigradedPage& page) {
    return Json{{"cohomological", page.cohomological},
                {"p", window_json(page.p_min, page.p_max)},
                {"q", window_json(page.q_min, page.q_max)},
                {"entries", table_json(page.entries, "p", "q")}};
}

Json collapse_json(const CollapseVerdict& v) {
    Json obs = Json::array();
    for (const auto& o : v.obstructions) obs.push_back(Json{{"r", o.r}, {"p", o.p}, {"q", o.q}});
    return Json{{"collapsed", v.collapsed}, {"obstructions", obs}};
}

Json abutment_json(const AbutmentReport& rep) {
    Json arr = Json::array();
    for (const auto& d : rep.degrees) {
        Json contrib = Json::array();
        for (const auto& c : d.contributions) contrib.push_back(Json{{"p", c.p}, {"q", c.q}, {"group", group_to_json(c.group)}});
        Json e{{"s", d.s}, {"graded", group_to_json(d.graded)}, {"contributions", contrib}};
        e["target"] = d.target ? group_to_json(*d.target) : Json(nullptr);
        e["verdict"] = to_string(d.verdict);
        e["extension_ambiguous"] = d.extension_ambiguous;
        arr.push_back(std::move(e));
    }
    return arr;
}

void page_text(std::ostringstream& out, const BigradedPage& page, const CollapseVerdict& cv) {
    out << "E2 page (" << (page.cohomological ? "cohomological q, total degree p - q" : "total degree p + q")
        << "), nonzero entries:\n";
    text_table(out, page.entries, page.scalars, "E2");
    out << "collapse by position: " << (cv.collapsed ? "yes" : "no") << "\n";
    for (const auto& o : cv.obstructions)
        out << "  possible d^" << o.r << " out of (" << o.p << ", " << o.q << ")\n";
}

void abutment_text(std::ostringstream& out, const AbutmentReport& rep, const Scalars& s) {
    out << "abutment by total degree (nonzero or compared):\n";
    std::size_t bad = 0;
    for (const auto& d : rep.degrees) {
        if (d.graded.is_zero() && (!d.target || d.target->is_zero())) continue;
        out << "  s=" << d.s << "  graded " << render_group(d.graded, s);
        if (d.target) out << "  target " << render_group(*d.target, s);
        out << "  " << to_string(d.verdict) << (d.extension_ambiguous ? " (extension ambiguous)" : "") << "\n";
        if (d.verdict == Verdict::Inconsistent) ++bad;
    }
    out << "inconsistent total degrees: " << bad << "\n";
}

std::map<int, FGAbGroup> ring_target(const JobSpec& job, const RingPtr& R) {
    const int a = *job.poincare_dimension;
    const int top = std::max(0, -a - job.window_min + 1);
    auto M = GradedModule::ring_module(R);
    std::map<int, FGAbGroup> h;
    for (int m = 0; m <= top; ++m) h[m] = M.realize(m).group;
    return shifted_target(uct_target(h), a);
}

}  // namespace

RingPtr JobSpec::ring() const { return GradedRing::make(scalars, variables, relations, strict_commutativity); }

GradedModule JobSpec::module_over(const RingPtr& r) const {
    if (!module) return GradedModule::ring_module(r);
    std::vector<ModuleElement> rels;
    for (const auto& rel : module->relations) {
        ModuleElement e(module->generators.size(), Polynomial());
        for (const auto& [name, text] : rel) {
            std::size_t k = 0;
            while (k < module->generators.size() && module->generators[k].name != name) ++k;
            if (k == module->generators.size()) throw ValidationError("relation mentions unknown generator '" + name + "'");
            e[k] = r->parse(text);
        }
        rels.push_back(std::move(e));
    }
    return GradedModule(r, module->generators, rels);
}

IdealSpec JobSpec::ideal_over(const RingPtr& r) const {
    IdealSpec I;
    for (const auto& g : ideal) I.generators.push_back(r->parse(g));
    I.validate(*r);
    return I;
}

Json JobSpec::to_json() const {
    Json j;
    if (!command.empty()) j["command"] = command;
    if (!graded()) {
        j["builder"] = builder;
        j["n"] = n;
        if (algebra_top) j["algebra_top"] = *algebra_top;
        j["window"] = window_json(window_min, window_max);
        return j;
    }
    j["scalars"] = scalars.name();
    Json vars = Json::array();
    for (const auto& v : variables) vars.push_back(Json{{"name", v.name}, {"degree", v.degree}});
    j["variables"] = vars;
    j["relations"] = relations;
    if (strict_commutativity) j["strict_commutativity"] = true;
    if (module) {
        Json gens = Json::array();
        for (const auto& g : module->generators) gens.push_back(Json{{"name", g.name}, {"degree", g.degree}});
        Json rels = Json::array();
        for (const auto& r : module->relations) {
            Json o = Json::object();
            for (const auto& [k, v] : r) o[k] = v;
            rels.push_back(o);
        }
        j["module"] = Json{{"generators", gens}, {"relations", rels}};
    }
    j["ideal"] = ideal;
    j["window"] = window_json(window_min, window_max);
    j["policy"] = Json{{"max_power", policy.max_power}, {"stable_steps", policy.stable_steps}};
    if (poincare_dimension) j["abutment"] = Json{{"poincare_dimension", *poincare_dimension}};
    return j;
}

JobSpec parse_job(const Json& j) {
    const std::string where = "job";
    if (!j.is_object()) throw ValidationError("job must be a JSON object");
    static const std::set<std::string> known{"command", "scalars", "variables", "relations", "strict_commutativity",
                                             "module", "ideal", "window", "policy", "abutment", "builder", "n",
                                             "algebra_top"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ValidationError("job: unknown field '" + key + "'");
    JobSpec job;
    job.command = field_or<std::string>(j, "command", "", where);
    const Json win = field<Json>(j, "window", where);
    job.window_min = field<int>(win, "min", "window");
    job.window_max = field<int>(win, "max", "window");
    if (job.window_min > job.window_max) throw ValidationError("window: min exceeds max");
    if (j.contains("builder")) {
        job.builder = field<std::string>(j, "builder", where);
        if (job.builder != "rp2n") throw ValidationError("unknown builder '" + job.builder + "'");
        job.n = field<int>(j, "n", where);
        if (job.n < 1) throw ValidationError("builder rp2n needs n >= 1");
        if (j.contains("algebra_top")) job.algebra_top = field<int>(j, "algebra_top", where);
        return job;
    }
    job.scalars = Scalars::parse(field<std::string>(j, "scalars", where));
    for (const auto& v : field<Json>(j, "variables", where)) {
        job.variables.push_back({field<std::string>(v, "name", "variable"), field<int>(v, "degree", "variable")});
    }
    job.relations = field_or<std::vector<std::string>>(j, "relations", {}, where);
    job.strict_commutativity = field_or<bool>(j, "strict_commutativity", false, where);
    if (j.contains("module")) {
        const Json m = field<Json>(j, "module", where);
        ModuleSpec parsed;
        for (const auto& g : field<Json>(m, "generators", "module"))
            parsed.generators.push_back({field<std::string>(g, "name", "generator"), field<int>(g, "degree", "generator")});
        for (const auto& r : field_or<Json>(m, "relations", Json::array(), "module")) {
            if (!r.is_object()) throw ValidationError("module relation must map generator names to ring elements");
            std::map<std::string, std::string> rel;
            for (const auto& [k, v] : r.items()) {
                if (!v.is_string()) throw ValidationError("module relation coefficients must be strings");
                rel[k] = v.get<std::string>();
            }
            parsed.relations.push_back(std::move(rel));
        }
        job.module = std::move(parsed);
    }
    job.ideal = field<std::vector<std::string>>(j, "ideal", where);
    if (j.contains("policy")) {
        const Json p = field<Json>(j, "policy", where);
        const int mp = field_or<int>(p, "max_power", 64, "policy"), ks = field_or<int>(p, "stable_steps", 2, "policy");
        if (mp < 1 || ks < 1) throw ValidationError("policy values must be positive");
        job.policy.max_power = static_cast<unsigned>(mp);
        job.policy.stable_steps = static_cast<unsigned>(ks);
    }
    if (j.contains("abutment"))
        job.poincare_dimension = field<int>(field<Json>(j, "abutment", where), "poincare_dimension", "abutment");
    // resolve everything once so that bad polynomials fail as validation errors
    RingPtr R = job.ring();
    job.module_over(R);
    job.ideal_over(R);
    return job;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

JobSpec load_job(const std::string& path) { return parse_job(load_json(path)); }

Json group_to_json(const FGAbGroup& g) {
    Json tors = Json::array();
    for (const auto& t : g.torsion()) {
        if (t.fits_slong_p()) tors.push_back(t.get_si());
        else tors.push_back(t.get_str());
    }
    return Json{{"free", g.free_rank()}, {"torsion", tors}};
}

FGAbGroup group_from_json(const Json& j) {
    try {
        std::vector<mpz_class> tors;
        for (const auto& t : j.at("torsion")) tors.push_back(t.is_string() ? mpz_class(t.get<std::string>()) : mpz_class(t.get<long>()));
        return FGAbGroup(j.at("free").get<std::size_t>(), tors);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad group: ") + e.what());
    }
}

std::string render_group(const FGAbGroup& g, const Scalars& s) {
    if (!s.is_field() || g.is_zero()) return g.to_string();
    const std::string k = s.kind == ScalarKind::Rationals ? "Q" : "GF(" + std::to_string(s.characteristic) + ")";
    return g.free_rank() == 1 ? k : k + "^" + std::to_string(g.free_rank());
}

Report cmd_lc(const JobSpec& job) {
    const auto t0 = Clock::now();
    RingPtr R = job.ring();
    GradedModule M = job.module_over(R);
    IdealSpec I = job.ideal_over(R);
    LocalCohomologyResult r = local_cohomology(M, I, job.window_min, job.window_max, job.policy);
    CellularVerdict cv = is_cellular(r, M, I);
    Report rep;
    rep.command = "lc";
    rep.machine = header("lc", job);
    rep.machine["scalars"] = r.scalars.name();
    rep.machine["generators"] = r.generators;
    rep.machine["regular_sequence"] = r.regular_sequence;
    rep.machine["grading_bound"] = r.grading_bound ? Json(*r.grading_bound) : Json(nullptr);
    rep.machine["cellular"] = Json{{"cellular", cv.cellular}, {"certified", cv.certified}};
    rep.machine["groups"] = lc_json(r);
    std::ostringstream out;
    out << job_line("lc", job);
    lc_text(out, r);
    out << "cell groups killed by the ideal powers: " << (cv.cellular ? "yes" : "no") << "\n";
    rep.seconds = seconds_since(t0);
    out << "time: " << rep.seconds << " s\n";
    rep.text = out.str();
    return rep;
}

Report cmd_triangle(const JobSpec& job) {
    const auto t0 = Clock::now();
    RingPtr R = job.ring();
    TriangleResult t = colocalization_triangle(job.module_over(R), job.ideal_over(R), job.window_min, job.window_max,
                                               job.policy);
    Report rep;
    rep.command = "triangle";
    rep.machine = header("triangle", job);
    rep.machine["scalars"] = t.local.scalars.name();
    rep.machine["les_verified"] = t.les_verified;
    rep.machine["cell"] = table_json(t.cell, "p", "j");
    rep.machine["module"] = table_json(t.module, "p", "j");
    rep.machine["null"] = table_json(t.null, "p", "j");
    std::ostringstream out;
    out << job_line("triangle", job);
    out << "cell (p = -i), nonzero:\n";
    text_table(out, t.cell, t.local.scalars, "cell");
    out << "module, nonzero:\n";
    text_table(out, t.module, t.local.scalars, "M");
    out << "null, nonzero:\n";
    text_table(out, t.null, t.local.scalars, "null");
    out << "long exact sequence verified: " << (t.les_verified ? "yes" : "no") << "\n";
    rep.seconds = seconds_since(t0);
    out << "time: " << rep.seconds << " s\n";
    rep.text = out.str();
    return rep;
}

Report cmd_page(const JobSpec& job, const std::optional<std::map<int, FGAbGroup>>& target) {
    const auto t0 = Clock::now();
    RingPtr R = job.ring();
    LocalCohomologyResult r =
        local_cohomology(job.module_over(R), job.ideal_over(R), job.window_min, job.window_max, job.policy);
    BigradedPage page = e2_page(r);
    CollapseVerdict cv = collapse_by_position(page);
    Report rep;
    rep.command = "page";
    rep.machine = header("page", job);
    rep.machine["scalars"] = r.scalars.name();
    rep.machine["page"] = page_json(page);
    rep.machine["collapse"] = collapse_json(cv);
    std::ostringstream out;
    out << job_line("page", job);
    page_text(out, page, cv);
    std::optional<std::map<int, FGAbGroup>> tgt = target;
    if (!tgt && job.poincare_dimension) tgt = ring_target(job, R);
    if (tgt) {
        AbutmentReport ab = abutment(page, *tgt);  // throws NotCollapsed
        rep.machine["abutment"] = abutment_json(ab);
        abutment_text(out, ab, r.scalars);
    }
    rep.seconds = seconds_since(t0);
    out << "time: " << rep.seconds << " s\n";
    rep.text = out.str();
    return rep;
}

Report cmd_equivariant(const JobSpec& job) {
    if (job.graded()) throw ValidationError("equivariant needs a builder");
    const auto t0 = Clock::now();
    const int deg = 2 * job.n - 1;
    const int top = job.algebra_top.value_or(std::max({job.window_max, -job.window_min, 0}) + 2 * deg);
    Rp2nExample ex = rp2n(job.n, top);
    CornerData c = idempotents(ex.algebra);
    EquivariantPage t = equivariant_page(ex.fiber, ex.algebra, job.window_min, job.window_max);
    CollapseVerdict cv = collapse_by_position(t.page);
    AbutmentReport ab = abutment(t.page, {});
    const TableAlgebra& A = ex.algebra.algebra;

    Report rep;
    rep.command = "equivariant";
    rep.machine = header("equivariant", job);
    rep.machine["algebra_top"] = top;
    Json corner = Json::array();
    std::ostringstream out;
    out << "colocal equivariant  builder rp2n  n " << job.n << "  |x| = " << deg << "  window [" << job.window_min
        << ", " << job.window_max << "]  algebra through degree " << top << "\n";
    out << "corner dimensions (degree: A, omega A omega, omega A, A omega), nonzero degrees:\n";
    for (int d = std::max(0, job.window_min); d <= std::min(top, job.window_max); ++d) {
        const std::size_t a = A.dim(d), s = c.corner_dim(d), l = c.left_piece[d].cols(), rr = c.right_piece[d].cols();
        corner.push_back(Json{{"degree", d}, {"A", a}, {"omega_A_omega", s}, {"omega_A", l}, {"A_omega", rr}});
        if (a) out << "  " << d << ": " << a << ", " << s << ", " << l << ", " << rr << "\n";
    }
    rep.machine["corner"] = corner;
    Json ext = Json::array();
    for (const auto& [key, d] : t.null.ext) ext.push_back(Json{{"p", key.first}, {"q", key.second}, {"dim", d}});
    rep.machine["null"] = Json{{"corner_degree", t.null.corner_degree},
                               {"generator_degrees", t.null.generator_degrees},
                               {"relation_degrees", t.null.relation_degrees},
                               {"ext", ext}};
    rep.machine["invariants_match"] = t.invariants_match;
    rep.machine["page"] = page_json(t.page);
    rep.machine["collapse"] = collapse_json(cv);
    rep.machine["abutment"] = abutment_json(ab);
    out << "Ext over the corner Q[y], |y| = " << t.null.corner_degree << ", nonzero (p, q):\n";
    for (const auto& [key, d] : t.null.ext)
        if (d) out << "  Ext^" << key.first << "(q=" << key.second << ") = Q" << (d > 1 ? "^" + std::to_string(d) : "") << "\n";
    out << "column 0 equals the invariants: " << (t.invariants_match ? "yes" : "no") << "\n";
    page_text(out, t.page, cv);
    abutment_text(out, ab, t.page.scalars);
    rep.seconds = seconds_since(t0);
    out << "time: " << rep.seconds << " s\n";
    rep.text = out.str();
    return rep;
}

std::map<int, FGAbGroup> load_target(const std::string& path) {
    const Json j = load_json(path);
    std::map<int, FGAbGroup> t;
    try {
        for (const auto& e : j.at("target")) t[e.at("s").get<int>()] = group_from_json(e.at("group"));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return t;
}

std::map<std::string, std::map<Bidegree, FGAbGroup>> report_tables(const Json& machine) {
    std::map<std::string, std::map<Bidegree, FGAbGroup>> out;
    auto read = [&](const std::string& name, const Json& arr, const char* a, const char* b) {
        auto& t = out[name];
        for (const auto& e : arr) t[{e.at(a).get<int>(), e.at(b).get<int>()}] = group_from_json(e.at("group"));
    };
    if (machine.contains("groups")) read("groups", machine["groups"], "i", "j");
    for (const char* name : {"cell", "module", "null"})
        if (machine.contains(name) && machine[name].is_array()) read(name, machine[name], "p", "j");
    if (machine.contains("page")) read("page", machine["page"]["entries"], "p", "q");
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const StabilizationNotReached*>(&e)) return 3;
    if (dynamic_cast<const NotCollapsed*>(&e) || dynamic_cast<const CornerNotResolvable*>(&e)) return 4;
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const WindowTooSmall*>(&e)) return 2;
    return 1;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace colocal
