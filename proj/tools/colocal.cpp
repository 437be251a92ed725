#include "colocal/checks.hpp"
#include "colocal/errors.hpp"
#include "colocal/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace colocal;

namespace {

struct Options {
    std::string job_path, target_path, window, format = "text", builder, data_dir = COLOCAL_DATA_DIR;
    std::optional<unsigned> max_power, stable_steps;
    std::optional<int> n;
    bool timing = false;
};

std::pair<int, int> parse_window(const std::string& w) {
    const auto colon = w.find(':', 1);
    if (colon == std::string::npos) throw ValidationError("--window expects MIN:MAX, got '" + w + "'");
    try {
        std::size_t a = 0, b = 0;
        const std::string lo = w.substr(0, colon), hi = w.substr(colon + 1);
        const int x = std::stoi(lo, &a), y = std::stoi(hi, &b);
        if (a != lo.size() || b != hi.size()) throw std::invalid_argument("trailing");
        if (x > y) throw ValidationError("--window: MIN exceeds MAX");
        return {x, y};
    } catch (const std::logic_error&) {
        throw ValidationError("--window expects integers MIN:MAX, got '" + w + "'");
    }
}

JobSpec job_from(const Options& o, bool allow_builder) {
    JobSpec job;
    if (!o.job_path.empty()) job = load_job(o.job_path);
    else if (!allow_builder || o.builder.empty()) throw ValidationError("a job file is required");
    if (allow_builder && !o.builder.empty()) {
        if (o.builder != "rp2n") throw ValidationError("unknown builder '" + o.builder + "'");
        if (!o.n || *o.n < 1) throw ValidationError("--builder rp2n needs --n k with k >= 1");
        job.builder = o.builder;
        job.n = *o.n;
        if (o.job_path.empty()) job.window_min = -20, job.window_max = 10;
    }
    if (!o.window.empty()) std::tie(job.window_min, job.window_max) = parse_window(o.window);
    if (o.max_power) {
        if (*o.max_power < 1) throw ValidationError("--max-power must be positive");
        job.policy.max_power = *o.max_power;
    }
    if (o.stable_steps) {
        if (*o.stable_steps < 1) throw ValidationError("--stable-steps must be positive");
        job.policy.stable_steps = *o.stable_steps;
    }
    return job;
}

void emit(const Report& r, const Options& o) {
    if (o.format == "machine") {
        Json m = r.machine;
        if (o.timing) m["seconds"] = r.seconds;
        std::cout << dump(m);
    } else {
        std::cout << r.text;
    }
}

// CLI11 reads "-40:0" after --window as an option name; glue the value on instead.
std::vector<std::string> normalized_args(int argc, char** argv) {
    std::vector<std::string> args;
    for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
    for (std::size_t k = 1; k < args.size(); ++k)
        if (args[k] == "--window") {
            args[k] += "=" + args[k - 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k - 1));
        }
    return args;  // reversed, as CLI11 expects
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local cohomology, colocalization triangles and their spectral sequence pages"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool job_required) {
        auto* j = sub->add_option("job", o.job_path, "job file (JSON)");
        if (job_required) j->required();
        sub->add_option("--window", o.window, "internal degree window MIN:MAX, overrides the job");
        sub->add_option("--max-power", o.max_power, "largest power t of the ideal generators");
        sub->add_option("--stable-steps", o.stable_steps, "consecutive isomorphisms needed to accept a colimit");
        sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
        sub->add_flag("--timing", o.timing, "include the run time in machine output");
    };
    auto* lc = app.add_subcommand("lc", "local cohomology H^i_I(M) in a window");
    common(lc, true);
    auto* tri = app.add_subcommand("triangle", "cellular approximation, module and nullification tables");
    common(tri, true);
    auto* page = app.add_subcommand("page", "E2 page, collapse by position and abutment comparison");
    common(page, true);
    page->add_option("--target", o.target_path, "target table {\"target\": [{\"s\":..,\"group\":..}]}");
    auto* eq = app.add_subcommand("equivariant", "page for a group acting on a graded algebra");
    common(eq, false);
    eq->add_option("--builder", o.builder, "built-in example (rp2n)");
    eq->add_option("--n", o.n, "parameter of the builder");
    auto* chk = app.add_subcommand("check", "property suites and the golden corpus");
    chk->add_option("--data", o.data_dir, "corpus directory");
    chk->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(normalized_args(argc, argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Report r;
        if (*lc) r = cmd_lc(job_from(o, false));
        else if (*tri) r = cmd_triangle(job_from(o, false));
        else if (*page) {
            std::optional<std::map<int, FGAbGroup>> target;
            if (!o.target_path.empty()) target = load_target(o.target_path);
            r = cmd_page(job_from(o, false), target);
        } else if (*eq) r = cmd_equivariant(job_from(o, true));
        else {
            r = cmd_check(o.data_dir);
            emit(r, o);
            return r.machine["passed"].get<bool>() ? 0 : 1;
        }
        emit(r, o);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "colocal: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
