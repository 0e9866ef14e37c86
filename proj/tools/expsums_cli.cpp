// Command-line front end: builds/caches the coefficient table, evaluates
// exponential sums, emits dissection and floor-sequence data, and drives the
// verification suites.  Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 resource/format error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "expsums/expsum.hpp"
#include "expsums/piatetski.hpp"
#include "expsums/verify.hpp"

using namespace expsums;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchema = 1;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string cache_dir_default() {
    if (const char* env = std::getenv("EXPSUMS_CACHE_DIR")) return env;
    return ".expsums-cache";
}

std::string cache_file(const std::string& dir) {
    return (std::filesystem::path(dir) / "tau-v1.cache").string();
}

// Config header stamped into every CSV output (comment lines) so a file is
// self-describing; bodies carry no timestamps, keeping reruns byte-identical.
std::string csv_header(const std::string& subcommand, const std::string& params) {
    std::ostringstream os;
    os << "# expsums " << kVersion << "\n# schema: " << kSchema << "\n# subcommand: "
       << subcommand << "\n# params: " << params << "\n";
    return os.str();
}

json json_envelope(const std::string& subcommand, json params) {
    return json{{"tool", "expsums"},
                {"version", kVersion},
                {"schema", kSchema},
                {"subcommand", subcommand},
                {"params", std::move(params)}};
}

std::shared_ptr<const TauTable> load_cache_or_exit(const std::string& dir, std::uint64_t need) {
    std::string path = cache_file(dir);
    if (!std::filesystem::exists(path)) {
        std::cerr << "error: coefficient cache '" << path << "' not found; run `expsums tau"
                  << " --n-max " << need << "` first\n";
        std::exit(kExitResource);
    }
    try {
        auto t = std::make_shared<const TauTable>(load_table(path));
        if (t->n_max < need) {
            std::cerr << "error: cache '" << path << "' covers n <= " << t->n_max
                      << " but n <= " << need << " is required; run `expsums tau --n-max "
                      << need << "`\n";
            std::exit(kExitResource);
        }
        return t;
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << " (rebuild with `expsums tau --force`)\n";
        std::exit(kExitResource);
    }
}

CoefficientSequence make_coeff(const std::string& kind,
                               const std::shared_ptr<const TauTable>& tau) {
    if (kind == "unit") return CoefficientSequence(CoeffKind::unit, nullptr);
    if (kind == "hecke") return CoefficientSequence(CoeffKind::hecke, tau);
    if (kind == "hecke-square-primes")
        return CoefficientSequence(CoeffKind::hecke_square_primes, tau);
    if (kind == "sym2") return CoefficientSequence(CoeffKind::sym2_full, tau);
    std::cerr << "error: unknown coefficient kind '" << kind << "'\n";
    std::exit(kExitUsage);
}

void write_out(const std::string& output, const std::string& text) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(output, std::ios::binary | std::ios::trunc);
    if (!f) {
        std::cerr << "error: cannot open '" << output << "' for writing\n";
        std::exit(kExitResource);
    }
    f << text;
}

// ---- tau -------------------------------------------------------------------

int cmd_tau(std::uint64_t n_max, const std::string& dir, bool force) {
    std::string path = cache_file(dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create cache directory '" << dir << "': " << ec.message()
                  << "\n";
        return kExitResource;
    }
    if (std::filesystem::exists(path)) {
        try {
            TauTable existing = load_table(path);
            if (existing.n_max >= n_max) {
                std::cerr << "cache hit: '" << path << "' already covers n <= "
                          << existing.n_max << "\n";
                return kExitOk;
            }
            std::cerr << "cache valid but too small (n <= " << existing.n_max
                      << "); rebuilding\n";
        } catch (const format_error& e) {
            if (!force) {
                std::cerr << "error: " << e.what() << "\n"
                          << "pass --force to discard and rebuild\n";
                return kExitResource;
            }
            std::cerr << "corrupted cache discarded (--force): " << e.what() << "\n";
        }
    }
    std::cerr << "building coefficient table to n = " << n_max << " ...\n";
    TauTable t = compute_tau(static_cast<std::uint32_t>(n_max));
    save_table(t, path);
    std::cerr << "wrote '" << path << "'\n";
    return kExitOk;
}

// ---- expsum ----------------------------------------------------------------

int cmd_expsum(std::uint64_t N, std::uint64_t N_prime, double gamma, double j,
               double Q, const std::string& kind, bool prime_only, bool farey_method,
               bool arcs, const std::string& format, const std::string& dir,
               const std::string& output) {
    if (N_prime == 0) N_prime = 2 * N;
    std::string params = "N=" + std::to_string(N) + " N_prime=" + std::to_string(N_prime) +
                         " gamma=" + std::to_string(gamma) + " j=" + std::to_string(j) +
                         " coeff=" + kind + " prime_only=" + (prime_only ? "1" : "0") +
                         " method=" + (farey_method ? "farey" : "direct");

    SumRequest req;
    req.f = PowerAmplitude{j, gamma};
    req.N = N;
    req.N_prime = N_prime;
    req.prime_only = prime_only;
    if (Q > 0) req.explicit_Q = Q;
    std::shared_ptr<const TauTable> tau;
    if (kind != "unit") tau = load_cache_or_exit(dir, N_prime);
    req.coeff = make_coeff(kind, tau);

    SumResult res;
    if (N_prime == N) {
        // empty range: defined as the zero sum
        res = SumResult{};
    } else {
        try {
            req.validate();
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        res = farey_method || arcs ? farey_decomposed_sum(req, true, arcs) : direct_sum(req);
    }

    std::string ratio = res.bound_ratio < 0 ? "na" : std::to_string(res.bound_ratio);
    if (format == "json") {
        json out = json_envelope("expsum", {{"N", N},
                                            {"N_prime", N_prime},
                                            {"gamma", gamma},
                                            {"j", j},
                                            {"Q", req.Q()},
                                            {"coeff", kind},
                                            {"prime_only", prime_only}});
        out["result"] = {{"re", res.value.real()},   {"im", res.value.imag()},
                         {"abs", std::abs(res.value)}, {"n_terms", res.n_terms},
                         {"abs_sum", res.abs_sum},    {"bound_ratio", ratio}};
        write_out(output, out.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream os;
    os << csv_header("expsum", params);
    os << "re,im,abs,n_terms,abs_sum,bound_ratio\n";
    os.precision(17);
    os << res.value.real() << "," << res.value.imag() << "," << std::abs(res.value) << ","
       << res.n_terms << "," << res.abs_sum << "," << ratio << "\n";
    if (arcs && !res.per_arc.empty()) {
        os << "# per-arc diagnostics\n";
        os << "l,q,h_left,h_right,x_lo,x_hi,n_terms,sub_re,sub_im,max_phase_residual\n";
        for (const auto& d : res.per_arc) {
            os << d.arc.l << "," << d.arc.q << "," << d.arc.left << "," << d.arc.right << ","
               << d.interval.lo() << "," << d.interval.hi() << "," << d.n_terms << ","
               << d.factorized.real() << "," << d.factorized.imag() << ","
               << d.max_phase_residual << "\n";
        }
    }
    write_out(output, os.str());
    return kExitOk;
}

// ---- farey -----------------------------------------------------------------

int cmd_farey(std::uint64_t N, double gamma, double j, double Q, const std::string& output) {
    PowerAmplitude f{j, gamma};
    SumRequest defaults;
    defaults.f = f;
    defaults.N = N;
    defaults.N_prime = 2 * N;
    double order = Q > 0 ? Q : defaults.Q();
    double a = f.h(2.0 * static_cast<double>(N));
    double b = f.h(static_cast<double>(N));
    auto arcs = dissect(a, b, order);

    std::ostringstream os;
    os << csv_header("farey", "N=" + std::to_string(N) + " gamma=" + std::to_string(gamma) +
                                  " j=" + std::to_string(j) + " Q=" + std::to_string(order));
    os << "l,q,left,right,M1,M2,interior,x_lo,x_hi,m1,m2\n";
    os.precision(17);
    for (const auto& arc : arcs) {
        auto iv = project(arc, f);
        os << arc.l << "," << arc.q << "," << arc.left << "," << arc.right << "," << arc.M1
           << "," << arc.M2 << "," << (arc.interior() ? 1 : 0) << "," << iv.lo() << ","
           << iv.hi() << "," << iv.m1 << "," << iv.m2 << "\n";
    }
    write_out(output, os.str());
    return kExitOk;
}

// ---- ps --------------------------------------------------------------------

int cmd_ps(double c, std::uint64_t N, bool summary, const std::string& format,
           const std::string& dir, const std::string& output) {
    PSConfig cfg{c, N};
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (summary) {
        std::uint64_t pmax =
            c == 1.0 ? N : detail::floor_pow_verified(N, c);
        auto tau = load_cache_or_exit(dir, pmax);
        auto rep = theorem5_report(cfg, *tau);
        auto count = counting_identity_check(cfg);
        json out = json_envelope("ps", {{"c", c}, {"N", N}});
        out["result"] = {{"ps_count", rep.ps_count},
                         {"sum_lambda_sq", rep.sum_lambda_sq},
                         {"main_term", rep.main_term},
                         {"ratio", rep.ratio},
                         {"identity_gap", rep.identity_gap},
                         {"identity_checked", rep.identity_checked},
                         {"counting_max_discrepancy", count.max_discrepancy_interior},
                         {"counting_interior", count.interior_checked},
                         {"counting_boundary", count.boundary_flagged}};
        write_out(output, out.dump(2) + "\n");
        return kExitOk;
    }
    auto hits = ps_enumerate(cfg);
    if (format == "json") {
        json rows = json::array();
        for (const auto& rec : hits) rows.push_back({{"n", rec.n}, {"p", rec.p}});
        json out = json_envelope("ps", {{"c", c}, {"N", N}});
        out["result"] = {{"count", hits.size()}, {"records", rows}};
        write_out(output, out.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream os;
    os << csv_header("ps", "c=" + std::to_string(c) + " N=" + std::to_string(N));
    os << "n,p\n";
    for (const auto& rec : hits) os << rec.n << "," << rec.p << "\n";
    write_out(output, os.str());
    return kExitOk;
}

// ---- verify / report -------------------------------------------------------

std::shared_ptr<const TauTable> verify_table(const std::string& dir) {
    // verification suites need the table to 10^6; build it on the fly if the
    // cache is absent rather than failing (verify should be one command).
    std::string path = cache_file(dir);
    if (std::filesystem::exists(path)) {
        try {
            auto t = std::make_shared<const TauTable>(load_table(path));
            if (t->n_max >= 1000000) return t;
        } catch (const format_error&) {
            std::cerr << "note: ignoring unreadable cache; recomputing table\n";
        }
    }
    std::cerr << "building coefficient table to n = 1000000 (no usable cache) ...\n";
    return std::make_shared<const TauTable>(compute_tau(1000000));
}

int run_suites(const std::vector<std::string>& names, const std::string& dir, bool as_json,
               const std::string& output) {
    auto tau = verify_table(dir);
    std::vector<SuiteReport> reports;
    for (const auto& name : names) {
        if (name == "identities")
            reports.push_back(suite_identities(*tau));
        else if (name == "farey")
            reports.push_back(suite_farey(tau));
        else if (name == "oscillatory")
            reports.push_back(suite_oscillatory());
        else if (name == "bounds")
            reports.push_back(suite_bounds(tau));
        else if (name == "ps")
            reports.push_back(suite_ps(*tau));
        else {
            std::cerr << "error: unknown suite '" << name
                      << "' (expected identities|farey|oscillatory|bounds|ps|all)\n";
            return kExitUsage;
        }
    }
    bool all_pass = true;
    if (as_json) {
        json suites = json::array();
        for (const auto& rep : reports) {
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back({{"name", c.name}, {"pass", c.pass}, {"observed", c.observed}});
            suites.push_back({{"suite", rep.suite}, {"pass", rep.pass()}, {"checks", checks}});
            all_pass = all_pass && rep.pass();
        }
        json out = json_envelope("verify", json::object());
        out["result"] = {{"pass", all_pass}, {"suites", suites}};
        write_out(output, out.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& rep : reports) {
            text += render_text(rep);
            all_pass = all_pass && rep.pass();
        }
        write_out(output, text);
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential-sum toolkit: coefficient tables, arc dissections, "
                 "sum evaluation, floor-sequence reports, verification suites"};
    app.require_subcommand(1);
    std::string cache_dir = cache_dir_default();
    app.add_option("--cache-dir", cache_dir,
                   "coefficient cache directory (env EXPSUMS_CACHE_DIR overrides the default)");

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "build and persist the coefficient table");
    std::uint64_t tau_nmax = 1000000;
    bool tau_force = false;
    tau_cmd->add_option("--n-max", tau_nmax, "table size (tau(1)..tau(n_max))")
        ->check(CLI::Range(std::uint64_t(1), std::uint64_t(2000000)));
    tau_cmd->add_flag("--force", tau_force, "discard a corrupted cache and rebuild");

    // expsum
    auto* es = app.add_subcommand(
        "expsum", "evaluate sum over N < n <= N' of a_n e(j n^gamma); CSV columns: "
                  "re,im,abs,n_terms,abs_sum,bound_ratio (bound_ratio 'na' off-window)");
    std::uint64_t es_N = 10000, es_Np = 0;
    double es_gamma = 0.95, es_j = 1.0, es_Q = 0.0;
    std::string es_kind = "hecke", es_format = "csv", es_output;
    bool es_primes = false, es_farey = false, es_arcs = false;
    es->add_option("--N", es_N, "range start (exclusive)")->required();
    es->add_option("--N-prime", es_Np, "range end (inclusive, default 2N)");
    es->add_option("--gamma", es_gamma, "amplitude exponent in (0, 1)");
    es->add_option("--j", es_j, "amplitude scale j > 0");
    es->add_option("--Q", es_Q, "dissection order (default N^{1/2}/f(N)^{1/3})");
    es->add_option("--coeff", es_kind, "unit|hecke|hecke-square-primes|sym2");
    es->add_flag("--prime-only", es_primes, "restrict the sum to prime n");
    es->add_flag("--farey", es_farey, "evaluate through the arc regrouping");
    es->add_flag("--arcs", es_arcs, "append per-arc diagnostics (implies --farey)");
    es->add_option("--format", es_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    es->add_option("-o,--output", es_output, "output path (default stdout)");

    // farey
    auto* fa = app.add_subcommand(
        "farey", "emit the arc dissection for a range; CSV columns: "
                 "l,q,left,right,M1,M2,interior,x_lo,x_hi,m1,m2");
    std::uint64_t fa_N = 10000;
    double fa_gamma = 0.95, fa_j = 1.0, fa_Q = 0.0;
    std::string fa_output;
    fa->add_option("--N", fa_N, "range start; arcs cover (N, 2N]")->required();
    fa->add_option("--gamma", fa_gamma, "amplitude exponent in (0, 1)");
    fa->add_option("--j", fa_j, "amplitude scale j > 0");
    fa->add_option("--Q", fa_Q, "dissection order (default N^{1/2}/f(N)^{1/3})");
    fa->add_option("-o,--output", fa_output, "output path (default stdout)");

    // ps
    auto* ps = app.add_subcommand(
        "ps", "enumerate n <= N with floor(n^c) prime; CSV columns: n,p");
    double ps_c = 1.05;
    std::uint64_t ps_N = 10000;
    bool ps_summary = false;
    std::string ps_format = "csv", ps_output;
    ps->add_option("--c", ps_c, "exponent in [1, 12/11)");
    ps->add_option("--N", ps_N, "enumerate n <= N")->required();
    ps->add_flag("--summary", ps_summary,
                 "emit JSON second-moment and counting-identity summary instead of records");
    ps->add_option("--format", ps_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    ps->add_option("-o,--output", ps_output, "output path (default stdout)");

    // verify
    auto* ve = app.add_subcommand("verify", "run a named invariant suite");
    std::string ve_suite = "all", ve_output;
    bool ve_json = false;
    ve->add_option("suite", ve_suite, "identities|farey|oscillatory|bounds|ps|all");
    ve->add_flag("--json", ve_json, "machine-readable summary");
    ve->add_option("-o,--output", ve_output, "output path (default stdout)");

    // report
    auto* re = app.add_subcommand("report", "run every suite and print the full summary");
    std::string re_output;
    bool re_json = false;
    re->add_flag("--json", re_json, "machine-readable summary");
    re->add_option("-o,--output", re_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const std::vector<std::string> all_suites = {"identities", "farey", "oscillatory", "bounds",
                                                 "ps"};
    try {
        if (tau_cmd->parsed()) return cmd_tau(tau_nmax, cache_dir, tau_force);
        if (es->parsed())
            return cmd_expsum(es_N, es_Np, es_gamma, es_j, es_Q, es_kind, es_primes, es_farey,
                              es_arcs, es_format, cache_dir, es_output);
        if (fa->parsed()) return cmd_farey(fa_N, fa_gamma, fa_j, fa_Q, fa_output);
        if (ps->parsed()) return cmd_ps(ps_c, ps_N, ps_summary, ps_format, cache_dir, ps_output);
        if (ve->parsed()) {
            std::vector<std::string> names =
                ve_suite == "all" ? all_suites : std::vector<std::string>{ve_suite};
            return run_suites(names, cache_dir, ve_json, ve_output);
        }
        if (re->parsed()) return run_suites(all_suites, cache_dir, re_json, re_output);
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitUsage;
}
