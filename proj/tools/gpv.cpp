// Command-line front end: character-sum dumps, the constant scans, the
// analytic bound pipeline, the modular-unit sweeps, and the candidate sieve.
// Exit codes: 0 success, 2 assertion failure, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpv/bounds.hpp"
#include "gpv/cache.hpp"
#include "gpv/char_sums.hpp"
#include "gpv/partial_sums.hpp"
#include "gpv/sieve.hpp"
#include "gpv/units.hpp"

using json = nlohmann::json;

namespace {

struct assertion_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Owns either a file stream or stdout.
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw gpv::io_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

void provenance_header(std::ostream& os, const std::string& extra = "") {
    os << "# code_version=" << gpv::kCodeVersion << "\n"
       << "# epsilon=least positive quadratic non-residue mod p\n"
       << "# gamma_coset=first non-cube (1,b), b=1,2,...\n";
    if (!extra.empty()) os << "# " << extra << "\n";
}

gpv::Kind parse_kind(const std::string& s) {
    if (s == "main") return gpv::Kind::main;
    if (s == "gamma") return gpv::Kind::gamma;
    throw CLI::ValidationError("--kind must be main or gamma");
}

std::vector<gpv::u64> parse_classes(const std::string& s) {
    std::vector<gpv::u64> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

int cmd_csum(gpv::u64 p, const std::string& kind_s, const std::string& out_path) {
    gpv::PrimeModulus pm(p);
    const gpv::CharTable t = gpv::char_table(pm, parse_kind(kind_s));
    Output out(out_path);
    provenance_header(out.stream(), "p=" + std::to_string(p) + " kind=" + kind_s);
    out.stream() << "m,re,im\n";
    char buf[96];
    for (gpv::u64 m = 0; m < p; ++m) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                      static_cast<unsigned long long>(m), t.values[m].real(),
                      t.values[m].imag());
        out.stream() << buf;
    }
    return 0;
}

gpv::ConstantReport scan_with_cache(gpv::u64 M, gpv::Kind kind, unsigned threads,
                                    const std::string& cache_dir,
                                    const std::vector<gpv::u64>& classes) {
    std::map<gpv::u64, gpv::PartialSumRecord> preload;
    std::function<void(const gpv::PartialSumRecord&)> on_record;
    if (!cache_dir.empty()) {
        preload = gpv::cache_load(cache_dir, kind);
        on_record = [cache_dir](const gpv::PartialSumRecord& rec) {
            gpv::cache_store(cache_dir, rec);
        };
    }
    return gpv::constant_scan(M, kind, threads, cache_dir.empty() ? nullptr : &preload,
                              on_record, classes);
}

int cmd_constants(gpv::u64 M, unsigned threads, const std::string& cache_dir,
                  const std::string& classes_s, const std::string& format,
                  const std::string& out_path) {
    const auto classes = parse_classes(classes_s);
    const auto rep_main = scan_with_cache(M, gpv::Kind::main, threads, cache_dir, classes);
    const auto rep_gamma = scan_with_cache(M, gpv::Kind::gamma, threads, cache_dir, classes);
    Output out(out_path);
    if (format == "csv") {
        provenance_header(out.stream(), "max_prime=" + std::to_string(M));
        out.stream() << "p,kind,c_p,argmax_s\n";
        char buf[96];
        for (const auto* rep : {&rep_main, &rep_gamma}) {
            for (const auto& r : rep->records) {
                std::snprintf(buf, sizeof buf, "%llu,%s,%.17g,%llu\n",
                              static_cast<unsigned long long>(r.p), gpv::kind_name(r.kind),
                              r.c_p, static_cast<unsigned long long>(r.argmax_s));
                out.stream() << buf;
            }
        }
    } else {
        json j{{"max_prime", M},
               {"C", rep_main.c_of_m},
               {"witness_p", rep_main.witness_p},
               {"C_gamma", rep_gamma.c_of_m},
               {"witness_p_gamma", rep_gamma.witness_p},
               {"code_version", gpv::kCodeVersion}};
        out.stream() << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_bounds(double C, double C_gamma, const std::string& out_path) {
    const gpv::BoundReport rep = gpv::bounds_pipeline(C, C_gamma);
    Output out(out_path);
    json j{{"p_max_pipeline", rep.p_max_pipeline},
           {"x_final", rep.x_final},
           {"p_max_final", rep.p_max_final},
           {"constants_used", {{"C", rep.C_used}, {"C_gamma", rep.C_gamma_used}}}};
    out.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_units(const std::vector<gpv::u64>& ps, const std::string& out_path) {
    Output out(out_path);
    provenance_header(out.stream(), "truncation=ceil(40p/|log q|)");
    out.stream() << "p,im_tau,log_abs_R,bound_rhs,slope_estimate\n";
    const double pi = std::numbers::pi;
    bool ok = true;
    char buf[160];
    for (gpv::u64 p : ps) {
        gpv::PrimeModulus pm(p);
        const gpv::CharTable table = gpv::char_table(pm, gpv::Kind::main);
        const double ord = gpv::ord_q_U(p).value();
        double prev_logU = 0.0, prev_logq = 0.0;
        bool have_prev = false;
        for (double t = 2.0; t <= 10.0 + 1e-9; t += 0.5) {
            const double x = 2.0 * pi * t;
            const auto ev = gpv::eval_log_R(pm, gpv::cdouble(0.0, t), gpv::Kind::main, 0, &table);
            const double log_abs_R = ev.log_R.real();
            const double rhs = 4.0 * pi * pi * double(p) * std::sqrt(double(p)) / (3.0 * x);
            if (std::abs(log_abs_R) > rhs) ok = false;
            const double logq = -x;
            const double logU = ord * logq + 3.0 * std::log(double(p)) + log_abs_R;
            if (have_prev) {
                std::snprintf(buf, sizeof buf, "%llu,%.2f,%.17g,%.17g,%.17g\n",
                              static_cast<unsigned long long>(p), t, log_abs_R, rhs,
                              (logU - prev_logU) / (logq - prev_logq));
            } else {
                std::snprintf(buf, sizeof buf, "%llu,%.2f,%.17g,%.17g,\n",
                              static_cast<unsigned long long>(p), t, log_abs_R, rhs);
            }
            out.stream() << buf;
            prev_logU = logU;
            prev_logq = logq;
            have_prev = true;
        }
    }
    if (!ok)
        throw assertion_failure("units: |log|R|| exceeded 4 pi^2 p sqrt(p) / (3|log q|)");
    return 0;
}

int cmd_sieve(double x_bound, gpv::u64 ell_max, unsigned threads,
              const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cands = gpv::enumerate_candidates(x_bound);
    const auto verdicts = gpv::run_sieve(cands, ell_max, threads);
    const auto summary = gpv::summarise(verdicts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!out_path.empty()) {
        Output out(out_path);
        provenance_header(out.stream(),
                          "x_bound=" + std::to_string(x_bound) +
                              " ell_max=" + std::to_string(ell_max));
        out.stream() << "p,d,c,j,witness_ell,a_ell,status\n";
        char buf[160];
        for (const auto& v : verdicts) {
            std::snprintf(buf, sizeof buf, "%llu,%d,%lld,%lld,%llu,%lld,%s\n",
                          static_cast<unsigned long long>(v.cand.p), v.cand.d,
                          static_cast<long long>(v.cand.c), static_cast<long long>(v.cand.j),
                          static_cast<unsigned long long>(v.witness_ell),
                          static_cast<long long>(v.a_ell),
                          v.status == gpv::VerdictStatus::ruled_out ? "ruled_out"
                                                                    : "not_ruled_out");
            out.stream() << buf;
        }
    }
    json j{{"candidates", summary.candidates},
           {"ruled_out", summary.ruled_out},
           {"max_witness_ell", summary.max_witness_ell},
           {"wall_time_seconds", wall}};
    std::cout << j.dump(2) << "\n";
    if (summary.ruled_out != summary.candidates)
        throw assertion_failure("sieve: candidates not ruled out remain");
    return 0;
}

int cmd_all(gpv::u64 M, unsigned threads, const std::string& cache_dir,
            const std::string& classes_s, gpv::u64 ell_max, const std::string& out_path) {
    const auto classes = parse_classes(classes_s);
    const auto rep_main = scan_with_cache(M, gpv::Kind::main, threads, cache_dir, classes);
    const auto rep_gamma = scan_with_cache(M, gpv::Kind::gamma, threads, cache_dir, classes);
    std::cerr << "constants: C(" << M << ") = " << rep_main.c_of_m << " at p = "
              << rep_main.witness_p << ", C_gamma = " << rep_gamma.c_of_m << " at p = "
              << rep_gamma.witness_p << "\n";
    if (rep_main.c_of_m > 4.25)
        throw assertion_failure("all: C exceeds 4.25, the scan-constant lemma fails");
    if (rep_gamma.c_of_m > 2.81)
        throw assertion_failure("all: C_gamma exceeds 2.81, the gamma-constant lemma fails");

    const gpv::BoundReport bounds = gpv::bounds_pipeline(4.25, 2.81);
    std::cerr << "bounds: p_max_pipeline = " << bounds.p_max_pipeline
              << ", x_final = " << bounds.x_final << ", p_max_final = " << bounds.p_max_final
              << "\n";

    return cmd_sieve(bounds.x_final, ell_max, threads, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for the G(p) uniformity computation"};
    app.require_subcommand(1);

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    gpv::u64 max_prime = 10000;
    gpv::u64 ell_max = 500;
    gpv::u64 csum_p = 0;
    double x_bound = 39.0;
    double C = 4.25, C_gamma = 2.81;
    std::string kind = "main", out_path, cache_dir, classes = "2,5", format = "json";
    std::vector<gpv::u64> unit_ps{11, 23, 29};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "worker count");
        sub->add_option("--out", out_path, "output file (default stdout)");
    };

    auto* c_csum = app.add_subcommand("csum", "dump a character-sum table as CSV");
    c_csum->add_option("--p", csum_p, "prime p = 2 mod 3")->required();
    c_csum->add_option("--kind", kind, "main|gamma");
    c_csum->add_option("--out", out_path, "output file (default stdout)");

    auto* c_const = app.add_subcommand("constants", "scan c_p and report C(M), C_gamma(M)");
    c_const->add_option("--max-prime", max_prime, "scan cutoff M");
    c_const->add_option("--classes", classes, "residue classes mod 9, comma-separated");
    c_const->add_option("--cache", cache_dir, "cache directory for resumable scans");
    c_const->add_option("--format", format, "csv|json");
    add_common(c_const);

    auto* c_bounds = app.add_subcommand("bounds", "evaluate the chained analytic bounds");
    c_bounds->add_option("--c", C, "scan constant C");
    c_bounds->add_option("--c-gamma", C_gamma, "scan constant C_gamma");
    c_bounds->add_option("--out", out_path, "output file (default stdout)");

    auto* c_units = app.add_subcommand("units", "sweep log|R| against its bound");
    c_units->add_option("--p", unit_ps, "primes to sweep");
    c_units->add_option("--out", out_path, "output file (default stdout)");

    auto* c_sieve = app.add_subcommand("sieve", "enumerate and rule out candidates");
    c_sieve->add_option("--x-bound", x_bound, "|log q| bound for the c-interval");
    c_sieve->add_option("--ell-max", ell_max, "largest witness prime to try");
    add_common(c_sieve);

    auto* c_all = app.add_subcommand("all", "constants, bounds, then the sieve");
    c_all->add_option("--max-prime", max_prime, "scan cutoff M");
    c_all->add_option("--classes", classes, "residue classes mod 9, comma-separated");
    c_all->add_option("--cache", cache_dir, "cache directory for resumable scans");
    c_all->add_option("--ell-max", ell_max, "largest witness prime to try");
    add_common(c_all);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_csum->parsed()) return cmd_csum(csum_p, kind, out_path);
        if (c_const->parsed())
            return cmd_constants(max_prime, threads, cache_dir, classes, format, out_path);
        if (c_bounds->parsed()) return cmd_bounds(C, C_gamma, out_path);
        if (c_units->parsed()) return cmd_units(unit_ps, out_path);
        if (c_sieve->parsed()) return cmd_sieve(x_bound, ell_max, threads, out_path);
        if (c_all->parsed())
            return cmd_all(max_prime, threads, cache_dir, classes, ell_max, out_path);
    } catch (const gpv::io_error& e) {
        std::cerr << json{{"failure", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"failure", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
