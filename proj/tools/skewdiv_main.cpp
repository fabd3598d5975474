// Command-line front end: enumeration, incidence-matrix export, elementary
// divisor computation, and full verification with reproducible outputs.

#include "skewdiv/geometry.hpp"
#include "skewdiv/incidence.hpp"
#include "skewdiv/matrix_io.hpp"
#include "skewdiv/snf.hpp"
#include "skewdiv/theorems.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 3;

long long default_family_cap() {
    if (const char* env = std::getenv("SKEWDIV_FAMILY_CAP")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("SKEWDIV_FAMILY_CAP is not an integer");
        }
    }
    return 1000000;
}

skewdiv::DivisorEngine parse_engine(const std::string& name, long long p) {
    if (name == "bigint") return skewdiv::DivisorEngine::Bigint;
    if (name == "plocal") return skewdiv::DivisorEngine::PLocal;
    if (name == "both") return skewdiv::DivisorEngine::Both;
    if (name == "auto")
        return p <= 3 ? skewdiv::DivisorEngine::Both : skewdiv::DivisorEngine::PLocal;
    throw std::invalid_argument("unknown engine: " + name);
}

const char* engine_name(skewdiv::DivisorEngine e) {
    switch (e) {
        case skewdiv::DivisorEngine::Bigint: return "bigint";
        case skewdiv::DivisorEngine::PLocal: return "plocal";
        case skewdiv::DivisorEngine::Both: return "both";
    }
    return "?";
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

struct CommonArgs {
    long long p = 0;
    int threads = 1;
    bool force = false;
    long long cap = default_family_cap();
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_threads = true) {
    cmd->add_option("--p", args.p, "prime field characteristic")->required();
    if (with_threads)
        cmd->add_option("--threads", args.threads, "thread-count hint (output-invariant)")
            ->check(CLI::Range(1, 256));
    cmd->add_flag("--force", args.force, "override the resource guards");
    cmd->add_option("--cap", args.cap, "family-size cap (default 10^6 or SKEWDIV_FAMILY_CAP)");
}

int run_enumerate(const CommonArgs& args, int n, int r, bool print_bases) {
    skewdiv::Prime p(args.p);
    skewdiv::EnumerationOptions opt{args.cap, args.force};
    const auto family = skewdiv::enumerate_subspaces(p, n, r, opt);
    std::cout << family.size() << " subspaces\n";
    if (print_bases) {
        for (const auto& s : family.members()) {
            const auto& b = s.basis();
            for (int i = 0; i < b.rows(); ++i) {
                for (int j = 0; j < b.cols(); ++j) {
                    if (j) std::cout << " ";
                    std::cout << b(i, j);
                }
                if (i + 1 < b.rows()) std::cout << " ; ";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int run_matrix(const CommonArgs& args, int n, int r, int s, const std::string& kind,
               const std::string& out_path, const std::string& format) {
    skewdiv::Prime p(args.p);
    skewdiv::IncidenceBuildOptions opt{{args.cap, args.force}, args.threads};

    skewdiv::IntMatrix m;
    std::vector<std::string> comments;
    const std::string order_note =
        "canonical order: subspaces sorted lexicographically by flattened RREF basis "
        "(row-major, entries as least residues)";
    if (kind == "skew") {
        m = skewdiv::build_eta({p, n, r, s, skewdiv::IncidenceKind::Skew}, opt);
        comments = {"skew incidence eta_{" + std::to_string(r) + "," + std::to_string(s) +
                        "} over F_" + std::to_string(args.p) + ", ambient dimension " +
                        std::to_string(n),
                    "rows: " + std::to_string(r) + "-subspaces; columns: " +
                        std::to_string(s) + "-subspaces; entry 1 iff the pair meets only in 0",
                    order_note};
    } else if (kind == "psi") {
        if (n != 4 || r != 3 || s != 2)
            throw std::invalid_argument("--kind psi requires --n 4 --r 3 --s 2");
        m = skewdiv::build_psi(p, opt);
        comments = {"hyperplane-complement incidence over F_" + std::to_string(args.p) +
                        ", ambient dimension 4",
                    "rows: hyperplanes (3-subspaces); columns: lines (2-subspaces); entry 1 "
                    "iff the line is not inside the hyperplane",
                    order_note};
    } else {
        throw std::invalid_argument("unknown --kind: " + kind);
    }

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    if (format == "mm") {
        skewdiv::write_matrix_market(out, m, comments);
    } else if (format == "csv") {
        skewdiv::write_csv(out, m);
    } else {
        throw std::invalid_argument("unknown --format: " + format);
    }
    if (!out) throw std::runtime_error("failed writing output file: " + out_path);
    std::cout << "wrote " << m.rows() << "x" << m.cols() << " matrix to " << out_path << "\n";
    return 0;
}

int run_divisors(const CommonArgs& args, const std::string& engine_arg,
                 const std::string& json_path) {
    skewdiv::Prime p(args.p);
    if (args.p > 7 && !args.force)
        throw skewdiv::ResourceGuardError(
            "the full divisor pipeline is desk-scale up to p = 7; pass --force for larger p");
    const auto engine = parse_engine(engine_arg, args.p);
    skewdiv::IncidenceBuildOptions opt{{args.cap, args.force}, args.threads};
    const skewdiv::IntMatrix a =
        skewdiv::build_eta({p, 4, 2, 2, skewdiv::IncidenceKind::Skew}, opt);
    const auto prof = skewdiv::elementary_divisors(a, p, engine);

    std::cout << "elementary divisor profile of the " << a.rows() << "x" << a.cols()
              << " skew incidence matrix, p = " << args.p << " (engine: "
              << engine_name(engine) << ")\n";
    for (const auto& [e, c] : prof.multiplicities) {
        mpz_class d;
        mpz_pow_ui(d.get_mpz_t(), mpz_class(static_cast<long>(args.p)).get_mpz_t(),
                   static_cast<unsigned long>(e));
        std::cout << "  " << d.get_str() << " : " << c << "\n";
    }
    if (json_path.empty()) return 0;
    write_json_file(json_path, prof.to_json());
    return 0;
}

int run_verify(const CommonArgs& args, const std::string& engine_arg, bool all_checks,
               const std::string& json_path) {
    skewdiv::Prime p(args.p);
    const auto engine = parse_engine(engine_arg, args.p);

    skewdiv::VerifyOptions vopt;
    vopt.threads = args.threads;
    vopt.override_guard = args.force;
    vopt.family_guard = {args.cap, args.force};
    vopt.all_checks = all_checks;
    if (args.p > vopt.guard_max_p && !args.force)
        throw skewdiv::ResourceGuardError(
            "verification for p = " + std::to_string(args.p) +
            " exceeds the default guard (p <= 7); pass --force to proceed");

    const auto bundle =
        skewdiv::build_bundle(p, skewdiv::IncidenceBuildOptions{vopt.family_guard, vopt.threads});
    auto rep = skewdiv::verify_theorem_on(bundle, engine, vopt);
    if (args.p <= 5 || all_checks) {
        rep.merge("rank_structure", skewdiv::verify_rank_structure_on(bundle, vopt));
    } else {
        rep.note_skipped("rank_structure");
    }

    std::cout << "verification for p = " << args.p << " (engine: " << engine_name(engine)
              << ")\n\n";
    std::cout << rep.to_table();
    std::cout << "elapsed: " << rep.elapsed_ms() << " ms\n";
    if (!json_path.empty()) write_json_file(json_path, rep.to_json());
    return rep.all_pass() ? 0 : kExitVerifyFailed;
}

int run_identities() {
    skewdiv::VerificationReport rep(0);
    const bool ok = skewdiv::multiplicity_polynomial_identities(&rep);
    std::cout << rep.to_table();
    return ok ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact elementary divisors and incidence identities of skew lines in PG(3,p)"};
    app.require_subcommand(1);

    CommonArgs en_args;
    int en_n = 4, en_r = 2;
    bool en_print = false;
    CLI::App* en = app.add_subcommand("enumerate", "enumerate r-subspaces of F_p^n");
    add_common(en, en_args, false);
    en->add_option("--n", en_n, "ambient dimension (default 4)");
    en->add_option("--r", en_r, "subspace dimension")->required();
    en->add_flag("--print-bases", en_print, "print the canonical bases");

    CommonArgs mx_args;
    int mx_n = 4, mx_r = 2, mx_s = 2;
    std::string mx_kind = "skew", mx_out, mx_format = "mm";
    CLI::App* mx = app.add_subcommand("matrix", "build and export an incidence matrix");
    add_common(mx, mx_args);
    mx->add_option("--n", mx_n, "ambient dimension (default 4)");
    mx->add_option("--r", mx_r, "row subspace dimension (default 2)");
    mx->add_option("--s", mx_s, "column subspace dimension (default 2)");
    mx->add_option("--kind", mx_kind, "skew | psi (default skew)");
    mx->add_option("--out", mx_out, "output file")->required();
    mx->add_option("--format", mx_format, "mm | csv (default mm)");

    CommonArgs dv_args;
    std::string dv_engine = "auto", dv_json;
    CLI::App* dv = app.add_subcommand(
        "divisors", "elementary divisor profile of the skew-lines matrix");
    add_common(dv, dv_args);
    dv->add_option("--engine", dv_engine, "bigint | plocal | both | auto (default auto)");
    dv->add_option("--json", dv_json, "write the profile as JSON");

    CommonArgs vf_args;
    std::string vf_engine = "auto", vf_json;
    bool vf_all = false;
    CLI::App* vf = app.add_subcommand("verify", "verify every quantitative statement for p");
    add_common(vf, vf_args);
    vf->add_option("--engine", vf_engine, "bigint | plocal | both | auto (default auto)");
    vf->add_flag("--all-checks", vf_all, "run every check group regardless of p");
    vf->add_option("--json", vf_json, "write the report as JSON");

    app.add_subcommand("identities", "closed-form multiplicity identities over several primes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (en->parsed()) return run_enumerate(en_args, en_n, en_r, en_print);
        if (mx->parsed()) return run_matrix(mx_args, mx_n, mx_r, mx_s, mx_kind, mx_out,
                                            mx_format);
        if (dv->parsed()) return run_divisors(dv_args, dv_engine, dv_json);
        if (vf->parsed()) return run_verify(vf_args, vf_engine, vf_all, vf_json);
        return run_identities();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
