// nashjet: exact higher-order Jacobian matrices, minor ideals, Nash blowup
// local algebras, and their graded derivation modules.
//
// Exit codes: 0 success / all checks pass, 1 a verification check failed,
// 2 usage or parse error, 3 resource cap exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <nashjet/report.hpp>

namespace {

using nashjet::json;

struct CommonArgs {
    std::string poly;
    std::string weights;
    int n = 2;
    std::string variant = "zero";
    std::uint64_t max_minors = nashjet::default_minor_cap;
    unsigned threads = 0;
    std::string format = "json";
    std::string out;
    bool no_timestamp = false;
};

std::uint64_t env_minor_cap() {
    if (const char* env = std::getenv("NASHJET_MAX_MINORS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring invalid NASHJET_MAX_MINORS='" << env << "'\n";
    }
    return nashjet::default_minor_cap;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_n) {
    cmd->add_option("--poly", args.poly, "polynomial, e.g. \"x^3 + y^3\"")->required();
    cmd->add_option("--weights", args.weights, "comma-separated positive weights, e.g. 1,1")
        ->required();
    if (needs_n) cmd->add_option("-n,--order", args.n, "order of the Jacobian matrix")->required();
    cmd->add_option("--max-minors", args.max_minors,
                    "column-subset cap (default from NASHJET_MAX_MINORS or 100000)");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    cmd->add_option("--format", args.format, "output format: json | table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--out", args.out, "write the report to a file instead of stdout");
    cmd->add_flag("--no-timestamp", args.no_timestamp, "omit the generated_at field");
}

nashjet::Polynomial parse_or_exit(const std::string& text, int nvars) {
    try {
        return nashjet::parse_polynomial(text, nvars);
    } catch (const nashjet::parse_error& e) {
        std::cerr << nashjet::caret_diagnostic(text, e.position(), e.what()) << "\n";
        std::exit(2);
    }
}

nashjet::WeightSystem parse_weights_or_exit(const std::string& text) {
    try {
        return nashjet::WeightSystem(nashjet::parse_weight_list(text));
    } catch (const std::exception& e) {
        std::cerr << "error: invalid --weights '" << text << "': " << e.what() << "\n";
        std::exit(2);
    }
}

void emit(const CommonArgs& args, const std::string& payload) {
    if (args.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(args.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write to " << args.out << "\n";
        std::exit(2);
    }
    f << payload;
    if (!payload.empty() && payload.back() != '\n') f << '\n';
}

json config_json(const CommonArgs& args, bool with_n) {
    json c;
    c["poly"] = args.poly;
    c["weights"] = args.weights;
    if (with_n) c["n"] = args.n;
    c["variant"] = args.variant;
    c["max_minors"] = args.max_minors;
    c["format"] = args.format;
    return c;
}

nashjet::MatrixVariant variant_of(const CommonArgs& args) {
    return args.variant == "f" ? nashjet::MatrixVariant::f_diagonal
                               : nashjet::MatrixVariant::zero_diagonal;
}

int cmd_jacobian(const CommonArgs& args, bool with_minors) {
    nashjet::WeightSystem w = parse_weights_or_exit(args.weights);
    nashjet::Polynomial f = parse_or_exit(args.poly, w.size());
    auto jac = nashjet::build_jacobian(f, args.n, variant_of(args));
    json report = nashjet::report_envelope(with_minors ? "ideal" : "jacobian",
                                           config_json(args, true), !args.no_timestamp);
    report.update(nashjet::matrix_report(jac, &w));
    if (with_minors) {
        nashjet::MinorOptions mo;
        mo.max_subsets = args.max_minors;
        mo.threads = args.threads;
        auto mc = nashjet::maximal_minors(jac, w, mo);
        report.update(nashjet::minors_report(jac, mc, &w));
        if (nashjet::is_weighted_homogeneous(f, w)) {
            json table = json::array();
            for (const auto& [subset, degree] : nashjet::minor_degree_table(jac, w, mo)) {
                json row;
                json cols = json::array();
                for (int c : subset)
                    cols.push_back(nashjet::multi_index_json(jac.cols()[static_cast<std::size_t>(c)]));
                row["cols"] = std::move(cols);
                row["predicted_degree"] = degree;
                table.push_back(std::move(row));
            }
            report["degree_table"] = std::move(table);
        }
    }
    emit(args, report.dump(2));
    return 0;
}

int cmd_basis(const CommonArgs& args, const std::string& extra_gens) {
    nashjet::WeightSystem w = parse_weights_or_exit(args.weights);
    nashjet::Polynomial f = parse_or_exit(args.poly, w.size());
    std::vector<nashjet::Polynomial> gens{f};
    if (extra_gens.empty()) {
        // minors of Jac_n provide the generators
        nashjet::MinorOptions mo;
        mo.max_subsets = args.max_minors;
        mo.threads = args.threads;
        auto mc = nashjet::maximal_minors(nashjet::build_jacobian(f, args.n, variant_of(args)), w, mo);
        for (const auto& g : mc.generators) gens.push_back(g.poly);
    } else {
        std::size_t pos = 0;
        while (pos <= extra_gens.size()) {
            std::size_t semi = extra_gens.find(';', pos);
            std::string piece = extra_gens.substr(
                pos, semi == std::string::npos ? std::string::npos : semi - pos);
            if (!piece.empty()) gens.push_back(parse_or_exit(piece, w.size()));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
    }
    auto q = nashjet::quotient_basis(gens, nashjet::MonomialOrder(w));
    json config = config_json(args, true);
    if (!extra_gens.empty()) config["gens"] = extra_gens;
    json report = nashjet::report_envelope("basis", std::move(config), !args.no_timestamp);
    report.update(nashjet::quotient_report(q));
    emit(args, report.dump(2));
    return 0;
}

int cmd_derivations(const CommonArgs& args, const std::string& degrees,
                    const std::string& extra_gens) {
    nashjet::WeightSystem w = parse_weights_or_exit(args.weights);
    nashjet::Polynomial f = parse_or_exit(args.poly, w.size());
    std::vector<nashjet::Polynomial> gens{f};
    if (extra_gens.empty()) {
        nashjet::MinorOptions mo;
        mo.max_subsets = args.max_minors;
        mo.threads = args.threads;
        auto mc = nashjet::maximal_minors(nashjet::build_jacobian(f, args.n, variant_of(args)), w, mo);
        for (const auto& g : mc.generators) gens.push_back(g.poly);
    } else {
        std::size_t pos = 0;
        while (pos <= extra_gens.size()) {
            std::size_t semi = extra_gens.find(';', pos);
            std::string piece = extra_gens.substr(
                pos, semi == std::string::npos ? std::string::npos : semi - pos);
            if (!piece.empty()) gens.push_back(parse_or_exit(piece, w.size()));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
    }
    auto q = nashjet::quotient_basis(gens, nashjet::MonomialOrder(w));
    json config = config_json(args, true);
    if (!degrees.empty()) config["degrees"] = degrees;
    if (!extra_gens.empty()) config["gens"] = extra_gens;
    json report =
        nashjet::report_envelope("derivations", std::move(config), !args.no_timestamp);
    report["quotient"] = nashjet::quotient_report(q);
    if (!q.finite_dimensional) {
        std::cerr << "error: the quotient is not finite-dimensional (variable "
                  << q.infinite_variable + 1 << " has no pure power in the leading-term ideal)\n";
        return 2;
    }

    long lo = -static_cast<long>(w.max_weight());
    long hi = q.socle_degree.value_or(0);
    if (!degrees.empty()) {
        std::size_t dots = degrees.find("..");
        if (dots == std::string::npos) {
            std::cerr << "error: --degrees expects a..b, e.g. -1..2\n";
            return 2;
        }
        try {
            lo = std::stol(degrees.substr(0, dots));
            hi = std::stol(degrees.substr(dots + 2));
        } catch (const std::exception&) {
            std::cerr << "error: --degrees expects integers a..b\n";
            return 2;
        }
        if (lo > hi) {
            std::cerr << "error: --degrees window is empty\n";
            return 2;
        }
    }

    const long provable_lo = -static_cast<long>(w.max_weight());
    const long provable_hi = q.socle_degree.value_or(provable_lo - 1);
    json spaces = json::array();
    for (long e = lo; e <= hi; ++e) {
        if (e < provable_lo || e > provable_hi) {
            json r;
            r["degree"] = e;
            r["dimension"] = 0;
            r["basis"] = json::array();
            r["note"] = "outside the provable window; zero by the grading";
            spaces.push_back(std::move(r));
            continue;
        }
        spaces.push_back(nashjet::derivation_space_json(nashjet::derivation_space(q, e), w));
    }
    report["window"] = json::array({lo, hi});
    report["spaces"] = std::move(spaces);
    emit(args, report.dump(2));
    return 0;
}

int cmd_verify(const CommonArgs& args, bool all, std::vector<std::string> checks) {
    nashjet::WeightSystem w = parse_weights_or_exit(args.weights);
    nashjet::Polynomial f = parse_or_exit(args.poly, w.size());
    nashjet::SingularityInstance inst{"cli", f, w, {args.n}};
    nashjet::VerifyOptions opts;
    opts.minor_cap = args.max_minors;
    opts.threads = args.threads;

    std::vector<nashjet::Verdict> verdicts;
    if (all || checks.empty()) {
        auto report = nashjet::run_instance(inst, opts);
        verdicts = std::move(report.verdicts);
    } else {
        for (const std::string& c : checks) {
            if (c == "hypotheses")
                verdicts.push_back(nashjet::check_hypotheses(inst, opts));
            else if (c == "gradedness")
                verdicts.push_back(nashjet::check_gradedness(inst, args.n, opts));
            else if (c == "degree-bound")
                verdicts.push_back(nashjet::check_degree_bound(inst, args.n, opts));
            else if (c == "inclusion-cubed")
                verdicts.push_back(nashjet::check_inclusion_cubed(inst, args.n, opts));
            else if (c == "variant-equivalence")
                verdicts.push_back(nashjet::check_variant_equivalence(inst, args.n, opts));
            else if (c == "negative-derivations")
                verdicts.push_back(nashjet::check_negative_derivations(inst, args.n, opts));
            else {
                std::cerr << "error: unknown check '" << c << "'\n";
                return 2;
            }
        }
    }

    bool any_fail = false;
    for (const auto& v : verdicts) any_fail = any_fail || v.outcome == nashjet::CheckOutcome::fail;

    json report = nashjet::report_envelope("verify", config_json(args, true), !args.no_timestamp);
    json list = json::array();
    for (const auto& v : verdicts) list.push_back(nashjet::verdict_json(v));
    report["checks"] = std::move(list);
    report["all_pass"] = !any_fail;
    if (args.format == "table") {
        std::ostringstream os;
        for (const auto& v : verdicts) {
            os << v.check << (v.n > 0 ? " (n=" + std::to_string(v.n) + ")" : "") << ": "
               << nashjet::to_string(v.outcome);
            if (v.outcome == nashjet::CheckOutcome::skipped)
                os << " (" << nashjet::to_string(v.reason) << ")";
            os << " - " << v.detail << "\n";
        }
        emit(args, os.str());
    } else {
        emit(args, report.dump(2));
    }
    return any_fail ? 1 : 0;
}

int cmd_catalog_run(const CommonArgs& args, const std::string& path) {
    std::vector<nashjet::SingularityInstance> instances;
    try {
        instances = nashjet::load_catalog(path);
    } catch (const nashjet::catalog_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    nashjet::VerifyOptions opts;
    opts.minor_cap = args.max_minors;
    opts.threads = args.threads;
    auto report = nashjet::run_catalog(instances, opts);
    json config;
    config["catalog"] = path;
    config["max_minors"] = args.max_minors;
    config["format"] = args.format;
    if (args.format == "table") {
        emit(args, nashjet::catalog_table(report));
    } else {
        json doc = nashjet::report_envelope("catalog", std::move(config), !args.no_timestamp);
        doc.update(nashjet::catalog_report_json(report));
        emit(args, doc.dump(2));
    }
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact higher-order Jacobian matrices, minor ideals, Nash blowup local "
                 "algebras, and graded derivation modules"};
    app.set_version_flag("--version", std::string("nashjet ") + nashjet::version);
    app.require_subcommand(1);

    CommonArgs jac_args, ideal_args, basis_args, deriv_args, verify_args, catalog_args;
    jac_args.max_minors = ideal_args.max_minors = basis_args.max_minors =
        deriv_args.max_minors = verify_args.max_minors = catalog_args.max_minors = env_minor_cap();

    auto* jac = app.add_subcommand("jacobian", "print the order-n Jacobian matrix");
    add_common(jac, jac_args, true);
    jac->add_option("--variant", jac_args.variant, "zero | f (diagonal convention)")
        ->check(CLI::IsMember({"zero", "f"}));

    auto* ideal = app.add_subcommand("ideal", "matrix plus maximal minors and degree table");
    add_common(ideal, ideal_args, true);
    ideal->add_option("--variant", ideal_args.variant, "zero | f (diagonal convention)")
        ->check(CLI::IsMember({"zero", "f"}));

    auto* basis = app.add_subcommand("basis", "Groebner basis and graded quotient of <f, J_n(f)>");
    add_common(basis, basis_args, true);
    std::string basis_gens;
    basis->add_option("--gens", basis_gens,
                      "semicolon-separated generators replacing the minors of J_n(f)");

    auto* deriv = app.add_subcommand("derivations", "graded derivation spaces of the quotient");
    add_common(deriv, deriv_args, true);
    std::string deriv_degrees, deriv_gens;
    deriv->add_option("--degrees", deriv_degrees, "degree window a..b (default -max w..socle)");
    deriv->add_option("--gens", deriv_gens,
                      "semicolon-separated generators replacing the minors of J_n(f)");

    auto* verify = app.add_subcommand("verify", "run verification checks for one instance");
    add_common(verify, verify_args, true);
    bool verify_all = false;
    std::vector<std::string> verify_checks;
    verify->add_flag("--all", verify_all, "run the full check battery");
    verify->add_option("--check", verify_checks,
                       "hypotheses | gradedness | degree-bound | inclusion-cubed | "
                       "variant-equivalence | negative-derivations");

    auto* catalog = app.add_subcommand("catalog", "batch verification");
    auto* catalog_run = catalog->add_subcommand("run", "run every check for every catalog entry");
    std::string catalog_path;
    catalog_run->add_option("file", catalog_path, "catalog JSON file")->required();
    catalog_run->add_option("--max-minors", catalog_args.max_minors, "column-subset cap");
    catalog_run->add_option("--threads", catalog_args.threads, "worker threads");
    catalog_run->add_option("--format", catalog_args.format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    catalog_run->add_option("--out", catalog_args.out, "write the report to a file");
    catalog_run->add_flag("--no-timestamp", catalog_args.no_timestamp, "omit generated_at");
    catalog->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(jac)) return cmd_jacobian(jac_args, false);
        if (app.got_subcommand(ideal)) return cmd_jacobian(ideal_args, true);
        if (app.got_subcommand(basis)) return cmd_basis(basis_args, basis_gens);
        if (app.got_subcommand(deriv)) return cmd_derivations(deriv_args, deriv_degrees, deriv_gens);
        if (app.got_subcommand(verify)) return cmd_verify(verify_args, verify_all, verify_checks);
        if (catalog_run->parsed()) return cmd_catalog_run(catalog_args, catalog_path);
    } catch (const nashjet::resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nashjet::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
