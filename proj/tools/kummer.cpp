// Command-line surface: divisor certificates, bundle invariants,
// involution queries, example enumeration and configuration self-check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <functional>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "kummer/chern.hpp"
#include "kummer/enumerate.hpp"
#include "kummer/involution.hpp"
#include "kummer/lattice.hpp"
#include "kummer/predicates.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

const char* overall_name(kummer::CheckReport::Overall o) {
    using Overall = kummer::CheckReport::Overall;
    switch (o) {
        case Overall::pass: return "pass";
        case Overall::fail: return "fail";
        case Overall::unknown: return "unknown";
    }
    return "unknown";
}

std::string peeling_to_string(const kummer::H0Certificate& cert) {
    const auto& basis = kummer::context().basis;
    std::string s;
    for (int g : cert.peeling_order) {
        if (!s.empty()) s += ", ";
        s += basis[static_cast<std::size_t>(g)].label;
    }
    return s;
}

void print_check_text(const kummer::ExampleRecord& rec) {
    const auto& rep = rec.report;
    std::cout << "divisor: " << kummer::format_divisor(rec.divisor) << '\n';
    if (rep.cond_i.status == kummer::H0Certificate::Status::certified)
        std::cout << "cond_i: certified (peeling: " << peeling_to_string(rep.cond_i) << ")\n";
    else
        std::cout << "cond_i: unknown\n";
    std::cout << "cond_ii: " << kummer::cond_ii_name(rep.cond_ii.result);
    if (rep.cond_ii.witness)
        std::cout << " (witness: " << kummer::format_divisor(*rep.cond_ii.witness) << ")";
    std::cout << '\n';
    std::cout << "cond_iii: " << (rep.cond_iii ? "true" : "false")
              << " (D^2 = " << rep.self_intersection << ")\n";
    std::cout << "overall: " << overall_name(rep.overall) << '\n';
}

void print_invariants_text(const kummer::BundleInvariants& inv) {
    std::cout << "d2: " << inv.d2 << '\n'
              << "c1sq: " << inv.c1sq << '\n'
              << "c2: " << inv.c2 << '\n'
              << "chi: " << inv.chi << '\n'
              << "gap: " << inv.gap << '\n'
              << "h0_lower: " << inv.h0_lower << '\n'
              << "dim_m_lower: " << inv.dim_m_lower << '\n'
              << "dim_p_upper: " << inv.dim_p_upper << '\n'
              << "rho1 (proxy vs dim_m_lower): " << inv.rho1 << '\n';
}

// key=value file mirroring the long option names (max-degree=4,
// family=nodes, include-failures=true).  Command-line flags win.
void apply_config(const std::string& path, CLI::App* cmd,
                  const std::map<std::string, std::function<void(const std::string&)>>& setters) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        const auto* opt = cmd->get_option_no_throw("--" + key);
        if (opt != nullptr && opt->count() > 0) continue;  // flag wins
        it->second(value);
    }
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected boolean, got '" + v + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact Picard-lattice arithmetic for a Jacobian Kummer surface with its "
        "Enriques involution: certificates for divisors whose pushforward bundles "
        "witness proper first Brill-Noether loci on the quotient."};
    app.require_subcommand(1);

    std::string expr, expr_b, family_name = "all", format = "text", enum_format = "json";
    std::string config_path;
    std::int64_t max_degree = 3, max_coeff = -1, budget = kummer::kDefaultSubdivisorBudget;
    bool include_failures = false, canonicalize = false;

    auto* cmd_check = app.add_subcommand("check", "evaluate the three hypotheses for a divisor");
    cmd_check->add_option("expr", expr, "divisor expression, e.g. \"E0 + 2E13\"")->required();
    cmd_check->add_option("--budget", budget, "subdivisor enumeration cap");
    cmd_check->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    cmd_check->add_option("--config", config_path, "key=value file mirroring the flags");

    auto* cmd_inv = app.add_subcommand("invariants", "Chern data of the pushforward bundle");
    cmd_inv->add_option("expr", expr)->required();
    cmd_inv->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

    auto* cmd_theta = app.add_subcommand("theta", "apply the involution to a divisor class");
    cmd_theta->add_option("expr", expr)->required();

    auto* cmd_invar = app.add_subcommand("invariant", "test theta-invariance up to equivalence");
    cmd_invar->add_option("expr", expr)->required();

    auto* cmd_pair = app.add_subcommand("pair", "intersection pairing of two classes");
    cmd_pair->add_option("expr_a", expr)->required();
    cmd_pair->add_option("expr_b", expr_b)->required();

    auto* cmd_enum = app.add_subcommand("enumerate", "search a divisor family for examples");
    cmd_enum->add_option("--family", family_name)
        ->check(CLI::IsMember({"nodes", "tropes", "mixed_disjoint", "prop_ex2_shape", "all"}));
    cmd_enum->add_option("--max-degree", max_degree);
    cmd_enum->add_option("--max-coeff", max_coeff, "defaults to max-degree");
    cmd_enum->add_option("--budget", budget);
    cmd_enum->add_flag("--include-failures", include_failures);
    cmd_enum->add_flag("--canonicalize", canonicalize);
    cmd_enum->add_option("--format", enum_format)
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd_enum->add_option("--config", config_path, "key=value file mirroring the flags");

    auto* cmd_verify = app.add_subcommand("verify", "run the configuration self-checks");
    auto* cmd_gram = app.add_subcommand("export-gram", "print the Gram matrix as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            if (cmd_check->parsed())
                apply_config(config_path, cmd_check,
                             {{"budget", [&](const std::string& v) { budget = std::stoll(v); }},
                              {"format", [&](const std::string& v) { format = v; }}});
            if (cmd_enum->parsed())
                apply_config(
                    config_path, cmd_enum,
                    {{"family", [&](const std::string& v) { family_name = v; }},
                     {"max-degree", [&](const std::string& v) { max_degree = std::stoll(v); }},
                     {"max-coeff", [&](const std::string& v) { max_coeff = std::stoll(v); }},
                     {"budget", [&](const std::string& v) { budget = std::stoll(v); }},
                     {"include-failures",
                      [&](const std::string& v) { include_failures = parse_bool(v); }},
                     {"canonicalize",
                      [&](const std::string& v) { canonicalize = parse_bool(v); }},
                     {"format", [&](const std::string& v) { enum_format = v; }}});
            for (const std::string& f : {format, enum_format})
                if (f != "json" && f != "csv" && f != "text")
                    throw std::invalid_argument("unknown format: " + f);
        }

        if (cmd_check->parsed()) {
            kummer::ExampleRecord rec;
            rec.divisor = kummer::parse_divisor(expr, /*allow_negative=*/false);
            rec.report = kummer::theorem_check(rec.divisor, budget);
            try {
                rec.invariants = kummer::bundle_invariants(rec.divisor);
            } catch (const std::domain_error&) {
            }
            if (format == "json")
                std::cout << kummer::to_json_line(rec) << '\n';
            else
                print_check_text(rec);
            using Result = kummer::SubdivisorScan::Result;
            if (rec.report.cond_ii.result == Result::exhausted_budget) return kExitBudget;
            return rec.report.overall == kummer::CheckReport::Overall::pass ? kExitOk
                                                                            : kExitVerifyFail;
        }

        if (cmd_inv->parsed()) {
            const auto d = kummer::parse_divisor(expr, /*allow_negative=*/false);
            const auto inv = kummer::bundle_invariants(d);
            if (format == "json") {
                kummer::ExampleRecord rec{d, kummer::theorem_check(d, budget), inv};
                std::cout << kummer::to_json_line(rec) << '\n';
            } else if (format == "csv") {
                kummer::ExampleRecord rec{d, {}, inv};
                std::cout << kummer::csv_header() << '\n' << kummer::to_csv_line(rec) << '\n';
            } else {
                print_invariants_text(inv);
            }
            return kExitOk;
        }

        if (cmd_theta->parsed()) {
            std::cout << kummer::format_divisor(kummer::theta(kummer::parse_divisor(expr)))
                      << '\n';
            return kExitOk;
        }

        if (cmd_invar->parsed()) {
            std::cout << (kummer::is_theta_invariant(kummer::parse_divisor(expr)) ? "true"
                                                                                  : "false")
                      << '\n';
            return kExitOk;
        }

        if (cmd_pair->parsed()) {
            std::cout << kummer::pair(kummer::parse_divisor(expr),
                                      kummer::parse_divisor(expr_b))
                      << '\n';
            return kExitOk;
        }

        if (cmd_enum->parsed()) {
            kummer::SearchParams params;
            params.family = kummer::parse_family(family_name);
            params.max_degree = max_degree;
            params.max_coeff = max_coeff < 0 ? max_degree : max_coeff;
            params.budget = budget;
            params.include_failures = include_failures;
            params.canonicalize = canonicalize;
            if (enum_format == "csv") std::cout << kummer::csv_header() << '\n';
            kummer::enumerate_examples(params, [&](const kummer::ExampleRecord& rec) {
                if (enum_format == "csv")
                    std::cout << kummer::to_csv_line(rec) << '\n';
                else if (enum_format == "text")
                    std::cout << kummer::format_divisor(rec.divisor) << '\t'
                              << overall_name(rec.report.overall) << '\n';
                else
                    std::cout << kummer::to_json_line(rec) << '\n';
            });
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            const auto rep = kummer::verify_configuration();
            std::cout << rep.to_string();
            return rep.ok() ? kExitOk : kExitVerifyFail;
        }

        if (cmd_gram->parsed()) {
            std::cout << kummer::gram_csv();
            return kExitOk;
        }
    } catch (const kummer::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFail;
    }
    return kExitUsage;
}
