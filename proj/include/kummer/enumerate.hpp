// enumerate.hpp
//
// Example search over divisor families, machine-readable report
// emission (JSON Lines / CSV), and the configuration self-check.

#ifndef KUMMER_ENUMERATE_HPP
#define KUMMER_ENUMERATE_HPP

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kummer/chern.hpp"
#include "kummer/involution.hpp"
#include "kummer/lattice.hpp"
#include "kummer/predicates.hpp"

namespace kummer {

enum class Family { nodes, tropes, mixed_disjoint, prop_ex2_shape, all };

inline Family parse_family(std::string_view s) {
    if (s == "nodes") return Family::nodes;
    if (s == "tropes") return Family::tropes;
    if (s == "mixed_disjoint") return Family::mixed_disjoint;
    if (s == "prop_ex2_shape") return Family::prop_ex2_shape;
    if (s == "all") return Family::all;
    throw std::invalid_argument("unknown family: " + std::string(s));
}

struct SearchParams {
    Family family = Family::all;
    std::int64_t max_degree = 3;   // bound on sum of coefficients
    std::int64_t max_coeff = 3;    // bound on each coefficient
    std::int64_t budget = kDefaultSubdivisorBudget;
    bool canonicalize = false;     // emit only the lex-smaller of {D, theta(D)}
    bool include_failures = false;
};

struct ExampleRecord {
    DivisorClass divisor;
    CheckReport report;
    std::optional<BundleInvariants> invariants;  // absent on parity error
};

namespace detail {

struct FamilyState {
    std::vector<int> node_support;
    std::vector<int> trope_support;
};

inline bool family_allows(Family family, int g, const FamilyState& st) {
    const auto& ctx = context();
    const bool is_node = ctx.basis[static_cast<std::size_t>(g)].kind == CurveKind::node;
    switch (family) {
        case Family::nodes:
            return is_node;
        case Family::tropes:
            return !is_node;
        case Family::mixed_disjoint:
        case Family::prop_ex2_shape: {
            const auto& opposite = is_node ? st.trope_support : st.node_support;
            for (int h : opposite)
                if (ctx.gram[g][h] != 0) return false;
            if (family == Family::prop_ex2_shape && !is_node && !st.trope_support.empty())
                return false;  // at most one trope
            return true;
        }
        case Family::all:
            return true;
    }
    return false;
}

// Family membership for an arbitrary effective divisor; used to decide
// whether the theta-partner of a candidate is itself enumerated.
inline bool divisor_in_family(Family family, const DivisorClass& d) {
    const auto& ctx = context();
    std::vector<int> nodes, tropes;
    for (int i = 0; i < kGeneratorCount; ++i) {
        if (d.coeffs[i] <= 0) continue;
        (ctx.basis[static_cast<std::size_t>(i)].kind == CurveKind::node ? nodes : tropes)
            .push_back(i);
    }
    const auto disjoint = [&] {
        for (int n : nodes)
            for (int t : tropes)
                if (ctx.gram[n][t] != 0) return false;
        return true;
    };
    switch (family) {
        case Family::nodes:
            return tropes.empty();
        case Family::tropes:
            return nodes.empty();
        case Family::mixed_disjoint:
            return disjoint();
        case Family::prop_ex2_shape:
            return tropes.size() == 1 &&
                   d.coeffs[static_cast<std::size_t>(tropes.front())] == 1 &&
                   !nodes.empty() && disjoint();
        case Family::all:
            return true;
    }
    return false;
}

inline bool family_accepts_leaf(Family family, const DivisorClass& d, const FamilyState& st) {
    if (family != Family::prop_ex2_shape) return true;
    // exactly one trope with coefficient 1, at least one node
    if (st.trope_support.size() != 1 || st.node_support.empty()) return false;
    return d.coeffs[static_cast<std::size_t>(st.trope_support.front())] == 1;
}

template <class Emit>
inline void enumerate_rec(const SearchParams& p, int g, std::int64_t used, DivisorClass& d,
                          FamilyState& st, Emit& emit) {
    if (g == kGeneratorCount) {
        if (used == 0) return;
        if (!family_accepts_leaf(p.family, d, st)) return;
        if (p.canonicalize) {
            // drop the lex-larger member of {D, theta(D)} when the
            // partner is also visited by this search
            const auto partner = theta(d);
            if (partner.coeffs < d.coeffs && divisor_in_family(p.family, partner)) return;
        }

        ExampleRecord rec;
        rec.divisor = d;
        rec.report = theorem_check(d, p.budget);
        try {
            rec.invariants = bundle_invariants(d);
        } catch (const std::domain_error&) {
            rec.invariants.reset();
        }
        if (rec.report.overall == CheckReport::Overall::pass || p.include_failures)
            emit(rec);
        return;
    }

    enumerate_rec(p, g + 1, used, d, st, emit);  // coefficient 0 first: lex order

    const std::int64_t cmax = std::min(p.max_coeff, p.max_degree - used);
    if (cmax < 1) return;
    if (!family_allows(p.family, g, st)) return;
    if (p.family == Family::prop_ex2_shape &&
        context().basis[static_cast<std::size_t>(g)].kind == CurveKind::trope &&
        cmax >= 1) {
        st.trope_support.push_back(g);
        d.coeffs[g] = 1;
        enumerate_rec(p, g + 1, used + 1, d, st, emit);
        d.coeffs[g] = 0;
        st.trope_support.pop_back();
        return;
    }

    auto& support = context().basis[static_cast<std::size_t>(g)].kind == CurveKind::node
                        ? st.node_support
                        : st.trope_support;
    support.push_back(g);
    for (std::int64_t c = 1; c <= cmax; ++c) {
        d.coeffs[g] = c;
        enumerate_rec(p, g + 1, used + c, d, st, emit);
    }
    d.coeffs[g] = 0;
    support.pop_back();
}

}  // namespace detail

// Visits all effective divisors of the chosen family within bounds, in
// ascending lexicographic order of coefficient vectors, and emits an
// ExampleRecord for each pass (or for every divisor with
// include_failures).  Deterministic: identical params give identical
// streams.
template <class Emit>
inline void enumerate_examples(const SearchParams& p, Emit&& emit) {
    if (p.max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
    if (p.max_coeff < 1) throw std::invalid_argument("max_coeff must be >= 1");
    if (p.budget < 1) throw std::invalid_argument("budget must be >= 1");
    DivisorClass d;
    detail::FamilyState st;
    enumerate_rec(p, 0, 0, d, st, emit);
}

inline const char* cond_ii_name(SubdivisorScan::Result r) {
    switch (r) {
        case SubdivisorScan::Result::holds: return "holds";
        case SubdivisorScan::Result::fails: return "fails";
        case SubdivisorScan::Result::exhausted_budget: return "budget";
    }
    return "budget";
}

// Stable JSON Lines schema; key order is fixed.
inline std::string to_json_line(const ExampleRecord& r) {
    nlohmann::ordered_json j;
    j["divisor"] = format_divisor(r.divisor);
    if (r.invariants) {
        j["d2"] = r.invariants->d2;
        j["c1sq"] = r.invariants->c1sq;
        j["c2"] = r.invariants->c2;
        j["chi"] = r.invariants->chi;
        j["gap"] = r.invariants->gap;
        j["rho1"] = r.invariants->rho1;
        j["dim_m_lower"] = r.invariants->dim_m_lower;
        j["dim_p_upper"] = r.invariants->dim_p_upper;
    } else {
        for (const char* k :
             {"d2", "c1sq", "c2", "chi", "gap", "rho1", "dim_m_lower", "dim_p_upper"})
            j[k] = nullptr;
    }
    j["cond_i"] =
        r.report.cond_i.status == H0Certificate::Status::certified ? "certified" : "unknown";
    j["cond_ii"] = cond_ii_name(r.report.cond_ii.result);
    if (r.report.cond_ii.witness)
        j["cond_ii_witness"] = format_divisor(*r.report.cond_ii.witness);
    else
        j["cond_ii_witness"] = nullptr;
    j["cond_iii"] = r.report.cond_iii;
    j["pass"] = r.report.overall == CheckReport::Overall::pass;
    return j.dump();
}

inline std::string csv_header() {
    return "divisor,d2,c1sq,c2,chi,gap,h0_lower,dim_m_lower,dim_p_upper,rho1";
}

inline std::string to_csv_line(const ExampleRecord& r) {
    std::ostringstream os;
    os << '"' << format_divisor(r.divisor) << '"';
    if (r.invariants) {
        const auto& v = *r.invariants;
        os << ',' << v.d2 << ',' << v.c1sq << ',' << v.c2 << ',' << v.chi << ',' << v.gap
           << ',' << v.h0_lower << ',' << v.dim_m_lower << ',' << v.dim_p_upper << ','
           << v.rho1;
    } else {
        os << ",,,,,,,,,";
    }
    return os.str();
}

// Gram matrix as CSV: one header row of labels, then 32 integer rows.
inline std::string gram_csv() {
    const auto& ctx = context();
    std::ostringstream os;
    for (int j = 0; j < kGeneratorCount; ++j)
        os << (j ? "," : "") << ctx.basis[static_cast<std::size_t>(j)].label;
    os << '\n';
    for (int i = 0; i < kGeneratorCount; ++i) {
        for (int j = 0; j < kGeneratorCount; ++j)
            os << (j ? "," : "") << ctx.gram[i][j];
        os << '\n';
    }
    return os.str();
}

struct VerificationReport {
    struct Check {
        std::string name;
        bool ok;
        std::string detail;
    };
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.ok ? "ok   " : "FAIL ") << c.name;
            if (!c.detail.empty()) os << " (" << c.detail << ")";
            os << '\n';
        }
        os << (ok() ? "all checks passed" : "verification FAILED") << '\n';
        return os.str();
    }
};

namespace detail {

inline void check(VerificationReport& rep, const std::string& name, bool ok,
                  std::string detail = {}) {
    rep.checks.push_back({name, ok, std::move(detail)});
}

}  // namespace detail

// Self-verification of the hardcoded configuration plus the structural
// properties the certificates rely on.
inline VerificationReport verify_configuration() {
    const auto& ctx = context();
    VerificationReport rep;

    bool symmetric = true, diag = true, off_diag_01 = true, families_disjoint = true;
    for (int i = 0; i < kGeneratorCount; ++i) {
        if (ctx.gram[i][i] != -2) diag = false;
        for (int j = 0; j < kGeneratorCount; ++j) {
            if (ctx.gram[i][j] != ctx.gram[j][i]) symmetric = false;
            if (i != j && ctx.gram[i][j] != 0 && ctx.gram[i][j] != 1) off_diag_01 = false;
            if (i != j && ctx.basis[static_cast<std::size_t>(i)].kind ==
                              ctx.basis[static_cast<std::size_t>(j)].kind &&
                ctx.gram[i][j] != 0)
                families_disjoint = false;
        }
    }
    detail::check(rep, "gram symmetry", symmetric);
    detail::check(rep, "diagonal entries -2 (even lattice)", diag);
    detail::check(rep, "off-diagonal entries in {0,1}", off_diag_01);
    detail::check(rep, "two families of mutually disjoint curves", families_disjoint);

    bool incidence = true;
    for (int i = 0; i < kGeneratorCount; ++i) {
        int cnt = 0;
        for (int j = 0; j < kGeneratorCount; ++j)
            if (ctx.basis[static_cast<std::size_t>(i)].kind !=
                    ctx.basis[static_cast<std::size_t>(j)].kind &&
                ctx.gram[i][j] == 1)
                ++cnt;
        if (cnt != 6) incidence = false;
    }
    detail::check(rep, "(16_6)-configuration: all incidence counts equal 6", incidence);

    bool involutive = true, swaps = true, isometry = true;
    for (int i = 0; i < kGeneratorCount; ++i) {
        if (ctx.theta_perm[ctx.theta_perm[i]] != i) involutive = false;
        if (ctx.basis[static_cast<std::size_t>(i)].kind ==
            ctx.basis[static_cast<std::size_t>(ctx.theta_perm[i])].kind)
            swaps = false;
        for (int j = 0; j < kGeneratorCount; ++j)
            if (ctx.gram[ctx.theta_perm[i]][ctx.theta_perm[j]] != ctx.gram[i][j])
                isometry = false;
    }
    detail::check(rep, "theta is an involution", involutive);
    detail::check(rep, "theta swaps nodes and tropes", swaps);
    detail::check(rep, "theta is an isometry (P^T G P = G)", isometry);

    const int rank = gram_rank();
    detail::check(rep, "gram rank equals 17", rank == 17, "rank " + std::to_string(rank));

    // parity and theta-symmetry of bundle invariants, supports of size <= 3
    bool parity = true, theta_sym = true, gap_ok = true;
    std::vector<int> idx(kGeneratorCount);
    for (int i = 0; i < kGeneratorCount; ++i) idx[static_cast<std::size_t>(i)] = i;
    auto sweep = [&](const std::vector<int>& supp) {
        const auto n = supp.size();
        std::vector<std::int64_t> c(n, 1);
        while (true) {
            DivisorClass d;
            for (std::size_t k = 0; k < n; ++k)
                d.coeffs[static_cast<std::size_t>(supp[k])] = c[k];
            if (pair(d, theta(d)) % 2 != 0) parity = false;
            const auto inv = bundle_invariants(d);
            if (inv.gap != -inv.d2 / 2) gap_ok = false;
            if (!(bundle_invariants(theta(d)) == inv)) theta_sym = false;
            std::size_t k = 0;
            while (k < n && c[k] == 2) c[k++] = 1;
            if (k == n) break;
            ++c[k];
        }
    };
    for (int a = 0; a < kGeneratorCount; ++a) {
        sweep({a});
        for (int b = a + 1; b < kGeneratorCount; ++b) {
            sweep({a, b});
            for (int cgen = b + 1; cgen < kGeneratorCount; ++cgen) sweep({a, b, cgen});
        }
    }
    detail::check(rep, "parity sweep: pair(D, theta(D)) even", parity);
    detail::check(rep, "gap = -D^2/2 on sweep", gap_ok);
    detail::check(rep, "bundle invariants are theta-symmetric", theta_sym);

    // closed forms vs brute force on small nodes-plus-trope shapes
    bool agree = true;
    for (int t = kNodeCount; t < kGeneratorCount; ++t) {
        std::vector<int> disjoint;
        for (int nidx = 0; nidx < kNodeCount; ++nidx)
            if (ctx.gram[nidx][t] == 0) disjoint.push_back(nidx);
        for (std::size_t a = 0; a < disjoint.size(); ++a) {
            for (std::int64_t ca = 1; ca <= 2; ++ca) {
                std::map<int, std::int64_t> nodes{{disjoint[a], ca}};
                DivisorClass d = DivisorClass::unit(t);
                d.coeffs[static_cast<std::size_t>(disjoint[a])] = ca;
                if (prop_ex2_closed_form(nodes, t) != !is_theta_invariant(d)) agree = false;
                if (corollary_closed_form(nodes, t) !=
                    (no_invariant_subdivisor(d).result == SubdivisorScan::Result::holds))
                    agree = false;
            }
        }
    }
    detail::check(rep, "closed forms agree with brute force (small shapes)", agree);

    return rep;
}

}  // namespace kummer

#endif  // KUMMER_ENUMERATE_HPP
