// predicates.hpp
//
// Certificates for the three hypotheses under which the pushforward of
// an effective divisor witnesses a proper first Brill-Noether locus:
//
//   (i)   h^0 = 1, certified by a peeling order in which every curve
//         pairs non-positively with the running partial sum;
//   (ii)  no nonzero effective subdivisor is theta-invariant, decided
//         by budgeted brute force;
//   (iii) self-intersection below -4.
//
// Also the closed-form criteria for divisors of the shape
// "disjoint nodes plus one trope", cross-checkable against (ii).

#ifndef KUMMER_PREDICATES_HPP
#define KUMMER_PREDICATES_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kummer/involution.hpp"
#include "kummer/lattice.hpp"

namespace kummer {

inline constexpr std::int64_t kDefaultSubdivisorBudget = std::int64_t{1} << 20;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct H0Certificate {
    enum class Status { certified, unknown };
    Status status = Status::unknown;
    // Generator indices with multiplicity; present iff certified.
    std::vector<int> peeling_order;
};

namespace detail {

inline std::int64_t pair_with_generator(int g, const DivisorClass& d) {
    const auto& gram = context().gram;
    std::int64_t s = 0;
    for (int j = 0; j < kGeneratorCount; ++j)
        if (d.coeffs[j] != 0 && gram[g][j] != 0)
            s = checked_add(s, checked_mul(gram[g][j], d.coeffs[j]));
    return s;
}

inline bool peel_search(const std::vector<int>& support, DivisorClass& placed,
                        DivisorClass& remaining,
                        std::set<std::array<std::int64_t, kGeneratorCount>>& dead,
                        std::vector<int>& order) {
    if (remaining.is_zero()) return true;
    if (dead.contains(remaining.coeffs)) return false;
    for (int g : support) {
        if (remaining.coeffs[g] == 0) continue;
        if (pair_with_generator(g, placed) > 0) continue;
        --remaining.coeffs[g];
        ++placed.coeffs[g];
        order.push_back(g);
        if (peel_search(support, placed, remaining, dead, order)) return true;
        order.pop_back();
        --placed.coeffs[g];
        ++remaining.coeffs[g];
    }
    dead.insert(remaining.coeffs);
    return false;
}

inline void require_effective_nonzero(const DivisorClass& d) {
    if (!d.is_effective())
        throw std::invalid_argument("divisor must be effective");
    if (d.is_zero())
        throw std::invalid_argument("divisor must be nonzero");
}

}  // namespace detail

// Searches all peeling orders C1,...,Cn of the curves of d (with
// multiplicity) such that (C_k . C1+...+C_{k-1}) <= 0 at every step.
// Pure node sums and pure trope sums always certify.  "unknown" means
// no order exists, not that h^0 differs from 1.
inline H0Certificate h0_one_certificate(const DivisorClass& d) {
    detail::require_effective_nonzero(d);
    std::vector<int> support;
    for (int i = 0; i < kGeneratorCount; ++i)
        if (d.coeffs[i] > 0) support.push_back(i);

    H0Certificate cert;
    DivisorClass placed;
    DivisorClass remaining = d;
    std::set<std::array<std::int64_t, kGeneratorCount>> dead;
    if (detail::peel_search(support, placed, remaining, dead, cert.peeling_order)) {
        cert.status = H0Certificate::Status::certified;
    } else {
        cert.peeling_order.clear();
    }
    return cert;
}

// Number of nonzero effective subdivisors: prod(a_i + 1) - 1.
inline std::int64_t subdivisor_count(const DivisorClass& d) {
    std::int64_t n = 1;
    for (auto c : d.coeffs)
        n = detail::checked_mul(n, detail::checked_add(c, 1));
    return n - 1;
}

// Visits every vector 0 <= v <= d componentwise, v != 0, in ascending
// lexicographic order of coefficient vectors (index 0 most significant).
// Throws BudgetExceeded if prod(a_i + 1) > budget; never truncates.
template <class F>
inline void for_each_subdivisor(const DivisorClass& d, std::int64_t budget, F&& visit) {
    detail::require_effective_nonzero(d);
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    std::int64_t total = 1;
    for (auto c : d.coeffs)
        total = detail::checked_mul(total, detail::checked_add(c, 1));
    if (total > budget)
        throw BudgetExceeded("subdivisor count " + std::to_string(total) +
                             " exceeds budget " + std::to_string(budget));

    std::vector<int> support;
    for (int i = 0; i < kGeneratorCount; ++i)
        if (d.coeffs[i] > 0) support.push_back(i);

    DivisorClass v;
    while (true) {
        // increment as a mixed-radix counter, last support index fastest
        int k = static_cast<int>(support.size()) - 1;
        for (; k >= 0; --k) {
            const int g = support[static_cast<std::size_t>(k)];
            if (v.coeffs[g] < d.coeffs[g]) {
                ++v.coeffs[g];
                break;
            }
            v.coeffs[g] = 0;
        }
        if (k < 0) break;
        visit(static_cast<const DivisorClass&>(v));
    }
}

struct SubdivisorScan {
    enum class Result { holds, fails, exhausted_budget };
    Result result = Result::holds;
    std::optional<DivisorClass> witness;  // present iff fails
};

// Brute force over all nonzero effective subdivisors; on failure
// returns the lexicographically first theta-invariant witness.
inline SubdivisorScan no_invariant_subdivisor(
    const DivisorClass& d, std::int64_t budget = kDefaultSubdivisorBudget) {
    SubdivisorScan scan;
    try {
        for_each_subdivisor(d, budget, [&](const DivisorClass& sub) {
            if (scan.witness) return;
            if (is_theta_invariant(sub)) {
                scan.result = SubdivisorScan::Result::fails;
                scan.witness = sub;
            }
        });
    } catch (const BudgetExceeded&) {
        scan.result = SubdivisorScan::Result::exhausted_budget;
    }
    return scan;
}

namespace detail {

inline void validate_nodes_plus_trope(const std::map<int, std::int64_t>& nodes, int trope) {
    const auto& basis = context().basis;
    if (trope < 0 || trope >= kGeneratorCount ||
        basis[static_cast<std::size_t>(trope)].kind != CurveKind::trope)
        throw std::invalid_argument("expected a trope generator");
    if (nodes.empty())
        throw std::invalid_argument("node set must be nonempty");
    const auto& gram = context().gram;
    for (const auto& [g, a] : nodes) {
        if (g < 0 || g >= kGeneratorCount ||
            basis[static_cast<std::size_t>(g)].kind != CurveKind::node)
            throw std::invalid_argument("expected node generators");
        if (a <= 0)
            throw std::invalid_argument("node coefficients must be positive");
        if (gram[g][trope] != 0)
            throw std::invalid_argument("node " + basis[static_cast<std::size_t>(g)].label +
                                        " intersects trope " +
                                        basis[static_cast<std::size_t>(trope)].label);
    }
}

}  // namespace detail

// For D = sum a_i E_i + T with distinct nodes disjoint from T:
// D is NOT theta-invariant iff no E_i equals theta(T), or the node
// theta(T) occurs with coefficient >= 2, or with coefficient 1 next to
// at least one other node.
inline bool prop_ex2_closed_form(const std::map<int, std::int64_t>& nodes, int trope) {
    detail::validate_nodes_plus_trope(nodes, trope);
    const int mate = context().theta_perm[trope];
    const auto it = nodes.find(mate);
    if (it == nodes.end()) return true;           // (a)
    return it->second >= 2 || nodes.size() >= 2;  // (b)
}

// Same shape: D has no theta-invariant nonzero effective subdivisor
// iff theta(T) is not among the nodes.
inline bool corollary_closed_form(const std::map<int, std::int64_t>& nodes, int trope) {
    detail::validate_nodes_plus_trope(nodes, trope);
    return !nodes.contains(context().theta_perm[trope]);
}

struct CheckReport {
    enum class Overall { pass, fail, unknown };
    H0Certificate cond_i;
    SubdivisorScan cond_ii;
    std::int64_t self_intersection = 0;
    bool cond_iii = false;
    Overall overall = Overall::unknown;
};

// Evaluates all three hypotheses for an effective nonzero divisor.
// Condition (iii) uses the exact self-intersection, never the term
// count: repeated curves make D^2 drop faster than -2n.
inline CheckReport theorem_check(const DivisorClass& d,
                                 std::int64_t budget = kDefaultSubdivisorBudget) {
    detail::require_effective_nonzero(d);
    CheckReport report;
    report.cond_i = h0_one_certificate(d);
    report.cond_ii = no_invariant_subdivisor(d, budget);
    report.self_intersection = self_int(d);
    report.cond_iii = report.self_intersection < -4;

    if (report.cond_ii.result == SubdivisorScan::Result::fails || !report.cond_iii)
        report.overall = CheckReport::Overall::fail;
    else if (report.cond_ii.result == SubdivisorScan::Result::exhausted_budget ||
             report.cond_i.status == H0Certificate::Status::unknown)
        report.overall = CheckReport::Overall::unknown;
    else
        report.overall = CheckReport::Overall::pass;
    return report;
}

}  // namespace kummer

#endif  // KUMMER_PREDICATES_HPP
