// chern.hpp
//
// Numerical invariants of the rank-2 pushforward bundle of an effective
// divisor D through the etale double cover.  On the lattice side the
// pushforward square is [pi_* D]^2 = (D^2 + D.theta(D)), giving
//
//   c1^2 = D^2 + D.theta(D)        c2  = D.theta(D) / 2
//   chi  = D^2/2 + 2               gap = c2 - c1^2/2 = -D^2/2
//
// plus the dimension bounds entering the contradiction chain
// 4c2 - c1^2 - 3 <= dim U <= 3c2 - c1^2/2 - 1.

#ifndef KUMMER_CHERN_HPP
#define KUMMER_CHERN_HPP

#include <algorithm>

#include "kummer/involution.hpp"
#include "kummer/predicates.hpp"

namespace kummer {

struct BundleInvariants {
    std::int64_t d2 = 0;           // D^2
    std::int64_t c1sq = 0;         // c1^2
    std::int64_t c2 = 0;
    std::int64_t chi = 0;          // chi of the pushforward bundle
    std::int64_t gap = 0;          // c2 - c1^2/2 = -D^2/2
    std::int64_t h0_lower = 0;     // max(chi, 0)
    std::int64_t dim_m_lower = 0;  // 4c2 - c1^2 - 3
    std::int64_t dim_p_upper = 0;  // 3c2 - c1^2/2 - 1
    std::int64_t rho1 = 0;         // dim_m_lower - (1 - chi), a proxy for rho^1

    bool operator==(const BundleInvariants&) const = default;
};

inline BundleInvariants bundle_invariants(const DivisorClass& d) {
    detail::require_effective_nonzero(d);
    BundleInvariants inv;
    inv.d2 = self_int(d);
    const std::int64_t mixed = pair(d, theta(d));
    if (mixed % 2 != 0)
        throw std::domain_error("pair(D, theta(D)) is odd: c2 would not be integral");
    inv.c1sq = detail::checked_add(inv.d2, mixed);
    inv.c2 = mixed / 2;
    inv.chi = inv.d2 / 2 + 2;  // the lattice is even
    inv.gap = -inv.d2 / 2;
    inv.h0_lower = std::max<std::int64_t>(inv.chi, 0);
    inv.dim_m_lower =
        detail::checked_add(detail::checked_mul(4, inv.c2), -inv.c1sq) - 3;
    inv.dim_p_upper =
        detail::checked_add(detail::checked_mul(3, inv.c2), -inv.c1sq / 2) - 1;
    inv.rho1 = detail::checked_add(inv.dim_m_lower, inv.chi - 1);
    return inv;
}

// Expected dimension of the k-th Brill-Noether locus, using the moduli
// dimension lower bound as the (documented) proxy for dim M_H.
inline std::int64_t bn_number(std::int64_t k, const BundleInvariants& inv) {
    return detail::checked_add(
        inv.dim_m_lower, -detail::checked_mul(k, detail::checked_add(k, -inv.chi)));
}

// gap > 2 is exactly condition (iii): -D^2/2 > 2 iff D^2 < -4.
inline bool theorem_gap_check(const BundleInvariants& inv) { return inv.gap > 2; }

}  // namespace kummer

#endif  // KUMMER_CHERN_HPP
