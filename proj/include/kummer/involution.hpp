// involution.hpp
//
// The Enriques involution theta acting on divisor classes: the basis
// permutation swapping the 16 nodes with the 16 tropes, extended
// linearly.  A class is in the image of the pullback from the quotient
// surface exactly when it is theta-invariant up to linear equivalence;
// a class that is *not* invariant certifies that its pushforward is a
// stable rank-2 bundle for every polarization.

#ifndef KUMMER_INVOLUTION_HPP
#define KUMMER_INVOLUTION_HPP

#include "kummer/lattice.hpp"

namespace kummer {

inline DivisorClass theta(const DivisorClass& d) {
    const auto& perm = context().theta_perm;
    DivisorClass r;
    for (int i = 0; i < kGeneratorCount; ++i)
        r.coeffs[perm[i]] = d.coeffs[i];
    return r;
}

// True iff theta(d) ~ d, i.e. the class of d pulls back from the quotient.
inline bool is_theta_invariant(const DivisorClass& d) {
    return equiv(theta(d), d);
}

// One-sided certificate: true means the pushforward bundle is stable
// with respect to any polarization; false means "no certificate".
inline bool pushforward_stable_certified(const DivisorClass& d) {
    return !is_theta_invariant(d);
}

}  // namespace kummer

#endif  // KUMMER_INVOLUTION_HPP
