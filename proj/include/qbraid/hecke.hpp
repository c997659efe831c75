#ifndef QBRAID_HECKE_HPP
#define QBRAID_HECKE_HPP

// Relation checks for the braid action on product kets: the defining
// algebra relations, and the two quadratic reduction identities satisfied
// by the half-swap words r_word(2) and r_word(3).

#include "qbraid/braid.hpp"
#include "qbraid/report.hpp"

namespace qbraid {

std::vector<Ket> all_kets(int n, int sites);

// quadratic, braid, commuting and inverse relations on every basis ket
CheckReport verify_hecke(int n, int sites);

// w * w^{-1} acts as the identity for random mixed words
CheckReport verify_random_braids(int n, int sites, int count, unsigned seed);

// R = r_word(2) on 4 sites: R^2 expressed through shorter words, exactly
CheckReport verify_quadratic22(int n);
CheckReport verify_quadratic22_float(int n, double q);

// R = r_word(3) on 6 sites: the analogous degree-2 reduction
CheckReport verify_quadratic41_float(int n, double q);
CheckReport verify_quadratic41(int n);  // exact variant, noticeably slower

}  // namespace qbraid

#endif
