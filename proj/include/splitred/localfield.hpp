#pragma once

#include <memory>
#include <string>

#include "splitred/tower.hpp"

namespace splitred {

// Valuation, at the level's own normalization, of the different of the
// extension step `lvl` over `lvl-1`, computed as v(f'(pi)) for the monogenic
// Eisenstein presentation.
long different_valuation(const tower& tw, int lvl);

// Galois conjugation for a binomial level polynomial t^e - c: pi -> zeta*pi.
// zeta is an e-th root of unity at the previous level (verified at precision).
elem conjugate(const elem& a, int lvl, const elem& zeta);

struct root_of_unity_result {
    bool yes = false;
    unsigned long long order = 0; // meaningful when yes
};

// Finite-precision root-of-unity test for a unit u: certifies Yes at working
// precision; a negative answer is sound relative to precision and the modeled
// residue field.
root_of_unity_result is_root_of_unity_heuristic(const elem& u, unsigned max_p_power);

struct tower_extension {
    std::shared_ptr<tower> tw; // same levels, residue field extended
    // maps an element of the original tower into the extended one
    elem map(const elem& a) const;

  private:
    friend tower_extension extend_residue_field(const tower& base, unsigned factor);
    const tower* src_ = nullptr;
    elem z_image_;              // image of the old residue generator's lift, at level 0
};

// Builds the unramified extension of the whole tower obtained by extending the
// residue field from F_{p^s} to F_{p^{s*factor}}.
tower_extension extend_residue_field(const tower& tw, unsigned factor);

} // namespace splitred
