#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "splitred/localfield.hpp"

namespace splitred {

// R = O_L / pi_K O_L = O_L / pi_L^d, the truncated unit ring of the step L/K.
// Elements of R are represented by tower elements at level L, compared mod
// pi_L^d; canonical representatives are Teichmueller digit tuples of length d.
struct truncated_unit_ring {
    const tower* tw = nullptr;
    int K = 0;
    int L = 0;
    long d = 0; // v_L(pi_K)
};

// Validates that pi_K and pi_L^d generate the same ideal of O_L.
truncated_unit_ring truncated_ring(const tower& tw, int K, int L);

enum class membership_answer { Yes, No, Inconclusive };

// Soundness classes of the layered decision procedure:
//   Solver           exact by algebraic structure (trivial exponent, prime-to-p
//                    part, w = 1)
//   EqualCharSupport exact support criterion in equal characteristic
//   ValuationScreen  mixed-characteristic No-certificate from achievable
//                    valuations of x^{p^j} - 1
//   ExhaustiveSearch witness found by enumeration over a residue extension
enum class certificate_tag { Solver, EqualCharSupport, ValuationScreen, ExhaustiveSearch };

const char* to_string(membership_answer a);
const char* to_string(certificate_tag t);

struct power_membership_verdict {
    membership_answer answer = membership_answer::Inconclusive;
    certificate_tag certificate = certificate_tag::Solver;
    std::string certificate_data;

    // Yes verdicts carry a witness x with x^m = input in R. When the witness
    // needed a residue extension, witness_tower owns the extended tower and
    // mapped_input is the input's image there, so x^m = mapped_input
    // re-verifies by direct powering.
    std::optional<elem> witness;
    std::shared_ptr<tower> witness_tower;
    std::shared_ptr<const tower_extension> witness_ext; // base -> witness_tower map
    std::optional<elem> mapped_input;
    unsigned witness_s = 0; // residue degree of the field the witness lives over

    std::vector<unsigned> searched_s; // residue degrees enumerated
};

nlohmann::json verdict_to_json(const power_membership_verdict& v);

struct enumeration_cache;

struct search_budget {
    unsigned s_max = 4;                                 // absolute residue degree cap
    std::uint64_t max_enumeration = std::uint64_t(1) << 24;
    bool parallel = true;
    // Optional per-ring cache: witness searches become table lookups after the
    // first enumeration with the same exponent and extension factor.
    enumeration_cache* cache = nullptr;
};

// u = tau * w with tau the Teichmueller lift of residue(u) and w principal.
struct unit_decomposition {
    elem tau;
    elem w;
};
unit_decomposition unit_decompose(const truncated_unit_ring& ring, const elem& u);

// Decides w in (1 + pi_L R)^{p^j} with algebraically-closed-residue semantics.
power_membership_verdict principal_power_membership(const truncated_unit_ring& ring,
                                                    const elem& w, unsigned j,
                                                    const search_budget& budget = {});

// Decides u in (R^x)^m; the prime-to-p part of m is always satisfied, so this
// reduces to the principal p-part after unit_decompose.
power_membership_verdict mth_power_in_units(const truncated_unit_ring& ring, const elem& u,
                                            unsigned long long m,
                                            const search_budget& budget = {});

// Ground-truth oracle over the finite residue field F_{p^{s*factor}}:
// exhaustively computes {x^m : x in R^x} and tests membership of u.
bool power_membership_oracle(const truncated_unit_ring& ring, const elem& u,
                             unsigned long long m, unsigned factor = 1,
                             bool parallel = false,
                             std::uint64_t guard = std::uint64_t(1) << 24);

// Full enumeration table {key(x^m) -> min index of x}, over the ring with
// residue field extended by `factor`. Used by grid tests (one enumeration,
// many membership queries) and by the benchmark.
struct power_image_table {
    std::shared_ptr<tower> ext_tw;                // owns the extension when factor > 1
    std::shared_ptr<const tower_extension> ext;   // mapping from the base tower
    const tower* twx = nullptr;                   // tower the enumeration ran in
    unsigned factor = 1;
    unsigned long long m = 1;
    bool principal_only = true;
    std::unordered_map<std::string, std::uint64_t> image;
    // digit-extraction scratch built during enumeration and reused by lookups
    std::shared_ptr<const void> scratch;

    // Reconstructs the enumerated unit with the given index.
    elem unit_from_index(const truncated_unit_ring& ring, std::uint64_t idx) const;
    // Min-index witness x with x^m = u (u given in the base tower), if any.
    std::optional<elem> lookup(const truncated_unit_ring& ring, const elem& u) const;
    // Min-index witness for the enumerated unit with the given index, computed
    // at the digit level without reconstructing the element.
    std::optional<std::uint64_t> lookup_index(const truncated_unit_ring& ring,
                                              std::uint64_t idx) const;
};

power_image_table enumerate_power_image(const truncated_unit_ring& ring, unsigned long long m,
                                        unsigned factor, bool principal_only, bool parallel,
                                        std::uint64_t guard = std::uint64_t(1) << 24);

// Memo of principal power tables for one fixed ring, keyed by (m, factor).
struct enumeration_cache {
    std::map<std::pair<unsigned long long, unsigned>, power_image_table> tables;
};

// Canonical key of x mod pi_L^d (Teichmueller digit indices), valid for any
// tower sharing the ring's level shape.
std::string canonical_key(const truncated_unit_ring& ring, const tower& twx, const elem& x);

} // namespace splitred
