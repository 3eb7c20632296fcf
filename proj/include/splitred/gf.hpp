#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "splitred/errors.hpp"

namespace splitred {

// Arithmetic context for the finite field F_{p^s} = F_p[z]/(h(z)).
// Elements are coefficient vectors of length s, least significant first.
class gf_ctx {
  public:
    gf_ctx(unsigned p, std::vector<unsigned> modulus);

    // F_{p^s} with an automatically chosen irreducible modulus of degree s.
    static std::shared_ptr<const gf_ctx> make(unsigned p, unsigned s);

    unsigned p() const { return p_; }
    unsigned degree() const { return s_; }
    std::uint64_t order() const { return order_; }
    const std::vector<unsigned>& modulus() const { return mod_; }

    using elem = std::vector<unsigned>;

    elem zero() const { return elem(s_, 0); }
    elem one() const;
    elem from_int(long long n) const;
    // The class of z itself (requires s >= 2; for s == 1, z reduces to a scalar root).
    elem gen() const;

    bool is_zero(const elem& a) const;
    bool eq(const elem& a, const elem& b) const { return a == b; }

    elem add(const elem& a, const elem& b) const;
    elem sub(const elem& a, const elem& b) const;
    elem neg(const elem& a) const;
    elem mul(const elem& a, const elem& b) const;
    elem inv(const elem& a) const;
    elem pow(const elem& a, std::uint64_t e) const;

    // Multiplicative order of a nonzero element.
    std::uint64_t mult_order(const elem& a) const;

    // Unique p-th root (Frobenius is bijective on a finite field).
    elem pth_root(const elem& a) const;

    // Dense enumeration index <-> element, used by enumeration kernels.
    std::uint64_t index_of(const elem& a) const;
    elem from_index(std::uint64_t idx) const;

    // Roots of a polynomial (coefficients in this field) found by scanning.
    std::vector<elem> roots_of(const std::vector<elem>& poly) const;

    static bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);
    static std::vector<unsigned> find_irreducible(unsigned p, unsigned s);

  private:
    unsigned p_;
    unsigned s_;
    std::uint64_t order_;
    std::vector<unsigned> mod_; // monic, length s_+1
};

} // namespace splitred
