#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitred/errors.hpp"
#include "splitred/gf.hpp"

namespace splitred {

class tower;

// An element of a tower level. Level 0 is the unramified base: integers of the
// absolutely unramified extension with residue field F_{p^s} (mixed
// characteristic, stored as z-coefficients mod p^prec0) or k[[t]] (equal
// characteristic, stored as t-digits in k). Level i >= 1 is the quotient by the
// i-th Eisenstein polynomial; elements are coefficient vectors over level i-1.
//
// Data is exact modulo the stored base truncations; `precision()` reports, in
// own-level uniformizer digits, the threshold below which the element is exact.
// Elements keep a raw pointer to their tower, which must outlive them.
class elem {
  public:
    elem() = default;

    const tower* tw = nullptr;
    int lvl = 0;

    // level-0 payload
    std::vector<mpz_class> zc;      // mixed characteristic
    std::vector<gf_ctx::elem> tc;   // equal characteristic
    int prec0 = 0;

    // payload for lvl >= 1
    std::vector<elem> c;

    bool is_data_zero() const;
    int precision() const; // own-level uniformizer digits

    // Exact valuation in own-level uniformizer units; nullopt when the element
    // is indistinguishable from 0 at its precision.
    std::optional<long> val_opt() const;
    long val() const; // throws indistinguishable_zero

    elem operator-() const;
    elem operator+(const elem& o) const;
    elem operator-(const elem& o) const;
    elem operator*(const elem& o) const;
    elem pow(unsigned long long e) const;

    // Exact division by the own-level uniformizer (element must be divisible).
    elem div_pi() const;
    elem div_pi(long k) const;

    // Inverse of a unit (val == 0).
    elem inv_unit() const;

    // Integral quotient a/b; requires val(a) >= val(b).
    elem div(const elem& b) const;

    gf_ctx::elem residue() const;

    // True when val(*this - o) is indistinguishable from 0, i.e. the two
    // elements agree at working precision.
    bool eq(const elem& o) const;
    // Agreement modulo pi^t (own-level units).
    bool eq_mod(const elem& o, long t) const;

    std::string print() const;

  private:
    struct val_bound {
        long v;
        bool exact;
    };
    val_bound val_or_bound() const;
    void reduce0(); // renormalize level-0 payload to prec0
    friend class tower;
    friend struct tower_extension;
};

struct level_spec {
    std::string name;
    unsigned degree = 0;
    // degree+1 coefficient expressions over the previous level, constant first,
    // leading coefficient must evaluate to 1
    std::vector<std::string> poly;
};

struct tower_spec {
    unsigned characteristic = 0; // 0 or p
    unsigned p = 2;
    unsigned residue_degree = 1;
    std::vector<unsigned> residue_poly; // optional explicit modulus for F_{p^s}
    int precision = 40;                 // deepest-level uniformizer digits
    std::string base_name = "U";
    std::vector<level_spec> levels;
};

class tower {
  public:
    struct level {
        std::string name;
        unsigned degree;
        std::vector<elem> poly; // non-leading coefficients a_0..a_{e-1} at previous level
        elem inv_a0_unit;       // inverse of a_0 / pi, precomputed for div_pi
    };

    unsigned p = 2;
    unsigned characteristic = 0;
    std::shared_ptr<const gf_ctx> k;
    int precision = 40;
    int base_prec = 0; // base digits (p-adic or t-adic)
    std::string base_name = "U";
    std::vector<level> levels;

    int top_level() const { return static_cast<int>(levels.size()); }
    bool equal_char() const { return characteristic != 0; }

    // ramification index of level `to` over level `from`
    long ram_index(int from, int to) const;
    long abs_ram_index() const { return ram_index(0, top_level()); }
    // v_L(p) at level lvl; in equal characteristic p is 0 there (returns nullopt)
    std::optional<long> val_of_p(int lvl) const;

    const level& lvl_info(int lvl) const; // lvl >= 1
    int level_index(const std::string& name) const; // -1 if unknown; base_name -> 0

    elem zero(int lvl) const;
    elem one(int lvl) const;
    elem from_int(int lvl, const mpz_class& n) const;
    elem pi(int lvl) const; // uniformizer of that level (p or t at level 0)
    elem promote(const elem& a, int to_lvl) const;
    elem embed_residue(int lvl, const gf_ctx::elem& r) const; // naive lift
    elem teichmuller(int lvl, const gf_ctx::elem& r) const;

    // Teichmueller digit expansion: x = sum tau(digit_j) pi^j, first `count` digits.
    std::vector<gf_ctx::elem> teich_digits(const elem& x, int count) const;
    elem from_teich_digits(int lvl, const std::vector<gf_ctx::elem>& digits) const;

    // Validates the Eisenstein condition and appends a level.
    void add_level(const std::string& name, unsigned degree, std::vector<elem> coeffs);

    friend class elem;

  private:
    mutable std::mutex teich_mu_;
    mutable std::unordered_map<std::uint64_t, elem> teich_memo_; // level-0 lifts by residue index
};

// Construction from a spec with expression-valued coefficients lives in
// localfield.cpp (it needs the element parser).
std::shared_ptr<tower> make_tower(const tower_spec& spec);

// Fractional wrapper: value = num / pi_lvl^den_pow. Curve arithmetic and the
// expression language work with these.
class fe {
  public:
    fe() = default;
    explicit fe(elem n, long den_pow = 0) : num_(std::move(n)), den_(den_pow) {}

    const elem& num() const { return num_; }
    long den_pow() const { return den_; }
    const tower* tw() const { return num_.tw; }
    int lvl() const { return num_.lvl; }

    std::optional<long> val_opt() const;
    long val() const;
    bool is_zero_at_precision() const { return !val_opt().has_value(); }

    fe operator-() const;
    fe operator+(const fe& o) const;
    fe operator-(const fe& o) const;
    fe operator*(const fe& o) const;
    fe operator/(const fe& o) const;
    fe pow(long long e) const;

    bool eq(const fe& o) const;

    // Strips common uniformizer powers; integral elements end with den_pow 0.
    fe normalized() const;
    // Requires the value to be integral at precision.
    elem as_integral() const;

    std::string print() const;

  private:
    elem num_;
    long den_ = 0;
};

} // namespace splitred
