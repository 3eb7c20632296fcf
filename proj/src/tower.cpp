#include "splitred/tower.hpp"

#include <algorithm>
#include <sstream>

namespace splitred {

namespace {

mpz_class pow_ui(unsigned base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

long vp_mpz(const mpz_class& a, unsigned p) {
    // a != 0
    mpz_class t = a;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

void check_compatible(const elem& a, const elem& b) {
    if (a.tw != b.tw || a.lvl != b.lvl)
        throw error("operands live at different tower levels");
}

} // namespace

// ---------------------------------------------------------------------------
// elem
// ---------------------------------------------------------------------------

bool elem::is_data_zero() const {
    if (lvl == 0) {
        if (!tw->equal_char()) {
            for (const auto& z : zc)
                if (z != 0) return false;
            return true;
        }
        for (const auto& d : tc)
            if (!tw->k->is_zero(d)) return false;
        return true;
    }
    return std::all_of(c.begin(), c.end(), [](const elem& x) { return x.is_data_zero(); });
}

int elem::precision() const {
    if (lvl == 0) return prec0;
    const unsigned e = tw->levels[lvl - 1].degree;
    long m = -1;
    for (std::size_t j = 0; j < c.size(); ++j) {
        long q = static_cast<long>(e) * c[j].precision() + static_cast<long>(j);
        if (m < 0 || q < m) m = q;
    }
    return static_cast<int>(m);
}

elem::val_bound elem::val_or_bound() const {
    if (lvl == 0) {
        if (!tw->equal_char()) {
            long best = prec0;
            bool exact = false;
            for (const auto& z : zc) {
                if (z == 0) continue;
                long v = vp_mpz(z, tw->p);
                if (!exact || v < best) {
                    best = v;
                    exact = true;
                }
            }
            return {exact ? best : static_cast<long>(prec0), exact};
        }
        for (std::size_t i = 0; i < tc.size(); ++i)
            if (!tw->k->is_zero(tc[i])) return {static_cast<long>(i), true};
        return {static_cast<long>(prec0), false};
    }
    const long e = tw->levels[lvl - 1].degree;
    long best_exact = -1, best_bound = -1;
    for (std::size_t j = 0; j < c.size(); ++j) {
        val_bound vb = c[j].val_or_bound();
        long q = e * vb.v + static_cast<long>(j);
        if (vb.exact) {
            if (best_exact < 0 || q < best_exact) best_exact = q;
        } else {
            if (best_bound < 0 || q < best_bound) best_bound = q;
        }
    }
    if (best_exact >= 0 && (best_bound < 0 || best_exact < best_bound))
        return {best_exact, true};
    long b = best_bound;
    if (best_exact >= 0 && best_exact < b) b = best_exact;
    return {b, false};
}

std::optional<long> elem::val_opt() const {
    val_bound vb = val_or_bound();
    if (!vb.exact) return std::nullopt;
    return vb.v;
}

long elem::val() const {
    auto v = val_opt();
    if (!v) throw indistinguishable_zero();
    return *v;
}

void elem::reduce0() {
    if (!tw->equal_char()) {
        mpz_class m = pow_ui(tw->p, static_cast<unsigned long>(std::max(prec0, 0)));
        for (auto& z : zc) {
            z %= m;
            if (z < 0) z += m;
        }
    } else {
        tc.resize(static_cast<std::size_t>(std::max(prec0, 0)), tw->k->zero());
    }
}

elem elem::operator-() const {
    elem r = *this;
    if (lvl == 0) {
        if (!tw->equal_char()) {
            for (auto& z : r.zc) z = -z;
            r.reduce0();
        } else {
            for (auto& d : r.tc) d = tw->k->neg(d);
        }
        return r;
    }
    for (auto& x : r.c) x = -x;
    return r;
}

elem elem::operator+(const elem& o) const {
    check_compatible(*this, o);
    if (lvl == 0) {
        elem r;
        r.tw = tw;
        r.lvl = 0;
        r.prec0 = std::min(prec0, o.prec0);
        if (!tw->equal_char()) {
            r.zc.resize(zc.size());
            for (std::size_t i = 0; i < zc.size(); ++i) r.zc[i] = zc[i] + o.zc[i];
        } else {
            r.tc.resize(r.prec0, tw->k->zero());
            for (std::size_t i = 0; i < r.tc.size(); ++i) r.tc[i] = tw->k->add(tc[i], o.tc[i]);
        }
        r.reduce0();
        return r;
    }
    elem r = *this;
    for (std::size_t j = 0; j < c.size(); ++j) r.c[j] = c[j] + o.c[j];
    return r;
}

elem elem::operator-(const elem& o) const { return *this + (-o); }

elem elem::operator*(const elem& o) const {
    check_compatible(*this, o);
    if (lvl == 0) {
        elem r;
        r.tw = tw;
        r.lvl = 0;
        r.prec0 = std::min(prec0, o.prec0);
        if (!tw->equal_char()) {
            const auto& h = tw->k->modulus();
            const unsigned s = tw->k->degree();
            std::vector<mpz_class> prod(2 * s - 1, mpz_class(0));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) prod[i + j] += zc[i] * o.zc[j];
            // reduce modulo the monic residue polynomial h(z)
            for (std::size_t idx = prod.size(); idx-- > s;) {
                mpz_class t = prod[idx];
                if (t == 0) continue;
                prod[idx] = 0;
                for (unsigned i = 0; i < s; ++i)
                    if (h[i] != 0) prod[idx - s + i] -= t * h[i];
            }
            prod.resize(s);
            r.zc = std::move(prod);
        } else {
            r.tc.assign(r.prec0, tw->k->zero());
            for (std::size_t i = 0; i < tc.size() && i < static_cast<std::size_t>(r.prec0); ++i) {
                if (tw->k->is_zero(tc[i])) continue;
                for (std::size_t j = 0; j < o.tc.size() && i + j < static_cast<std::size_t>(r.prec0); ++j)
                    r.tc[i + j] = tw->k->add(r.tc[i + j], tw->k->mul(tc[i], o.tc[j]));
            }
        }
        r.reduce0();
        return r;
    }
    const auto& lv = tw->levels[lvl - 1];
    const unsigned e = lv.degree;
    std::vector<elem> prod(2 * e - 1, tw->zero(lvl - 1));
    for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = prod[i + j] + c[i] * o.c[j];
    // pi^e = -(a_0 + a_1 pi + ... + a_{e-1} pi^{e-1})
    for (std::size_t idx = prod.size(); idx-- > e;) {
        elem t = prod[idx];
        prod[idx] = tw->zero(lvl - 1);
        for (unsigned i = 0; i < e; ++i)
            prod[idx - e + i] = prod[idx - e + i] - t * lv.poly[i];
    }
    prod.resize(e, tw->zero(lvl - 1));
    elem r;
    r.tw = tw;
    r.lvl = lvl;
    r.c = std::move(prod);
    return r;
}

elem elem::pow(unsigned long long e) const {
    elem r = tw->one(lvl);
    elem b = *this;
    while (e) {
        if (e & 1ULL) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

elem elem::div_pi() const {
    if (lvl == 0) {
        elem r = *this;
        if (r.prec0 <= 1) throw insufficient_precision("cannot divide by uniformizer: precision exhausted");
        if (!tw->equal_char()) {
            for (auto& z : r.zc) {
                if (!mpz_divisible_ui_p(z.get_mpz_t(), tw->p))
                    throw error("element not divisible by uniformizer");
                mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), tw->p);
            }
            r.prec0 -= 1;
            r.reduce0();
        } else {
            if (!tw->k->is_zero(r.tc[0])) throw error("element not divisible by uniformizer");
            r.tc.erase(r.tc.begin());
            r.prec0 -= 1;
        }
        return r;
    }
    const auto& lv = tw->levels[lvl - 1];
    const unsigned e = lv.degree;
    // Solve pi * x = this: coefficient of pi^m gives x_{m-1} - x_{e-1} a_m = c_m
    // for m >= 1, and -x_{e-1} a_0 = c_0.
    // a_0 = pi * unit (Eisenstein), so c[0]/a_0 = (c[0]/pi) * unit^{-1} with the
    // unit inverse precomputed at level construction
    elem top = -(c[0].div_pi() * lv.inv_a0_unit);
    elem r;
    r.tw = tw;
    r.lvl = lvl;
    r.c.assign(e, tw->zero(lvl - 1));
    r.c[e - 1] = top;
    for (unsigned m = 1; m < e; ++m) r.c[m - 1] = c[m] + top * lv.poly[m];
    return r;
}

elem elem::div_pi(long k) const {
    elem r = *this;
    for (long i = 0; i < k; ++i) r = r.div_pi();
    return r;
}

elem elem::inv_unit() const {
    auto v = val_opt();
    if (!v || *v != 0) throw non_unit();
    elem x = tw->embed_residue(lvl, tw->k->inv(residue()));
    long target = precision();
    // Newton: correct digits double each step.
    for (long got = 1; got < target + 1; got *= 2) {
        elem two = tw->from_int(lvl, 2);
        x = x * (two - *this * x);
    }
    return x;
}

elem elem::div(const elem& b) const {
    check_compatible(*this, b);
    long vb = b.val(); // throws when b ~ 0
    auto va = val_opt();
    if (va && *va < vb) throw error("non-integral quotient at this level");
    elem unit = b.div_pi(vb);
    elem num = this->div_pi(vb);
    return num * unit.inv_unit();
}

gf_ctx::elem elem::residue() const {
    if (lvl == 0) {
        if (prec0 < 1) throw insufficient_precision("no residue at zero precision");
        if (!tw->equal_char()) {
            gf_ctx::elem r(tw->k->degree());
            for (std::size_t i = 0; i < zc.size(); ++i) {
                mpz_class m = zc[i] % tw->p;
                r[i] = static_cast<unsigned>(m.get_ui());
            }
            return r;
        }
        return tc[0];
    }
    return c[0].residue();
}

bool elem::eq(const elem& o) const { return !((*this - o).val_opt().has_value()); }

bool elem::eq_mod(const elem& o, long t) const {
    elem d = *this - o;
    val_bound vb = d.val_or_bound();
    if (vb.exact) return vb.v >= t;
    if (vb.v >= t) return true;
    throw insufficient_precision("cannot decide congruence at requested modulus");
}

std::string elem::print() const {
    std::ostringstream os;
    if (lvl == 0) {
        if (!tw->equal_char()) {
            bool first = true;
            for (std::size_t i = 0; i < zc.size(); ++i) {
                if (zc[i] == 0) continue;
                if (!first) os << " + ";
                first = false;
                os << zc[i].get_str();
                if (i == 1) os << "*z";
                if (i > 1) os << "*z^" << i;
            }
            if (first) os << "0";
        } else {
            bool first = true;
            for (std::size_t i = 0; i < tc.size(); ++i) {
                if (tw->k->is_zero(tc[i])) continue;
                if (!first) os << " + ";
                first = false;
                os << "(";
                bool f2 = true;
                for (std::size_t j = 0; j < tc[i].size(); ++j) {
                    if (tc[i][j] == 0) continue;
                    if (!f2) os << " + ";
                    f2 = false;
                    os << tc[i][j];
                    if (j == 1) os << "*z";
                    if (j > 1) os << "*z^" << j;
                }
                if (f2) os << "0";
                os << ")";
                if (i == 1) os << "*pi_" << tw->base_name;
                if (i > 1) os << "*pi_" << tw->base_name << "^" << i;
            }
            if (first) os << "0";
        }
        return os.str();
    }
    const std::string& nm = tw->levels[lvl - 1].name;
    bool first = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j].is_data_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c[j].print() << ")";
        if (j == 1) os << "*pi_" << nm;
        if (j > 1) os << "*pi_" << nm << "^" << j;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// tower
// ---------------------------------------------------------------------------

long tower::ram_index(int from, int to) const {
    long e = 1;
    for (int i = from; i < to; ++i) e *= levels[static_cast<std::size_t>(i)].degree;
    return e;
}

std::optional<long> tower::val_of_p(int lvl) const {
    if (equal_char()) return std::nullopt;
    return ram_index(0, lvl);
}

const tower::level& tower::lvl_info(int lvl) const {
    return levels.at(static_cast<std::size_t>(lvl - 1));
}

int tower::level_index(const std::string& name) const {
    if (name == base_name) return 0;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i].name == name) return static_cast<int>(i) + 1;
    return -1;
}

elem tower::zero(int lvl) const {
    elem z;
    z.tw = this;
    z.lvl = lvl;
    if (lvl == 0) {
        z.prec0 = base_prec;
        if (!equal_char())
            z.zc.assign(k->degree(), mpz_class(0));
        else
            z.tc.assign(base_prec, k->zero());
        return z;
    }
    z.c.assign(levels[static_cast<std::size_t>(lvl - 1)].degree, zero(lvl - 1));
    return z;
}

elem tower::one(int lvl) const { return from_int(lvl, 1); }

elem tower::from_int(int lvl, const mpz_class& n) const {
    elem z = zero(0);
    if (!equal_char()) {
        z.zc[0] = n;
        z.reduce0();
    } else {
        mpz_class r = n % p;
        if (r < 0) r += p;
        z.tc[0] = k->from_int(static_cast<long long>(r.get_ui()));
    }
    return promote(z, lvl);
}

elem tower::pi(int lvl) const {
    if (lvl == 0) {
        if (!equal_char()) return from_int(0, p);
        elem z = zero(0);
        if (base_prec >= 2) z.tc[1] = k->one();
        return z;
    }
    elem z = zero(lvl);
    z.c[1] = one(lvl - 1);
    return z;
}

elem tower::promote(const elem& a, int to_lvl) const {
    elem r = a;
    while (r.lvl < to_lvl) {
        elem w;
        w.tw = this;
        w.lvl = r.lvl + 1;
        w.c.assign(levels[static_cast<std::size_t>(r.lvl)].degree, zero(r.lvl));
        w.c[0] = std::move(r);
        r = std::move(w);
    }
    if (r.lvl != to_lvl) throw error("cannot demote element to lower level");
    return r;
}

elem tower::embed_residue(int lvl, const gf_ctx::elem& r) const {
    elem z = zero(0);
    if (!equal_char()) {
        for (std::size_t i = 0; i < r.size(); ++i) z.zc[i] = r[i];
    } else {
        z.tc[0] = r;
    }
    return promote(z, lvl);
}

elem tower::teichmuller(int lvl, const gf_ctx::elem& r) const {
    if (equal_char()) return embed_residue(lvl, r); // constants are exact
    const std::uint64_t key = k->index_of(r);
    {
        std::lock_guard<std::mutex> lock(teich_mu_);
        auto it = teich_memo_.find(key);
        if (it != teich_memo_.end()) return promote(it->second, lvl);
    }
    elem x = embed_residue(0, r);
    const std::uint64_t q = k->order();
    for (int i = 0; i < base_prec + 2; ++i) x = x.pow(q);
    {
        std::lock_guard<std::mutex> lock(teich_mu_);
        teich_memo_.emplace(key, x);
    }
    return promote(x, lvl);
}

std::vector<gf_ctx::elem> tower::teich_digits(const elem& x, int count) const {
    std::vector<gf_ctx::elem> out;
    elem cur = x;
    for (int i = 0; i < count; ++i) {
        gf_ctx::elem d = cur.residue();
        out.push_back(d);
        cur = (cur - teichmuller(x.lvl, d)).div_pi();
    }
    return out;
}

elem tower::from_teich_digits(int lvl, const std::vector<gf_ctx::elem>& digits) const {
    elem acc = zero(lvl);
    elem u = pi(lvl);
    elem upow = one(lvl);
    for (const auto& d : digits) {
        if (!k->is_zero(d)) acc = acc + teichmuller(lvl, d) * upow;
        upow = upow * u;
    }
    return acc;
}

void tower::add_level(const std::string& name, unsigned degree, std::vector<elem> coeffs) {
    if (degree < 1) throw error("level degree must be >= 1");
    if (coeffs.size() != degree)
        throw error("expected the non-leading coefficients of a monic polynomial");
    const int prev = top_level();
    for (auto& a : coeffs)
        if (a.tw != this || a.lvl != prev)
            throw error("level coefficients must live at the previous level");
    for (unsigned i = 1; i < degree; ++i) {
        auto v = coeffs[i].val_opt();
        if (v && *v < 1)
            throw non_eisenstein(static_cast<int>(i),
                                 "coefficient " + std::to_string(i) + " has valuation 0");
    }
    auto v0 = coeffs[0].val_opt();
    if (!v0) throw insufficient_precision("cannot verify Eisenstein constant term");
    if (*v0 != 1)
        throw non_eisenstein(0, "constant term has valuation " + std::to_string(*v0) +
                                    ", expected exactly 1");
    elem inv_a0_unit = coeffs[0].div_pi().inv_unit();
    levels.push_back(level{name, degree, std::move(coeffs), std::move(inv_a0_unit)});
}

// ---------------------------------------------------------------------------
// fe
// ---------------------------------------------------------------------------

std::optional<long> fe::val_opt() const {
    auto v = num_.val_opt();
    if (!v) return std::nullopt;
    return *v - den_;
}

long fe::val() const {
    auto v = val_opt();
    if (!v) throw indistinguishable_zero();
    return *v;
}

fe fe::operator-() const { return fe(-num_, den_); }

fe fe::operator+(const fe& o) const {
    long d = std::max(den_, o.den_);
    const tower* t = num_.tw;
    elem a = num_ * t->pi(num_.lvl).pow(static_cast<unsigned long long>(d - den_));
    elem b = o.num_ * t->pi(num_.lvl).pow(static_cast<unsigned long long>(d - o.den_));
    return fe(a + b, d);
}

fe fe::operator-(const fe& o) const { return *this + (-o); }

fe fe::operator*(const fe& o) const { return fe(num_ * o.num_, den_ + o.den_); }

fe fe::operator/(const fe& o) const {
    long vb = o.num_.val(); // throws when divisor ~ 0
    elem unit = o.num_.div_pi(vb);
    return fe(num_ * unit.inv_unit(), den_ - o.den_ + vb);
}

fe fe::pow(long long e) const {
    if (e >= 0) return fe(num_.pow(static_cast<unsigned long long>(e)), den_ * e);
    fe inv = fe(num_.tw->one(num_.lvl)) / *this;
    return inv.pow(-e);
}

bool fe::eq(const fe& o) const { return !((*this - o).val_opt().has_value()); }

fe fe::normalized() const {
    fe r = *this;
    while (r.den_ > 0) {
        auto v = r.num_.val_opt();
        if (!v || *v < 1) break;
        r.num_ = r.num_.div_pi();
        r.den_ -= 1;
    }
    return r;
}

elem fe::as_integral() const {
    fe n = normalized();
    if (n.den_ == 0) return n.num_;
    auto v = n.num_.val_opt();
    if (!v) {
        // indistinguishable from 0; the truncation of 0/pi^k is 0, with less precision
        throw insufficient_precision("cannot certify integrality at this precision");
    }
    throw error("value is not integral (valuation " + std::to_string(*v - n.den_) + ")");
}

std::string fe::print() const {
    fe n = normalized();
    if (n.den_ == 0) return n.num_.print();
    std::ostringstream os;
    std::string nm = n.num_.lvl == 0 ? n.num_.tw->base_name
                                     : n.num_.tw->levels[n.num_.lvl - 1].name;
    os << "(" << n.num_.print() << ")/pi_" << nm << "^" << n.den_;
    return os.str();
}

} // namespace splitred
