#include "splitred/gf.hpp"

#include <algorithm>
#include <numeric>

namespace splitred {

namespace {

using poly = std::vector<unsigned>; // dense over F_p, least significant first

void trim(poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

poly poly_mul(const poly& a, const poly& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

poly poly_mod(poly a, const poly& m, unsigned p) {
    trim(a);
    if (m.empty() || m.size() == 1) return {};
    const unsigned lead_inv = [&] {
        // m monic in all our uses, but invert anyway
        unsigned l = m.back() % p, x = 1;
        for (unsigned k = 0; k < p - 2; ++k) x = (x * l) % p;
        return x;
    }();
    while (a.size() >= m.size()) {
        unsigned c = (a.back() * lead_inv) % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            unsigned sub = (c * m[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

poly poly_powmod(poly base, std::uint64_t e, const poly& m, unsigned p) {
    poly r = {1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

poly poly_gcd(poly a, poly b, unsigned p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace

gf_ctx::gf_ctx(unsigned p, std::vector<unsigned> modulus) : p_(p), mod_(std::move(modulus)) {
    if (mod_.size() < 2 || mod_.back() % p_ != 1)
        throw error("residue modulus must be monic of degree >= 1");
    s_ = static_cast<unsigned>(mod_.size() - 1);
    order_ = 1;
    for (unsigned i = 0; i < s_; ++i) order_ *= p_;
    for (auto& c : mod_) c %= p_;
}

std::shared_ptr<const gf_ctx> gf_ctx::make(unsigned p, unsigned s) {
    return std::make_shared<const gf_ctx>(p, find_irreducible(p, s));
}

gf_ctx::elem gf_ctx::one() const {
    elem e(s_, 0);
    e[0] = 1 % p_;
    return e;
}

gf_ctx::elem gf_ctx::from_int(long long n) const {
    elem e(s_, 0);
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    e[0] = static_cast<unsigned>(r);
    return e;
}

gf_ctx::elem gf_ctx::gen() const {
    elem e(s_, 0);
    if (s_ >= 2)
        e[1] = 1;
    else
        e[0] = (p_ - mod_[0]) % p_; // z == root of the degree-1 modulus
    return e;
}

bool gf_ctx::is_zero(const elem& a) const {
    return std::all_of(a.begin(), a.end(), [](unsigned c) { return c == 0; });
}

gf_ctx::elem gf_ctx::add(const elem& a, const elem& b) const {
    elem r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

gf_ctx::elem gf_ctx::sub(const elem& a, const elem& b) const {
    elem r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
    return r;
}

gf_ctx::elem gf_ctx::neg(const elem& a) const {
    elem r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = (p_ - a[i]) % p_;
    return r;
}

gf_ctx::elem gf_ctx::mul(const elem& a, const elem& b) const {
    poly r = poly_mod(poly_mul(a, b, p_), mod_, p_);
    r.resize(s_, 0);
    return r;
}

gf_ctx::elem gf_ctx::pow(const elem& a, std::uint64_t e) const {
    poly r = poly_powmod(a, e, mod_, p_);
    r.resize(s_, 0);
    return r;
}

gf_ctx::elem gf_ctx::inv(const elem& a) const {
    if (is_zero(a)) throw non_unit();
    return pow(a, order_ - 2);
}

std::uint64_t gf_ctx::mult_order(const elem& a) const {
    if (is_zero(a)) throw non_unit();
    std::uint64_t n = order_ - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            primes.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) primes.push_back(m);
    std::uint64_t ord = n;
    for (std::uint64_t q : primes)
        while (ord % q == 0 && eq(pow(a, ord / q), one())) ord /= q;
    return ord;
}

gf_ctx::elem gf_ctx::pth_root(const elem& a) const {
    // Frobenius x -> x^p has inverse x -> x^{p^{s-1}}.
    std::uint64_t e = 1;
    for (unsigned i = 0; i + 1 < s_; ++i) e *= p_;
    return pow(a, e);
}

std::uint64_t gf_ctx::index_of(const elem& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = s_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

gf_ctx::elem gf_ctx::from_index(std::uint64_t idx) const {
    elem e(s_);
    for (unsigned i = 0; i < s_; ++i) {
        e[i] = static_cast<unsigned>(idx % p_);
        idx /= p_;
    }
    return e;
}

std::vector<gf_ctx::elem> gf_ctx::roots_of(const std::vector<elem>& coeffs) const {
    std::vector<elem> out;
    for (std::uint64_t i = 0; i < order_; ++i) {
        elem x = from_index(i);
        elem acc = zero();
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = add(mul(acc, x), coeffs[j]);
        if (is_zero(acc)) out.push_back(std::move(x));
    }
    return out;
}

bool gf_ctx::is_irreducible(unsigned p, const std::vector<unsigned>& f) {
    poly g = f;
    trim(g);
    if (g.size() < 2) return false;
    unsigned n = static_cast<unsigned>(g.size() - 1);
    // x^{p^n} == x mod f, and x^{p^{n/q}} - x coprime to f for prime q | n
    poly x = {0, 1};
    std::uint64_t pn = 1;
    for (unsigned i = 0; i < n; ++i) pn *= p;
    poly xq = poly_powmod(x, pn, g, p);
    poly diff = xq;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (unsigned q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool prime = true;
        for (unsigned r = 2; r * r <= q; ++r)
            if (q % r == 0) prime = false;
        if (!prime) continue;
        std::uint64_t pm = 1;
        for (unsigned i = 0; i < n / q; ++i) pm *= p;
        poly xm = poly_powmod(x, pm, g, p);
        poly d = xm;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        poly gg = poly_gcd(g, d, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

std::vector<unsigned> gf_ctx::find_irreducible(unsigned p, unsigned s) {
    if (s == 1) return {0, 1}; // z itself: F_p = F_p[z]/(z)
    // scan monic polynomials in lexicographic order of their low coefficients
    std::uint64_t total = 1;
    for (unsigned i = 0; i < s; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<unsigned> f(s + 1, 0);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < s; ++i) {
            f[i] = static_cast<unsigned>(t % p);
            t /= p;
        }
        f[s] = 1;
        if (is_irreducible(p, f)) return f;
    }
    throw error("no irreducible polynomial found"); // unreachable
}

} // namespace splitred
