#include "splitred/unitpowers.hpp"

#include <gmpxx.h>
#include <omp.h>

#include <algorithm>
#include <numeric>
#include <limits>
#include <sstream>

namespace splitred {

const char* to_string(membership_answer a) {
    switch (a) {
        case membership_answer::Yes: return "Yes";
        case membership_answer::No: return "No";
        default: return "Inconclusive";
    }
}

const char* to_string(certificate_tag t) {
    switch (t) {
        case certificate_tag::Solver: return "Solver";
        case certificate_tag::EqualCharSupport: return "EqualCharSupport";
        case certificate_tag::ValuationScreen: return "ValuationScreen";
        default: return "ExhaustiveSearch";
    }
}

nlohmann::json verdict_to_json(const power_membership_verdict& v) {
    nlohmann::json j;
    j["answer"] = to_string(v.answer);
    j["certificate"] = to_string(v.certificate);
    if (!v.certificate_data.empty()) j["certificate_data"] = v.certificate_data;
    if (v.witness) {
        j["witness"] = v.witness->print();
        j["witness_s"] = v.witness_s;
    } else {
        j["witness"] = nullptr;
    }
    j["searched_s"] = v.searched_s;
    return j;
}

truncated_unit_ring truncated_ring(const tower& tw, int K, int L) {
    if (L < 1 || L > tw.top_level() || K < 0 || K >= L)
        throw error("truncated ring needs levels 0 <= K < L <= top");
    truncated_unit_ring r{&tw, K, L, tw.ram_index(K, L)};
    // pi_K and pi_L^d must generate the same ideal
    if (tw.promote(tw.pi(K), L).val() != r.d)
        throw error("pi_K does not have the expected valuation at L");
    return r;
}

namespace {

// Teichmueller lifts of the whole residue field, plus uniformizer powers,
// cached once per enumeration: digit extraction and reconstruction become
// cheap lookups instead of repeated fixed-point iterations.
struct teich_cache {
    const tower* twx;
    int L;
    long d;
    std::vector<elem> lift;   // indexed by residue enumeration index
    std::vector<elem> pi_pow; // pi_L^0 .. pi_L^{d-1}
    std::vector<std::vector<elem>> lift_pi; // lift[i] * pi_pow[j], reconstruction terms

    teich_cache(const tower& t, int lvl, long depth) : twx(&t), L(lvl), d(depth) {
        const std::uint64_t q = t.k->order();
        lift.reserve(q);
        for (std::uint64_t i = 0; i < q; ++i)
            lift.push_back(t.teichmuller(L, t.k->from_index(i)));
        elem p = t.one(L);
        for (long i = 0; i < d; ++i) {
            pi_pow.push_back(p);
            p = p * t.pi(L);
        }
        lift_pi.resize(q);
        for (std::uint64_t i = 0; i < q; ++i) {
            lift_pi[i].reserve(static_cast<std::size_t>(d));
            for (long jx = 0; jx < d; ++jx)
                lift_pi[i].push_back(lift[i] * pi_pow[static_cast<std::size_t>(jx)]);
        }
    }

    // first d Teichmueller digit indices of x
    std::vector<std::uint64_t> digits(const elem& x) const {
        std::vector<std::uint64_t> out;
        out.reserve(static_cast<std::size_t>(d));
        elem cur = x;
        for (long i = 0; i < d; ++i) {
            auto v = cur.val_opt();
            if (v && *v == 0) {
                std::uint64_t idx = twx->k->index_of(cur.residue());
                out.push_back(idx);
                cur = (cur - lift[idx]).div_pi();
            } else {
                out.push_back(0);
                if (!v) {
                    while (++i < d) out.push_back(0);
                    break;
                }
                cur = cur.div_pi();
            }
        }
        return out;
    }

    elem from_digits(const std::vector<std::uint64_t>& dg) const {
        elem acc = twx->zero(L);
        for (std::size_t i = 0; i < dg.size(); ++i)
            if (dg[i] != 0) acc = acc + lift_pi[dg[i]][i];
        return acc;
    }
};

std::string key_of_digits(const std::vector<std::uint64_t>& dg) {
    std::string s;
    s.reserve(dg.size() * 8);
    for (std::uint64_t v : dg)
        for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    return s;
}

// number of enumerated units: Q^{d-1} principal, (Q-1)Q^{d-1} for all of R^x;
// saturates at max()
std::uint64_t enumeration_size(std::uint64_t q, long d, bool principal_only) {
    std::uint64_t total = principal_only ? 1 : q - 1;
    for (long i = 1; i < d; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / q)
            return std::numeric_limits<std::uint64_t>::max();
        total *= q;
    }
    return total;
}

// decodes enumeration index -> unit digits (length d). Principal: digit 0 is 1
// and idx is the base-q expansion of digits 1..d-1. Full: digit 0 is
// idx % (q-1) + 1.
std::vector<std::uint64_t> decode_unit(std::uint64_t idx, std::uint64_t q, long d,
                                       bool principal_only) {
    std::vector<std::uint64_t> dg(static_cast<std::size_t>(d), 0);
    if (principal_only) {
        dg[0] = 1;
    } else {
        dg[0] = idx % (q - 1) + 1;
        idx /= q - 1;
    }
    for (long i = 1; i < d; ++i) {
        dg[static_cast<std::size_t>(i)] = idx % q;
        idx /= q;
    }
    return dg;
}

std::uint64_t sat_pow(std::uint64_t b, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

// achievable valuations of x^{p^j} - 1 from starting level a = v(x-1):
// candidate term weights are (j - v)*e_abs + p^v * a for v = 0..j; a unique
// minimum is attained exactly, a tie (Artin-Schreier cancellation possible) is
// treated as achievable anywhere >= the minimum.
struct screen_level {
    long a;
    long f;
    bool unique;
    bool collapsed; // f >= d: contributes nothing below the truncation
};

std::vector<screen_level> valuation_screen(const truncated_unit_ring& ring, unsigned j) {
    const long e_abs = *ring.tw->val_of_p(ring.L);
    std::vector<screen_level> out;
    const long cap = ring.d + static_cast<long>(j) * e_abs + 1;
    for (long a = 1; a < ring.d; ++a) {
        long best = cap;
        int hits = 0;
        std::uint64_t pv = 1;
        for (unsigned v = 0; v <= j; ++v) {
            long w = (pv > static_cast<std::uint64_t>(cap))
                         ? cap
                         : static_cast<long>(j - v) * e_abs + static_cast<long>(pv) * a;
            if (w < best) {
                best = w;
                hits = 1;
            } else if (w == best) {
                ++hits;
            }
            if (pv > static_cast<std::uint64_t>(cap)) break;
            pv *= ring.tw->p;
        }
        out.push_back({a, best, hits == 1, best >= ring.d});
    }
    return out;
}

struct scan_hit {
    std::uint64_t index;
    elem witness;
};

// enumerates x (principal or all units) in the given tower and returns the
// min-index x with x^m = target (compared mod pi_L^d)
std::optional<scan_hit> scan_for_witness(const truncated_unit_ring& ring, const tower& twx,
                                         const elem& target, unsigned long long m,
                                         bool principal_only, bool parallel,
                                         std::uint64_t guard) {
    const std::uint64_t q = twx.k->order();
    const std::uint64_t total = enumeration_size(q, ring.d, principal_only);
    if (total > guard) throw too_large("enumeration exceeds the size guard");

    teich_cache cache(twx, ring.L, ring.d);
    const std::vector<std::uint64_t> want = cache.digits(target);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    if (!parallel) {
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            elem x = cache.from_digits(decode_unit(idx, q, ring.d, principal_only));
            if (cache.digits(x.pow(m)) == want) {
                best = idx;
                break;
            }
        }
    } else {
        const std::uint64_t block = 1u << 13;
        for (std::uint64_t lo = 0; lo < total && best == std::numeric_limits<std::uint64_t>::max();
             lo += block) {
            const std::uint64_t hi = std::min(total, lo + block);
            std::uint64_t local = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for reduction(min : local) schedule(static)
            for (std::int64_t i = static_cast<std::int64_t>(lo); i < static_cast<std::int64_t>(hi);
                 ++i) {
                const std::uint64_t idx = static_cast<std::uint64_t>(i);
                elem x = cache.from_digits(decode_unit(idx, q, ring.d, principal_only));
                if (cache.digits(x.pow(m)) == want && idx < local) local = idx;
            }
            best = local;
        }
    }
    if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return scan_hit{best, cache.from_digits(decode_unit(best, q, ring.d, principal_only))};
}

// v(w - 1) clamped to the ring: nullopt when w = 1 in R
std::optional<long> principal_depth(const truncated_unit_ring& ring, const elem& w) {
    elem diff = w - w.tw->one(ring.L);
    auto v = diff.val_opt();
    if (!v || *v >= ring.d) return std::nullopt;
    return v;
}

} // namespace

unit_decomposition unit_decompose(const truncated_unit_ring& ring, const elem& u) {
    auto v = u.val_opt();
    if (!v || *v != 0) throw non_unit();
    auto r = u.residue();
    elem tau = ring.tw->teichmuller(ring.L, r);
    // Teichmueller lifts are multiplicative, so the inverse is the (memoized)
    // lift of the residue inverse
    elem tau_inv = ring.tw->teichmuller(ring.L, ring.tw->k->inv(r));
    return {tau, u * tau_inv};
}

power_membership_verdict principal_power_membership(const truncated_unit_ring& ring,
                                                    const elem& w, unsigned j,
                                                    const search_budget& budget) {
    const tower& tw = *ring.tw;
    if (!tw.k->eq(w.residue(), tw.k->one())) throw non_unit("principal unit expected");

    power_membership_verdict out;
    if (j == 0) {
        out.answer = membership_answer::Yes;
        out.certificate = certificate_tag::Solver;
        out.certificate_data = "trivial exponent p^0";
        out.witness = w;
        out.witness_s = tw.k->degree();
        return out;
    }

    auto t = principal_depth(ring, w);
    if (!t) {
        out.answer = membership_answer::Yes;
        out.certificate = certificate_tag::Solver;
        out.certificate_data = "w = 1 in R";
        out.witness = tw.one(ring.L);
        out.witness_s = tw.k->degree();
        return out;
    }

    const std::uint64_t pj = sat_pow(tw.p, j, static_cast<std::uint64_t>(ring.d));

    if (tw.equal_char()) {
        // exact support criterion: w - 1 must be supported on exponents
        // divisible by p^j; the witness digits are iterated Frobenius roots
        teich_cache cache(tw, ring.L, ring.d);
        auto dg = cache.digits(w - tw.one(ring.L));
        for (long i = 1; i < ring.d; ++i) {
            if (dg[static_cast<std::size_t>(i)] == 0) continue;
            if (static_cast<std::uint64_t>(i) % pj != 0) {
                out.answer = membership_answer::No;
                out.certificate = certificate_tag::EqualCharSupport;
                out.certificate_data = "digit at exponent " + std::to_string(i) +
                                       " not divisible by p^" + std::to_string(j);
                return out;
            }
        }
        std::vector<std::uint64_t> xdg(static_cast<std::size_t>(ring.d), 0);
        xdg[0] = tw.k->index_of(tw.k->one());
        for (long i = 1; i < ring.d; ++i) {
            if (dg[static_cast<std::size_t>(i)] == 0) continue;
            gf_ctx::elem c = tw.k->from_index(dg[static_cast<std::size_t>(i)]);
            for (unsigned r = 0; r < j; ++r) c = tw.k->pth_root(c);
            xdg[static_cast<std::size_t>(i / static_cast<long>(pj))] = tw.k->index_of(c);
        }
        out.answer = membership_answer::Yes;
        out.certificate = certificate_tag::EqualCharSupport;
        out.certificate_data = "support of w-1 contained in p^" + std::to_string(j) + "*Z";
        out.witness = cache.from_digits(xdg);
        out.witness_s = tw.k->degree();
        return out;
    }

    // mixed characteristic: valuation screen first
    auto screen = valuation_screen(ring, j);
    bool achievable = false;
    std::ostringstream data;
    data << "t=" << *t << ";";
    for (const auto& lv : screen) {
        data << " a=" << lv.a << ":f=" << lv.f
             << (lv.collapsed ? "(collapsed)" : (lv.unique ? "(exact)" : "(tie)"));
        if (lv.collapsed) continue;
        if (lv.unique ? (*t == lv.f) : (*t >= lv.f)) achievable = true;
    }
    if (!achievable) {
        out.answer = membership_answer::No;
        out.certificate = certificate_tag::ValuationScreen;
        out.certificate_data = data.str();
        return out;
    }

    // witness search over residue extensions
    const unsigned s0 = tw.k->degree();
    bool skipped = false;
    for (unsigned factor = 1; s0 * factor <= std::max(budget.s_max, s0); ++factor) {
        const unsigned s = s0 * factor;
        if (factor > 1 && s > budget.s_max) break;
        const std::uint64_t big = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t q_f = sat_pow(tw.p, s, big - 1);
        if (enumeration_size(q_f, ring.d, true) > budget.max_enumeration) {
            skipped = true;
            break;
        }

        if (budget.cache) {
            auto key = std::make_pair(static_cast<unsigned long long>(pj), factor);
            auto it = budget.cache->tables.find(key);
            if (it == budget.cache->tables.end())
                it = budget.cache->tables
                         .emplace(key, enumerate_power_image(ring, pj, factor, true,
                                                             budget.parallel,
                                                             budget.max_enumeration))
                         .first;
            out.searched_s.push_back(s);
            const power_image_table& tab = it->second;
            auto wit = tab.lookup(ring, w);
            if (wit) {
                out.answer = membership_answer::Yes;
                out.certificate = certificate_tag::ExhaustiveSearch;
                out.certificate_data = "witness at residue degree " + std::to_string(s);
                out.witness = *wit;
                out.witness_s = s;
                if (factor > 1) {
                    out.witness_tower = tab.ext_tw;
                    out.witness_ext = tab.ext;
                    out.mapped_input = tab.ext->map(w);
                }
                return out;
            }
            continue;
        }

        std::shared_ptr<const tower_extension> ext;
        const tower* twx = &tw;
        elem target = w;
        if (factor > 1) {
            ext = std::make_shared<tower_extension>(extend_residue_field(tw, factor));
            twx = ext->tw.get();
            target = ext->map(w);
        }
        out.searched_s.push_back(s);
        auto hit = scan_for_witness(ring, *twx, target, pj, true, budget.parallel,
                                    budget.max_enumeration);
        if (hit) {
            out.answer = membership_answer::Yes;
            out.certificate = certificate_tag::ExhaustiveSearch;
            out.certificate_data = "witness at residue degree " + std::to_string(s);
            out.witness = hit->witness;
            out.witness_s = s;
            if (factor > 1) {
                out.witness_tower = ext->tw;
                out.witness_ext = ext;
                out.mapped_input = target;
            }
            return out;
        }
    }
    out.answer = membership_answer::Inconclusive;
    out.certificate = certificate_tag::ExhaustiveSearch;
    out.certificate_data = skipped ? "enumeration budget exceeded" : "no witness up to s_max";
    return out;
}

namespace {

// smallest extension multiple t of `base_factor` such that residue(r) has an
// m-th root over F_{q^(base_factor*t)}; nullopt if the size guard stops us
std::optional<unsigned> root_extension_multiple(const tower& tw, const gf_ctx::elem& r,
                                                unsigned long long m, unsigned base_factor,
                                                std::uint64_t guard) {
    const std::uint64_t q = tw.k->order();
    for (unsigned t = 1;; ++t) {
        const unsigned deg = tw.k->degree() * base_factor * t;
        std::uint64_t order = 1;
        bool too_big = false;
        for (unsigned i = 0; i < deg; ++i) {
            if (order > guard / tw.p) {
                too_big = true;
                break;
            }
            order *= tw.p;
        }
        if (too_big) return std::nullopt;
        const std::uint64_t n = order - 1;
        // r has an m-th root iff r^(n/gcd(m,n)) = 1; test in the small field
        // by raising the *order* of r: ord(r) | q - 1 | n
        std::uint64_t ord = tw.k->mult_order(r);
        std::uint64_t g = std::gcd(static_cast<std::uint64_t>(m % n == 0 ? n : m % n), n);
        if ((n / g) % ord == 0) return t;
        (void)q;
    }
}

std::optional<gf_ctx::elem> scan_residue_root(const gf_ctx& k, const gf_ctx::elem& r,
                                              unsigned long long m) {
    const std::uint64_t n = k.order() - 1;
    const std::uint64_t mm = static_cast<std::uint64_t>(m % n);
    if (mm == 0) {
        if (k.eq(r, k.one())) return k.one();
        return std::nullopt;
    }
    for (std::uint64_t i = 1; i < k.order(); ++i) {
        gf_ctx::elem x = k.from_index(i);
        if (k.eq(k.pow(x, mm), r)) return x;
    }
    return std::nullopt;
}

// multiplicative order of a principal unit mod pi^d is p^E; returns E
std::optional<unsigned> principal_order_exp(const truncated_unit_ring& ring, const tower& twx,
                                            const elem& x) {
    elem t = x;
    elem one = twx.one(ring.L);
    for (unsigned e = 0; e <= 200; ++e) {
        if (t.eq_mod(one, ring.d)) return e;
        t = t.pow(twx.p);
    }
    return std::nullopt;
}

} // namespace

power_membership_verdict mth_power_in_units(const truncated_unit_ring& ring, const elem& u,
                                            unsigned long long m, const search_budget& budget) {
    if (m == 0) throw error("exponent must be positive");
    const tower& tw = *ring.tw;
    auto vu = u.val_opt();
    if (!vu || *vu != 0) throw non_unit();

    unsigned j = 0;
    unsigned long long mprime = m;
    while (mprime % tw.p == 0) {
        mprime /= tw.p;
        ++j;
    }

    auto dec = unit_decompose(ring, u);
    power_membership_verdict v = principal_power_membership(ring, dec.w, j, budget);
    if (v.answer != membership_answer::Yes) return v;

    // assemble a witness y*x~ with y^m = tau and x~^m = w
    power_membership_verdict out = v;
    out.witness.reset();
    out.witness_tower.reset();
    out.mapped_input.reset();

    const unsigned base_factor = v.witness_s / tw.k->degree();
    auto mult = root_extension_multiple(tw, u.residue(), m, base_factor, budget.max_enumeration);
    if (!mult) {
        out.certificate_data += "; witness omitted (size guard on the Teichmueller root field)";
        return out;
    }
    const unsigned factor = base_factor * *mult;

    // one extension chain: base -> witness field -> Teichmueller-root field
    const tower* twx = &tw;
    std::shared_ptr<tower> owner;
    elem x = *v.witness;
    elem u_here = u;
    if (factor > 1) {
        if (base_factor <= 1) {
            auto ext = std::make_shared<tower_extension>(extend_residue_field(tw, factor));
            owner = ext->tw;
            twx = owner.get();
            x = ext->map(*v.witness);
            u_here = ext->map(u);
        } else if (*mult == 1) {
            owner = v.witness_tower;
            twx = owner.get();
            u_here = v.witness_ext->map(u);
        } else {
            auto ext2 = std::make_shared<tower_extension>(
                extend_residue_field(*v.witness_tower, *mult));
            owner = ext2->tw;
            twx = owner.get();
            x = ext2->map(*v.witness);
            u_here = ext2->map(v.witness_ext->map(u));
        }
    }

    // x satisfies x^{p^j} = w (image); turn it into an m-th root of w via the
    // inverse of m' on the p-group, then multiply the Teichmueller m-th root
    auto Eopt = principal_order_exp(ring, *twx, x);
    if (!Eopt) {
        out.certificate_data += "; witness omitted (unexpected unit order)";
        return out;
    }
    mpz_class pe = 1;
    for (unsigned i = 0; i < *Eopt; ++i) pe *= tw.p;
    unsigned long long c = 1;
    if (pe > 1) {
        mpz_class inv, mp;
        mpz_import(mp.get_mpz_t(), 1, 1, sizeof(mprime), 0, 0, &mprime);
        if (mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), pe.get_mpz_t()) == 0) {
            out.certificate_data += "; witness omitted (inversion failed)";
            return out;
        }
        c = inv.get_ui();
    }
    elem xt = x.pow(c);

    auto rho = scan_residue_root(*twx->k, u_here.residue(), m);
    if (!rho) {
        out.certificate_data += "; witness omitted (no residue root found)";
        return out;
    }
    elem y = twx->teichmuller(ring.L, *rho);
    elem witness = y * xt;
    if (!witness.pow(m).eq_mod(u_here, ring.d)) {
        out.certificate_data += "; witness omitted (verification failed)";
        return out;
    }
    out.witness = witness;
    out.witness_s = twx->k->degree();
    if (twx != &tw) {
        out.witness_tower = owner;
        out.mapped_input = u_here;
    }
    return out;
}

bool power_membership_oracle(const truncated_unit_ring& ring, const elem& u,
                             unsigned long long m, unsigned factor, bool parallel,
                             std::uint64_t guard) {
    auto vu = u.val_opt();
    if (!vu || *vu != 0) throw non_unit();
    const tower& tw = *ring.tw;
    const tower* twx = &tw;
    std::shared_ptr<tower> owner;
    elem target = u;
    std::optional<tower_extension> ext;
    if (factor > 1) {
        ext = extend_residue_field(tw, factor);
        owner = ext->tw;
        twx = owner.get();
        target = ext->map(u);
    }
    if (enumeration_size(twx->k->order(), ring.d, false) > guard) throw too_large("enumeration exceeds the size guard");
    return scan_for_witness(ring, *twx, target, m, false, parallel, guard).has_value();
}

power_image_table enumerate_power_image(const truncated_unit_ring& ring, unsigned long long m,
                                        unsigned factor, bool principal_only, bool parallel,
                                        std::uint64_t guard) {
    const tower& tw = *ring.tw;
    power_image_table tab;
    tab.factor = factor;
    tab.m = m;
    tab.principal_only = principal_only;
    const tower* twx = &tw;
    if (factor > 1) {
        tab.ext = std::make_shared<tower_extension>(extend_residue_field(tw, factor));
        tab.ext_tw = tab.ext->tw;
        twx = tab.ext_tw.get();
    }
    tab.twx = twx;

    const std::uint64_t q = twx->k->order();
    const std::uint64_t total = enumeration_size(q, ring.d, principal_only);
    if (total > guard) throw too_large("enumeration exceeds the size guard");

    auto cache_sp = std::make_shared<teich_cache>(*twx, ring.L, ring.d);
    tab.scratch = cache_sp;
    const teich_cache& cache = *cache_sp;
    if (!parallel) {
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            elem x = cache.from_digits(decode_unit(idx, q, ring.d, principal_only));
            std::string key = key_of_digits(cache.digits(x.pow(m)));
            auto it = tab.image.find(key);
            if (it == tab.image.end() || it->second > idx) tab.image[key] = idx;
        }
        return tab;
    }
    int nt = omp_get_max_threads();
    std::vector<std::unordered_map<std::string, std::uint64_t>> local(
        static_cast<std::size_t>(nt));
#pragma omp parallel
    {
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
            const std::uint64_t idx = static_cast<std::uint64_t>(i);
            elem x = cache.from_digits(decode_unit(idx, q, ring.d, principal_only));
            std::string key = key_of_digits(cache.digits(x.pow(m)));
            auto it = mine.find(key);
            if (it == mine.end() || it->second > idx) mine[key] = idx;
        }
    }
    for (auto& part : local)
        for (auto& [key, idx] : part) {
            auto it = tab.image.find(key);
            if (it == tab.image.end() || it->second > idx) tab.image[key] = idx;
        }
    return tab;
}

elem power_image_table::unit_from_index(const truncated_unit_ring& ring, std::uint64_t idx) const {
    if (scratch) {
        const auto& cache = *static_cast<const teich_cache*>(scratch.get());
        return cache.from_digits(decode_unit(idx, twx->k->order(), ring.d, principal_only));
    }
    teich_cache cache(*twx, ring.L, ring.d);
    return cache.from_digits(decode_unit(idx, twx->k->order(), ring.d, principal_only));
}

std::optional<elem> power_image_table::lookup(const truncated_unit_ring& ring,
                                              const elem& u) const {
    elem target = (factor > 1) ? ext->map(u) : u;
    std::string key;
    if (scratch) {
        const auto& cache = *static_cast<const teich_cache*>(scratch.get());
        key = key_of_digits(cache.digits(target));
    } else {
        key = canonical_key(ring, *twx, target);
    }
    auto it = image.find(key);
    if (it == image.end()) return std::nullopt;
    return unit_from_index(ring, it->second);
}

std::optional<std::uint64_t> power_image_table::lookup_index(const truncated_unit_ring& ring,
                                                             std::uint64_t idx) const {
    std::string key = key_of_digits(decode_unit(idx, twx->k->order(), ring.d, principal_only));
    auto it = image.find(key);
    if (it == image.end()) return std::nullopt;
    return it->second;
}

std::string canonical_key(const truncated_unit_ring& ring, const tower& twx, const elem& x) {
    teich_cache cache(twx, ring.L, ring.d);
    return key_of_digits(cache.digits(x));
}

} // namespace splitred
