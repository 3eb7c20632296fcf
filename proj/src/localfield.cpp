#include "splitred/localfield.hpp"

#include "splitred/parser.hpp"

namespace splitred {

namespace {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

} // namespace

std::shared_ptr<tower> make_tower(const tower_spec& spec) {
    if (!is_prime(spec.p)) throw error("p must be prime");
    if (spec.characteristic != 0 && spec.characteristic != spec.p)
        throw error("characteristic must be 0 or p");
    if (spec.precision < 1) throw error("precision must be positive");
    if (spec.residue_degree < 1) throw error("residue degree must be >= 1");

    auto tw = std::make_shared<tower>();
    tw->p = spec.p;
    tw->characteristic = spec.characteristic;
    tw->precision = spec.precision;
    tw->base_name = spec.base_name;
    if (!spec.residue_poly.empty()) {
        if (spec.residue_poly.size() != spec.residue_degree + 1)
            throw error("residue polynomial degree mismatch");
        if (!gf_ctx::is_irreducible(spec.p, spec.residue_poly))
            throw error("residue polynomial is not irreducible over F_p");
        tw->k = std::make_shared<const gf_ctx>(spec.p, spec.residue_poly);
    } else {
        tw->k = gf_ctx::make(spec.p, spec.residue_degree);
    }

    long e_tot = 1;
    for (const auto& ls : spec.levels) {
        if (ls.degree < 1) throw error("level degree must be >= 1");
        e_tot *= ls.degree;
    }
    tw->base_prec = static_cast<int>((spec.precision + e_tot - 1) / e_tot) + 6;

    for (const auto& ls : spec.levels) {
        if (ls.poly.size() != ls.degree + 1)
            throw error("level '" + ls.name + "': expected " + std::to_string(ls.degree + 1) +
                        " coefficients");
        const int prev = tw->top_level();
        std::vector<elem> coeffs;
        for (unsigned i = 0; i < ls.degree; ++i)
            coeffs.push_back(parse_element(ls.poly[i], *tw, prev).as_integral());
        elem lead = parse_element(ls.poly[ls.degree], *tw, prev).as_integral();
        if (!lead.eq(tw->one(prev)))
            throw error("level '" + ls.name + "': polynomial must be monic");
        tw->add_level(ls.name, ls.degree, std::move(coeffs));
    }
    return tw;
}

long different_valuation(const tower& tw, int lvl) {
    if (lvl < 1 || lvl > tw.top_level()) throw error("invalid level for different");
    const auto& lv = tw.lvl_info(lvl);
    const unsigned e = lv.degree;
    elem piL = tw.pi(lvl);
    elem acc = tw.from_int(lvl, e) * piL.pow(e - 1);
    for (unsigned i = 1; i < e; ++i)
        acc = acc + tw.from_int(lvl, i) * tw.promote(lv.poly[i], lvl) * piL.pow(i - 1);
    auto v = acc.val_opt();
    if (!v) throw precision_exhausted("f'(pi) indistinguishable from 0 at working precision");
    return *v;
}

elem conjugate(const elem& a, int lvl, const elem& zeta) {
    const tower& tw = *a.tw;
    if (lvl < 1 || lvl > tw.top_level()) throw error("invalid level for conjugation");
    if (a.lvl != lvl) throw error("element does not live at the conjugation level");
    const auto& lv = tw.lvl_info(lvl);
    for (unsigned i = 1; i < lv.degree; ++i)
        if (!lv.poly[i].is_data_zero())
            throw unsupported_extension_shape(
                "conjugation is supported for binomial level polynomials only");
    if (zeta.tw != a.tw || zeta.lvl != lvl - 1)
        throw error("zeta must live at the previous level");
    if (!zeta.pow(lv.degree).eq(tw.one(lvl - 1)))
        throw error("zeta^e != 1 at working precision");
    elem r = a;
    elem zpow = tw.one(lvl - 1);
    for (unsigned j = 0; j < lv.degree; ++j) {
        r.c[j] = a.c[j] * zpow;
        zpow = zpow * zeta;
    }
    return r;
}

root_of_unity_result is_root_of_unity_heuristic(const elem& u, unsigned max_p_power) {
    auto v = u.val_opt();
    if (!v || *v != 0) throw non_unit();
    const tower& tw = *u.tw;
    std::uint64_t r0 = tw.k->mult_order(u.residue());
    elem w = u.pow(r0);
    if (w.eq(tw.one(u.lvl))) return {true, r0};
    unsigned long long ppow = 1;
    for (unsigned a = 1; a <= max_p_power; ++a) {
        w = w.pow(tw.p);
        ppow *= tw.p;
        if (w.eq(tw.one(u.lvl)))
            return {true, r0 * ppow};
    }
    return {false, 0};
}

// ---------------------------------------------------------------------------
// residue field extension
// ---------------------------------------------------------------------------

namespace {

// image of an old residue element under z -> z_img, computed in the new field
gf_ctx::elem map_residue(const gf_ctx& knew, const gf_ctx::elem& old,
                         const gf_ctx::elem& z_img) {
    gf_ctx::elem acc = knew.zero();
    gf_ctx::elem zp = knew.one();
    for (unsigned coeff : old) {
        if (coeff != 0) {
            gf_ctx::elem t = knew.from_int(coeff);
            acc = knew.add(acc, knew.mul(t, zp));
        }
        zp = knew.mul(zp, z_img);
    }
    return acc;
}

} // namespace

elem tower_extension::map(const elem& a) const {
    if (a.lvl == 0) {
        if (!src_->equal_char()) {
            elem acc = tw->zero(0);
            elem zp = tw->one(0);
            for (const auto& coeff : a.zc) {
                if (coeff != 0) acc = acc + tw->from_int(0, coeff) * zp;
                zp = zp * z_image_;
            }
            acc.prec0 = std::min(acc.prec0, a.prec0);
            acc.reduce0();
            return acc;
        }
        elem r = tw->zero(0);
        r.prec0 = std::min(r.prec0, a.prec0);
        r.reduce0();
        gf_ctx::elem zk = z_image_.residue();
        for (std::size_t i = 0; i < a.tc.size() && i < r.tc.size(); ++i)
            r.tc[i] = map_residue(*tw->k, a.tc[i], zk);
        return r;
    }
    elem r;
    r.tw = tw.get();
    r.lvl = a.lvl;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(map(x));
    return r;
}

tower_extension extend_residue_field(const tower& src, unsigned factor) {
    if (factor < 1) throw error("extension factor must be >= 1");
    const unsigned s_new = src.k->degree() * factor;

    tower_extension ext;
    auto tw = std::make_shared<tower>();
    tw->p = src.p;
    tw->characteristic = src.characteristic;
    tw->precision = src.precision;
    tw->base_prec = src.base_prec;
    tw->base_name = src.base_name;
    tw->k = gf_ctx::make(src.p, s_new);

    // residue-level image of the old generator: a root of the old modulus
    std::vector<gf_ctx::elem> hk;
    for (unsigned coeff : src.k->modulus()) hk.push_back(tw->k->from_int(coeff));
    auto roots = tw->k->roots_of(hk);
    if (roots.empty()) throw error("old residue modulus has no root in the extension");
    gf_ctx::elem zk = roots.front();

    ext.src_ = &src;
    ext.tw = tw;
    if (!src.equal_char()) {
        // Hensel-lift the residue root to the new base ring.
        elem x = tw->embed_residue(0, zk);
        const auto& h = src.k->modulus();
        auto eval_h = [&](const elem& y) {
            elem acc = tw->zero(0);
            elem yp = tw->one(0);
            for (unsigned coeff : h) {
                if (coeff != 0) acc = acc + tw->from_int(0, coeff) * yp;
                yp = yp * y;
            }
            return acc;
        };
        auto eval_hprime = [&](const elem& y) {
            elem acc = tw->zero(0);
            elem yp = tw->one(0);
            for (std::size_t i = 1; i < h.size(); ++i) {
                elem coeff = tw->from_int(0, static_cast<long>(i) * h[i]);
                acc = acc + coeff * yp;
                yp = yp * y;
            }
            return acc;
        };
        // h'(x) is a unit since h is separable mod p
        for (long got = 1; got < tw->base_prec + 1; got *= 2)
            x = x - eval_h(x).div(eval_hprime(x));
        ext.z_image_ = x;
    } else {
        ext.z_image_ = tw->embed_residue(0, zk);
    }

    for (const auto& lv : src.levels) {
        std::vector<elem> coeffs;
        coeffs.reserve(lv.poly.size());
        for (const auto& a : lv.poly) coeffs.push_back(ext.map(a));
        tw->add_level(lv.name, lv.degree, std::move(coeffs));
    }
    return ext;
}

} // namespace splitred
