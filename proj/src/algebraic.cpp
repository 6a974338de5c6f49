#include "odyn/algebraic.hpp"

#include <algorithm>
#include <cmath>

namespace odyn {

namespace {

int sgn(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rat_max(const Rational& a, const Rational& b) { return a > b ? a : b; }

Rational interval_sq_min(const Rational& lo, const Rational& hi) {
    if (lo <= 0 && hi >= 0) return Rational(0);
    return rat_min(lo * lo, hi * hi);
}

Rational interval_sq_max(const Rational& lo, const Rational& hi) {
    return rat_max(lo * lo, hi * hi);
}

// ---------------------------------------------------------------------------
// Sturm sequences for exact real-root counting and isolation.
// ---------------------------------------------------------------------------

std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& p) {
    std::vector<UnivariatePoly> chain;
    chain.push_back(p);
    UnivariatePoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        UnivariatePoly r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<UnivariatePoly>& chain, const Rational& at) {
    int prev = 0, var = 0;
    for (const auto& p : chain) {
        int s = sgn(p.eval(at));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Distinct real roots of p in the open interval (a, b); assumes nonroot ends.
int count_roots_open(const std::vector<UnivariatePoly>& chain, const Rational& a,
                     const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

struct RealInterval {
    Rational lo, hi;  // exactly one root inside, nonroot endpoints
};

Rational nonroot_between(const UnivariatePoly& p, const Rational& a, const Rational& b) {
    Rational m = (a + b) / 2;
    Rational step = (b - a) / 16;
    while (p.eval(m) == 0) {
        m += step;
        step /= 3;
    }
    return m;
}

void isolate_rec(const UnivariatePoly& p, const std::vector<UnivariatePoly>& chain,
                 const Rational& a, const Rational& b, std::vector<RealInterval>& out) {
    int n = count_roots_open(chain, a, b);
    if (n == 0) return;
    if (n == 1) {
        out.push_back({a, b});
        return;
    }
    Rational m = nonroot_between(p, a, b);
    isolate_rec(p, chain, a, m, out);
    isolate_rec(p, chain, m, b, out);
}

std::vector<RealInterval> isolate_real_roots(const UnivariatePoly& p, const Rational& a,
                                             const Rational& b) {
    std::vector<RealInterval> out;
    if (p.is_constant()) return out;
    auto chain = sturm_chain(p);
    isolate_rec(p, chain, a, b, out);
    std::sort(out.begin(), out.end(),
              [](const RealInterval& x, const RealInterval& y) { return x.lo < y.lo; });
    return out;
}

void shrink_interval(const UnivariatePoly& p, const std::vector<UnivariatePoly>& chain,
                     RealInterval& iv) {
    Rational m = nonroot_between(p, iv.lo, iv.hi);
    if (count_roots_open(chain, iv.lo, m) == 1)
        iv.hi = m;
    else
        iv.lo = m;
}

// ---------------------------------------------------------------------------
// Edge restrictions: f along one boundary segment splits into real rational
// polynomials P(t), Q(t) for t in [0, 1].
// ---------------------------------------------------------------------------

struct CRat {
    Rational re, im;
};

struct EdgePolys {
    UnivariatePoly P, Q;
};

EdgePolys edge_restriction(const UnivariatePoly& f, const CRat& z0, const CRat& z1) {
    CRat d{z1.re - z0.re, z1.im - z0.im};
    std::vector<CRat> acc;  // complex coefficients in t, empty = zero
    for (int i = f.degree(); i >= 0; --i) {
        std::vector<CRat> next(acc.size() + 1, CRat{Rational(0), Rational(0)});
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j].re += acc[j].re * z0.re - acc[j].im * z0.im;
            next[j].im += acc[j].re * z0.im + acc[j].im * z0.re;
            next[j + 1].re += acc[j].re * d.re - acc[j].im * d.im;
            next[j + 1].im += acc[j].re * d.im + acc[j].im * d.re;
        }
        if (next.empty()) next.emplace_back(CRat{Rational(0), Rational(0)});
        next[0].re += f.coeff(i);
        acc = std::move(next);
    }
    std::vector<Rational> pre(acc.size()), pim(acc.size());
    for (std::size_t j = 0; j < acc.size(); ++j) {
        pre[j] = acc[j].re;
        pim[j] = acc[j].im;
    }
    return {UnivariatePoly(std::move(pre)), UnivariatePoly(std::move(pim))};
}

// Roots at t = 0 or t = 1 belong to the corners and are handled there.
UnivariatePoly strip_end_roots(UnivariatePoly p) {
    if (p.is_zero()) return p;
    while (!p.is_zero() && p.coeff(0) == 0) p = p / UnivariatePoly::x();
    UnivariatePoly tm1{std::vector<Rational>{Rational(-1), Rational(1)}};
    while (!p.is_zero() && p.eval(Rational(1)) == 0) p = p / tm1;
    return p;
}

struct boundary_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int quadrant(const UnivariatePoly& P, const UnivariatePoly& Q, const Rational& t) {
    int sr = sgn(P.eval(t)), si = sgn(Q.eval(t));
    if (sr == 0 || si == 0) throw boundary_failure("sample hit an axis");
    if (sr > 0 && si > 0) return 0;
    if (sr < 0 && si > 0) return 1;
    if (sr < 0 && si < 0) return 2;
    return 3;
}

void edge_samples(const UnivariatePoly& f, const CRat& z0, const CRat& z1,
                  std::vector<int>& quadrants) {
    EdgePolys e = edge_restriction(f, z0, z1);
    if (e.P.is_zero() || e.Q.is_zero())
        throw boundary_failure("degenerate edge: f maps the segment into an axis");
    UnivariatePoly g = poly_gcd(e.P, e.Q);
    if (g.degree() > 0) {
        UnivariatePoly gs = strip_end_roots(g);
        if (!gs.is_constant() && !isolate_real_roots(gs, Rational(0), Rational(1)).empty())
            throw boundary_failure("zero of f on the box boundary");
    }
    UnivariatePoly P = strip_end_roots(e.P), Q = strip_end_roots(e.Q);
    auto rp = isolate_real_roots(P, Rational(0), Rational(1));
    auto rq = isolate_real_roots(Q, Rational(0), Rational(1));
    auto chain_p = sturm_chain(P);
    auto chain_q = sturm_chain(Q);
    bool again = true;
    int guard = 0;
    while (again) {
        if (++guard > 200) throw boundary_failure("crossing separation did not converge");
        again = false;
        for (auto& ip : rp)
            for (auto& iq : rq) {
                if (ip.lo <= iq.hi && iq.lo <= ip.hi) {
                    shrink_interval(P, chain_p, ip);
                    shrink_interval(Q, chain_q, iq);
                    again = true;
                }
            }
    }
    std::vector<RealInterval> all = rp;
    all.insert(all.end(), rq.begin(), rq.end());
    std::sort(all.begin(), all.end(),
              [](const RealInterval& x, const RealInterval& y) { return x.lo < y.lo; });
    std::vector<Rational> samples;
    Rational prev_hi(0);
    for (const auto& iv : all) {
        samples.push_back((prev_hi + iv.lo) / 2);
        prev_hi = iv.hi;
    }
    samples.push_back((prev_hi + 1) / 2);
    for (const auto& t : samples) quadrants.push_back(quadrant(e.P, e.Q, t));
}

struct CornerValue {
    Rational re, im;
};

CornerValue eval_at(const UnivariatePoly& f, const CRat& z) {
    Rational ar(0), ai(0);
    for (int i = f.degree(); i >= 0; --i) {
        Rational nr = ar * z.re - ai * z.im + f.coeff(i);
        ai = ar * z.im + ai * z.re;
        ar = nr;
    }
    return {ar, ai};
}

int winding_count(const UnivariatePoly& f, const ComplexBox& box) {
    CRat c1{box.re_lo, box.im_lo}, c2{box.re_hi, box.im_lo}, c3{box.re_hi, box.im_hi},
        c4{box.re_lo, box.im_hi};
    for (const CRat& c : {c1, c2, c3, c4}) {
        CornerValue v = eval_at(f, c);
        if (v.re == 0 && v.im == 0) throw boundary_failure("zero of f at a box corner");
    }
    std::vector<int> quadrants;
    edge_samples(f, c1, c2, quadrants);
    edge_samples(f, c2, c3, quadrants);
    edge_samples(f, c3, c4, quadrants);
    edge_samples(f, c4, c1, quadrants);
    int total = 0;
    for (std::size_t i = 0; i < quadrants.size(); ++i) {
        int a = quadrants[i], b = quadrants[(i + 1) % quadrants.size()];
        int diff = ((b - a) % 4 + 4) % 4;
        if (diff == 0) continue;
        if (diff == 1)
            ++total;
        else if (diff == 3)
            --total;
        else
            throw boundary_failure("quadrant jump of two: samples too coarse");
    }
    if (total % 4 != 0) throw boundary_failure("winding total not divisible by four");
    return total / 4;
}

// Grow each side by small pairwise-distinct amounts: keeps the original box
// covered and nudges edges off symmetry axes.
ComplexBox perturb_box(const ComplexBox& b, int salt) {
    Rational w = b.width();
    if (w == 0) w = Rational(1);
    auto eps = [&](int side) { return w * make_rational(2 * side + 1 + 16 * salt, 4096); };
    return {b.re_lo - eps(0), b.re_hi + eps(1), b.im_lo - eps(2), b.im_hi + eps(3)};
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexBox
// ---------------------------------------------------------------------------

Rational ComplexBox::width() const { return rat_max(re_hi - re_lo, im_hi - im_lo); }

bool ComplexBox::contains_zero() const {
    return re_lo <= 0 && re_hi >= 0 && im_lo <= 0 && im_hi >= 0;
}

bool ComplexBox::contains(const ComplexBox& inner) const {
    return re_lo <= inner.re_lo && inner.re_hi <= re_hi && im_lo <= inner.im_lo &&
           inner.im_hi <= im_hi;
}

bool ComplexBox::disjoint(const ComplexBox& other) const {
    return re_hi < other.re_lo || other.re_hi < re_lo || im_hi < other.im_lo ||
           other.im_hi < im_lo;
}

ComplexBox box_product(const ComplexBox& a, const ComplexBox& b) {
    auto minmax4 = [](const Rational& x1, const Rational& x2, const Rational& y1,
                      const Rational& y2, Rational& lo, Rational& hi) {
        Rational v[4] = {x1 * y1, x1 * y2, x2 * y1, x2 * y2};
        lo = hi = v[0];
        for (int i = 1; i < 4; ++i) {
            if (v[i] < lo) lo = v[i];
            if (v[i] > hi) hi = v[i];
        }
    };
    Rational rr_lo, rr_hi, ii_lo, ii_hi, ri_lo, ri_hi, ir_lo, ir_hi;
    minmax4(a.re_lo, a.re_hi, b.re_lo, b.re_hi, rr_lo, rr_hi);
    minmax4(a.im_lo, a.im_hi, b.im_lo, b.im_hi, ii_lo, ii_hi);
    minmax4(a.re_lo, a.re_hi, b.im_lo, b.im_hi, ri_lo, ri_hi);
    minmax4(a.im_lo, a.im_hi, b.re_lo, b.re_hi, ir_lo, ir_hi);
    return {rr_lo - ii_hi, rr_hi - ii_lo, ri_lo + ir_lo, ri_hi + ir_hi};
}

ComplexBox box_reciprocal(const ComplexBox& b) {
    if (b.contains_zero()) throw domain_error("box_reciprocal: box contains zero");
    Rational lo2 = interval_sq_min(b.re_lo, b.re_hi) + interval_sq_min(b.im_lo, b.im_hi);
    Rational hi2 = interval_sq_max(b.re_lo, b.re_hi) + interval_sq_max(b.im_lo, b.im_hi);
    auto over = [&](const Rational& x1, const Rational& x2, Rational& lo, Rational& hi) {
        Rational v[4] = {x1 / lo2, x1 / hi2, x2 / lo2, x2 / hi2};
        lo = hi = v[0];
        for (int i = 1; i < 4; ++i) {
            if (v[i] < lo) lo = v[i];
            if (v[i] > hi) hi = v[i];
        }
    };
    Rational re_lo, re_hi, im_lo, im_hi;
    over(b.re_lo, b.re_hi, re_lo, re_hi);
    over(-b.im_hi, -b.im_lo, im_lo, im_hi);
    return {re_lo, re_hi, im_lo, im_hi};
}

int count_roots_in_box(const UnivariatePoly& f, const ComplexBox& box) {
    try {
        return winding_count(f, box);
    } catch (const boundary_failure& e) {
        throw domain_error(std::string("count_roots_in_box: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Numeric seeding (Durand-Kerner) for exact isolation.
// ---------------------------------------------------------------------------

namespace {

struct CF {
    mpf_class re, im;
};

CF cf_mul(const CF& a, const CF& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CF cf_sub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }

CF cf_div(const CF& a, const CF& b) {
    mpf_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

mpf_class cf_abs2(const CF& a) { return a.re * a.re + a.im * a.im; }

CF eval_cf(const std::vector<CF>& coeffs, const CF& z) {
    CF acc{mpf_class(0, z.re.get_prec()), mpf_class(0, z.re.get_prec())};
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = cf_mul(acc, z);
        acc.re += coeffs[i].re;
        acc.im += coeffs[i].im;
    }
    return acc;
}

std::vector<CF> durand_kerner(const UnivariatePoly& f, unsigned prec) {
    int n = f.degree();
    std::vector<CF> coeffs(n + 1);
    for (int i = 0; i <= n; ++i) {
        coeffs[i].re = mpf_class(f.coeff(i), prec);
        coeffs[i].im = mpf_class(0, prec);
    }
    mpf_class bound(1, prec);
    for (int i = 0; i < n; ++i) {
        mpf_class m = abs(coeffs[i].re) / abs(coeffs[n].re);
        if (m > bound) bound = m;
    }
    bound += 1;
    std::vector<CF> z(n);
    CF seed{mpf_class(0.4, prec), mpf_class(0.9, prec)};
    CF cur = seed;
    for (int j = 0; j < n; ++j) {
        z[j] = {cur.re * bound, cur.im * bound};
        cur = cf_mul(cur, seed);
        mpf_class m = cf_abs2(cur);
        if (m < 0.25) {
            cur.re *= 3;
            cur.im *= 3;
        }
    }
    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec * 2 / 3);
    for (int iter = 0; iter < 600; ++iter) {
        mpf_class worst(0, prec);
        for (int j = 0; j < n; ++j) {
            CF denom{coeffs[n].re, coeffs[n].im};
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                denom = cf_mul(denom, cf_sub(z[j], z[k]));
            }
            CF delta = cf_div(eval_cf(coeffs, z[j]), denom);
            z[j] = cf_sub(z[j], delta);
            mpf_class d = cf_abs2(delta);
            if (d > worst) worst = d;
        }
        if (worst < tol * tol) break;
    }
    return z;
}

Rational dyadic_near(const mpf_class& v, unsigned bits) {
    mpf_class scaled = v;
    mpf_mul_2exp(scaled.get_mpf_t(), scaled.get_mpf_t(), bits);
    mpz_class floor_val;
    mpz_set_f(floor_val.get_mpz_t(), scaled.get_mpf_t());
    return make_rational(floor_val, Int(1) << bits);
}

ComplexBox box_around(const CF& z, const mpf_class& radius, unsigned bits, int salt) {
    auto off = [&](int side) { return mpf_class(radius * (1 + 0.011 * (side + 1) + 0.07 * salt)); };
    return {dyadic_near(z.re - off(0), bits), dyadic_near(z.re + off(1), bits),
            dyadic_near(z.im - off(2), bits), dyadic_near(z.im + off(3), bits)};
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraicNumber
// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(UnivariatePoly minpoly, ComplexBox isolating)
    : minpoly_(std::move(minpoly)), box_(std::move(isolating)) {
    if (minpoly_.degree() < 1 || !minpoly_.is_monic())
        throw domain_error("AlgebraicNumber: minimal polynomial must be monic of degree >= 1");
    if (minpoly_.degree() == 1) {
        Rational r = -minpoly_.coeff(0);
        box_ = {r, r, Rational(0), Rational(0)};
        return;
    }
    for (int salt = 0; salt < 8; ++salt) {
        try {
            if (winding_count(minpoly_, box_) != 1)
                throw domain_error("AlgebraicNumber: box does not isolate one root");
            return;
        } catch (const boundary_failure&) {
            box_ = perturb_box(box_, salt);
        }
    }
    throw domain_error("AlgebraicNumber: could not verify isolation box");
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& r) {
    UnivariatePoly m{std::vector<Rational>{-r, Rational(1)}};
    return AlgebraicNumber(std::move(m), ComplexBox{r, r, Rational(0), Rational(0)});
}

Rational AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw domain_error("rational_value of an irrational number");
    return -minpoly_.coeff(0);
}

bool AlgebraicNumber::is_zero() const { return is_rational() && minpoly_.coeff(0) == 0; }

Rational AlgebraicNumber::norm_abs() const {
    Rational c = minpoly_.coeff(0);
    return c < 0 ? Rational(-c) : c;
}

void AlgebraicNumber::refine(const Rational& target_width) const {
    if (is_rational()) return;
    while (box_.width() > target_width) {
        unsigned prec = 96;
        if (target_width > 0 && target_width < 1) {
            double t = target_width.get_d();
            if (t > 0) prec = std::max<unsigned>(96, 64 + static_cast<unsigned>(-std::log2(t)));
        }
        CF z{mpf_class(box_.center_re(), prec), mpf_class(box_.center_im(), prec)};
        UnivariatePoly deriv = minpoly_.derivative();
        std::vector<CF> fc(minpoly_.degree() + 1), dc(minpoly_.degree());
        for (int i = 0; i <= minpoly_.degree(); ++i)
            fc[i] = {mpf_class(minpoly_.coeff(i), prec), mpf_class(0, prec)};
        for (int i = 0; i < minpoly_.degree(); ++i)
            dc[i] = {mpf_class(deriv.coeff(i), prec), mpf_class(0, prec)};
        bool newton_ok = true;
        for (int iter = 0; iter < 80; ++iter) {
            CF fv = eval_cf(fc, z), dv = eval_cf(dc, z);
            if (cf_abs2(dv) == 0) {
                newton_ok = false;
                break;
            }
            z = cf_sub(z, cf_div(fv, dv));
        }
        if (newton_ok) {
            mpf_class radius(mpf_class(target_width, prec) / 8);
            bool placed = false;
            for (int salt = 0; salt < 6 && !placed; ++salt) {
                ComplexBox cand = box_around(z, radius, prec, salt);
                if (!box_.contains(cand)) break;  // Newton escaped the box: bisect
                try {
                    if (winding_count(minpoly_, cand) == 1) {
                        box_ = cand;
                        placed = true;
                    }
                } catch (const boundary_failure&) {
                }
            }
            if (placed) continue;
        }
        bool split_done = false;
        for (int salt = 0; salt < 12 && !split_done; ++salt) {
            Rational mr = box_.center_re() + box_.width() * make_rational(salt, 257);
            Rational mi = box_.center_im() + box_.width() * make_rational(salt, 263);
            ComplexBox quads[4] = {{box_.re_lo, mr, box_.im_lo, mi},
                                   {mr, box_.re_hi, box_.im_lo, mi},
                                   {box_.re_lo, mr, mi, box_.im_hi},
                                   {mr, box_.re_hi, mi, box_.im_hi}};
            try {
                for (const auto& q : quads) {
                    if (winding_count(minpoly_, q) == 1) {
                        box_ = q;
                        split_done = true;
                        break;
                    }
                }
            } catch (const boundary_failure&) {
            }
        }
        if (!split_done) throw domain_error("refine: bisection failed to re-isolate the root");
    }
}

bool AlgebraicNumber::equals(const AlgebraicNumber& other) const {
    if (minpoly_ != other.minpoly_) return false;
    if (is_rational()) return true;
    Rational w = rat_min(box_.width(), other.box_.width());
    for (int round = 0; round < 64; ++round) {
        if (box_.disjoint(other.box_)) return false;
        ComplexBox hull{rat_min(box_.re_lo, other.box_.re_lo), rat_max(box_.re_hi, other.box_.re_hi),
                        rat_min(box_.im_lo, other.box_.im_lo), rat_max(box_.im_hi, other.box_.im_hi)};
        try {
            if (winding_count(minpoly_, hull) == 1) return true;
        } catch (const boundary_failure&) {
        }
        w /= 16;
        refine(w);
        other.refine(w);
    }
    throw domain_error("equals: could not separate algebraic numbers");
}

std::vector<AlgebraicNumber> isolate_roots(const UnivariatePoly& irreducible) {
    if (irreducible.degree() < 1 || !irreducible.is_monic())
        throw domain_error("isolate_roots expects a monic polynomial of degree >= 1");
    if (irreducible.degree() == 1)
        return {AlgebraicNumber::from_rational(-irreducible.coeff(0))};
    int n = irreducible.degree();
    for (unsigned prec = 128; prec <= 4096; prec *= 2) {
        std::vector<CF> roots = durand_kerner(irreducible, prec);
        mpf_class minsep(-1, prec);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                mpf_class d = cf_abs2(cf_sub(roots[i], roots[j]));
                if (minsep < 0 || d < minsep) minsep = d;
            }
        if (minsep <= 0) continue;
        mpf_class radius = sqrt(minsep) / 8;
        std::vector<AlgebraicNumber> out;
        bool all_ok = true;
        for (int j = 0; j < n && all_ok; ++j) {
            bool placed = false;
            for (int salt = 0; salt < 6 && !placed; ++salt) {
                ComplexBox cand = box_around(roots[j], radius, prec / 2, salt);
                try {
                    int cnt = winding_count(irreducible, cand);
                    if (cnt == 1) {
                        out.emplace_back(irreducible, cand);
                        placed = true;
                    } else {
                        break;  // approximation too coarse at this precision
                    }
                } catch (const boundary_failure&) {
                }
            }
            if (!placed) all_ok = false;
        }
        if (all_ok) {
            std::sort(out.begin(), out.end(),
                      [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
                          if (a.box().re_lo != b.box().re_lo) return a.box().re_lo < b.box().re_lo;
                          return a.box().im_lo < b.box().im_lo;
                      });
            return out;
        }
    }
    throw domain_error("isolate_roots: numeric isolation failed");
}

// ---------------------------------------------------------------------------
// Arithmetic on algebraic numbers.
// ---------------------------------------------------------------------------

namespace {

// Res_y(A(y), y^degB * B(x/y)) via evaluation and Newton interpolation; its
// roots are the pairwise products of roots of A and roots of B.
UnivariatePoly product_resultant(const UnivariatePoly& A, const UnivariatePoly& B) {
    int da = A.degree(), db = B.degree();
    if (B.coeff(0) == 0) throw domain_error("product_resultant: B has a zero root");
    int points = da * db + 1;
    std::vector<Rational> xs, ys;
    long t = 0;
    while (static_cast<int>(xs.size()) < points) {
        Rational tr(t);
        std::vector<Rational> c(db + 1, Rational(0));
        Rational tp(1);
        for (int j = 0; j <= db; ++j) {
            c[db - j] = B.coeff(j) * tp;
            tp *= tr;
        }
        UnivariatePoly C{std::move(c)};
        xs.push_back(tr);
        ys.push_back(resultant(A, C));
        t = (t > 0) ? -t : -t + 1;
    }
    std::vector<Rational> dd = ys;
    for (int level = 1; level < points; ++level)
        for (int i = points - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    UnivariatePoly result = UnivariatePoly::constant(dd[points - 1]);
    for (int i = points - 2; i >= 0; --i) {
        UnivariatePoly lin{std::vector<Rational>{-xs[i], Rational(1)}};
        result = result * lin + UnivariatePoly::constant(dd[i]);
    }
    return result;
}

AlgebraicNumber scale_by_rational(const AlgebraicNumber& a, const Rational& r) {
    if (r == 0 || a.is_zero()) return AlgebraicNumber::from_rational(Rational(0));
    if (a.is_rational()) return AlgebraicNumber::from_rational(a.rational_value() * r);
    UnivariatePoly m = a.minpoly().scale_arg(Rational(1) / r).monic();
    const ComplexBox& b = a.box();
    ComplexBox nb;
    if (r > 0)
        nb = {b.re_lo * r, b.re_hi * r, b.im_lo * r, b.im_hi * r};
    else
        nb = {b.re_hi * r, b.re_lo * r, b.im_hi * r, b.im_lo * r};
    return AlgebraicNumber(std::move(m), nb);
}

}  // namespace

AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational()) return scale_by_rational(b, a.rational_value());
    if (b.is_rational()) return scale_by_rational(a, b.rational_value());
    UnivariatePoly res = product_resultant(a.minpoly(), b.minpoly());
    Factorization fac = factor_over_rationals(res);
    Rational w = rat_min(a.box().width(), b.box().width());
    for (int round = 0; round < 64; ++round) {
        ComplexBox pbox = box_product(a.box(), b.box());
        int total = 0;
        const UnivariatePoly* hit = nullptr;
        bool boundary = false;
        for (const auto& pf : fac.factors) {
            ComplexBox probe = pbox;
            int cnt = -1;
            for (int salt = 0; salt < 6; ++salt) {
                try {
                    cnt = pf.factor.degree() == 1
                              ? ((pbox.re_lo <= -pf.factor.coeff(0) && -pf.factor.coeff(0) <= pbox.re_hi &&
                                  pbox.im_lo <= 0 && 0 <= pbox.im_hi)
                                     ? 1
                                     : 0)
                              : winding_count(pf.factor, probe);
                    break;
                } catch (const boundary_failure&) {
                    probe = perturb_box(probe, salt);
                }
            }
            if (cnt < 0) {
                boundary = true;
                break;
            }
            if (cnt > 0) {
                total += cnt;
                hit = &pf.factor;
            }
        }
        if (!boundary && total == 1 && hit != nullptr) {
            if (hit->degree() == 1) return AlgebraicNumber::from_rational(-hit->coeff(0));
            ComplexBox probe = pbox;
            for (int salt = 0; salt < 6; ++salt) {
                try {
                    if (winding_count(*hit, probe) == 1) return AlgebraicNumber(*hit, probe);
                    break;
                } catch (const boundary_failure&) {
                    probe = perturb_box(probe, salt);
                }
            }
        }
        w /= 16;
        a.refine(w);
        b.refine(w);
    }
    throw domain_error("alg_mul: factor selection did not converge");
}

AlgebraicNumber alg_inverse(const AlgebraicNumber& a) {
    if (a.is_zero()) throw domain_error("alg_inverse of zero");
    if (a.is_rational()) return AlgebraicNumber::from_rational(Rational(1) / a.rational_value());
    const auto& c = a.minpoly().coeffs();
    std::vector<Rational> rev(c.rbegin(), c.rend());
    UnivariatePoly m = UnivariatePoly(std::move(rev)).monic();
    Rational w = a.box().width();
    for (int round = 0; round < 64; ++round) {
        if (!a.box().contains_zero()) {
            ComplexBox inv = box_reciprocal(a.box());
            ComplexBox probe = inv;
            for (int salt = 0; salt < 6; ++salt) {
                try {
                    if (winding_count(m, probe) == 1) return AlgebraicNumber(m, probe);
                    break;
                } catch (const boundary_failure&) {
                    probe = perturb_box(probe, salt);
                }
            }
        }
        w /= 16;
        a.refine(w);
    }
    throw domain_error("alg_inverse: isolation did not converge");
}

AlgebraicNumber alg_pow(const AlgebraicNumber& a, long e) {
    if (e == 0) return AlgebraicNumber::from_rational(Rational(1));
    AlgebraicNumber base = e < 0 ? alg_inverse(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    AlgebraicNumber acc = AlgebraicNumber::from_rational(Rational(1));
    while (k > 0) {
        if (k & 1) acc = alg_mul(acc, base);
        k >>= 1;
        if (k) base = alg_mul(base, base);
    }
    return acc;
}

std::optional<unsigned long> is_root_of_unity(const AlgebraicNumber& a) {
    if (a.is_zero()) throw domain_error("is_root_of_unity: zero input");
    return is_cyclotomic(a.minpoly());
}

std::optional<unsigned long> quotient_is_root_of_unity(const AlgebraicNumber& a,
                                                       const AlgebraicNumber& b) {
    if (b.is_zero()) throw domain_error("quotient_is_root_of_unity: division by zero");
    if (a.is_zero()) return std::nullopt;
    return is_root_of_unity(alg_mul(a, alg_inverse(b)));
}

}  // namespace odyn
