#include "odyn/endomorphism.hpp"

#include <algorithm>

namespace odyn {

void GroupEndomorphism::require_dominant() const {
    if (!additive.square() || !torus.square())
        throw domain_error("endomorphism blocks must be square");
    if (k() > 0 && additive.det() == 0)
        throw dominance_error("additive block is singular: endomorphism not dominant");
    if (l() > 0 && torus.det() == 0)
        throw dominance_error("torus block is singular: endomorphism not dominant");
}

std::size_t OrbitPoint::torus_dim() const {
    if (torus_in_exponent_form()) return torus_exponents().expo.size();
    return std::get<std::vector<Rational>>(torus).size();
}

std::vector<Rational> OrbitPoint::torus_values() const {
    if (!torus_in_exponent_form()) return std::get<std::vector<Rational>>(torus);
    const TorusExponents& te = torus_exponents();
    std::vector<Rational> out;
    out.reserve(te.expo.size());
    for (const auto& evec : te.expo) {
        Rational v(1);
        for (std::size_t t = 0; t < te.primes.size(); ++t) {
            const Int& e = evec[t];
            if (e == 0) continue;
            if (!e.fits_slong_p())
                throw domain_error("torus coordinate too large to reconstruct explicitly");
            Int p = te.primes[t];
            Int pw;
            long ae = std::abs(e.get_si());
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(ae));
            if (e > 0)
                v *= Rational(pw);
            else
                v /= Rational(pw);
        }
        out.push_back(v);
    }
    return out;
}

OrbitPoint make_orbit_point(std::vector<Rational> additive, std::vector<Rational> torus) {
    for (const auto& y : torus)
        if (y == 0) throw domain_error("torus coordinate must be nonzero");
    bool all_distinct_primes = !torus.empty();
    for (const auto& y : torus) {
        if (!is_integer(y) || y <= 0 || !y.get_num().fits_ulong_p() ||
            mpz_probab_prime_p(y.get_num().get_mpz_t(), 30) == 0) {
            all_distinct_primes = false;
            break;
        }
    }
    if (all_distinct_primes) {
        std::vector<Rational> sorted = torus;
        std::sort(sorted.begin(), sorted.end());
        all_distinct_primes = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    OrbitPoint p;
    p.additive = std::move(additive);
    if (all_distinct_primes) {
        TorusExponents te;
        te.primes.reserve(torus.size());
        for (const auto& y : torus) te.primes.push_back(y.get_num());
        te.expo.assign(torus.size(), std::vector<Int>(torus.size(), Int(0)));
        for (std::size_t i = 0; i < torus.size(); ++i) te.expo[i][i] = 1;
        p.torus = std::move(te);
    } else {
        p.torus = std::move(torus);
    }
    return p;
}

std::vector<OrbitPoint> evaluate_orbit(const GroupEndomorphism& phi, const OrbitPoint& alpha,
                                       unsigned long steps) {
    phi.require_dominant();
    if (alpha.additive.size() != phi.k() || alpha.torus_dim() != phi.l())
        throw domain_error("orbit point dimension mismatch");
    if (!alpha.torus_in_exponent_form())
        for (const auto& y : std::get<std::vector<Rational>>(alpha.torus))
            if (y == 0) throw domain_error("torus coordinate must be nonzero");

    std::vector<OrbitPoint> orbit;
    orbit.reserve(steps + 1);
    orbit.push_back(alpha);
    for (unsigned long n = 0; n < steps; ++n) {
        const OrbitPoint& cur = orbit.back();
        OrbitPoint next;
        next.additive = phi.additive.apply(cur.additive);
        if (cur.torus_in_exponent_form()) {
            const TorusExponents& te = cur.torus_exponents();
            TorusExponents nt;
            nt.primes = te.primes;
            std::size_t l = phi.l(), b = te.primes.size();
            nt.expo.assign(l, std::vector<Int>(b, Int(0)));
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j) {
                    const Int& a = phi.torus.at(i, j);
                    if (a == 0) continue;
                    for (std::size_t t = 0; t < b; ++t) nt.expo[i][t] += a * te.expo[j][t];
                }
            next.torus = std::move(nt);
        } else {
            const auto& ys = std::get<std::vector<Rational>>(cur.torus);
            std::vector<Rational> ny(phi.l(), Rational(1));
            for (std::size_t i = 0; i < phi.l(); ++i)
                for (std::size_t j = 0; j < phi.l(); ++j) {
                    const Int& a = phi.torus.at(i, j);
                    if (a == 0) continue;
                    if (!a.fits_slong_p()) throw domain_error("torus exponent too large");
                    long e = a.get_si();
                    Rational base = e < 0 ? Rational(1) / ys[j] : ys[j];
                    Int num, den;
                    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
                    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), ae);
                    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), ae);
                    ny[i] *= make_rational(num, den);
                }
            next.torus = std::move(ny);
        }
        orbit.push_back(std::move(next));
    }
    return orbit;
}

std::vector<OrbitPoint> psi_transform(const std::vector<OrbitPoint>& points,
                                      const Rational& lambda1) {
    if (lambda1 == 0) throw domain_error("psi_transform: lambda1 must be nonzero");
    std::vector<OrbitPoint> out;
    out.reserve(points.size());
    for (const OrbitPoint& p : points) {
        if (p.additive.size() < 2) throw domain_error("psi_transform needs k >= 2");
        OrbitPoint q = p;
        q.additive[0] = lambda1 * (p.additive[0] - p.additive[1]);
        out.push_back(std::move(q));
    }
    return out;
}

MultiRationalFunction compose_with_endomorphism(const MultiRationalFunction& f,
                                                const GroupEndomorphism& phi) {
    phi.require_dominant();
    std::size_t k = phi.k(), l = phi.l(), n = k + l;
    if (f.nvars() != n) throw domain_error("compose: variable count mismatch with endomorphism");

    // images of the variables as rational functions
    std::vector<MultiRationalFunction> image;
    image.reserve(n);
    for (std::size_t i = 0; i < k; ++i) {
        MultiPoly lin(n);
        for (std::size_t j = 0; j < k; ++j) {
            if (phi.additive.at(i, j) == 0) continue;
            lin = lin + MultiPoly::variable(n, j) * FieldElem(phi.additive.at(i, j));
        }
        image.push_back(MultiRationalFunction::from_poly(lin));
    }
    for (std::size_t i = 0; i < l; ++i) {
        std::vector<Int> expo(n, Int(0));
        for (std::size_t j = 0; j < l; ++j) expo[k + j] = phi.torus.at(i, j);
        image.push_back(MultiRationalFunction::laurent(n, expo, FieldElem(Rational(1))));
    }

    return substitute_variables(f, image);
}

}  // namespace odyn
