#include <algorithm>
#include <cstdint>

#include "odyn/poly.hpp"

namespace odyn {
namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for a word-sized prime p (Berlekamp stage).
// ---------------------------------------------------------------------------

using ZpPoly = std::vector<long>;  // coefficient i of x^i, values in [0, p)

long mulmod(long a, long b, long p) {
    return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

long powmod(long a, long e, long p) {
    long r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

long invmod(long a, long p) { return powmod(a, p - 2, p); }

void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zp_deg(const ZpPoly& f) { return static_cast<int>(f.size()) - 1; }

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    zp_trim(r);
    return r;
}

// Remainder of a by b, b nonzero.
ZpPoly zp_mod(ZpPoly a, const ZpPoly& b, long p) {
    long inv_lead = invmod(b.back(), p);
    while (zp_deg(a) >= zp_deg(b)) {
        long c = mulmod(a.back(), inv_lead, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = ((a[shift + i] - mulmod(c, b[i], p)) % p + p) % p;
        zp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

ZpPoly zp_monic(ZpPoly f, long p) {
    if (f.empty()) return f;
    long inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long p) {
    while (!b.empty()) {
        ZpPoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(std::move(a), p);
}

ZpPoly zp_deriv(const ZpPoly& f, long p) {
    ZpPoly r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(mulmod(f[i], static_cast<long>(i % p), p));
    zp_trim(r);
    return r;
}

// x^e mod f by square and multiply.
ZpPoly zp_xpow_mod(long e, const ZpPoly& f, long p) {
    ZpPoly result = {1};
    ZpPoly base = zp_mod(ZpPoly{0, 1}, f, p);
    while (e > 0) {
        if (e & 1) result = zp_mod(zp_mul(result, base, p), f, p);
        base = zp_mod(zp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

// Extended Euclid: s*a + t*b = 1 for coprime a, b.
void zp_bezout(const ZpPoly& a, const ZpPoly& b, long p, ZpPoly& s, ZpPoly& t) {
    ZpPoly r0 = a, r1 = b;
    ZpPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    auto sub_mul = [&](const ZpPoly& u, const ZpPoly& q, const ZpPoly& v) {
        ZpPoly qv = zp_mul(q, v, p);
        ZpPoly r(std::max(u.size(), qv.size()), 0);
        for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i];
        for (std::size_t i = 0; i < qv.size(); ++i) r[i] = ((r[i] - qv[i]) % p + p) % p;
        zp_trim(r);
        return r;
    };
    while (!r1.empty()) {
        // quotient of r0 by r1
        ZpPoly q;
        ZpPoly rem = r0;
        long inv_lead = invmod(r1.back(), p);
        if (zp_deg(rem) >= zp_deg(r1)) q.assign(rem.size() - r1.size() + 1, 0);
        while (zp_deg(rem) >= zp_deg(r1)) {
            long c = mulmod(rem.back(), inv_lead, p);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = ((rem[shift + i] - mulmod(c, r1[i], p)) % p + p) % p;
            zp_trim(rem);
            if (rem.empty()) break;
        }
        zp_trim(q);
        ZpPoly s2 = sub_mul(s0, q, s1), t2 = sub_mul(t0, q, t1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd, a unit since a, b coprime
    long inv = invmod(r0[0], p);
    s = s0;
    t = t0;
    for (auto& c : s) c = mulmod(c, inv, p);
    for (auto& c : t) c = mulmod(c, inv, p);
}

// Berlekamp factorization of a monic squarefree polynomial over F_p.
std::vector<ZpPoly> berlekamp(const ZpPoly& f, long p) {
    int n = zp_deg(f);
    if (n <= 1) return {f};
    // Petr-Berlekamp matrix: row i = x^{p*i} mod f.
    std::vector<ZpPoly> rows(n);
    ZpPoly xp = zp_xpow_mod(p, f, p);
    ZpPoly cur = {1};
    for (int i = 0; i < n; ++i) {
        rows[i] = cur;
        rows[i].resize(n, 0);
        if (i + 1 < n) cur = zp_mod(zp_mul(cur, xp, p), f, p);
    }
    // Null space of (Q - I) acting on row vectors: v with v*Q = v.
    // Transpose into columns and run Gaussian elimination.
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[j][i] = (rows[i][j] - (i == j ? 1 : 0) + p) % p;
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int row = rank; row < n; ++row)
            if (m[row][col] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[rank]);
        long inv = invmod(m[rank][col], p);
        for (int j = 0; j < n; ++j) m[rank][j] = mulmod(m[rank][j], inv, p);
        for (int row = 0; row < n; ++row) {
            if (row == rank || m[row][col] == 0) continue;
            long c = m[row][col];
            for (int j = 0; j < n; ++j)
                m[row][j] = ((m[row][j] - mulmod(c, m[rank][j], p)) % p + p) % p;
        }
        pivot_col[rank++] = col;
    }
    std::vector<ZpPoly> basis;
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        ZpPoly v(n, 0);
        v[col] = 1;
        for (int i = 0; i < rank; ++i) v[pivot_col[i]] = (p - m[i][col]) % p;
        zp_trim(v);
        basis.push_back(std::move(v));
    }
    std::size_t r = basis.size();  // number of irreducible factors
    std::vector<ZpPoly> factors = {f};
    if (r == 1) return factors;
    for (const ZpPoly& v : basis) {
        if (factors.size() == r) break;
        if (zp_deg(v) < 1) continue;  // skip the constant vector
        std::vector<ZpPoly> next;
        for (ZpPoly& g : factors) {
            if (factors.size() + next.size() - 1 == r || zp_deg(g) <= 1) {
                next.push_back(std::move(g));
                continue;
            }
            ZpPoly rem = zp_mod(v, g, p);
            ZpPoly work = g;
            for (long a = 0; a < p && zp_deg(work) > 0; ++a) {
                ZpPoly shifted = rem;
                if (shifted.empty()) shifted = {0};
                shifted[0] = ((shifted[0] - a) % p + p) % p;
                zp_trim(shifted);
                ZpPoly d = shifted.empty() ? work : zp_gcd(work, shifted, p);
                if (zp_deg(d) > 0 && zp_deg(d) < zp_deg(work)) {
                    next.push_back(d);
                    // work /= d
                    ZpPoly q;
                    {
                        ZpPoly num = work;
                        long inv_lead = invmod(d.back(), p);
                        q.assign(num.size() - d.size() + 1, 0);
                        while (zp_deg(num) >= zp_deg(d)) {
                            long c = mulmod(num.back(), inv_lead, p);
                            std::size_t shift = num.size() - d.size();
                            q[shift] = c;
                            for (std::size_t i = 0; i < d.size(); ++i)
                                num[shift + i] = ((num[shift + i] - mulmod(c, d[i], p)) % p + p) % p;
                            zp_trim(num);
                            if (num.empty()) break;
                        }
                        zp_trim(q);
                    }
                    work = q;
                }
            }
            next.push_back(std::move(work));
        }
        factors = std::move(next);
    }
    for (auto& g : factors) g = zp_monic(std::move(g), p);
    return factors;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo p^k (Hensel stage). Coefficients in [0, m).
// ---------------------------------------------------------------------------

using IPoly = std::vector<Int>;

void ip_trim(IPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int ip_deg(const IPoly& f) { return static_cast<int>(f.size()) - 1; }

IPoly ip_reduce(IPoly f, const Int& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    ip_trim(f);
    return f;
}

IPoly ip_add(const IPoly& a, const IPoly& b, const Int& m) {
    IPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % m;
    ip_trim(r);
    return r;
}

IPoly ip_sub(const IPoly& a, const IPoly& b, const Int& m) {
    IPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % m + m) % m;
    ip_trim(r);
    return r;
}

IPoly ip_mul(const IPoly& a, const IPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % m;
    }
    ip_trim(r);
    return r;
}

// Division by a monic divisor.
void ip_divmod_monic(const IPoly& a, const IPoly& b, const Int& m, IPoly& q, IPoly& r) {
    r = a;
    q.clear();
    if (ip_deg(r) >= ip_deg(b)) q.assign(r.size() - b.size() + 1, Int(0));
    while (ip_deg(r) >= ip_deg(b)) {
        Int c = r.back();
        std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = ((r[shift + i] - c * b[i]) % m + m) % m;
        ip_trim(r);
    }
    ip_trim(q);
}

struct HenselPair {
    IPoly g, h, s, t;  // f = g*h, s*g + t*h = 1 (mod modulus), g and h monic
};

// One quadratic lift step from modulus m to m^2.
HenselPair hensel_step(const IPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    HenselPair out;
    IPoly e = ip_sub(ip_reduce(f, m2), ip_mul(in.g, in.h, m2), m2);
    IPoly q, r;
    ip_divmod_monic(ip_mul(in.s, e, m2), in.h, m2, q, r);
    out.g = ip_add(in.g, ip_add(ip_mul(in.t, e, m2), ip_mul(q, in.g, m2), m2), m2);
    out.h = ip_add(in.h, r, m2);
    // Bezout update: s' = s(1-b) mod h', t' = (1 - s' g') / h'
    IPoly one = {Int(1)};
    IPoly b = ip_sub(ip_add(ip_mul(in.s, out.g, m2), ip_mul(in.t, out.h, m2), m2), one, m2);
    IPoly one_minus_b = ip_sub(one, b, m2);
    IPoly s_big = ip_mul(in.s, one_minus_b, m2);
    IPoly dummy;
    ip_divmod_monic(s_big, out.h, m2, dummy, out.s);
    IPoly num = ip_sub(one, ip_mul(out.s, out.g, m2), m2);
    IPoly rem;
    ip_divmod_monic(num, out.h, m2, out.t, rem);
    return out;
}

// Lift f = prod(gs) from mod p to mod M (M = p^(2^j) >= target).
std::vector<IPoly> multifactor_hensel(const IPoly& f, const std::vector<ZpPoly>& gs, long p,
                                      const Int& target) {
    if (gs.size() == 1) {
        Int M(p);
        while (M < target) M = M * M;
        return {ip_reduce(f, M)};
    }
    std::size_t half = gs.size() / 2;
    std::vector<ZpPoly> left(gs.begin(), gs.begin() + half), right(gs.begin() + half, gs.end());
    ZpPoly gl = {1}, gr = {1};
    for (const auto& g : left) gl = zp_mul(gl, g, p);
    for (const auto& g : right) gr = zp_mul(gr, g, p);
    ZpPoly s, t;
    zp_bezout(gl, gr, p, s, t);
    auto to_ipoly = [](const ZpPoly& z) {
        IPoly r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) r[i] = Int(z[i]);
        return r;
    };
    HenselPair pair{to_ipoly(gl), to_ipoly(gr), to_ipoly(s), to_ipoly(t)};
    Int m(p);
    while (m < target) {
        pair = hensel_step(f, pair, m);
        m = m * m;
    }
    std::vector<IPoly> out = multifactor_hensel(pair.g, left, p, target);
    std::vector<IPoly> rightout = multifactor_hensel(pair.h, right, p, target);
    out.insert(out.end(), rightout.begin(), rightout.end());
    return out;
}

Int symmetric(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

// Factor a monic squarefree integer polynomial into monic irreducibles over Z.
std::vector<UnivariatePoly> factor_monic_squarefree_int(const std::vector<Int>& g_coeffs) {
    UnivariatePoly G = poly_from_int_coeffs(g_coeffs);
    int n = G.degree();
    if (n <= 1) return {G};

    // Good prime: G stays squarefree mod p.
    long p = 0;
    ZpPoly gbar;
    for (long cand = 2;; cand = (cand == 2) ? 3 : cand + 2) {
        bool prime = cand >= 2;
        for (long d = 2; d * d <= cand; ++d)
            if (cand % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        ZpPoly gb(g_coeffs.size());
        for (std::size_t i = 0; i < g_coeffs.size(); ++i) {
            Int c = g_coeffs[i] % cand;
            if (c < 0) c += cand;
            gb[i] = c.get_si();
        }
        zp_trim(gb);
        if (zp_deg(gb) != n) continue;
        ZpPoly d = zp_gcd(gb, zp_deriv(gb, cand), cand);
        if (zp_deg(d) == 0) {
            p = cand;
            gbar = std::move(gb);
            break;
        }
    }

    std::vector<ZpPoly> modular = berlekamp(zp_monic(gbar, p), p);
    if (modular.size() == 1) return {G};
    std::sort(modular.begin(), modular.end());

    // Landau-Mignotte style bound on factor coefficients: 2^n * ||G||_2.
    Int norm2(0);
    for (const auto& c : g_coeffs) norm2 += c * c;
    Int bound = Int(1) << n;
    {
        Int s;
        mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
        bound *= (s + 1);
    }
    Int target = 2 * bound + 1;

    IPoly f_int(g_coeffs.begin(), g_coeffs.end());
    std::vector<IPoly> lifted = multifactor_hensel(f_int, modular, p, target);
    Int M(p);
    while (M < target) M = M * M;

    // Zassenhaus recombination over subsets of the lifted factors.
    std::vector<UnivariatePoly> result;
    std::vector<IPoly> pool = std::move(lifted);
    UnivariatePoly G_cur = G;
    bool progress = true;
    while (progress && !pool.empty()) {
        progress = false;
        for (std::size_t size = 1; size <= pool.size() / 2 && !progress; ++size) {
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                IPoly cand = {Int(1)};
                for (std::size_t i : idx) cand = ip_mul(cand, pool[i], M);
                std::vector<Rational> cc(cand.size());
                for (std::size_t i = 0; i < cand.size(); ++i) cc[i] = Rational(symmetric(cand[i], M));
                UnivariatePoly candidate(std::move(cc));
                auto [quot, rem] = G_cur.divmod(candidate);
                if (rem.is_zero()) {
                    result.push_back(candidate);
                    G_cur = quot;
                    std::vector<IPoly> remaining;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            remaining.push_back(std::move(pool[i]));
                    pool = std::move(remaining);
                    progress = true;
                    break;
                }
                // next combination
                std::size_t k = size;
                while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if (G_cur.degree() >= 1) result.push_back(G_cur);
    return result;
}

// Factor a monic squarefree rational polynomial.
std::vector<UnivariatePoly> factor_monic_squarefree(const UnivariatePoly& u) {
    auto [ic, scale] = primitive_integer_parts(u);
    (void)scale;
    Int L = ic.back();
    std::vector<Int> g_coeffs = ic;
    if (L != 1) {
        // G(x) = L^(n-1) F(x/L) is monic with integer coefficients.
        int n = static_cast<int>(ic.size()) - 1;
        Int mult(1);
        for (int i = n - 1; i >= 0; --i) {
            g_coeffs[i] = ic[i] * mult;
            mult *= L;
        }
        g_coeffs[n] = 1;
    }
    std::vector<UnivariatePoly> gfactors = factor_monic_squarefree_int(g_coeffs);
    if (L == 1) return gfactors;
    std::vector<UnivariatePoly> out;
    out.reserve(gfactors.size());
    for (const auto& g : gfactors) out.push_back(g.scale_arg(Rational(L)).monic());
    return out;
}

bool poly_less(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
    return false;
}

}  // namespace

Factorization factor_over_rationals(const UnivariatePoly& p) {
    if (p.is_zero()) throw domain_error("factor_over_rationals: zero polynomial");
    Factorization out;
    out.content = p.leading();
    if (p.degree() == 0) return out;
    UnivariatePoly f = p.monic();

    // Yun squarefree decomposition: f = prod a_i^i.
    std::vector<UnivariatePoly> squarefree_parts;  // index i-1 -> a_i
    {
        UnivariatePoly fp = f.derivative();
        UnivariatePoly g = poly_gcd(f, fp);
        UnivariatePoly c = f / g;
        UnivariatePoly d = fp / g - c.derivative();
        while (c.degree() > 0) {
            UnivariatePoly a = poly_gcd(c, d.is_zero() ? c : d);
            squarefree_parts.push_back(a);
            c = c / a;
            d = d / a - c.derivative();
        }
    }

    for (std::size_t i = 0; i < squarefree_parts.size(); ++i) {
        const UnivariatePoly& part = squarefree_parts[i];
        if (part.degree() < 1) continue;
        for (const auto& irr : factor_monic_squarefree(part))
            out.factors.push_back({irr, static_cast<unsigned>(i + 1)});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
        return poly_less(a.factor, b.factor);
    });
    return out;
}

}  // namespace odyn
