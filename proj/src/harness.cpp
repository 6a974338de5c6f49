#include "odyn/harness.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace odyn {

namespace {

MultiPoly normalize_difference(MultiPoly diff) {
    if (diff.is_zero()) return diff;
    FieldElem lead = diff.terms().begin()->second;
    return diff * lead.inverse();
}

}  // namespace

// ---------------------------------------------------------------------------
// Invariance verification
// ---------------------------------------------------------------------------

InvarianceCertificate verify_invariant(const GroupEndomorphism& phi,
                                       const MultiRationalFunction& f) {
    if (f.is_constant())
        throw invalid_witness_error("constant functions are not valid fibration witnesses");
    MultiRationalFunction composed = compose_with_endomorphism(f, phi);
    MultiPoly diff = composed.num() * f.den() - f.num() * composed.den();
    return {diff.is_zero(), normalize_difference(std::move(diff))};
}

InvarianceCertificate verify_fibration(const GroupEndomorphism& phi, const Verdict& v) {
    if (v.kind != Verdict::Kind::Fibration)
        throw domain_error("verify_fibration expects a fibration verdict");
    const MultiRationalFunction& f = *v.fibration;
    if (f.is_constant())
        throw invalid_witness_error("constant functions are not valid fibration witnesses");
    if (v.coordinates == CoordinateSystem::Original) return verify_invariant(phi, f);
    if (v.jordan_images) {
        MultiRationalFunction composed = substitute_variables(f, *v.jordan_images);
        MultiPoly diff = composed.num() * f.den() - f.num() * composed.den();
        return {diff.is_zero(), normalize_difference(std::move(diff))};
    }
    if (v.monomial_certificate) {
        AlgebraicNumber acc = AlgebraicNumber::from_rational(Rational(1));
        const auto& cert = *v.monomial_certificate;
        for (std::size_t i = 0; i < cert.eigenvalues.size(); ++i) {
            if (cert.exponents[i] == 0) continue;
            if (!cert.exponents[i].fits_slong_p())
                throw domain_error("certificate exponent out of range");
            acc = alg_mul(acc, alg_pow(cert.eigenvalues[i], cert.exponents[i].get_si()));
        }
        bool ok = acc.is_rational() && acc.rational_value() == 1;
        MultiPoly marker(f.nvars());
        if (!ok) marker.add_term(Monomial{std::vector<unsigned>(f.nvars(), 0)}, FieldElem(Rational(1)));
        return {ok, marker};
    }
    throw domain_error("verdict carries no verification route");
}

// ---------------------------------------------------------------------------
// Density rank tests
// ---------------------------------------------------------------------------

namespace density_detail {

PointData preprocess(const OrbitPoint& p) {
    PointData d;
    d.additive = p.additive;
    if (p.torus_in_exponent_form()) {
        d.exponent_form = true;
        d.primes = &p.torus_exponents().primes;
        d.expo = p.torus_exponents().expo;
    } else {
        d.torus_explicit = std::get<std::vector<Rational>>(p.torus);
    }
    return d;
}

namespace {

// One canonicalization per entry: numerator and denominator are accumulated
// as plain integers first.
Rational monomial_value(const PointData& p, const Monomial& m, std::size_t k) {
    Int num(1), den(1), pw;
    auto mul_pow = [&](const Rational& base, unsigned e) {
        mpz_pow_ui(pw.get_mpz_t(), base.get_num().get_mpz_t(), e);
        num *= pw;
        mpz_pow_ui(pw.get_mpz_t(), base.get_den().get_mpz_t(), e);
        den *= pw;
    };
    for (std::size_t i = 0; i < k; ++i)
        if (m.e[i] > 0) mul_pow(p.additive[i], m.e[i]);
    std::size_t l = m.e.size() - k;
    if (p.exponent_form) {
        std::size_t nb = p.primes->size();
        for (std::size_t t = 0; t < nb; ++t) {
            Int combined(0);
            for (std::size_t j = 0; j < l; ++j)
                if (m.e[k + j] != 0) combined += Int(static_cast<long>(m.e[k + j])) * p.expo[j][t];
            if (combined == 0) continue;
            if (!combined.fits_slong_p())
                throw domain_error("exact torus exponent exceeds representable range");
            long e = combined.get_si();
            mpz_pow_ui(pw.get_mpz_t(), (*p.primes)[t].get_mpz_t(),
                       static_cast<unsigned long>(e < 0 ? -e : e));
            (e > 0 ? num : den) *= pw;
        }
    } else {
        for (std::size_t j = 0; j < l; ++j)
            if (m.e[k + j] > 0) mul_pow(p.torus_explicit[j], m.e[k + j]);
    }
    return make_rational(num, den);
}

}  // namespace

void monomial_column_serial(const std::vector<PointData>& points, const Monomial& m,
                            std::size_t k, std::vector<Rational>& out) {
    out.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = monomial_value(points[i], m, k);
}

void monomial_column_parallel(const std::vector<PointData>& points, const Monomial& m,
                              std::size_t k, std::vector<Rational>& out) {
    out.resize(points.size());
    std::int64_t n = static_cast<std::int64_t>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::int64_t i = 0; i < n; ++i) out[i] = monomial_value(points[i], m, k);
}

void assemble_rows_serial(const std::vector<PointData>& points,
                          const std::vector<Monomial>& monomials, std::size_t k,
                          std::vector<std::vector<Rational>>& out) {
    out.assign(points.size(), {});
    for (std::size_t r = 0; r < points.size(); ++r) {
        out[r].resize(monomials.size());
        for (std::size_t c = 0; c < monomials.size(); ++c)
            out[r][c] = monomial_value(points[r], monomials[c], k);
    }
}

void assemble_rows_parallel(const std::vector<PointData>& points,
                            const std::vector<Monomial>& monomials, std::size_t k,
                            std::vector<std::vector<Rational>>& out) {
    out.assign(points.size(), {});
    std::int64_t n = static_cast<std::int64_t>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (std::int64_t r = 0; r < n; ++r) {
        out[r].resize(monomials.size());
        for (std::size_t c = 0; c < monomials.size(); ++c)
            out[r][c] = monomial_value(points[r], monomials[c], k);
    }
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    Monomial cur{std::vector<unsigned>(nvars, 0)};
    // enumerate recursively, then sort graded-lex ascending
    std::vector<unsigned> stack(nvars, 0);
    auto rec = [&](auto&& self, std::size_t at, unsigned remaining) -> void {
        if (at == nvars) {
            out.push_back(Monomial{stack});
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            stack[at] = e;
            self(self, at + 1, remaining - e);
        }
        stack[at] = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return monomial_greater(b, a); });
    return out;
}

}  // namespace density_detail

namespace {

using density_detail::PointData;

// Estimated bit size of the largest exact entry.
unsigned long estimate_entry_bits(const std::vector<PointData>& points, unsigned degree,
                                  std::size_t k) {
    unsigned long worst = 0;
    for (const auto& p : points) {
        unsigned long base = 0;
        for (const auto& a : p.additive)
            base = std::max(base, mpz_sizeinbase(a.get_num().get_mpz_t(), 2) +
                                      mpz_sizeinbase(a.get_den().get_mpz_t(), 2));
        unsigned long torus = 0;
        if (p.exponent_form) {
            unsigned long maxexp = 0, maxprime = 0;
            for (const auto& row : p.expo)
                for (const auto& e : row) {
                    Int a = abs(e);
                    maxexp = std::max(maxexp, static_cast<unsigned long>(
                                                  mpz_sizeinbase(a.get_mpz_t(), 2)));
                }
            for (const auto& pr : *p.primes)
                maxprime = std::max(maxprime,
                                    static_cast<unsigned long>(mpz_sizeinbase(pr.get_mpz_t(), 2)));
            // degree * |exponent| * bits(prime); exponent bit length overflows fast,
            // so saturate early
            if (maxexp > 40) return ~0ul - 1;
            unsigned long mag = 1ul << std::min<unsigned long>(maxexp, 40);
            torus = degree * mag * std::max(1ul, maxprime);
        } else {
            for (const auto& t : p.torus_explicit)
                torus = std::max(torus, mpz_sizeinbase(t.get_num().get_mpz_t(), 2) +
                                            mpz_sizeinbase(t.get_den().get_mpz_t(), 2));
        }
        worst = std::max(worst, degree * base + (p.exponent_form ? torus : degree * torus));
        (void)k;
    }
    return worst;
}

struct ExactOutcome {
    bool full_rank;
    std::size_t rank;
    std::vector<std::pair<std::size_t, Rational>> kernel;  // (column index, coefficient)
};

// Incremental column echelon with early exit at the first dependent column.
// Pivot search runs on a row prefix; kernel candidates are verified against
// every row and the elimination restarts on the full row set if the prefix
// was too thin.
ExactOutcome exact_rank(const std::vector<PointData>& points,
                        const std::vector<Monomial>& monomials, std::size_t k,
                        bool parallel, std::size_t prefix_rows) {
    std::size_t total_rows = points.size();
    std::size_t rows = std::min(total_rows, prefix_rows);
    std::vector<PointData> prefix(points.begin(), points.begin() + rows);

    std::vector<std::vector<Rational>> pivot_cols;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> combos;

    auto assemble = [&](const Monomial& m, const std::vector<PointData>& pts,
                        std::vector<Rational>& out) {
        if (parallel)
            density_detail::monomial_column_parallel(pts, m, k, out);
        else
            density_detail::monomial_column_serial(pts, m, k, out);
    };

    for (std::size_t j = 0; j < monomials.size(); ++j) {
        std::vector<Rational> col;
        assemble(monomials[j], prefix, col);
        std::vector<std::pair<std::size_t, Rational>> combo = {{j, Rational(1)}};
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            const Rational& f = col[pivot_rows[i]];
            if (f == 0) continue;
            Rational factor = f;  // pivot columns are normalized to lead 1
            for (std::size_t r = 0; r < rows; ++r) col[r] -= factor * pivot_cols[i][r];
            for (const auto& [idx, c] : combos[i]) {
                bool found = false;
                for (auto& [ci, cv] : combo)
                    if (ci == idx) {
                        cv -= factor * c;
                        found = true;
                        break;
                    }
                if (!found) combo.emplace_back(idx, -factor * c);
            }
        }
        std::size_t lead = rows;
        for (std::size_t r = 0; r < rows; ++r)
            if (col[r] != 0) {
                lead = r;
                break;
            }
        if (lead == rows) {
            // dependent on the prefix: verify the relation on every row
            combo.erase(std::remove_if(combo.begin(), combo.end(),
                                       [](const auto& e) { return e.second == 0; }),
                        combo.end());
            std::sort(combo.begin(), combo.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            bool verified = true;
            if (rows < total_rows) {
                std::vector<Rational> acc(total_rows, Rational(0));
                for (const auto& [idx, c] : combo) {
                    std::vector<Rational> full;
                    assemble(monomials[idx], points, full);
                    for (std::size_t r = 0; r < total_rows; ++r) acc[r] += c * full[r];
                }
                for (const auto& x : acc)
                    if (x != 0) {
                        verified = false;
                        break;
                    }
            }
            if (verified) return {false, pivot_cols.size(), std::move(combo)};
            // the prefix hid rank: redo with all rows
            return exact_rank(points, monomials, k, parallel, total_rows);
        }
        Rational inv = Rational(1) / col[lead];
        for (auto& x : col) x *= inv;
        for (auto& [idx, c] : combo) c *= inv;
        pivot_cols.push_back(std::move(col));
        pivot_rows.push_back(lead);
        combos.push_back(std::move(combo));
    }
    return {true, pivot_cols.size(), {}};
}

// Deterministic 62-bit primes derived from the seed.
std::vector<Int> modular_primes(unsigned long seed, int round, int count) {
    std::vector<Int> out;
    for (int i = 0; i < count; ++i) {
        Int base = (Int(1) << 61) + Int(seed) * 2654435761u + Int(round * 7 + i) * Int("481287649218274687");
        Int p;
        mpz_nextprime(p.get_mpz_t(), base.get_mpz_t());
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular-first hybrid: locate the first dependent column and a kernel
// candidate with word arithmetic, reconstruct the (typically sparse, small)
// rational kernel vector, then certify it exactly. Full rank modulo a prime
// already proves full rank over Q, so that direction needs no second pass.
// ---------------------------------------------------------------------------

using u64 = std::uint64_t;

u64 mulmod_u64(u64 a, u64 b, u64 q) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q);
}

u64 powmod_u64(u64 a, const Int& e_in, const Int& qm1, u64 q) {
    Int e = e_in % qm1;
    if (e < 0) e += qm1;
    u64 result = 1 % q, base = a % q;
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        result = mulmod_u64(result, result, q);
        if (mpz_tstbit(e.get_mpz_t(), bit)) result = mulmod_u64(result, base, q);
    }
    return e == 0 ? 1 % q : result;
}

u64 powmod_small(u64 a, unsigned e, u64 q) {
    u64 r = 1 % q;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, q);
        a = mulmod_u64(a, a, q);
        e >>= 1;
    }
    return r;
}

u64 invmod_u64(u64 a, u64 q) {
    // q prime
    u64 r = 1, base = a % q;
    Int e(static_cast<unsigned long>(q - 2));
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = mulmod_u64(r, r, q);
        if (mpz_tstbit(e.get_mpz_t(), bit)) r = mulmod_u64(r, base, q);
    }
    return r;
}

// Standard rational reconstruction: p/q with |p|, q <= sqrt(m/2).
std::optional<Rational> rational_reconstruct(const Int& a_in, const Int& m) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1 = a_in % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int quot = r0 / r1;
        Int r2 = r0 - quot * r1;
        Int t2 = t0 - quot * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound || den == 0) return std::nullopt;
    if (gcd(abs(num), den) != 1) return std::nullopt;
    return make_rational(num, den);
}

struct HybridOutcome {
    enum class Kind { FullRank, Candidate, Unusable } kind;
    std::size_t rank = 0;
    std::vector<std::pair<std::size_t, u64>> combo;  // kernel candidate mod q
};

HybridOutcome hybrid_first_dependency(const std::vector<PointData>& points,
                                      const std::vector<Monomial>& monomials, std::size_t k,
                                      const Int& q_mpz, bool parallel, std::size_t prefix_rows) {
    (void)parallel;
    u64 q = q_mpz.get_ui();
    Int qm1 = q_mpz - 1;
    std::size_t rows = std::min(points.size(), prefix_rows);
    std::size_t cols = monomials.size();

    // per-row residues of the coordinates
    std::vector<std::vector<u64>> add_res(rows), torus_res(rows);
    std::vector<const PointData*> pts(rows);
    bool usable = true;
    for (std::size_t r = 0; r < rows && usable; ++r) {
        const PointData& p = points[r];
        pts[r] = &p;
        add_res[r].resize(p.additive.size());
        for (std::size_t i = 0; i < p.additive.size(); ++i) {
            Int num = p.additive[i].get_num() % q_mpz, den = p.additive[i].get_den() % q_mpz;
            if (den == 0) {
                usable = false;
                break;
            }
            if (num < 0) num += q_mpz;
            u64 dinv = invmod_u64(den.get_ui(), q);
            add_res[r][i] = mulmod_u64(num.get_ui(), dinv, q);
        }
        if (!usable) break;
        if (!p.exponent_form) {
            torus_res[r].resize(p.torus_explicit.size());
            for (std::size_t j = 0; j < p.torus_explicit.size(); ++j) {
                Int num = p.torus_explicit[j].get_num() % q_mpz,
                    den = p.torus_explicit[j].get_den() % q_mpz;
                if (den == 0 || num == 0) {
                    usable = false;
                    break;
                }
                if (num < 0) num += q_mpz;
                torus_res[r][j] = mulmod_u64(num.get_ui(), invmod_u64(den.get_ui(), q), q);
            }
        }
    }
    if (!usable) return {HybridOutcome::Kind::Unusable, 0, {}};

    auto column_mod = [&](const Monomial& mo, std::vector<u64>& out) {
        out.resize(rows);
        std::int64_t nrows = static_cast<std::int64_t>(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (std::int64_t r = 0; r < nrows; ++r) {
            const PointData& p = *pts[r];
            u64 v = 1 % q;
            for (std::size_t i = 0; i < k; ++i)
                if (mo.e[i] > 0) v = mulmod_u64(v, powmod_small(add_res[r][i], mo.e[i], q), q);
            std::size_t l = mo.e.size() - k;
            if (p.exponent_form) {
                std::size_t nb = p.primes->size();
                for (std::size_t t = 0; t < nb; ++t) {
                    Int combined(0);
                    for (std::size_t j = 0; j < l; ++j)
                        if (mo.e[k + j] != 0)
                            combined += Int(static_cast<long>(mo.e[k + j])) * p.expo[j][t];
                    if (combined == 0) continue;
                    u64 base = Int((*p.primes)[t] % q_mpz).get_ui();
                    v = mulmod_u64(v, powmod_u64(base, combined, qm1, q), q);
                }
            } else {
                for (std::size_t j = 0; j < l; ++j)
                    if (mo.e[k + j] > 0)
                        v = mulmod_u64(v, powmod_small(torus_res[r][j], mo.e[k + j], q), q);
            }
            out[r] = v;
        }
    };

    std::vector<std::vector<u64>> pivot_cols;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::vector<u64>> pivot_combos;  // dense over original columns
    std::vector<u64> col, combo;
    for (std::size_t j = 0; j < cols; ++j) {
        column_mod(monomials[j], col);
        combo.assign(cols, 0);
        combo[j] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            u64 f = col[pivot_rows[i]];
            if (f == 0) continue;
            for (std::size_t r = 0; r < rows; ++r) {
                u64 sub = mulmod_u64(f, pivot_cols[i][r], q);
                col[r] = col[r] >= sub ? col[r] - sub : col[r] + q - sub;
            }
            for (std::size_t t = 0; t <= j; ++t) {
                u64 sub = mulmod_u64(f, pivot_combos[i][t], q);
                combo[t] = combo[t] >= sub ? combo[t] - sub : combo[t] + q - sub;
            }
        }
        std::size_t lead = rows;
        for (std::size_t r = 0; r < rows; ++r)
            if (col[r] != 0) {
                lead = r;
                break;
            }
        if (lead == rows) {
            std::vector<std::pair<std::size_t, u64>> sparse;
            for (std::size_t t = 0; t <= j; ++t)
                if (combo[t] != 0) sparse.emplace_back(t, combo[t]);
            return {HybridOutcome::Kind::Candidate, pivot_cols.size(), std::move(sparse)};
        }
        u64 inv = invmod_u64(col[lead], q);
        for (auto& x : col) x = mulmod_u64(x, inv, q);
        for (auto& x : combo) x = mulmod_u64(x, inv, q);
        pivot_cols.push_back(col);
        pivot_rows.push_back(lead);
        pivot_combos.push_back(combo);
    }
    return {HybridOutcome::Kind::FullRank, cols, {}};
}

std::size_t modular_rank(const std::vector<PointData>& points,
                         const std::vector<Monomial>& monomials, std::size_t k, const Int& q,
                         bool parallel, bool& usable) {
    (void)parallel;
    std::size_t rows = points.size(), cols = monomials.size();
    Int qm1 = q - 1;
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols, Int(0)));
    usable = true;

    auto value_mod = [&](const PointData& p, const Monomial& mo) -> std::optional<Int> {
        Int v(1);
        for (std::size_t i = 0; i < k; ++i) {
            if (mo.e[i] == 0) continue;
            Int num = p.additive[i].get_num() % q, den = p.additive[i].get_den() % q;
            if (den == 0) return std::nullopt;
            Int dinv;
            if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t()) == 0)
                return std::nullopt;
            Int base = (num * dinv) % q;
            if (base < 0) base += q;
            Int pw;
            mpz_powm_ui(pw.get_mpz_t(), base.get_mpz_t(), mo.e[i], q.get_mpz_t());
            v = (v * pw) % q;
        }
        std::size_t l = mo.e.size() - k;
        if (p.exponent_form) {
            std::size_t nb = p.primes->size();
            for (std::size_t t = 0; t < nb; ++t) {
                Int combined(0);
                for (std::size_t j = 0; j < l; ++j)
                    if (mo.e[k + j] != 0)
                        combined += Int(static_cast<long>(mo.e[k + j])) * p.expo[j][t];
                if (combined == 0) continue;
                Int e = combined % qm1;
                if (e < 0) e += qm1;
                Int pw;
                mpz_powm((pw).get_mpz_t(), (*p.primes)[t].get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
                v = (v * pw) % q;
            }
        } else {
            for (std::size_t j = 0; j < l; ++j) {
                if (mo.e[k + j] == 0) continue;
                Int num = p.torus_explicit[j].get_num() % q, den = p.torus_explicit[j].get_den() % q;
                if (den == 0 || num == 0) return std::nullopt;
                Int dinv;
                if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t()) == 0)
                    return std::nullopt;
                Int base = (num * dinv) % q;
                if (base < 0) base += q;
                Int pw;
                mpz_powm_ui(pw.get_mpz_t(), base.get_mpz_t(), mo.e[k + j], q.get_mpz_t());
                v = (v * pw) % q;
            }
        }
        return v;
    };

    std::atomic<bool> failed{false};
    std::int64_t nrows = static_cast<std::int64_t>(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::int64_t r = 0; r < nrows; ++r) {
        if (failed.load(std::memory_order_relaxed)) continue;
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = value_mod(points[r], monomials[c]);
            if (!v) {
                failed.store(true, std::memory_order_relaxed);
                break;
            }
            m[r][c] = *v;
        }
    }
    if (failed.load()) {
        usable = false;
        return 0;
    }
    // Gaussian elimination mod q.
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t sel = rank;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[rank]);
        Int inv;
        mpz_invert(inv.get_mpz_t(), m[rank][c].get_mpz_t(), q.get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) m[rank][j] = (m[rank][j] * inv) % q;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Int f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) {
                m[r][j] = (m[r][j] - f * m[rank][j]) % q;
                if (m[r][j] < 0) m[r][j] += q;
            }
        }
        ++rank;
    }
    return rank;
}

DensityReport density_of_points(const std::vector<OrbitPoint>& orbit_points, std::size_t k,
                                unsigned degree, unsigned long steps,
                                const DensityOptions& options) {
    std::size_t nvars = k + (orbit_points.empty() ? 0 : orbit_points.front().torus_dim());
    std::vector<Monomial> monomials = density_detail::monomials_up_to_degree(nvars, degree);
    DensityReport report;
    report.degree = degree;
    report.steps = steps;
    report.additive_vars = k;
    report.monomial_count = monomials.size();
    if (orbit_points.size() < monomials.size() + 1)
        throw insufficient_samples_error(
            "density_check needs at least as many orbit steps as monomials (got " +
            std::to_string(orbit_points.size() ? orbit_points.size() - 1 : 0) + ", need " +
            std::to_string(monomials.size()) + ")");

    std::vector<PointData> points;
    points.reserve(orbit_points.size());
    for (const auto& p : orbit_points) points.push_back(density_detail::preprocess(p));

    unsigned long est = estimate_entry_bits(points, degree, k);
    std::optional<ExactOutcome> exact_result;
    if (est <= options.exact_cutoff_bits && monomials.size() <= 40) {
        exact_result = exact_rank(points, monomials, k, options.parallel, monomials.size() + 8);
    } else if (est <= options.bit_budget) {
        // Word-sized modular elimination locates the dependency; the kernel
        // vector is reconstructed and certified exactly on every sample.
        std::size_t prefix = monomials.size() + 8;
        for (int round = 0; round < 3 && !exact_result; ++round) {
            Int q = modular_primes(options.seed, round, 1)[0];
            HybridOutcome h =
                hybrid_first_dependency(points, monomials, k, q, options.parallel, prefix);
            if (h.kind == HybridOutcome::Kind::Unusable) continue;
            if (h.kind == HybridOutcome::Kind::FullRank) {
                // full rank mod q already implies full rank over Q
                exact_result = ExactOutcome{true, h.rank, {}};
                break;
            }
            std::vector<std::pair<std::size_t, Rational>> kernel;
            bool ok = true;
            for (const auto& [idx, val] : h.combo) {
                auto rec = rational_reconstruct(Int(static_cast<unsigned long>(val)), q);
                if (!rec) {
                    ok = false;
                    break;
                }
                kernel.emplace_back(idx, *rec);
            }
            if (ok) {
                std::vector<Rational> acc(points.size(), Rational(0));
                for (const auto& [idx, c] : kernel) {
                    std::vector<Rational> colv;
                    if (options.parallel)
                        density_detail::monomial_column_parallel(points, monomials[idx], k, colv);
                    else
                        density_detail::monomial_column_serial(points, monomials[idx], k, colv);
                    for (std::size_t r = 0; r < points.size(); ++r) acc[r] += c * colv[r];
                }
                for (const auto& x : acc)
                    if (x != 0) {
                        ok = false;
                        break;
                    }
            }
            if (ok) {
                exact_result = ExactOutcome{false, h.rank, std::move(kernel)};
                break;
            }
            break;  // certification failed: fall back to the exact elimination
        }
        if (!exact_result)
            exact_result = exact_rank(points, monomials, k, options.parallel, monomials.size() + 8);
    }
    if (exact_result) {
        const ExactOutcome& out = *exact_result;
        report.matrix_rank = out.rank;
        report.modular_evaluation = false;
        if (out.full_rank) {
            report.outcome = DensityReport::Outcome::FullRank;
        } else {
            report.outcome = DensityReport::Outcome::VanishingPolynomial;
            // integer-primitive polynomial with positive leading coefficient
            MultiPoly poly(nvars);
            Int den_lcm(1);
            for (const auto& [idx, c] : out.kernel) den_lcm = lcm(den_lcm, c.get_den());
            Int content(0);
            for (const auto& [idx, c] : out.kernel)
                content = gcd(content, Int(c.get_num() * (den_lcm / c.get_den())));
            for (const auto& [idx, c] : out.kernel) {
                Rational scaled = c * Rational(den_lcm) / Rational(content);
                poly.add_term(monomials[idx], FieldElem(scaled));
            }
            if (!poly.is_zero()) {
                FieldElem lead = poly.terms().begin()->second;
                if (lead.is_rational() && lead.rational_value() < 0) poly = -poly;
            }
            report.vanishing = std::move(poly);
        }
        return report;
    }

    // Modular path: three matching 62-bit prime ranks.
    report.modular_evaluation = true;
    for (int round = 0; round < 3; ++round) {
        std::vector<Int> primes = modular_primes(options.seed, round, 3);
        std::vector<std::size_t> ranks;
        bool all_usable = true;
        for (const Int& q : primes) {
            bool usable = true;
            std::size_t r = modular_rank(points, monomials, k, q, options.parallel, usable);
            if (!usable) {
                all_usable = false;
                break;
            }
            ranks.push_back(r);
        }
        if (!all_usable) continue;
        if (ranks[0] == ranks[1] && ranks[1] == ranks[2]) {
            report.matrix_rank = ranks[0];
            report.outcome = ranks[0] == monomials.size()
                                 ? DensityReport::Outcome::FullRank
                                 : DensityReport::Outcome::RankDeficientModular;
            return report;
        }
    }
    throw domain_error("density_check: modular ranks failed to agree");
}

}  // namespace

std::string DensityReport::label() const {
    switch (outcome) {
        case Outcome::FullRank: return modular_evaluation ? "ProbablyFullRank" : "FullRank";
        case Outcome::VanishingPolynomial: return "VanishingPolynomial";
        case Outcome::RankDeficientModular: return "RankDeficientModular";
    }
    return "unknown";
}

DensityReport density_check(const GroupEndomorphism& phi, const OrbitPoint& alpha,
                            unsigned degree, unsigned long steps, const DensityOptions& options) {
    std::vector<OrbitPoint> orbit = evaluate_orbit(phi, alpha, steps);
    return density_of_points(orbit, phi.k(), degree, steps, options);
}

std::vector<DensityReport> suffix_density_check(
    const GroupEndomorphism& phi, const OrbitPoint& alpha, unsigned degree,
    const std::vector<std::pair<unsigned long, unsigned long>>& progressions,
    unsigned long steps, const DensityOptions& options) {
    std::vector<OrbitPoint> orbit = evaluate_orbit(phi, alpha, steps);
    std::vector<DensityReport> out;
    for (const auto& [start, stride] : progressions) {
        if (stride == 0) throw domain_error("suffix_density_check: zero stride");
        std::vector<OrbitPoint> sub;
        for (unsigned long i = start; i <= steps; i += stride) sub.push_back(orbit[i]);
        out.push_back(density_of_points(sub, phi.k(), degree,
                                        sub.empty() ? 0 : sub.size() - 1, options));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Growth check
// ---------------------------------------------------------------------------

GrowthReport growth_check(const ZMatrix& a, const std::vector<Int>& p, unsigned long steps) {
    if (!a.square()) throw domain_error("growth_check: non-square matrix");
    if (a.det() == 0) throw dominance_error("growth_check: singular matrix");
    bool nonzero = false;
    for (const Int& x : p) nonzero = nonzero || x != 0;
    if (!nonzero) throw domain_error("growth_check: zero start vector");
    if (steps < 2) throw domain_error("growth_check needs at least two steps");

    GrowthReport report;
    report.steps = steps;
    std::vector<Int> v = p;
    report.sup_norms.reserve(steps + 1);
    for (unsigned long n = 0; n <= steps; ++n) {
        Int norm(0);
        for (const Int& x : v) {
            Int ax = abs(x);
            if (ax > norm) norm = ax;
        }
        report.sup_norms.push_back(norm);
        if (n < steps) v = a.apply(v);
    }
    report.max_ratio = Rational(0);
    for (unsigned long n = 0; n <= steps; ++n) {
        Rational ratio = Rational(report.sup_norms[n]) / Rational(static_cast<long>(n + 1));
        if (ratio > report.max_ratio) report.max_ratio = ratio;
    }
    unsigned long n1 = steps / 2, n2 = steps;
    Rational c1 = Rational(report.sup_norms[n2] - report.sup_norms[n1]) /
                  Rational(static_cast<long>(n2 - n1));
    Rational c2 = Rational(report.sup_norms[n1]) - c1 * Rational(static_cast<long>(n1));
    report.verdict = GrowthReport::Verdict::LinearlyBounded;
    for (unsigned long n = 1; n <= steps; ++n) {
        if (Rational(report.sup_norms[n]) > c1 * Rational(static_cast<long>(n)) + c2) {
            report.verdict = GrowthReport::Verdict::ExceedsLinear;
            report.first_violation = n;
            break;
        }
    }
    Factorization fac = factor_over_rationals(char_poly(a));
    for (const auto& [factor, mult] : fac.factors) {
        if (auto n = is_cyclotomic(factor)) {
            if (!report.cyclotomic_order || *n < *report.cyclotomic_order) {
                report.cyclotomic_order = *n;
                report.cyclotomic_factor = factor;
            }
        }
    }
    return report;
}

}  // namespace odyn
