#include "odyn/dependence.hpp"

#include <mpfr.h>

#include <algorithm>

#include "odyn/matrix.hpp"

namespace odyn {

// ---------------------------------------------------------------------------
// Exact LLL (delta = 3/4) on integer rows.
// ---------------------------------------------------------------------------

namespace {

Int round_rational(const Rational& q) {
    // nearest integer, ties toward +infinity
    Rational shifted = q + make_rational(1, 2);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return fl;
}

}  // namespace

// Incremental LLL with exact rational Gram-Schmidt bookkeeping.
void lll_reduce(std::vector<std::vector<Int>>& basis) {
    std::size_t n = basis.size();
    if (n <= 1) return;
    const Rational delta = make_rational(3, 4);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> B(n, Rational(0));
    std::vector<std::vector<Rational>> star(n);

    auto compute_row = [&](std::size_t i) {
        star[i].assign(basis[i].size(), Rational(0));
        for (std::size_t d = 0; d < basis[i].size(); ++d) star[i][d] = Rational(basis[i][d]);
        for (std::size_t j = 0; j < i; ++j) {
            if (B[j] == 0) {
                mu[i][j] = 0;
                continue;
            }
            Rational dot(0);
            for (std::size_t d = 0; d < basis[i].size(); ++d)
                dot += Rational(basis[i][d]) * star[j][d];
            mu[i][j] = dot / B[j];
            for (std::size_t d = 0; d < basis[i].size(); ++d) star[i][d] -= mu[i][j] * star[j][d];
        }
        B[i] = 0;
        for (const auto& v : star[i]) B[i] += v * v;
    };

    auto red = [&](std::size_t k, std::size_t l) {
        Rational half = make_rational(1, 2);
        if (mu[k][l] > half || mu[k][l] < -half) {
            Int q = round_rational(mu[k][l]);
            if (q != 0) {
                for (std::size_t d = 0; d < basis[k].size(); ++d) basis[k][d] -= q * basis[l][d];
                for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rational(q) * mu[l][i];
                mu[k][l] -= Rational(q);
            }
        }
    };

    std::size_t kmax = 0;
    compute_row(0);
    std::size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 200000) throw domain_error("lll_reduce: did not terminate");
        if (k > kmax) {
            kmax = k;
            compute_row(k);
        }
        red(k, k - 1);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(basis[k], basis[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            Rational m = mu[k][k - 1];
            Rational Bnew = B[k] + m * m * B[k - 1];
            if (Bnew == 0) {
                // degenerate (dependent rows): rebuild the affected data
                for (std::size_t i = k - 1; i <= kmax; ++i) compute_row(i);
            } else {
                mu[k][k - 1] = m * B[k - 1] / Bnew;
                B[k] = B[k - 1] * B[k] / Bnew;
                B[k - 1] = Bnew;
                // star vectors for rows k-1, k change; recompute them cheaply
                compute_row(k - 1);
                compute_row(k);
                for (std::size_t i = k + 1; i <= kmax; ++i) {
                    Rational t = mu[i][k];
                    mu[i][k] = mu[i][k - 1] - m * t;
                    mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
                }
            }
            k = (k > 1) ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
}

// ---------------------------------------------------------------------------
// Exact path: all inputs rational.
// ---------------------------------------------------------------------------

namespace {

DependenceResult rational_dependence(const std::vector<AlgebraicNumber>& nums) {
    std::size_t r = nums.size();
    // collect primes across numerators and denominators
    std::vector<IntFactorization> num_fac(r), den_fac(r);
    std::vector<Int> primes;
    for (std::size_t i = 0; i < r; ++i) {
        Rational v = nums[i].rational_value();
        num_fac[i] = factor_integer(v.get_num());
        den_fac[i] = factor_integer(v.get_den());
        for (const auto& [p, e] : num_fac[i].primes) primes.push_back(p);
        for (const auto& [p, e] : den_fac[i].primes) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    ZMatrix m(primes.size(), r);
    std::vector<Int> sign_row(r, Int(0));
    for (std::size_t i = 0; i < r; ++i) {
        for (const auto& [p, e] : num_fac[i].primes) {
            std::size_t row = std::lower_bound(primes.begin(), primes.end(), p) - primes.begin();
            m.at(row, i) += static_cast<long>(e);
        }
        for (const auto& [p, e] : den_fac[i].primes) {
            std::size_t row = std::lower_bound(primes.begin(), primes.end(), p) - primes.begin();
            m.at(row, i) -= static_cast<long>(e);
        }
        if (num_fac[i].sign < 0) sign_row[i] = 1;
    }
    auto kernel = integer_kernel(m);
    if (kernel.empty()) return {DependenceKind::Independent, {}};

    // Impose the torsion condition: sum c_i * sign_i even.
    auto parity = [&](const std::vector<Int>& v) {
        Int s(0);
        for (std::size_t i = 0; i < r; ++i) s += v[i] * sign_row[i];
        return (s % 2 != 0);
    };
    std::vector<std::vector<Int>> sub;
    std::size_t odd_index = kernel.size();
    for (std::size_t i = 0; i < kernel.size(); ++i)
        if (parity(kernel[i])) {
            odd_index = i;
            break;
        }
    if (odd_index == kernel.size()) {
        sub = kernel;
    } else {
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            if (i == odd_index) continue;
            std::vector<Int> v = kernel[i];
            if (parity(v))
                for (std::size_t d = 0; d < r; ++d) v[d] += kernel[odd_index][d];
            sub.push_back(std::move(v));
        }
        std::vector<Int> twice = kernel[odd_index];
        for (auto& x : twice) x *= 2;
        sub.push_back(std::move(twice));
    }
    if (sub.empty()) return {DependenceKind::Independent, {}};
    lll_reduce(sub);
    // shortest reduced vector, sign-normalized
    std::size_t best = 0;
    Int best_norm(-1);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        Int norm(0);
        bool zero = true;
        for (const Int& x : sub[i]) {
            norm += x * x;
            if (x != 0) zero = false;
        }
        if (zero) continue;
        if (best_norm < 0 || norm < best_norm) {
            best_norm = norm;
            best = i;
        }
    }
    if (best_norm < 0) return {DependenceKind::Independent, {}};
    std::vector<Int> c = sub[best];
    for (const Int& x : c) {
        if (x != 0) {
            if (x < 0)
                for (Int& y : c) y = -y;
            break;
        }
    }
    return {DependenceKind::Dependent, {std::move(c)}};
}

// ---------------------------------------------------------------------------
// Numeric screening + symbolic verification for irrational inputs.
// ---------------------------------------------------------------------------

class MpfrValue {
public:
    explicit MpfrValue(unsigned prec) { mpfr_init2(v_, prec); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(MpfrValue&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// log|z| and arg z for the rational box center, at `prec` bits.
void log_abs_arg(const ComplexBox& box, unsigned prec, mpfr_ptr log_out, mpfr_ptr arg_out) {
    MpfrValue re(prec), im(prec), abs2(prec), tmp(prec);
    mpfr_set_q(re.get(), Rational(box.center_re()).get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(im.get(), Rational(box.center_im()).get_mpq_t(), MPFR_RNDN);
    mpfr_sqr(abs2.get(), re.get(), MPFR_RNDN);
    mpfr_sqr(tmp.get(), im.get(), MPFR_RNDN);
    mpfr_add(abs2.get(), abs2.get(), tmp.get(), MPFR_RNDN);
    mpfr_log(log_out, abs2.get(), MPFR_RNDN);
    mpfr_div_ui(log_out, log_out, 2, MPFR_RNDN);
    mpfr_atan2(arg_out, im.get(), re.get(), MPFR_RNDN);
}

bool verify_symbolically(const std::vector<AlgebraicNumber>& nums, const std::vector<Int>& c) {
    AlgebraicNumber acc = AlgebraicNumber::from_rational(Rational(1));
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (c[i] == 0) continue;
        if (!c[i].fits_slong_p()) return false;
        acc = alg_mul(acc, alg_pow(nums[i], c[i].get_si()));
    }
    return acc.is_rational() && acc.rational_value() == 1;
}

DependenceResult irrational_dependence(const std::vector<AlgebraicNumber>& nums, unsigned bound) {
    std::size_t r = nums.size();
    // Cheap shortcuts: a root of unity alone, or a repeated value.
    for (std::size_t i = 0; i < r; ++i) {
        if (auto n = is_root_of_unity(nums[i])) {
            std::vector<Int> c(r, Int(0));
            c[i] = static_cast<long>(*n);
            return {DependenceKind::Dependent, {std::move(c)}};
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            if (nums[i].minpoly() == nums[j].minpoly() && nums[i].equals(nums[j])) {
                std::vector<Int> c(r, Int(0));
                c[i] = 1;
                c[j] = -1;
                return {DependenceKind::Dependent, {std::move(c)}};
            }
        }

    bool retry_higher = false;
    for (unsigned prec = 192; prec <= 384; prec *= 2) {
        if (prec > 192 && !retry_higher) break;
        // refine boxes so the centers carry about `prec` valid bits
        Rational target(1);
        for (unsigned i = 0; i < prec; ++i) target /= 2;
        for (const auto& a : nums) a.refine(target);

        std::vector<std::vector<Int>> lattice;
        unsigned scale_bits = prec - prec / 8;
        std::vector<MpfrValue> logs, args;
        MpfrValue scaled(prec);
        for (std::size_t i = 0; i < r; ++i) {
            logs.emplace_back(prec);
            args.emplace_back(prec);
            log_abs_arg(nums[i].box(), prec, logs.back().get(), args.back().get());
            std::vector<Int> row(r + 2, Int(0));
            row[i] = 1;
            mpfr_mul_2ui(scaled.get(), logs.back().get(), scale_bits, MPFR_RNDN);
            mpfr_get_z(row[r].get_mpz_t(), scaled.get(), MPFR_RNDN);
            mpfr_mul_2ui(scaled.get(), args.back().get(), scale_bits, MPFR_RNDN);
            mpfr_get_z(row[r + 1].get_mpz_t(), scaled.get(), MPFR_RNDN);
            lattice.push_back(std::move(row));
        }
        {
            // 2*pi row closes the argument modulo full turns
            MpfrValue pi(prec);
            mpfr_const_pi(pi.get(), MPFR_RNDN);
            mpfr_mul_2ui(pi.get(), pi.get(), 1, MPFR_RNDN);
            mpfr_mul_2ui(pi.get(), pi.get(), scale_bits, MPFR_RNDN);
            std::vector<Int> row(r + 2, Int(0));
            mpfr_get_z(row[r + 1].get_mpz_t(), pi.get(), MPFR_RNDN);
            lattice.push_back(std::move(row));
        }
        lll_reduce(lattice);

        Int cmax(static_cast<long>(bound));
        Int err_cap = Int(1) << (scale_bits / 2);
        for (const auto& row : lattice) {
            bool in_bound = true, nonzero = false;
            for (std::size_t i = 0; i < r; ++i) {
                if (abs(row[i]) > cmax) in_bound = false;
                if (row[i] != 0) nonzero = true;
            }
            if (!in_bound || !nonzero) continue;
            if (abs(row[r]) > err_cap || abs(row[r + 1]) > err_cap) continue;
            std::vector<Int> c(row.begin(), row.begin() + r);
            // residuals must collapse to the working precision before any
            // symbolic effort is spent
            {
                MpfrValue slog(prec), sarg(prec), term(prec), tau(prec);
                mpfr_set_zero(slog.get(), 1);
                mpfr_set_zero(sarg.get(), 1);
                for (std::size_t i = 0; i < r; ++i) {
                    if (c[i] == 0) continue;
                    mpfr_mul_z(term.get(), logs[i].get(), c[i].get_mpz_t(), MPFR_RNDN);
                    mpfr_add(slog.get(), slog.get(), term.get(), MPFR_RNDN);
                    mpfr_mul_z(term.get(), args[i].get(), c[i].get_mpz_t(), MPFR_RNDN);
                    mpfr_add(sarg.get(), sarg.get(), term.get(), MPFR_RNDN);
                }
                mpfr_const_pi(tau.get(), MPFR_RNDN);
                mpfr_mul_2ui(tau.get(), tau.get(), 1, MPFR_RNDN);
                mpfr_fmod(sarg.get(), sarg.get(), tau.get(), MPFR_RNDN);
                mpfr_abs(sarg.get(), sarg.get(), MPFR_RNDN);
                // fold residual arguments near 2*pi back to zero
                mpfr_sub(term.get(), tau.get(), sarg.get(), MPFR_RNDN);
                mpfr_abs(term.get(), term.get(), MPFR_RNDN);
                if (mpfr_cmp(term.get(), sarg.get()) < 0) mpfr_set(sarg.get(), term.get(), MPFR_RNDN);
                MpfrValue tol(prec);
                mpfr_set_ui(tol.get(), 1, MPFR_RNDN);
                mpfr_div_2ui(tol.get(), tol.get(), prec / 3, MPFR_RNDN);
                mpfr_abs(slog.get(), slog.get(), MPFR_RNDN);
                if (mpfr_cmp(slog.get(), tol.get()) > 0 || mpfr_cmp(sarg.get(), tol.get()) > 0)
                    continue;
            }
            retry_higher = true;  // a plausible relation at this precision
            if (verify_symbolically(nums, c)) {
                for (const Int& x : c) {
                    if (x != 0) {
                        if (x < 0)
                            for (Int& y : c) y = -y;
                        break;
                    }
                }
                return {DependenceKind::Dependent, {std::move(c)}};
            }
        }
    }
    return {DependenceKind::IndependentUpToBound, {}};
}

}  // namespace

DependenceResult multiplicative_dependence(const std::vector<AlgebraicNumber>& nums,
                                           unsigned bound) {
    for (const auto& a : nums)
        if (a.is_zero()) throw domain_error("multiplicative_dependence: zero input");
    if (nums.empty()) return {DependenceKind::Independent, {}};
    bool all_rational = true;
    for (const auto& a : nums) all_rational = all_rational && a.is_rational();
    if (all_rational) return rational_dependence(nums);
    return irrational_dependence(nums, bound);
}

}  // namespace odyn
