#include "odyn/matrix.hpp"

#include <algorithm>

namespace odyn {

namespace {

void check_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    if (r1 != r2 || c1 != c2) throw domain_error("matrix shape mismatch");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> to_rows(const QMatrix& a) {
    std::vector<std::vector<Rational>> m(a.rows(), std::vector<Rational>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j);
    return m;
}

// Basis of the rational null space, deterministic (free columns ascending).
std::vector<std::vector<Rational>> null_space(const QMatrix& a) {
    auto m = to_rows(a);
    auto pivots = rref(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

// ---------------------------------------------------------------------------
// QMatrix
// ---------------------------------------------------------------------------

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    check_same_shape(rows_, cols_, o.rows_, o.cols_);
    QMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    check_same_shape(rows_, cols_, o.rows_, o.cols_);
    QMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

QMatrix QMatrix::operator*(const Rational& s) const {
    QMatrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw domain_error("matrix-vector shape mismatch");
    std::vector<Rational> r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Rational QMatrix::det() const {
    if (!square()) throw domain_error("determinant of non-square matrix");
    auto m = to_rows(*this);
    Rational d(1);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t sel = c;
        while (sel < rows_ && m[sel][c] == 0) ++sel;
        if (sel == rows_) return Rational(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            d = -d;
        }
        d *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] * inv;
            for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

std::size_t QMatrix::rank() const {
    auto m = to_rows(*this);
    return rref(m).size();
}

QMatrix QMatrix::inverse() const {
    if (!square()) throw domain_error("inverse of non-square matrix");
    std::size_t n = rows_;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);
        m[i][n + i] = 1;
    }
    auto pivots = rref(m);
    if (pivots.size() != n || pivots[n - 1] != n - 1)
        throw domain_error("inverse of singular matrix");
    QMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = m[i][n + j];
    return r;
}

// ---------------------------------------------------------------------------
// ZMatrix
// ---------------------------------------------------------------------------

ZMatrix ZMatrix::identity(std::size_t n) {
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
    if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
    ZMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

ZMatrix ZMatrix::operator-(const ZMatrix& o) const {
    check_same_shape(rows_, cols_, o.rows_, o.cols_);
    ZMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

ZMatrix ZMatrix::transpose() const {
    ZMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Int> ZMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw domain_error("matrix-vector shape mismatch");
    std::vector<Int> r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

QMatrix ZMatrix::to_rational() const {
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = Rational(at(i, j));
    return r;
}

Int ZMatrix::det() const {
    Rational d = to_rational().det();
    return d.get_num();
}

// ---------------------------------------------------------------------------
// Characteristic polynomial (Faddeev-LeVerrier, exact over Q).
// ---------------------------------------------------------------------------

UnivariatePoly char_poly(const QMatrix& a) {
    if (!a.square()) throw domain_error("char_poly of non-square matrix");
    std::size_t n = a.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
        Rational ck = -tr / Rational(static_cast<long>(k));
        c[n - k] = ck;
        if (k < n) {
            QMatrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += ck;
            m = a * shifted;
        }
    }
    return UnivariatePoly(std::move(c));
}

UnivariatePoly char_poly(const ZMatrix& a) { return char_poly(a.to_rational()); }

QMatrix mat_pow(const QMatrix& m, unsigned long n) {
    if (!m.square()) throw domain_error("mat_pow of non-square matrix");
    QMatrix result = QMatrix::identity(m.rows()), base = m;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

ZMatrix mat_pow(const ZMatrix& m, unsigned long n) {
    if (!m.square()) throw domain_error("mat_pow of non-square matrix");
    ZMatrix result = ZMatrix::identity(m.rows()), base = m;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Integer kernel via unimodular column reduction of [M; I].
// ---------------------------------------------------------------------------

std::vector<std::vector<Int>> integer_kernel(const ZMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> w(rows + cols, std::vector<Int>(cols, Int(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w[i][j] = m.at(i, j);
    for (std::size_t j = 0; j < cols; ++j) w[rows + j][j] = 1;

    std::size_t fixed = 0;  // pivot columns already consumed
    for (std::size_t r = 0; r < rows && fixed < cols; ++r) {
        while (true) {
            std::size_t best = cols;
            for (std::size_t j = fixed; j < cols; ++j) {
                if (w[r][j] == 0) continue;
                if (best == cols || abs(w[r][j]) < abs(w[r][best])) best = j;
            }
            if (best == cols) break;  // row r zero on active columns
            bool others = false;
            for (std::size_t j = fixed; j < cols; ++j) {
                if (j == best || w[r][j] == 0) continue;
                others = true;
                Int q = w[r][j] / w[r][best];
                if (q != 0)
                    for (std::size_t i = 0; i < rows + cols; ++i) w[i][j] -= q * w[i][best];
            }
            if (!others) {
                for (std::size_t i = 0; i < rows + cols; ++i) std::swap(w[i][best], w[i][fixed]);
                ++fixed;
                break;
            }
        }
    }
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = fixed; j < cols; ++j) {
        std::vector<Int> v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = w[rows + i][j];
        bool nonzero = false;
        for (const Int& x : v)
            if (x != 0) nonzero = true;
        if (!nonzero) continue;
        for (const Int& x : v) {
            if (x != 0) {
                if (x < 0)
                    for (Int& y : v) y = -y;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

unsigned long fixed_character_default_period(std::size_t dim) {
    Int acc(1);
    for (unsigned long n = 1; n <= 2 * dim * dim + 4; ++n)
        if (euler_phi(n) <= dim) acc = lcm(acc, Int(n));
    return acc.get_ui();
}

std::optional<std::pair<std::vector<Int>, unsigned long>> fixed_character(
    const ZMatrix& a, unsigned long max_period) {
    if (!a.square()) throw domain_error("fixed_character: non-square matrix");
    if (a.det() == 0) throw dominance_error("fixed_character: singular matrix");
    if (max_period == 0) max_period = fixed_character_default_period(a.rows());
    ZMatrix at = a.transpose();
    for (unsigned long m = 1; m <= max_period; ++m) {
        ZMatrix diff = mat_pow(at, m) - ZMatrix::identity(a.rows());
        auto kernel = integer_kernel(diff);
        if (!kernel.empty()) return std::make_pair(kernel.front(), m);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Jordan structure from rank sequences.
// ---------------------------------------------------------------------------

namespace {

QMatrix eval_poly_at_matrix(const UnivariatePoly& p, const QMatrix& a) {
    std::size_t n = a.rows();
    QMatrix acc(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * a;
        for (std::size_t d = 0; d < n; ++d) acc.at(d, d) += p.coeff(i);
    }
    return acc;
}

}  // namespace

std::size_t JordanStructure::total_blocks_of_size(unsigned size) const {
    std::size_t count = 0;
    for (const auto& f : factors)
        for (unsigned s : f.block_sizes)
            if (s == size) count += static_cast<std::size_t>(f.minpoly.degree());
    return count;
}

unsigned JordanStructure::max_block_size() const {
    unsigned m = 0;
    for (const auto& f : factors)
        for (unsigned s : f.block_sizes) m = std::max(m, s);
    return m;
}

JordanStructure jordan_structure(const QMatrix& a) {
    if (!a.square()) throw domain_error("jordan_structure of non-square matrix");
    if (a.det() == 0) throw dominance_error("jordan_structure: singular matrix (not dominant)");
    std::size_t n = a.rows();
    JordanStructure out;
    out.dimension = n;
    UnivariatePoly cp = char_poly(a);
    Factorization fac = factor_over_rationals(cp);
    for (const auto& [factor, mult] : fac.factors) {
        JordanFactor jf;
        jf.minpoly = factor;
        unsigned d = static_cast<unsigned>(factor.degree());
        QMatrix b = eval_poly_at_matrix(factor, a);
        std::vector<std::size_t> ranks = {n};
        QMatrix power = b;
        for (unsigned j = 1; j <= mult; ++j) {
            ranks.push_back(power.rank());
            if (ranks.back() == ranks[ranks.size() - 2]) break;
            power = power * b;
        }
        std::vector<std::size_t> at_least;  // [j-1] = number of blocks of size >= j
        for (std::size_t j = 1; j < ranks.size(); ++j) {
            std::size_t diff = ranks[j - 1] - ranks[j];
            if (diff % d != 0)
                throw domain_error("jordan_structure: rank drop not divisible by factor degree");
            at_least.push_back(diff / d);
        }
        for (std::size_t j = 0; j < at_least.size(); ++j) {
            std::size_t exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
            for (std::size_t t = 0; t < exact; ++t)
                jf.block_sizes.push_back(static_cast<unsigned>(j + 1));
        }
        std::sort(jf.block_sizes.rbegin(), jf.block_sizes.rend());
        jf.roots = isolate_roots(factor);
        out.factors.push_back(std::move(jf));
    }
    std::size_t total = 0;
    for (const auto& f : out.factors) {
        std::size_t s = 0;
        for (unsigned b : f.block_sizes) s += b;
        total += s * static_cast<std::size_t>(f.minpoly.degree());
    }
    if (total != n) throw domain_error("jordan_structure: block sizes inconsistent with dimension");
    return out;
}

// ---------------------------------------------------------------------------
// Exact rational Jordan basis (all eigenvalues rational).
// ---------------------------------------------------------------------------

namespace {

// Incremental span with exact rational elimination.
class Span {
public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    // Returns true if v was independent of the span and got added.
    bool add(const std::vector<Rational>& v) {
        std::vector<Rational> r = v;
        reduce(r);
        std::size_t lead = dim_;
        for (std::size_t i = 0; i < dim_; ++i)
            if (r[i] != 0) {
                lead = i;
                break;
            }
        if (lead == dim_) return false;
        Rational inv = Rational(1) / r[lead];
        for (auto& x : r) x *= inv;
        rows_.push_back({lead, std::move(r)});
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
    }

private:
    void reduce(std::vector<Rational>& r) const {
        for (const auto& [lead, row] : rows_) {
            if (r[lead] == 0) continue;
            Rational f = r[lead];
            for (std::size_t i = 0; i < dim_; ++i) r[i] -= f * row[i];
        }
    }

    std::size_t dim_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

}  // namespace

std::optional<RationalJordan> rational_jordan(const QMatrix& a) {
    JordanStructure js = jordan_structure(a);
    for (const auto& f : js.factors)
        if (f.minpoly.degree() != 1) return std::nullopt;
    std::size_t n = a.rows();
    RationalJordan out;
    out.basis = QMatrix(n, n);
    out.jordan = QMatrix(n, n);
    std::size_t col = 0;

    for (const auto& f : js.factors) {
        Rational lambda = -f.minpoly.coeff(0);
        QMatrix nmat = a;
        for (std::size_t i = 0; i < n; ++i) nmat.at(i, i) -= lambda;
        unsigned smax = f.block_sizes.empty() ? 0 : f.block_sizes.front();
        std::vector<std::vector<std::vector<Rational>>> kernels(smax + 1);
        QMatrix power = QMatrix::identity(n);
        for (unsigned j = 1; j <= smax; ++j) {
            power = power * nmat;
            kernels[j] = null_space(power);
        }
        // Chain tops at level j extend K_{j-1} + N * (tops of longer chains).
        std::vector<std::vector<std::vector<Rational>>> chains;  // [v, Nv, ...]
        std::vector<std::vector<Rational>> tops;
        for (unsigned j = smax; j >= 1; --j) {
            Span span(n);
            if (j >= 2)
                for (const auto& v : kernels[j - 1]) span.add(v);
            std::vector<std::vector<Rational>> pushed;
            for (const auto& t : tops) {
                auto nt = nmat.apply(t);
                pushed.push_back(nt);
                span.add(nt);
            }
            std::vector<std::vector<Rational>> new_tops;
            for (const auto& cand : kernels[j]) {
                if (span.add(cand)) {
                    new_tops.push_back(cand);
                    std::vector<std::vector<Rational>> chain = {cand};
                    for (unsigned t = 1; t < j; ++t) chain.push_back(nmat.apply(chain.back()));
                    chains.push_back(std::move(chain));
                }
            }
            tops = std::move(pushed);
            tops.insert(tops.end(), new_tops.begin(), new_tops.end());
            if (j == 1) break;
        }
        std::sort(chains.begin(), chains.end(),
                  [](const auto& x, const auto& y) { return x.size() > y.size(); });
        for (const auto& chain : chains) {
            unsigned len = static_cast<unsigned>(chain.size());
            for (unsigned t = 0; t < len; ++t) {
                const auto& v = chain[len - 1 - t];  // eigenvector first
                for (std::size_t i = 0; i < n; ++i) out.basis.at(i, col + t) = v[i];
            }
            for (unsigned t = 0; t < len; ++t) {
                out.jordan.at(col + t, col + t) = lambda;
                if (t + 1 < len) out.jordan.at(col + t, col + t + 1) = 1;
            }
            out.eigenvalue_per_block.push_back(lambda);
            out.size_per_block.push_back(len);
            col += len;
        }
    }
    if (col != n) throw domain_error("rational_jordan: incomplete basis");
    if (!(a * out.basis == out.basis * out.jordan))
        throw domain_error("rational_jordan: verification failed");
    return out;
}

}  // namespace odyn
