#include "odyn/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace odyn {

// ---------------------------------------------------------------------------
// NumberField and FieldElem
// ---------------------------------------------------------------------------

NumberField::NumberField(UnivariatePoly minpoly) : minpoly_(std::move(minpoly)) {
    if (minpoly_.degree() < 2 || !minpoly_.is_monic())
        throw domain_error("NumberField: generator needs a monic minimal polynomial of degree >= 2");
}

FieldElem::FieldElem(const Rational& r) : field_(nullptr), rep_(UnivariatePoly::constant(r)) {}

FieldElem FieldElem::generator(const NumberFieldPtr& field) {
    FieldElem e;
    e.field_ = field;
    e.rep_ = UnivariatePoly::x();
    return e;
}

FieldElem FieldElem::from_poly(const NumberFieldPtr& field, const UnivariatePoly& rep) {
    FieldElem e;
    e.field_ = field;
    e.rep_ = field ? rep % field->minpoly() : rep;
    if (!field && e.rep_.degree() > 0)
        throw domain_error("FieldElem: nonconstant representative without a field");
    return e;
}

bool FieldElem::is_zero() const { return rep_.is_zero(); }

bool FieldElem::is_rational() const { return rep_.degree() <= 0; }

Rational FieldElem::rational_value() const {
    if (!is_rational()) throw domain_error("rational_value of a proper field element");
    return rep_.coeff(0);
}

void FieldElem::unify(FieldElem& a, FieldElem& b) {
    if (a.field_ == b.field_) return;
    if (a.field_ && b.field_) {
        if (a.field_->minpoly() == b.field_->minpoly()) {
            b.field_ = a.field_;  // same field, different handle
            return;
        }
        throw domain_error("field mismatch between coefficients");
    }
    if (!a.field_) a.field_ = b.field_;
    else b.field_ = a.field_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    a.rep_ = a.rep_ + b.rep_;
    return a;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    a.rep_ = a.rep_ - b.rep_;
    return a;
}

FieldElem FieldElem::operator-() const {
    FieldElem a = *this;
    a.rep_ = -a.rep_;
    return a;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    FieldElem a = *this, b = o;
    unify(a, b);
    a.rep_ = a.rep_ * b.rep_;
    if (a.field_) a.rep_ = a.rep_ % a.field_->minpoly();
    return a;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw domain_error("FieldElem: inverse of zero");
    if (is_rational()) return FieldElem(Rational(1) / rep_.coeff(0));
    // extended Euclid: s*rep + t*minpoly = 1
    UnivariatePoly r0 = field_->minpoly(), r1 = rep_;
    UnivariatePoly t0, t1 = UnivariatePoly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        UnivariatePoly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0)
        throw domain_error("FieldElem: minimal polynomial not irreducible over element");
    FieldElem out;
    out.field_ = field_;
    out.rep_ = (t0 * (Rational(1) / r0.coeff(0))) % field_->minpoly();
    return out;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (field_ && o.field_ && field_ != o.field_ && field_->minpoly() != o.field_->minpoly())
        return false;
    return rep_ == o.rep_;
}

std::string FieldElem::to_string(const std::string& gen_name) const {
    if (is_rational()) return rational_to_string(rep_.coeff(0));
    return rep_.to_string(gen_name);
}

// ---------------------------------------------------------------------------
// Monomials and MultiPoly
// ---------------------------------------------------------------------------

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

bool monomial_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.e > b.e;  // lexicographic with x1 heaviest
}

MultiPoly MultiPoly::constant(std::size_t nvars, const FieldElem& v) {
    MultiPoly p(nvars);
    p.add_term(Monomial{std::vector<unsigned>(nvars, 0)}, v);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index, unsigned power) {
    if (index >= nvars) throw domain_error("MultiPoly::variable index out of range");
    Monomial m{std::vector<unsigned>(nvars, 0)};
    m.e[index] = power;
    MultiPoly p(nvars);
    p.add_term(m, FieldElem(Rational(1)));
    return p;
}

MultiPoly MultiPoly::monomial(std::size_t nvars, const Monomial& m, const FieldElem& coeff) {
    if (m.e.size() != nvars) throw domain_error("MultiPoly::monomial arity mismatch");
    MultiPoly p(nvars);
    p.add_term(m, coeff);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0;
}

FieldElem MultiPoly::constant_value() const {
    if (!is_constant()) throw domain_error("constant_value of nonconstant polynomial");
    return terms_.empty() ? FieldElem() : terms_.begin()->second;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

void MultiPoly::add_term(const Monomial& m, const FieldElem& coeff) {
    if (m.e.size() != nvars_) throw domain_error("MultiPoly term arity mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw domain_error("MultiPoly arity mismatch");
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw domain_error("MultiPoly arity mismatch");
    MultiPoly r(nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m{std::vector<unsigned>(nvars_)};
            for (std::size_t i = 0; i < nvars_; ++i) m.e[i] = ma.e[i] + mb.e[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::operator*(const FieldElem& s) const {
    MultiPoly r(nvars_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly acc = MultiPoly::constant(nvars_, FieldElem(Rational(1)));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    }
    return true;
}

FieldElem MultiPoly::eval(const std::vector<FieldElem>& point) const {
    if (point.size() != nvars_) throw domain_error("MultiPoly::eval arity mismatch");
    FieldElem acc;
    for (const auto& [m, c] : terms_) {
        FieldElem t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned p = 0; p < m.e[i]; ++p) t = t * point[i];
        acc = acc + t;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.to_string();
        bool negative = !cs.empty() && cs[0] == '-' && c.is_rational();
        if (first) {
            if (negative) {
                os << "-";
                cs = cs.substr(1);
            }
            first = false;
        } else {
            os << (negative ? " - " : " + ");
            if (negative) cs = cs.substr(1);
        }
        bool has_vars = m.total_degree() > 0;
        bool unit = c.is_rational() && (cs == "1");
        if (!c.is_rational()) {
            os << "(" << c.to_string() << ")";
            if (has_vars) os << "*";
        } else if (!unit || !has_vars) {
            os << cs;
            if (has_vars) os << "*";
        }
        bool firstv = true;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << var_names[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// MultiRationalFunction
// ---------------------------------------------------------------------------

MultiRationalFunction::MultiRationalFunction(std::size_t nvars)
    : num_(nvars), den_(MultiPoly::constant(nvars, FieldElem(Rational(1)))) {}

MultiRationalFunction::MultiRationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars()) throw domain_error("rational function arity mismatch");
    if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    normalize();
}

MultiRationalFunction MultiRationalFunction::from_poly(MultiPoly p) {
    std::size_t n = p.nvars();
    return MultiRationalFunction(std::move(p), MultiPoly::constant(n, FieldElem(Rational(1))));
}

MultiRationalFunction MultiRationalFunction::laurent(std::size_t nvars,
                                                     const std::vector<Int>& exponents,
                                                     const FieldElem& coeff) {
    if (exponents.size() != nvars) throw domain_error("laurent arity mismatch");
    Monomial pos{std::vector<unsigned>(nvars, 0)}, neg{std::vector<unsigned>(nvars, 0)};
    for (std::size_t i = 0; i < nvars; ++i) {
        if (exponents[i] >= 0)
            pos.e[i] = static_cast<unsigned>(exponents[i].get_ui());
        else
            neg.e[i] = static_cast<unsigned>(Int(-exponents[i]).get_ui());
    }
    return MultiRationalFunction(MultiPoly::monomial(nvars, pos, coeff),
                                 MultiPoly::monomial(nvars, neg, FieldElem(Rational(1))));
}

MultiRationalFunction MultiRationalFunction::variable(std::size_t nvars, std::size_t index) {
    return from_poly(MultiPoly::variable(nvars, index));
}

MultiRationalFunction MultiRationalFunction::constant(std::size_t nvars, const FieldElem& v) {
    return from_poly(MultiPoly::constant(nvars, v));
}

bool MultiRationalFunction::is_constant() const {
    if (num_.is_zero()) return true;
    // constant iff num = c * den for a field constant c
    if (num_.term_count() != den_.term_count()) return false;
    FieldElem ratio = num_.terms().begin()->second * den_.terms().begin()->second.inverse();
    return num_ == den_ * ratio;
}

void MultiRationalFunction::normalize() {
    std::size_t n = num_.nvars();
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(n, FieldElem(Rational(1)));
        return;
    }
    // cancel the common monomial factor
    std::vector<unsigned> mins(n, 0);
    bool first = true;
    for (const auto* poly : {&num_, &den_}) {
        for (const auto& [m, c] : poly->terms()) {
            for (std::size_t i = 0; i < n; ++i)
                mins[i] = first ? m.e[i] : std::min(mins[i], m.e[i]);
            first = false;
        }
    }
    bool any = false;
    for (unsigned v : mins) any = any || v > 0;
    if (any) {
        auto strip = [&](const MultiPoly& p) {
            MultiPoly out(n);
            for (const auto& [m, c] : p.terms()) {
                Monomial r = m;
                for (std::size_t i = 0; i < n; ++i) r.e[i] -= mins[i];
                out.add_term(r, c);
            }
            return out;
        };
        num_ = strip(num_);
        den_ = strip(den_);
    }
    // scale so the leading denominator coefficient is 1
    FieldElem lead = den_.terms().begin()->second;
    if (!(lead.is_rational() && lead.rational_value() == 1)) {
        FieldElem inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

MultiRationalFunction MultiRationalFunction::operator+(const MultiRationalFunction& o) const {
    return MultiRationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

MultiRationalFunction MultiRationalFunction::operator-(const MultiRationalFunction& o) const {
    return MultiRationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

MultiRationalFunction MultiRationalFunction::operator*(const MultiRationalFunction& o) const {
    return MultiRationalFunction(num_ * o.num_, den_ * o.den_);
}

MultiRationalFunction MultiRationalFunction::operator/(const MultiRationalFunction& o) const {
    if (o.num_.is_zero()) throw domain_error("division by the zero rational function");
    return MultiRationalFunction(num_ * o.den_, den_ * o.num_);
}

MultiRationalFunction MultiRationalFunction::pow(long e) const {
    if (e == 0) return constant(nvars(), FieldElem(Rational(1)));
    if (e < 0) {
        if (num_.is_zero()) throw domain_error("negative power of zero");
        return MultiRationalFunction(den_.pow(static_cast<unsigned>(-e)),
                                     num_.pow(static_cast<unsigned>(-e)));
    }
    return MultiRationalFunction(num_.pow(static_cast<unsigned>(e)),
                                 den_.pow(static_cast<unsigned>(e)));
}

FieldElem MultiRationalFunction::eval(const std::vector<FieldElem>& point) const {
    FieldElem d = den_.eval(point);
    if (d.is_zero()) throw domain_error("evaluation at a pole");
    return num_.eval(point) * d.inverse();
}

std::string MultiRationalFunction::to_string(const std::vector<std::string>& var_names) const {
    if (den_.is_constant() && den_.constant_value() == FieldElem(Rational(1)))
        return num_.to_string(var_names);
    std::string ns = num_.to_string(var_names);
    std::string ds = den_.to_string(var_names);
    if (num_.term_count() > 1) ns = "(" + ns + ")";
    if (den_.term_count() > 1 || ds.find('*') != std::string::npos) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

bool rational_functions_equal(const MultiRationalFunction& f, const MultiRationalFunction& g) {
    if (f.nvars() != g.nvars()) throw domain_error("rational_functions_equal: arity mismatch");
    return (f.num() * g.den()) == (g.num() * f.den());
}

MultiRationalFunction substitute_variables(const MultiRationalFunction& f,
                                           const std::vector<MultiRationalFunction>& images) {
    std::size_t n = f.nvars();
    if (images.size() != n) throw domain_error("substitute_variables: arity mismatch");
    std::size_t target = images.empty() ? n : images[0].nvars();
    auto substitute = [&](const MultiPoly& p) {
        MultiRationalFunction acc = MultiRationalFunction::constant(target, FieldElem(Rational(0)));
        for (const auto& [m, c] : p.terms()) {
            MultiRationalFunction term = MultiRationalFunction::constant(target, c);
            for (std::size_t i = 0; i < n; ++i)
                if (m.e[i] > 0) term = term * images[i].pow(static_cast<long>(m.e[i]));
            acc = acc + term;
        }
        return acc;
    };
    MultiRationalFunction top = substitute(f.num());
    MultiRationalFunction bottom = substitute(f.den());
    return top / bottom;
}

std::vector<std::string> variable_names(std::size_t k, std::size_t l) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= l; ++i) names.push_back("y" + std::to_string(i));
    return names;
}

}  // namespace odyn
