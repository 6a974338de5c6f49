#include "odyn/classifier.hpp"

#include <algorithm>

namespace odyn {

namespace {

struct BlockInfo {
    std::size_t factor_idx;
    std::size_t root_idx;
    unsigned size;
    std::size_t offset;  // first Jordan coordinate of the block
};

// Jordan coordinate layout: factors in sorted order, block sizes descending,
// conjugate roots in isolation order. Matches rational_jordan for rational
// spectra.
std::vector<BlockInfo> layout_blocks(const JordanStructure& js) {
    std::vector<BlockInfo> out;
    std::size_t off = 0;
    for (std::size_t fi = 0; fi < js.factors.size(); ++fi) {
        const auto& f = js.factors[fi];
        for (unsigned size : f.block_sizes) {
            for (std::size_t ri = 0; ri < f.roots.size(); ++ri) {
                out.push_back({fi, ri, size, off});
                off += size;
            }
        }
    }
    return out;
}

// Canonical presentation: the numerator carries the higher degree (the
// inverse of an invariant function is an equally valid witness) and its
// leading coefficient is positive (so is the negative).
MultiRationalFunction orient_witness(const MultiRationalFunction& f) {
    unsigned dn = f.num().total_degree(), dd = f.den().total_degree();
    bool flip = false;
    if (dn != dd) {
        flip = dn < dd;
    } else if (!f.num().is_zero() && !f.den().is_zero()) {
        flip = monomial_greater(f.den().terms().begin()->first, f.num().terms().begin()->first);
    }
    MultiRationalFunction out = flip ? MultiRationalFunction(f.den(), f.num()) : f;
    if (!out.num().is_zero()) {
        const FieldElem& lead = out.num().terms().begin()->second;
        if (lead.is_rational() && lead.rational_value() < 0)
            out = MultiRationalFunction(-out.num(), out.den());
    }
    return out;
}

// Identity images for all variables.
std::vector<MultiRationalFunction> identity_images(std::size_t nvars) {
    std::vector<MultiRationalFunction> images;
    images.reserve(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        images.push_back(MultiRationalFunction::variable(nvars, i));
    return images;
}

// Jordan action of one block: x_t -> lambda x_t + x_{t+1}, last -> lambda x_last.
void set_block_images(std::vector<MultiRationalFunction>& images, const FieldElem& lambda,
                      std::size_t offset, unsigned size, std::size_t nvars) {
    for (unsigned t = 0; t < size; ++t) {
        MultiRationalFunction img =
            MultiRationalFunction::variable(nvars, offset + t) *
            MultiRationalFunction::constant(nvars, lambda);
        if (t + 1 < size) img = img + MultiRationalFunction::variable(nvars, offset + t + 1);
        images[offset + t] = img;
    }
}

// Pull a k-variable function back to the first k coordinates of a k+l space.
MultiRationalFunction pad_vars(const MultiRationalFunction& f, std::size_t new_nvars,
                               std::size_t shift) {
    auto pad_poly = [&](const MultiPoly& p) {
        MultiPoly out(new_nvars);
        for (const auto& [m, c] : p.terms()) {
            Monomial nm{std::vector<unsigned>(new_nvars, 0)};
            for (std::size_t i = 0; i < m.e.size(); ++i) nm.e[shift + i] = m.e[i];
            out.add_term(nm, c);
        }
        return out;
    };
    return MultiRationalFunction(pad_poly(f.num()), pad_poly(f.den()));
}

// Mapped-back fibration f(P^{-1} x) when the spectrum is rational.
MultiRationalFunction map_back(const MultiRationalFunction& f_jordan, const QMatrix& basis) {
    QMatrix pinv = basis.inverse();
    std::size_t k = pinv.rows();
    std::vector<MultiRationalFunction> images;
    images.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        MultiPoly lin(k);
        for (std::size_t j = 0; j < k; ++j) {
            if (pinv.at(i, j) == 0) continue;
            lin = lin + MultiPoly::variable(k, j) * FieldElem(pinv.at(i, j));
        }
        images.push_back(MultiRationalFunction::from_poly(lin));
    }
    return substitute_variables(f_jordan, images);
}

FieldElem root_as_field_elem(const JordanFactor& factor, std::size_t root_idx,
                             const NumberFieldPtr& field) {
    if (factor.minpoly.degree() == 1) return FieldElem(-factor.minpoly.coeff(0));
    if (!field) throw domain_error("irrational eigenvalue without a field");
    if (factor.minpoly.degree() == 2 && root_idx == 1) {
        // conjugate of the generator: -p - a for x^2 + p x + q
        return FieldElem(-factor.minpoly.coeff(1)) - FieldElem::generator(field);
    }
    if (root_idx != 0)
        throw domain_error(
            "case 2 over conjugate roots of a factor of degree >= 3 is outside the supported "
            "single-extension coefficient fields");
    return FieldElem::generator(field);
}

}  // namespace

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Case1: return "case1";
        case Provenance::Case2: return "case2";
        case Provenance::Case3: return "case3";
        case Provenance::DiagonalMonomial: return "diagonal-monomial";
        case Provenance::TorusCharacterOrbit: return "torus-character-orbit";
        case Provenance::DenseAdditive: return "dense-additive";
        case Provenance::DenseTorus: return "dense-torus";
        case Provenance::DenseMixed: return "dense-mixed";
    }
    return "unknown";
}

MultiRationalFunction build_invariant_case3(const FieldElem& lambda, unsigned m,
                                            std::size_t offset, std::size_t nvars) {
    if (m < 3) throw domain_error("build_invariant_case3 requires a block of size >= 3");
    if (lambda.is_zero()) throw domain_error("build_invariant_case3: zero eigenvalue");
    if (offset + m > nvars) throw domain_error("build_invariant_case3: block exceeds space");
    auto X = [&](unsigned block_index_1based) {
        return MultiRationalFunction::variable(nvars, offset + block_index_1based - 1);
    };
    auto c = [&](const FieldElem& v) { return MultiRationalFunction::constant(nvars, v); };
    return c(FieldElem(Rational(2))) * X(m - 2) / X(m) - X(m - 1).pow(2) / X(m).pow(2) +
           X(m - 1) / (c(lambda) * X(m));
}

MultiRationalFunction build_invariant_case2(const FieldElem& lambda1, std::size_t offset1,
                                            const FieldElem& lambda2, std::size_t offset2,
                                            std::size_t nvars) {
    if (lambda1.is_zero() || lambda2.is_zero())
        throw domain_error("build_invariant_case2: zero eigenvalue");
    auto V = [&](std::size_t i) { return MultiRationalFunction::variable(nvars, i); };
    auto c = [&](const FieldElem& v) { return MultiRationalFunction::constant(nvars, v); };
    return V(offset1) / (c(lambda2) * V(offset1 + 1)) - V(offset2) / (c(lambda1) * V(offset2 + 1));
}

// ---------------------------------------------------------------------------
// classify_additive
// ---------------------------------------------------------------------------

Verdict classify_additive(const QMatrix& a1, unsigned bound) {
    JordanStructure js = jordan_structure(a1);  // rejects singular input
    std::size_t k = js.dimension;
    std::vector<BlockInfo> blocks = layout_blocks(js);
    bool rational_spectrum = true;
    for (const auto& f : js.factors) rational_spectrum &= f.minpoly.degree() == 1;

    Verdict v;
    v.k = k;
    v.l = 0;

    auto finalize_function = [&](Provenance prov, const MultiRationalFunction& f_jordan,
                                 const NumberFieldPtr& field,
                                 const std::vector<std::pair<std::size_t, FieldElem>>& model_blocks) {
        v.kind = Verdict::Kind::Fibration;
        v.provenance = prov;
        if (rational_spectrum) {
            auto rj = rational_jordan(a1);
            v.coordinates = CoordinateSystem::Original;
            v.fibration = orient_witness(map_back(f_jordan, rj->basis));
        } else {
            v.coordinates = CoordinateSystem::Jordan;
            v.fibration = orient_witness(f_jordan);
            if (field) v.field_minpoly = field->minpoly();
            auto images = identity_images(k);
            for (const auto& [block_index, lambda] : model_blocks)
                set_block_images(images, lambda, blocks[block_index].offset,
                                 blocks[block_index].size, k);
            v.jordan_images = std::move(images);
        }
    };

    unsigned maxsize = js.max_block_size();
    std::size_t two_count = 0;
    for (const auto& b : blocks)
        if (b.size == 2) ++two_count;

    if (maxsize >= 3) {
        // Case 3 on the first big block.
        std::size_t bi = 0;
        while (blocks[bi].size < 3) ++bi;
        const BlockInfo& b = blocks[bi];
        const JordanFactor& factor = js.factors[b.factor_idx];
        NumberFieldPtr field;
        FieldElem lambda;
        if (factor.minpoly.degree() == 1) {
            lambda = FieldElem(-factor.minpoly.coeff(0));
        } else {
            field = std::make_shared<const NumberField>(factor.minpoly);
            lambda = root_as_field_elem(factor, 0, field);
        }
        MultiRationalFunction f = build_invariant_case3(lambda, b.size, b.offset, k);
        finalize_function(Provenance::Case3, f, field, {{bi, lambda}});
        return v;
    }

    if (two_count >= 2) {
        // Case 2: choose a pair of 2-blocks representable in one field.
        std::vector<std::size_t> twos;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].size == 2) twos.push_back(i);
        auto score = [&](std::size_t i, std::size_t j) {
            const BlockInfo &x = blocks[i], &y = blocks[j];
            unsigned dx = js.factors[x.factor_idx].minpoly.degree();
            unsigned dy = js.factors[y.factor_idx].minpoly.degree();
            if (dx == 1 && dy == 1) return 0;
            if (x.factor_idx == y.factor_idx && x.root_idx == y.root_idx) return 1;
            if (x.factor_idx == y.factor_idx && dx == 2) return 2;
            if (dx == 1 || dy == 1) return 3;
            return 4;  // unsupported tower
        };
        std::size_t best_i = 0, best_j = 1;
        int best = 5;
        for (std::size_t a = 0; a < twos.size(); ++a)
            for (std::size_t b = a + 1; b < twos.size(); ++b) {
                int s = score(twos[a], twos[b]);
                if (s < best) {
                    best = s;
                    best_i = twos[a];
                    best_j = twos[b];
                }
            }
        if (best >= 4)
            throw domain_error(
                "case 2 pair needs conjugate eigenvalues beyond a simple extension; not supported");
        const BlockInfo &b1 = blocks[best_i], &b2 = blocks[best_j];
        const JordanFactor &f1 = js.factors[b1.factor_idx], &f2 = js.factors[b2.factor_idx];
        NumberFieldPtr field;
        if (f1.minpoly.degree() > 1)
            field = std::make_shared<const NumberField>(f1.minpoly);
        else if (f2.minpoly.degree() > 1)
            field = std::make_shared<const NumberField>(f2.minpoly);
        FieldElem lambda1 = f1.minpoly.degree() == 1
                                ? FieldElem(-f1.minpoly.coeff(0))
                                : root_as_field_elem(f1, b1.root_idx, field);
        FieldElem lambda2;
        if (f2.minpoly.degree() == 1) {
            lambda2 = FieldElem(-f2.minpoly.coeff(0));
        } else if (b1.factor_idx == b2.factor_idx && b1.root_idx == b2.root_idx) {
            lambda2 = lambda1;
        } else {
            lambda2 = root_as_field_elem(f2, b2.root_idx, field);
        }
        MultiRationalFunction f = build_invariant_case2(lambda1, b1.offset, lambda2, b2.offset, k);
        finalize_function(Provenance::Case2, f, field, {{best_i, lambda1}, {best_j, lambda2}});
        return v;
    }

    // One 2-block (case 1 coordinates) or diagonalizable (full monomial).
    std::vector<AlgebraicNumber> eigenvalues;
    std::vector<std::size_t> coords;  // monomial coordinate per eigenvalue
    if (two_count == 1) {
        std::size_t bi = 0;
        while (blocks[bi].size != 2) ++bi;
        const BlockInfo& b = blocks[bi];
        eigenvalues.push_back(js.factors[b.factor_idx].roots[b.root_idx]);
        coords.push_back(b.offset + 1);  // second coordinate of the 2-block
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i == bi) continue;
            eigenvalues.push_back(js.factors[blocks[i].factor_idx].roots[blocks[i].root_idx]);
            coords.push_back(blocks[i].offset);
        }
    } else {
        for (const auto& b : blocks) {
            eigenvalues.push_back(js.factors[b.factor_idx].roots[b.root_idx]);
            coords.push_back(b.offset);
        }
    }

    DependenceResult dep = multiplicative_dependence(eigenvalues, bound);
    if (dep.kind == DependenceKind::Dependent) {
        std::vector<Int> expo(k, Int(0));
        for (std::size_t i = 0; i < coords.size(); ++i) expo[coords[i]] = dep.witness.exponents[i];
        MultiRationalFunction f =
            MultiRationalFunction::laurent(k, expo, FieldElem(Rational(1)));
        Provenance prov = (two_count == 1) ? Provenance::Case1 : Provenance::DiagonalMonomial;
        v.kind = Verdict::Kind::Fibration;
        v.provenance = prov;
        if (rational_spectrum) {
            auto rj = rational_jordan(a1);
            v.coordinates = CoordinateSystem::Original;
            v.fibration = orient_witness(map_back(f, rj->basis));
        } else {
            // irrational conjugates span several fields in general; the
            // eigenvalue-product certificate stands in for a substitution model
            v.coordinates = CoordinateSystem::Jordan;
            v.fibration = orient_witness(f);
            v.monomial_certificate = MonomialCertificate{eigenvalues, dep.witness.exponents};
        }
        return v;
    }

    v.kind = Verdict::Kind::Dense;
    v.provenance = Provenance::DenseAdditive;
    v.dense_eigenvalues = eigenvalues;
    if (dep.kind == DependenceKind::IndependentUpToBound)
        v.caveats.push_back("IndependentUpToBound: additive eigenvalue relations searched only up to the exponent bound");
    WitnessPoint w;
    if (rational_spectrum) {
        auto rj = rational_jordan(a1);
        std::vector<Rational> ones(k, Rational(1));
        w.additive = rj->basis.apply(ones);
        w.coordinates = CoordinateSystem::Original;
    } else {
        w.additive.assign(k, Rational(1));
        w.coordinates = CoordinateSystem::Jordan;
    }
    v.coordinates = w.coordinates;
    v.witness = std::move(w);
    return v;
}

// ---------------------------------------------------------------------------
// classify_torus
// ---------------------------------------------------------------------------

Verdict classify_torus(const ZMatrix& a2) {
    if (!a2.square()) throw domain_error("classify_torus: non-square matrix");
    if (a2.rows() > 0 && a2.det() == 0)
        throw dominance_error("classify_torus: singular matrix (not dominant)");
    std::size_t l = a2.rows();
    Verdict v;
    v.k = 0;
    v.l = l;

    std::optional<unsigned long> min_order;
    if (l > 0) {
        Factorization fac = factor_over_rationals(char_poly(a2));
        for (const auto& [factor, mult] : fac.factors) {
            if (auto n = is_cyclotomic(factor))
                if (!min_order || *n < *min_order) min_order = *n;
        }
    }

    if (min_order) {
        auto fc = fixed_character(a2, *min_order);
        if (!fc) throw domain_error("classify_torus: cyclotomic factor without fixed character");
        const auto& [w, m] = *fc;
        ZMatrix at = a2.transpose();
        std::vector<std::vector<Int>> cycle;
        std::vector<Int> cur = w;
        for (unsigned long j = 0; j < m; ++j) {
            cycle.push_back(cur);
            cur = at.apply(cur);
        }
        MultiRationalFunction f = MultiRationalFunction::constant(l, FieldElem(Rational(0)));
        for (const auto& wj : cycle)
            f = f + MultiRationalFunction::laurent(l, wj, FieldElem(Rational(1)));
        v.kind = Verdict::Kind::Fibration;
        v.provenance = Provenance::TorusCharacterOrbit;
        v.coordinates = CoordinateSystem::Original;
        v.fibration = orient_witness(f);
        return v;
    }

    v.kind = Verdict::Kind::Dense;
    v.provenance = Provenance::DenseTorus;
    v.coordinates = CoordinateSystem::Original;
    WitnessPoint w;
    for (const Int& p : primes_avoiding({}, l)) w.torus.emplace_back(p);
    v.witness = std::move(w);
    return v;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

namespace {

Verdict extend_fibration(const Verdict& base, std::size_t k, std::size_t l, std::size_t shift) {
    Verdict v = base;
    v.k = k;
    v.l = l;
    std::size_t n = k + l;
    v.fibration = pad_vars(*base.fibration, n, shift);
    if (base.jordan_images) {
        std::vector<MultiRationalFunction> images = identity_images(n);
        for (std::size_t i = 0; i < base.jordan_images->size(); ++i)
            images[shift + i] = pad_vars((*base.jordan_images)[i], n, shift);
        v.jordan_images = std::move(images);
    }
    return v;
}

}  // namespace

Verdict classify(const GroupEndomorphism& phi, unsigned bound) {
    phi.require_dominant();
    std::size_t k = phi.k(), l = phi.l();
    if (k + l == 0) throw domain_error("classify: the trivial group has no dominant dynamics");

    std::optional<Verdict> additive;
    if (k > 0) {
        additive = classify_additive(phi.additive, bound);
        if (additive->kind == Verdict::Kind::Fibration)
            return extend_fibration(*additive, k, l, 0);
    }
    if (l > 0) {
        Verdict torus = classify_torus(phi.torus);
        if (torus.kind == Verdict::Kind::Fibration) return extend_fibration(torus, k, l, k);
    }

    Verdict v;
    v.kind = Verdict::Kind::Dense;
    v.k = k;
    v.l = l;
    v.provenance = (k > 0 && l > 0)   ? Provenance::DenseMixed
                   : (k > 0)          ? Provenance::DenseAdditive
                                      : Provenance::DenseTorus;
    WitnessPoint w;
    if (additive) {
        v.caveats = additive->caveats;
        v.dense_eigenvalues = additive->dense_eigenvalues;
        w = *additive->witness;
    }
    v.coordinates = w.coordinates;

    if (l > 0) {
        // Witness primes avoid every prime of the eigenvalue norms.
        std::vector<Int> avoid;
        if (k > 0) {
            for (const auto& ev : v.dense_eigenvalues) {
                Rational norm = ev.norm_abs();
                avoid.push_back(norm.get_num());
                avoid.push_back(norm.get_den());
            }
        }
        for (int attempt = 0; attempt < 5; ++attempt) {
            std::vector<Int> primes = primes_avoiding(avoid, l);
            w.torus.clear();
            for (const Int& p : primes) w.torus.emplace_back(p);
            std::vector<AlgebraicNumber> joint = v.dense_eigenvalues;
            for (const Int& p : primes) joint.push_back(AlgebraicNumber::from_rational(Rational(p)));
            DependenceResult dep = multiplicative_dependence(joint, bound);
            if (dep.kind == DependenceKind::Dependent) {
                // a verified relation: these primes are unusable, move past them
                if (attempt == 4) {
                    v.caveats.push_back(
                        "JointDependenceUnresolved: eigenvalues stayed dependent with every prime choice tried");
                    break;
                }
                for (const Int& p : primes) avoid.push_back(p);
                continue;
            }
            if (dep.kind == DependenceKind::IndependentUpToBound)
                v.caveats.push_back("IndependentUpToBound: joint eigenvalue/prime relations searched only up to the exponent bound");
            break;
        }
    }
    v.witness = std::move(w);
    return v;
}

}  // namespace odyn
