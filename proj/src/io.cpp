#include "odyn/io.hpp"

namespace odyn {

namespace {

Rational rational_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    throw parse_error("expected a rational as \"p/q\" string or integer");
}

Int int_from_json(const json& v) {
    if (v.is_string()) {
        Rational r = parse_rational(v.get<std::string>());
        if (!is_integer(r)) throw parse_error("expected an integer entry");
        return r.get_num();
    }
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    throw parse_error("expected an integer as number or decimal string");
}

json coeff_json(const FieldElem& c) {
    if (c.is_rational()) return rational_to_string(c.rational_value());
    json arr = json::array();
    for (int i = 0; i <= c.rep().degree(); ++i) arr.push_back(rational_to_string(c.rep().coeff(i)));
    return arr;
}

FieldElem coeff_from_json(const json& v, const NumberFieldPtr& field) {
    if (v.is_array()) {
        if (!field) throw parse_error("field coefficient without a field_minpoly");
        std::vector<Rational> c;
        for (const auto& x : v) c.push_back(rational_from_json(x));
        return FieldElem::from_poly(field, UnivariatePoly(std::move(c)));
    }
    return FieldElem(rational_from_json(v));
}

json poly_terms_json(const MultiPoly& p) {
    json arr = json::array();
    for (const auto& [m, c] : p.terms()) {
        json term = json::array();
        term.push_back(coeff_json(c));
        json expo = json::array();
        for (unsigned e : m.e) expo.push_back(e);
        term.push_back(expo);
        arr.push_back(term);
    }
    return arr;
}

MultiPoly poly_from_terms(const json& arr, std::size_t nvars, const NumberFieldPtr& field) {
    MultiPoly p(nvars);
    if (!arr.is_array()) throw parse_error("term list must be an array");
    for (const auto& term : arr) {
        if (!term.is_array() || term.size() != 2) throw parse_error("term must be [coeff, expo]");
        FieldElem c = coeff_from_json(term[0], field);
        Monomial m{std::vector<unsigned>(nvars, 0)};
        if (!term[1].is_array() || term[1].size() != nvars)
            throw parse_error("exponent vector arity mismatch");
        for (std::size_t i = 0; i < nvars; ++i) m.e[i] = term[1][i].get<unsigned>();
        p.add_term(m, c);
    }
    return p;
}

}  // namespace

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json matrix_json(const ZMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

QMatrix parse_qmatrix(const json& j) {
    if (!j.is_array() || j.empty()) throw parse_error("matrix must be a nonempty array of rows");
    std::size_t rows = j.size(), cols = j[0].size();
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw parse_error("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = rational_from_json(j[i][c]);
    }
    return m;
}

ZMatrix parse_zmatrix(const json& j) {
    if (!j.is_array() || j.empty()) throw parse_error("matrix must be a nonempty array of rows");
    std::size_t rows = j.size(), cols = j[0].size();
    ZMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw parse_error("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = int_from_json(j[i][c]);
    }
    return m;
}

ProblemSpec parse_problem_spec(const json& j) {
    if (!j.is_object()) throw parse_error("problem spec must be a JSON object");
    ProblemSpec spec;
    if (j.contains("additive")) spec.endo.additive = parse_qmatrix(j["additive"]);
    if (j.contains("torus")) spec.endo.torus = parse_zmatrix(j["torus"]);
    if (!j.contains("additive") && !j.contains("torus"))
        throw parse_error("problem spec needs an \"additive\" or \"torus\" block");
    if (!spec.endo.additive.square()) throw parse_error("additive block must be square");
    if (!spec.endo.torus.square()) throw parse_error("torus block must be square");
    if (j.contains("options")) {
        const json& o = j["options"];
        if (o.contains("bound")) spec.options.bound = o["bound"].get<unsigned>();
        if (o.contains("degree")) spec.options.degree = o["degree"].get<unsigned>();
        if (o.contains("steps")) spec.options.steps = o["steps"].get<unsigned long>();
        if (o.contains("seed")) spec.options.seed = o["seed"].get<unsigned long>();
        if (o.contains("bit_budget")) spec.options.bit_budget = o["bit_budget"].get<unsigned long>();
    }
    spec.endo.require_dominant();  // dominance validated on load
    return spec;
}

ProblemSpec parse_problem_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_problem_spec(j);
}

json rational_function_json(const MultiRationalFunction& f) {
    json out;
    out["num"] = poly_terms_json(f.num());
    out["den"] = poly_terms_json(f.den());
    return out;
}

MultiRationalFunction parse_rational_function(const json& j, std::size_t nvars,
                                              const NumberFieldPtr& field) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw parse_error("rational function needs num and den term lists");
    MultiPoly num = poly_from_terms(j["num"], nvars, field);
    MultiPoly den = poly_from_terms(j["den"], nvars, field);
    if (den.is_zero()) throw parse_error("rational function with zero denominator");
    return MultiRationalFunction(std::move(num), std::move(den));
}

std::string poly_coeff_array_to_text(const UnivariatePoly& p) {
    std::string out = "[";
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ",";
        out += rational_to_string(p.coeff(i));
    }
    return out + "]";
}

json verdict_json(const Verdict& v) {
    json out;
    out["kind"] = v.kind == Verdict::Kind::Dense ? "dense" : "fibration";
    out["provenance"] = provenance_name(v.provenance);
    out["coordinates"] = v.coordinates == CoordinateSystem::Original ? "original" : "jordan";
    if (v.kind == Verdict::Kind::Fibration) {
        out["witness"] = v.fibration->to_string(variable_names(v.k, v.l));
        out["witness_function"] = rational_function_json(*v.fibration);
        if (v.field_minpoly) {
            json arr = json::array();
            for (int i = 0; i <= v.field_minpoly->degree(); ++i)
                arr.push_back(rational_to_string(v.field_minpoly->coeff(i)));
            out["field_minpoly"] = arr;
        }
        if (v.monomial_certificate) {
            json cert;
            json evs = json::array();
            for (const auto& a : v.monomial_certificate->eigenvalues)
                evs.push_back(algebraic_number_json(a));
            json exps = json::array();
            for (const auto& e : v.monomial_certificate->exponents) exps.push_back(e.get_str());
            cert["eigenvalues"] = evs;
            cert["exponents"] = exps;
            out["certificate"] = cert;
        }
    } else {
        json w;
        json add = json::array(), tor = json::array();
        for (const auto& x : v.witness->additive) add.push_back(rational_to_string(x));
        for (const auto& y : v.witness->torus) tor.push_back(rational_to_string(y));
        w["additive"] = add;
        w["torus"] = tor;
        out["witness"] = w;
    }
    json caveats = json::array();
    for (const auto& c : v.caveats) caveats.push_back(c);
    out["caveats"] = caveats;
    return out;
}

ParsedVerdict parse_verdict_json(const json& j, std::size_t k, std::size_t l) {
    if (!j.is_object() || !j.contains("kind")) throw parse_error("verdict needs a kind");
    ParsedVerdict out;
    std::string kind = j["kind"].get<std::string>();
    if (kind == "dense")
        out.kind = Verdict::Kind::Dense;
    else if (kind == "fibration")
        out.kind = Verdict::Kind::Fibration;
    else
        throw parse_error("verdict kind must be dense or fibration");
    if (j.contains("coordinates"))
        out.coordinates = j["coordinates"].get<std::string>() == "jordan"
                              ? CoordinateSystem::Jordan
                              : CoordinateSystem::Original;
    if (j.contains("caveats"))
        for (const auto& c : j["caveats"]) out.caveats.push_back(c.get<std::string>());
    if (out.kind == Verdict::Kind::Fibration) {
        NumberFieldPtr field;
        if (j.contains("field_minpoly")) {
            std::vector<Rational> c;
            for (const auto& x : j["field_minpoly"]) c.push_back(rational_from_json(x));
            out.field_minpoly = UnivariatePoly(c);
            field = std::make_shared<const NumberField>(UnivariatePoly(std::move(c)));
        }
        if (!j.contains("witness_function"))
            throw parse_error("fibration verdict needs witness_function");
        out.fibration = parse_rational_function(j["witness_function"], k + l, field);
    } else {
        if (!j.contains("witness") || !j["witness"].is_object())
            throw parse_error("dense verdict needs a witness point");
        WitnessPoint w;
        w.coordinates = out.coordinates;
        if (j["witness"].contains("additive"))
            for (const auto& x : j["witness"]["additive"]) w.additive.push_back(rational_from_json(x));
        if (j["witness"].contains("torus"))
            for (const auto& y : j["witness"]["torus"]) w.torus.push_back(rational_from_json(y));
        if (w.additive.size() != k || w.torus.size() != l)
            throw parse_error("witness dimensions do not match the problem spec");
        out.witness = std::move(w);
    }
    return out;
}

json density_json(const DensityReport& report, std::optional<unsigned long> adjusted_steps) {
    json out;
    out["check"] = "density";
    out["degree"] = report.degree;
    out["steps"] = report.steps;
    if (adjusted_steps) out["steps_adjusted_from"] = *adjusted_steps;
    out["monomial_count"] = report.monomial_count;
    out["matrix_rank"] = report.matrix_rank;
    out["evaluation"] = report.modular_evaluation ? "modular" : "exact";
    out["outcome"] = report.label();
    if (report.vanishing) {
        out["vanishing_polynomial"] = poly_terms_json(*report.vanishing);
        out["vanishing_text"] = report.vanishing->to_string(variable_names(
            report.additive_vars, report.vanishing->nvars() - report.additive_vars));
    }
    return out;
}

json growth_json(const GrowthReport& report) {
    json out;
    out["check"] = "growth";
    out["steps"] = report.steps;
    out["max_ratio"] = rational_to_string(report.max_ratio);
    out["verdict"] = report.verdict == GrowthReport::Verdict::LinearlyBounded ? "LinearlyBounded"
                                                                              : "ExceedsLinear";
    if (report.first_violation) out["first_violation"] = *report.first_violation;
    if (report.cyclotomic_order) {
        json c;
        c["order"] = *report.cyclotomic_order;
        json arr = json::array();
        for (int i = 0; i <= report.cyclotomic_factor->degree(); ++i)
            arr.push_back(rational_to_string(report.cyclotomic_factor->coeff(i)));
        c["factor"] = arr;
        out["cyclotomic"] = c;
    } else {
        out["cyclotomic"] = nullptr;
    }
    json norms = json::array();
    for (const auto& n : report.sup_norms) norms.push_back(n.get_str());
    out["sup_norms"] = norms;
    return out;
}

json orbit_json(const std::vector<OrbitPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        json entry;
        json add = json::array();
        for (const auto& x : p.additive) add.push_back(rational_to_string(x));
        entry["additive"] = add;
        json tor = json::array();
        if (p.torus_in_exponent_form()) {
            const auto& te = p.torus_exponents();
            for (std::size_t i = 0; i < te.expo.size(); ++i) {
                // reconstruct small values, otherwise print prime-power form
                Int value_bits(0);
                for (std::size_t t = 0; t < te.primes.size(); ++t) {
                    Int a = abs(te.expo[i][t]);
                    if (a != 0)
                        value_bits +=
                            a * static_cast<long>(mpz_sizeinbase(te.primes[t].get_mpz_t(), 2));
                }
                if (value_bits <= 4096) {
                    OrbitPoint tmp;
                    tmp.torus = TorusExponents{te.primes, {te.expo[i]}};
                    tor.push_back(rational_to_string(tmp.torus_values()[0]));
                } else {
                    std::string s;
                    for (std::size_t t = 0; t < te.primes.size(); ++t) {
                        if (te.expo[i][t] == 0) continue;
                        if (!s.empty()) s += "*";
                        s += te.primes[t].get_str() + "^" + te.expo[i][t].get_str();
                    }
                    tor.push_back(s.empty() ? "1" : s);
                }
            }
        } else {
            for (const auto& y : std::get<std::vector<Rational>>(p.torus))
                tor.push_back(rational_to_string(y));
        }
        entry["torus"] = tor;
        arr.push_back(entry);
    }
    return arr;
}

json algebraic_number_json(const AlgebraicNumber& a) {
    json out;
    json mp = json::array();
    for (int i = 0; i <= a.minpoly().degree(); ++i)
        mp.push_back(rational_to_string(a.minpoly().coeff(i)));
    out["minpoly"] = mp;
    out["box"] = {rational_to_string(a.box().re_lo), rational_to_string(a.box().re_hi),
                  rational_to_string(a.box().im_lo), rational_to_string(a.box().im_hi)};
    return out;
}

}  // namespace odyn
