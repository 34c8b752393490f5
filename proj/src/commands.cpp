#include "ncg/commands.hpp"

#include "ncg/catalog.hpp"
#include "ncg/errors.hpp"
#include "ncg/maps.hpp"
#include "ncg/random.hpp"
#include "ncg/universal.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>

namespace ncg {

namespace {

constexpr double kIdentityTol = 1e-8;

struct Loaded {
    AlgebraFile file;
    Subspace subspace;
    DualData duals;
    GAStructure structure;
    std::string alpha_source;
};

Json finite(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

class Report {
public:
    Report(std::string command, const Options& opt) {
        json_["tool"] = kToolName;
        json_["version"] = kToolVersion;
        json_["command"] = std::move(command);
        json_["input_digest"] = nullptr;
        json_["tolerance"] = opt.tol;
        json_["seed"] = opt.seed;
        json_["generator"] = Rng::kName;
        json_["sections"] = Json::array();
        json_["data"] = Json::object();
    }

    void digest(const std::string& key, const std::string& bytes) { json_[key] = "sha256:" + sha256_hex(bytes); }

    Json& data() { return json_["data"]; }

    void section(const std::string& name, bool pass, std::optional<double> residual, Json expected, Json computed,
                 std::optional<double> tolerance = std::nullopt, Json detail = nullptr) {
        Json s{{"name", name}, {"status", pass ? "pass" : "fail"}};
        s["residual"] = residual ? finite(*residual) : Json(nullptr);
        if (tolerance) s["tolerance"] = *tolerance;
        s["expected"] = std::move(expected);
        s["computed"] = std::move(computed);
        if (!detail.is_null()) s["detail"] = std::move(detail);
        json_["sections"].push_back(std::move(s));
        all_pass_ = all_pass_ && pass;
    }

    void skipped(const std::string& name, const std::string& why) {
        json_["sections"].push_back(Json{{"name", name}, {"status", "skipped"}, {"reason", why}});
    }

    /// Residual check: pass when residual < tolerance.
    void check(const std::string& name, double residual, double tolerance, Json detail = nullptr) {
        section(name, residual < tolerance, residual, Json{{"max_residual", tolerance}}, Json{{"residual", finite(residual)}},
                tolerance, std::move(detail));
    }

    CommandResult finish() {
        json_["status"] = all_pass_ ? "pass" : "fail";
        return {json_, all_pass_ ? kExitOk : kExitVerification};
    }

private:
    Json json_;
    bool all_pass_ = true;
};

Loaded load(const std::string& text, const Options& opt, bool strict) {
    AlgebraFile file = algebra_from_json(parse_json(text));
    Subspace b = validate_subspace(file.m, file.basis, opt.tol, file.label);
    DualData d = dual_data(b, opt.tol);
    bool embedded = false;
    switch (opt.alpha) {
        case AlphaChoice::automatic: embedded = false; break;
        case AlphaChoice::embedded:
            if (!file.alpha) throw ConfigError("--alpha embedded requested but the file has no 'alpha'");
            embedded = true;
            break;
        case AlphaChoice::default_choice: embedded = file.alpha.has_value(); break;
    }
    GAStructure g = !embedded  ? analyze_relations(b, d, opt.tol)
                    : strict   ? use_relations(b, d, *file.alpha, opt.tol)
                               : assume_relations(b, d, *file.alpha, opt.tol);
    return {std::move(file), std::move(b), std::move(d), std::move(g), embedded ? "embedded" : "auto"};
}

void ga_sections(Report& r, const Loaded& l, double tol) {
    const GAReport ga = verify_ga(l.subspace, l.structure, tol);
    r.section("left_inverse", ga.beta_alpha_ok, ga.beta_alpha_residual, Json{{"beta_alpha", "identity"}},
              Json{{"residual", ga.beta_alpha_residual}});
    r.section("projector_idempotent", ga.idempotence_ok, ga.idempotence_residual, Json{{"P2_minus_P", 0}},
              Json{{"residual", ga.idempotence_residual}});
    r.section("relations_in_kernel", ga.relation_ok, ga.relation_residual, Json{{"alpha_rho", 0}},
              Json{{"residual", ga.relation_residual}});
    r.section("dimension_inequality", ga.dimension_ok, std::nullopt, Json{{"at_most", ga.span_bound}},
              Json{{"span_dimension", ga.span_dimension}});
}

double relative_distance(const Form& a, const Form& b) {
    return distance(a, b) / std::max({1.0, a.max_norm(), b.max_norm()});
}

Json worst_instance(int trial, std::initializer_list<int> degrees) {
    return Json{{"trial", trial}, {"degrees", Json(std::vector<int>(degrees))}};
}

std::vector<CMatrix> random_matrix_basis(int m, Rng& rng) {
    std::vector<CMatrix> out;
    for (int k = 0; k < m * m; ++k) out.push_back(rng.square(m));
    return out;
}

}  // namespace

double default_tolerance() {
    if (const char* env = std::getenv("NCG_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
    }
    return kDefaultTol;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("SHA-256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

CommandResult cmd_analyze(const std::string& algebra_json, const Options& opt) {
    Report r("analyze", opt);
    r.digest("input_digest", algebra_json);
    const Loaded l = load(algebra_json, opt, false);
    const int n = l.subspace.n();
    const GAStructure& g = l.structure;

    Json& data = r.data();
    data["label"] = l.subspace.label();
    data["m"] = l.subspace.m();
    data["n"] = n;
    data["gram"] = matrix_to_json(l.duals.gram);
    data["gram_condition"] = l.duals.condition;
    Json duals = Json::array();
    for (const auto& d : l.duals.duals) duals.push_back(matrix_to_json(d));
    data["duals"] = std::move(duals);
    data["alpha_source"] = l.alpha_source;
    data["R"] = g.R;
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < g.alpha.cols(); ++c) cols.push_back(vector_to_json(g.alpha.col(c)));
    data["alpha"] = std::move(cols);
    if (g.mode == AlphaMode::auto_maximal) {
        data["relation_spectral_gap"] = finite(g.detection.spectral_gap);
        data["relation_threshold"] = g.detection.threshold;
    }
    Json f = Json::array();
    for (int a = 0; a < n; ++a) {
        Json fa = Json::array();
        for (int b = 0; b < n; ++b) {
            Json fb = Json::array();
            for (int c = 0; c < n; ++c) fb.push_back(complex_json(g.sc.F(a, b, c)));
            fa.push_back(std::move(fb));
        }
        f.push_back(std::move(fa));
    }
    data["F"] = std::move(f);
    data["t"] = matrix_to_json(g.sc.t);
    Json rho = Json::array();
    for (int b = 0; b < n; ++b) {
        Json row = Json::array();
        for (int c = 0; c < n; ++c) row.push_back(norm(g.sc.rho[static_cast<std::size_t>(n * b + c)]));
        rho.push_back(std::move(row));
    }
    data["rho_norms"] = std::move(rho);

    ga_sections(r, l, opt.tol);
    return r.finish();
}

CommandResult cmd_forms(const std::string& algebra_json, const Options& opt) {
    Report r("forms", opt);
    r.digest("input_digest", algebra_json);
    if (opt.max_degree < 1) throw ParameterError("--max-degree must be at least 1");
    Loaded l = load(algebra_json, opt, true);
    const int R = l.structure.R;
    const GAStructure g = l.structure;
    const TowerPtr t = build_tower(std::move(l.subspace), std::move(l.duals), std::move(l.structure), opt.max_degree, opt.tol);

    Json& data = r.data();
    data["n"] = t->n();
    data["R"] = R;
    data["alpha_source"] = l.alpha_source;
    data["max_degree"] = opt.max_degree;
    data["omega2_trivial"] = (R == 0);
    data["D"] = t->ranks();
    Json spaces = Json::array();
    for (int p = 1; p <= opt.max_degree; ++p) {
        const DegreeSpace& s = t->space(p);
        spaces.push_back(Json{{"degree", p},
                              {"dimension", s.dimension},
                              {"rank", s.rank},
                              {"spectral_gap", finite(s.spectral_gap)}});
    }
    data["spaces"] = std::move(spaces);

    for (int p = 3; p <= opt.max_degree; ++p) {
        if (R == 0) {
            r.skipped("epsilon_existence_p" + std::to_string(p), "no relations");
            continue;
        }
        const EpsilonResult e = epsilon_check(g, p, opt.tol);
        r.section("epsilon_existence_p" + std::to_string(p), e.solution_dimension == t->rank(p), std::nullopt,
                  Json{{"solution_dimension", t->rank(p)}},
                  Json{{"exists", e.exists}, {"solution_dimension", e.solution_dimension}, {"unknowns", e.unknowns}});
    }
    return r.finish();
}

CommandResult cmd_verify(const std::string& algebra_json, const Options& opt) {
    Report r("verify", opt);
    r.digest("input_digest", algebra_json);
    if (opt.trials < 1) throw ParameterError("--trials must be at least 1");
    if (opt.max_degree < 2) throw ParameterError("verify needs --max-degree of at least 2");
    Loaded l = load(algebra_json, opt, false);
    const int m = l.subspace.m();
    r.data()["alpha_source"] = l.alpha_source;
    r.data()["R"] = l.structure.R;
    r.data()["identity_tolerance"] = kIdentityTol;

    ga_sections(r, l, opt.tol);
    if (!verify_ga(l.subspace, l.structure, opt.tol).ok()) {
        for (const char* s : {"trace_lemma", "coframe_formula", "structure_equations", "d_squared", "leibniz",
                              "universal_identity"})
            r.skipped(s, "relation structure failed verification");
        return r.finish();
    }
    const TowerPtr t = build_tower(std::move(l.subspace), std::move(l.duals), std::move(l.structure), opt.max_degree, opt.tol);
    const int top = t->max_degree();

    {
        Rng rng(opt.seed);
        const auto elementary = verify_trace_lemma(elementary_basis(m), opt.trials, opt.seed);
        const auto random = verify_trace_lemma(random_matrix_basis(m, rng), opt.trials, opt.seed);
        const double res = std::max({elementary.trace_residual, elementary.commutator_residual,
                                     random.trace_residual, random.commutator_residual});
        const bool pass = elementary.ok() && random.ok();
        r.section("trace_lemma", pass, res, Json{{"max_residual", std::max(elementary.tolerance, random.tolerance)}},
                  Json{{"elementary_basis", std::max(elementary.trace_residual, elementary.commutator_residual)},
                       {"random_basis", std::max(random.trace_residual, random.commutator_residual)}});
    }
    {
        Rng rng(opt.seed);
        const auto a = coframe_from_formula(t, elementary_basis(m));
        const auto b = coframe_from_formula(t, random_matrix_basis(m, rng));
        const double res = std::max({a.coframe_residual, a.theta_residual, b.coframe_residual, b.theta_residual});
        r.check("coframe_formula", res, kIdentityTol);
    }
    {
        const StructureEquationReport s = check_structure_equations(t, opt.tol);
        r.section("structure_equations", s.ok(),
                  std::max({s.dtheta_residual, s.dtheta_a_residual, s.formula_route_residual, s.eta_relation_residual}),
                  Json{{"max_residual", s.tolerance}},
                  Json{{"dtheta", s.dtheta_residual},
                       {"dtheta_a", s.dtheta_a_residual},
                       {"formula_route", s.formula_route_residual},
                       {"eta_relation", s.eta_relation_residual}},
                  s.tolerance);
    }
    {
        Rng rng(opt.seed);
        double worst = 0.0;
        Json where = nullptr;
        for (int k = 0; k < opt.trials; ++k)
            for (int p = 0; p + 2 <= top; ++p) {
                const Form xi = random_form(t, p, rng);
                const Form dd = exterior_d(exterior_d(xi));
                const double res = dd.max_norm() / std::max(1.0, xi.max_norm());
                if (res >= worst) {
                    worst = res;
                    where = worst_instance(k, {p});
                }
            }
        r.check("d_squared", worst, kIdentityTol, where);
    }
    {
        Rng rng(opt.seed);
        double worst = 0.0;
        Json where = nullptr;
        for (int k = 0; k < opt.trials; ++k)
            for (int p = 0; p < top; ++p)
                for (int q = 0; p + q + 1 <= top; ++q) {
                    const Form xi = random_form(t, p, rng);
                    const Form zeta = random_form(t, q, rng);
                    const Form lhs = exterior_d(wedge(xi, zeta));
                    const Form sign_term = wedge(xi, exterior_d(zeta));
                    const Form rhs = wedge(exterior_d(xi), zeta) + (p % 2 == 0 ? sign_term : -sign_term);
                    const double res = relative_distance(lhs, rhs);
                    if (res >= worst) {
                        worst = res;
                        where = worst_instance(k, {p, q});
                    }
                }
        r.check("leibniz", worst, kIdentityTol, where);
    }
    {
        Rng rng(opt.seed);
        const UElement tu = theta_u(elementary_basis(m), opt.tol);
        double worst = 0.0;
        double quotient = 0.0;
        for (int k = 0; k < opt.trials; ++k) {
            const CMatrix f = rng.square(m);
            const double scale = std::max(1.0, norm(f));
            worst = std::max(worst, distance(commutator(tu, f).left_multiply(-CMatrix::Identity(m, m)), du(f)) / scale);
            const Form image = phi1(t, du(f));
            const Form df = exterior_d(Form::function(t, f));
            quotient = std::max(quotient, relative_distance(image, df));
        }
        r.section("universal_identity", worst < 1e-10 && quotient < kIdentityTol, std::max(worst, quotient),
                  Json{{"minus_theta_u_commutator_vs_du", 1e-10}, {"quotient_of_du_vs_d", kIdentityTol}},
                  Json{{"minus_theta_u_commutator_vs_du", worst}, {"quotient_of_du_vs_d", quotient}});
    }
    return r.finish();
}

CommandResult cmd_equiv(const std::string& algebra_json, const std::string& transform_json, const Options& opt) {
    Report r("equiv", opt);
    r.digest("input_digest", algebra_json);
    r.digest("transform_digest", transform_json);
    if (opt.trials < 1) throw ParameterError("--trials must be at least 1");
    Loaded l = load(algebra_json, opt, true);
    const CMatrix u = transform_from_json(parse_json(transform_json));
    if (u.rows() != l.subspace.m() || u.cols() != l.subspace.m())
        throw ShapeError("transform must be " + std::to_string(l.subspace.m()) + "x" + std::to_string(l.subspace.m()));
    const Conjugation c = make_conjugation(u, opt.tol);
    const TowerPtr t = build_tower(std::move(l.subspace), std::move(l.duals), std::move(l.structure), opt.max_degree, opt.tol);
    const EquivalenceReport e = check_equivalence(c, t, opt.trials, opt.seed, kIdentityTol);
    r.data()["trials"] = e.trials;
    r.data()["alpha_source"] = l.alpha_source;
    r.check("coframe", e.coframe_residual, e.tolerance);
    r.check("theta", e.theta_residual, e.tolerance);
    r.check("products", e.product_residual, e.tolerance);
    r.check("d_commutation", e.d_residual, e.tolerance);
    return r.finish();
}

CommandResult cmd_catalog(const std::string& name, int m, const Options& opt, std::string* algebra_out) {
    Report r("catalog", opt);
    const CatalogEntry entry = catalog_entry(name, m, opt.tol);
    AlgebraFile file{m, entry.subspace.label(), entry.subspace.lambdas(), entry.suggested_alpha};
    const std::string text = algebra_to_json(file).dump(2) + "\n";
    if (algebra_out) *algebra_out = text;
    r.digest("input_digest", text);

    Json& data = r.data();
    data["name"] = entry.name;
    data["parameters"] = entry.parameters;
    data["notes"] = entry.notes;

    int top = std::max(opt.max_degree, 1);
    if (const Expectation* d = entry.find("D")) top = std::max(top, static_cast<int>(d->values.size()));
    const TowerPtr t = entry_calculus(entry, top, opt.tol);
    const std::vector<int> ranks = t->ranks();
    data["R"] = t->structure().R;
    data["D"] = ranks;

    for (const Expectation& e : entry.expected) {
        std::vector<int> computed;
        if (e.quantity == "D") {
            computed.assign(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(e.values.size()));
        } else if (e.quantity == "R" || e.quantity == "R_used") {
            computed = {t->structure().R};
        } else if (e.quantity == "R_auto") {
            computed = {detect_relations(entry.subspace, t->duals(), opt.tol).R};
        }
        const bool pass = e.lower_bound ? (!computed.empty() && computed[0] >= e.values[0]) : computed == e.values;
        Json expected{{e.lower_bound ? "at_least" : "value", e.values}, {"source", to_string(e.source)}, {"basis", e.basis}};
        r.section(e.quantity, pass, std::nullopt, std::move(expected), Json{{"value", computed}});
    }

    const StructureEquationReport s = check_structure_equations(t, opt.tol);
    r.section("structure_equations", s.ok(),
              std::max({s.dtheta_residual, s.dtheta_a_residual, s.formula_route_residual, s.eta_relation_residual}),
              Json{{"max_residual", s.tolerance}}, Json{{"dtheta", s.dtheta_residual}, {"dtheta_a", s.dtheta_a_residual}},
              s.tolerance);
    return r.finish();
}

CommandResult error_result(const std::string& command, const std::exception& e) {
    Json j{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"status", "error"}};
    int code = kExitValidation;
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        j["error"] = Json{{"name", err->name()}, {"message", err->what()}};
        code = err->kind() == ErrorKind::io ? kExitIo : kExitValidation;
    } else {
        j["error"] = Json{{"name", "InternalError"}, {"message", e.what()}};
    }
    return {j, code};
}

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << report.value("tool", "") << " " << report.value("command", "") << " (version " << report.value("version", "")
       << ")\n";
    if (report.contains("error")) {
        os << "error: " << report["error"].value("message", "") << "\n";
        return os.str();
    }
    if (report.contains("input_digest") && report["input_digest"].is_string())
        os << "input           " << report["input_digest"].get<std::string>() << "\n";
    if (report.contains("transform_digest")) os << "transform       " << report["transform_digest"].get<std::string>() << "\n";
    os << "tolerance       " << report["tolerance"].dump() << "   seed " << report["seed"].dump() << " ("
       << report.value("generator", "") << ")\n";

    const Json& data = report["data"];
    for (const char* key : {"name", "label", "m", "n", "alpha_source", "R", "D", "omega2_trivial", "trials"}) {
        if (data.contains(key)) os << std::left << std::setw(16) << key << data[key].dump() << "\n";
    }
    for (const auto& s : report["sections"]) {
        std::string status = s.value("status", "");
        for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << "[" << status << "] " << s.value("name", "");
        if (s.contains("reason")) {
            os << "  (" << s["reason"].get<std::string>() << ")\n";
            continue;
        }
        if (s.contains("residual") && !s["residual"].is_null()) os << "  residual=" << s["residual"].dump();
        os << "  expected=" << s["expected"].dump() << "  computed=" << s["computed"].dump();
        if (s.contains("detail")) os << "  at=" << s["detail"].dump();
        os << "\n";
    }
    os << "status          " << report.value("status", "") << "\n";
    return os.str();
}

}  // namespace ncg
