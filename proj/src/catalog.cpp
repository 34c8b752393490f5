#include "ncg/catalog.hpp"

#include "ncg/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ncg {

namespace {

const Complex kI(0.0, 1.0);

void require_m(int m, int min, const char* who) {
    if (m < min) {
        std::ostringstream os;
        os << who << ": m must be at least " << min << ", got " << m;
        throw ParameterError(os.str());
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string fmt(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

std::string to_string(Source s) {
    return s == Source::published ? "published" : "computed";
}

const Expectation* CatalogEntry::find(const std::string& quantity) const {
    for (const auto& e : expected)
        if (e.quantity == quantity) return &e;
    return nullptr;
}

std::vector<CMatrix> gell_mann_basis(int m) {
    require_m(m, 2, "gell_mann_basis");
    std::vector<CMatrix> out;
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            CMatrix s = CMatrix::Zero(m, m);
            s(j, k) = s(k, j) = 1.0;
            out.push_back(s);
        }
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            CMatrix a = CMatrix::Zero(m, m);
            a(j, k) = -kI;
            a(k, j) = kI;
            out.push_back(a);
        }
    for (int l = 1; l < m; ++l) {
        CMatrix d = CMatrix::Zero(m, m);
        const double c = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) d(j, j) = c;
        d(l, l) = -c * l;
        out.push_back(d);
    }
    return out;
}

std::vector<CMatrix> spin_matrices(int m) {
    require_m(m, 2, "spin_matrices");
    const double j = (m - 1) / 2.0;
    CMatrix jp = CMatrix::Zero(m, m);
    CMatrix jz = CMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        const double mz = j - k;
        jz(k, k) = mz;
        if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - mz * (mz + 1));
    }
    const CMatrix jm = jp.adjoint();
    return {(jp + jm) / 2.0, (jp - jm) / (2.0 * kI), jz};
}

double spin_trace_closed_form(int m) { return m * (m * static_cast<double>(m) - 1.0) / 12.0; }

CMatrix antisymmetric_relations(int n) {
    CMatrix alpha = CMatrix::Zero(static_cast<Eigen::Index>(n) * n, n * (n - 1) / 2);
    int col = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++col) {
            alpha(n * a + b, col) = 1.0;
            alpha(n * b + a, col) = -1.0;
        }
    return alpha;
}

CatalogEntry universal_a0(int m, double tol) {
    require_m(m, 2, "universal_a0");
    const int n = m * m - 1;
    CatalogEntry e{"a0", {{"m", std::to_string(m)}}, validate_subspace(m, gell_mann_basis(m), tol, "a0"), {}, {}, {}};
    e.expected.push_back({"R", {n * n}, Source::computed, "every product lies in B + C1 = A"});
    e.expected.push_back({"D", {n, n * n, n * n * n, n * n * n * n}, Source::published,
                          "free bimodule of rank (m^2-1)^p"});
    return e;
}

CatalogEntry su2(int m, bool hermitian, double kappa, double tol) {
    require_m(m, 2, "su2");
    if (!(kappa > 0.0)) throw ParameterError("su2: kappa must be positive");
    std::vector<CMatrix> lambdas;
    for (const CMatrix& j : spin_matrices(m)) lambdas.push_back(hermitian ? CMatrix(kappa * j) : CMatrix(-kI * kappa * j));
    CatalogEntry e{"su2",
                   {{"m", std::to_string(m)}, {"hermitian", hermitian ? "true" : "false"}, {"kappa", fmt(kappa)}},
                   validate_subspace(m, std::move(lambdas), tol, "su2"),
                   antisymmetric_relations(3),
                   {},
                   {}};
    e.expected.push_back({"R_used", {3}, Source::computed, "antisymmetric relations n(n-1)/2"});
    e.expected.push_back({"D", {3, 3, 1, 0}, Source::computed, "exterior algebra on three generators"});
    if (m == 2)
        e.expected.push_back({"R_auto", {9}, Source::computed, "Pauli products close on B + C1"});
    else
        e.expected.push_back({"R_auto", {4}, Source::computed, "commutators plus the Casimir relation", true});
    return e;
}

CatalogEntry clock_shift(int m, double tol) {
    require_m(m, 2, "clock_shift");
    const Complex q = std::polar(1.0, 2.0 * std::numbers::pi / m);
    CMatrix x = CMatrix::Zero(m, m);
    CMatrix y = CMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        x(k, (k + 1) % m) = 1.0;
        y(k, k) = std::pow(q, k);
    }
    CatalogEntry e{"clock-shift", {{"m", std::to_string(m)}, {"q", fmt(q)}},
                   validate_subspace(m, {x, y}, tol, "clock-shift"), {}, {}, {}};
    if (m == 2) {
        e.expected.push_back({"R", {3}, Source::computed, "x^2 = y^2 = 1 add two relations to xy = -yx"});
        e.expected.push_back({"D", {2, 3}, Source::computed, "kernel computation"});
        e.notes.push_back("at m = 2 the squares x^2, y^2 are multiples of 1, so the maximal kernel is larger");
    } else {
        e.expected.push_back({"R", {1}, Source::computed, "only xy = q yx survives"});
        e.expected.push_back({"D", {2, 1}, Source::published, "single surviving 2-form"});
    }
    return e;
}

CMatrix default_ellipsoid_coefficients() {
    CMatrix a(2, 2);
    a << Complex(1.0, 0.0), Complex(0.3, 0.2), Complex(0.5, -0.1), Complex(2.0, 0.0);
    return a;
}

CatalogEntry fuzzy_ellipsoid(int m, double kappa, const CMatrix& acoef, double tol) {
    require_m(m, 3, "fuzzy_ellipsoid");
    if (!(kappa > 0.0)) throw ParameterError("fuzzy_ellipsoid: kappa must be positive");
    if (acoef.rows() != 2 || acoef.cols() != 2) throw ShapeError("fuzzy_ellipsoid: acoef must be 2 x 2");
    const auto j = spin_matrices(m);
    const CMatrix l1 = -kI * kappa * j[0];
    const CMatrix l2 = -kI * kappa * j[1];
    const CMatrix l[2] = {l1, l2};
    CMatrix s = CMatrix::Zero(m, m);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += acoef(a, b) * l[a] * l[b];
    const Complex shift = s.trace() / static_cast<double>(m);
    CMatrix traceless = s;
    traceless.diagonal().array() -= shift;
    const CMatrix l3 = -kI * traceless;

    CMatrix alpha = CMatrix::Zero(9, 1);
    alpha(0, 0) = acoef(0, 0);
    alpha(1, 0) = acoef(0, 1);
    alpha(3, 0) = acoef(1, 0);
    alpha(4, 0) = acoef(1, 1);

    std::ostringstream coefs;
    coefs << fmt(acoef(0, 0)) << "," << fmt(acoef(0, 1)) << "," << fmt(acoef(1, 0)) << "," << fmt(acoef(1, 1));
    CatalogEntry e{"ellipsoid",
                   {{"m", std::to_string(m)}, {"kappa", fmt(kappa)}, {"acoef", coefs.str()}},
                   validate_subspace(m, {l1, l2, l3}, tol, "ellipsoid"),
                   alpha,
                   {},
                   {}};
    e.expected.push_back({"D", {3, 1}, Source::published, "three 1-forms, one 2-form"});
    e.expected.push_back({"R_used", {1}, Source::computed, "the defining quadratic relation"});

    const double c = m * (m * static_cast<double>(m) - 1.0) / 12.0;
    const Complex displayed = -c * kappa * kappa * (acoef(0, 0) - acoef(1, 1));
    e.parameters["scalar_computed"] = fmt(shift);
    e.parameters["scalar_displayed"] = fmt(displayed);
    e.notes.push_back(
        "scalar subtraction computed as tr(S)/m = -kappa^2 (m^2-1)(a11+a22)/12; the alternative constant "
        "-kappa^2 m (m^2-1)(a11-a22)/12 does not make lambda_3 traceless and is recorded only");
    return e;
}

CatalogEntry catalog_entry(const std::string& name, int m, double tol) {
    if (name == "a0") return universal_a0(m, tol);
    if (name == "su2") return su2(m, false, 1.0, tol);
    if (name == "clock-shift") return clock_shift(m, tol);
    if (name == "ellipsoid") return fuzzy_ellipsoid(m, 1.0, default_ellipsoid_coefficients(), tol);
    throw ConfigError("unknown catalog entry '" + name + "' (expected a0, su2, clock-shift or ellipsoid)");
}

std::vector<std::string> catalog_names() { return {"a0", "su2", "clock-shift", "ellipsoid"}; }

TowerPtr entry_calculus(const CatalogEntry& entry, int max_degree, double tol) {
    if (entry.suggested_alpha) return make_calculus(entry.subspace, *entry.suggested_alpha, max_degree, tol);
    return make_calculus(entry.subspace, max_degree, tol);
}

}  // namespace ncg
