#include "ncg/catalog.hpp"
#include "ncg/errors.hpp"
#include "ncg/maps.hpp"
#include "ncg/universal.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace ncg;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what;
            pass = false;
        }
    }
};

double rel(const Form& a, const Form& b) { return distance(a, b) / std::max({1.0, a.max_norm(), b.max_norm()}); }

std::string str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::vector<CatalogEntry> catalog_instances() {
    std::vector<CatalogEntry> out;
    for (int m : {2, 3}) out.push_back(universal_a0(m));
    for (int m : {2, 3, 4}) out.push_back(su2(m));
    for (int m : {3, 4, 5}) out.push_back(clock_shift(m));
    for (int m : {3, 4, 5}) out.push_back(fuzzy_ellipsoid(m, 1.0, default_ellipsoid_coefficients()));
    return out;
}

std::string tag(const CatalogEntry& e) { return e.name + " m=" + e.parameters.at("m"); }

std::vector<CMatrix> random_basis(int m, Rng& rng) {
    std::vector<CMatrix> out;
    for (int k = 0; k < m * m; ++k) out.push_back(rng.square(m));
    return out;
}

void clock_shift_criterion(Outcome& o) {
    double worst = 0.0;
    for (int m : {3, 4, 5}) {
        const TowerPtr t = make_calculus(clock_shift(m).subspace, 3);
        const std::string at = "m=" + std::to_string(m);
        o.require(t->structure().R == 1, "R != 1 at " + at);
        o.require(t->rank(2) == 1, "D_2 != 1 at " + at);
        const Complex q = std::polar(1.0, 2.0 * std::numbers::pi / m);
        const Form t1 = coframe(t, 0);
        const Form t2 = coframe(t, 1);
        const Form th = theta(t);
        const double rel_q = (wedge(t1, t2) * q + wedge(t2, t1)).max_norm();
        const double sq = std::max(wedge(t1, t1).max_norm(), wedge(t2, t2).max_norm());
        const double dtheta = (exterior_d(th) + wedge(th, th)).max_norm();
        double dtheta_a = 0.0;
        for (int a = 0; a < 2; ++a)
            dtheta_a = std::max(dtheta_a, (exterior_d(coframe(t, a)) + graded_commutator(th, coframe(t, a))).max_norm());
        for (double r : {rel_q, sq, dtheta, dtheta_a}) {
            o.require(r < 1e-9, "residual " + str(r) + " at " + at);
            worst = std::max(worst, r);
        }
    }
    o.detail << (o.pass ? "" : "; ") << "max residual " << str(worst);
}

void universal_criterion(Outcome& o) {
    for (int m : {2, 3}) {
        const int n = m * m - 1;
        const TowerPtr t = make_calculus(universal_a0(m).subspace, 3);
        const std::string at = "m=" + std::to_string(m);
        o.require(t->structure().R == n * n, "R != n^2 at " + at);
        o.require(t->ranks() == std::vector<int>{n, n * n, n * n * n}, "D_p != n^p at " + at);
        const double p_res = (t->structure().P - CMatrix::Identity(n * n, n * n)).cwiseAbs().maxCoeff();
        o.require(p_res < 1e-10, "P differs from identity by " + str(p_res) + " at " + at);
    }
    o.detail << "R = 9, 64; D = [3,9,27], [8,64,512]";
}

void su2_criterion(Outcome& o) {
    for (int m : {2, 3, 4}) {
        const CatalogEntry e = su2(m);
        const TowerPtr t = make_calculus(e.subspace, antisymmetric_relations(3), 4);
        const std::string at = "m=" + std::to_string(m);
        o.require(t->ranks() == std::vector<int>{3, 3, 1, 0}, "D != [3,3,1,0] at " + at);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double r = (wedge(coframe(t, a), coframe(t, b)) + wedge(coframe(t, b), coframe(t, a))).max_norm();
                o.require(r < 1e-9, "anticommutator " + str(r) + " at " + at);
            }
    }
    const CatalogEntry e3 = su2(3);
    const int auto_r = detect_relations(e3.subspace, dual_data(e3.subspace)).R;
    o.require(auto_r >= 4, "auto R at m=3 is " + std::to_string(auto_r));
    o.detail << (o.pass ? "" : "; ") << "auto-detected R at m=3: " << auto_r;
}

void ellipsoid_criterion(Outcome& o) {
    Rng rng(8);
    std::vector<CMatrix> coefs = {default_ellipsoid_coefficients(), rng.square(2), rng.square(2)};
    double worst = 0.0;
    for (int m : {3, 4, 5})
        for (const CMatrix& acoef : coefs) {
            const CatalogEntry e = fuzzy_ellipsoid(m, 1.0, acoef);
            const TowerPtr t = entry_calculus(e, 2);
            const std::string at = "m=" + std::to_string(m);
            o.require(t->rank(1) == 3 && t->rank(2) == 1, "D_1, D_2 wrong at " + at);
            // canonical theta^a theta^b / acoef(a, b) must be one and the same 2-form
            const Form ref = wedge(coframe(t, 0), coframe(t, 0)) * (1.0 / acoef(0, 0));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Form r = wedge(coframe(t, a), coframe(t, b)) * (1.0 / acoef(a, b));
                    const double res = rel(r, ref);
                    worst = std::max(worst, res);
                    o.require(res < 1e-8, "ratio mismatch " + str(res) + " at " + at);
                }
            o.require(ref.max_norm() > 1e-6, "2-form vanishes at " + at);
        }
    o.detail << (o.pass ? "" : "; ") << "max ratio residual " << str(worst);
}

void coframe_criterion(Outcome& o) {
    Rng rng(5);
    double worst = 0.0;
    int done = 0;
    while (done < 50) {
        const int m = 2 + static_cast<int>(rng.uniform() * 3);
        const int n = 1 + static_cast<int>(rng.uniform() * std::min(5, m * m - 1));
        std::vector<CMatrix> basis;
        for (int k = 0; k < n; ++k) basis.push_back(rng.traceless(m));
        const TowerPtr t = make_calculus(validate_subspace(m, basis), 2);
        for (const auto& gamma : {elementary_basis(m), random_basis(m, rng)}) {
            const CoframeFormulaResult r = coframe_from_formula(t, gamma);
            const double res = std::max(r.coframe_residual, r.theta_residual);
            worst = std::max(worst, res);
            o.require(res < 1e-8, "instance " + std::to_string(done) + " residual " + str(res));
        }
        ++done;
    }
    o.detail << (o.pass ? "" : "; ") << "50 subspaces, max residual " << str(worst);
}

void trace_lemma_criterion(Outcome& o) {
    Rng rng(6);
    double worst = 0.0;
    for (int m : {2, 3, 4})
        for (const auto& gamma : {elementary_basis(m), random_basis(m, rng)}) {
            const TraceLemmaReport r = verify_trace_lemma(gamma, 20, 600 + static_cast<std::uint64_t>(m));
            const double res = std::max(r.trace_residual, r.commutator_residual);
            worst = std::max(worst, res);
            o.require(res < 1e-10, "m=" + std::to_string(m) + " residual " + str(res));
        }
    o.detail << (o.pass ? "" : "; ") << "max residual " << str(worst);
}

void universal_identity_criterion(Outcome& o) {
    Rng rng(7);
    double worst = 0.0;
    for (int m : {2, 3}) {
        const UElement tu = theta_u(elementary_basis(m));
        for (int k = 0; k < 20; ++k) {
            const CMatrix f = rng.square(m);
            const double res = distance(commutator(tu, f).left_multiply(-CMatrix::Identity(m, m)), du(f));
            worst = std::max(worst, res);
            o.require(res < 1e-10, "m=" + std::to_string(m) + " residual " + str(res));
        }
    }
    o.detail << (o.pass ? "" : "; ") << "max residual " << str(worst);
}

void calculus_laws_criterion(Outcome& o) {
    Rng rng(9);
    double worst = 0.0;
    for (const CatalogEntry& e : catalog_instances()) {
        const TowerPtr t = entry_calculus(e, 3);
        for (int k = 0; k < 5; ++k) {
            for (int p = 0; p <= 1; ++p) {
                const Form xi = random_form(t, p, rng);
                const double res = exterior_d(exterior_d(xi)).max_norm() / std::max(1.0, xi.max_norm());
                worst = std::max(worst, res);
                o.require(res < 1e-8, "d^2 on " + tag(e) + ": " + str(res));
            }
            for (int p = 0; p <= 2; ++p)
                for (int q = 0; p + q <= 2; ++q) {
                    const Form a = random_form(t, p, rng);
                    const Form b = random_form(t, q, rng);
                    const Form lhs = exterior_d(wedge(a, b));
                    const Form rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * Complex(p % 2 ? -1.0 : 1.0);
                    const double res = rel(lhs, rhs);
                    worst = std::max(worst, res);
                    o.require(res < 1e-8, "Leibniz on " + tag(e) + ": " + str(res));
                }
        }
    }
    o.detail << (o.pass ? "" : "; ") << "13 entries, max relative residual " << str(worst);
}

void equivalence_criterion(Outcome& o) {
    Rng rng(10);
    double worst = 0.0;
    for (const CatalogEntry& e : catalog_instances()) {
        const TowerPtr t = entry_calculus(e, 3);
        for (int k = 0; k < 10; ++k) {
            const Conjugation c = make_conjugation(rng.invertible(e.subspace.m(), 50.0));
            const EquivalenceReport r = check_equivalence(c, t, 2, 1000 + static_cast<std::uint64_t>(k), 1e-8);
            worst = std::max({worst, r.coframe_residual, r.theta_residual, r.product_residual, r.d_residual});
            o.require(r.ok(), "equivalence failed on " + tag(e));
        }
    }
    o.detail << (o.pass ? "" : "; ") << "130 transforms, max residual " << str(worst);
}

void negative_controls_criterion(Outcome& o) {
    try {
        validate_subspace(2, {CMatrix::Identity(2, 2), gell_mann_basis(2)[0]});
        o.require(false, "identity-containing basis accepted");
    } catch (const TracelessViolation&) {
    }
    try {
        const CatalogEntry e = su2(3);
        CMatrix alpha = antisymmetric_relations(3);
        alpha(0, 0) = 1.0;
        use_relations(e.subspace, dual_data(e.subspace), alpha);
        o.require(false, "non-kernel relation accepted");
    } catch (const InvalidRelation&) {
    }
    Rng rng(11);
    double largest = 0.0;
    for (const CatalogEntry& e : {su2(3), clock_shift(4)}) {
        const TowerPtr t = entry_calculus(e, 2);
        for (int k = 0; k < 5; ++k) {
            const LinearMap phi = make_linear_map(e.subspace, e.subspace, rng.matrix(e.subspace.n(), e.subspace.n()));
            for (int p = 0; p <= 1; ++p) {
                const Form xi = random_form(t, p, rng);
                largest = std::max(largest, rel(pullback(phi, t, exterior_d(xi)), exterior_d(pullback(phi, t, xi))));
            }
        }
    }
    o.require(largest > 1e-3, "no generic linear map broke d-commutation");
    o.detail << (o.pass ? "" : "; ") << "largest generic-map defect " << str(largest);
}

void oracle_criterion(Outcome& o) {
    int count = 0;
    for (const auto& basis : oracle::instances()) {
        const int m = static_cast<int>(basis.front().rows());
        const Subspace b = validate_subspace(m, basis);
        const int numeric = detect_relations(b, dual_data(b)).R;
        const int exact = oracle::exact_relation_count(basis);
        o.require(numeric == exact, "instance " + std::to_string(count) + ": float R " + std::to_string(numeric) +
                                        " vs exact " + std::to_string(exact));
        ++count;
    }
    o.detail << (o.pass ? "" : "; ") << count << " instances agree";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"clock-shift pair: R = 1, D_2 = 1, q-relation and structure equations", clock_shift_criterion},
        {"all traceless matrices: R = n^2, D_p = n^p, P = identity", universal_criterion},
        {"su(2) spin-j: D = [3,3,1,0], anticommuting co-frame, Casimir relation detected", su2_criterion},
        {"fuzzy ellipsoid: D_1 = 3, D_2 = 1, 2-form ratios follow the coefficients", ellipsoid_criterion},
        {"co-frame formula on 50 random subspaces, two matrix bases", coframe_criterion},
        {"trace lemma and commutator identity", trace_lemma_criterion},
        {"universal identity -[theta_u, f] = d_u f", universal_identity_criterion},
        {"d^2 = 0 and graded Leibniz on every catalog entry", calculus_laws_criterion},
        {"conjugation equivalence for 10 random invertible u per entry", equivalence_criterion},
        {"negative controls", negative_controls_criterion},
        {"floating-point R equals exact rational R", oracle_criterion},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.str().c_str(), secs);
        if (!o.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
