#include "ncg/calculus.hpp"

#include "ncg/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace ncg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DegreeSpace trivial_space(int p, int n, ProjectorKind kind) {
    DegreeSpace s;
    s.degree = p;
    s.dimension = ipow(n, p);
    s.kind = kind;
    s.rank = kind == ProjectorKind::identity ? static_cast<int>(s.dimension) : 0;
    s.spectral_gap = kInf;
    if (kind == ProjectorKind::zero) {
        const auto dim = static_cast<Eigen::Index>(s.dimension);
        s.relation_basis = CMatrix::Identity(dim, dim);
    } else {
        s.relation_basis = CMatrix::Zero(static_cast<Eigen::Index>(s.dimension), 0);
    }
    return s;
}

// Pi_p is the projector onto the common kernel of the lifted pair-relation projectors, i.e. the
// kernel of their (positive semidefinite) sum.
DegreeSpace dense_space(int p, int n, const CMatrix& pair_relation, double tol) {
    DegreeSpace s;
    s.degree = p;
    s.dimension = ipow(n, p);
    s.kind = ProjectorKind::dense;
    const auto dim = static_cast<Eigen::Index>(s.dimension);

    CMatrix sum = CMatrix::Zero(dim, dim);
    for (int q = 0; q + 1 < p; ++q) sum += lift_to_slots(pair_relation, n, p, q);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(sum);
    const RVector& ev = es.eigenvalues();  // ascending
    const double threshold = tol * std::max(1.0, ev(dim - 1));
    Eigen::Index kernel = 0;
    while (kernel < dim && ev(kernel) <= threshold) ++kernel;

    s.rank = static_cast<int>(kernel);
    const CMatrix basis = es.eigenvectors().leftCols(kernel);
    s.projector = basis * basis.adjoint();
    s.relation_basis = es.eigenvectors().rightCols(dim - kernel);
    if (kernel == 0 || kernel == dim) {
        s.spectral_gap = kInf;
    } else {
        const double top_kernel = std::abs(ev(kernel - 1));
        s.spectral_gap = top_kernel > 0.0 ? ev(kernel) / top_kernel : kInf;
    }
    return s;
}

std::size_t m2(const FormTower& t) { return static_cast<std::size_t>(t.m()) * t.m(); }

CMatrix row_matrix(const CMatrix& coeffs, Eigen::Index row, int m) {
    CMatrix out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = coeffs(row, i * m + j);
    return out;
}

void set_row(CMatrix& coeffs, Eigen::Index row, const CMatrix& f) {
    const auto m = f.rows();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) coeffs(row, i * m + j) = f(i, j);
}

void require_degree(const FormTower& t, int p, const char* where) {
    if (p < 0 || p > t.max_degree()) {
        std::ostringstream os;
        os << where << ": degree " << p << " outside tower range [0, " << t.max_degree() << "]";
        throw DegreeError(os.str());
    }
}

}  // namespace

// ---------------------------------------------------------------- FormTower

const DegreeSpace& FormTower::space(int p) const {
    require_degree(*this, p, "FormTower::space");
    return spaces_[static_cast<std::size_t>(p)];
}

std::vector<int> FormTower::ranks() const {
    std::vector<int> out;
    for (int p = 1; p <= max_degree_; ++p) out.push_back(rank(p));
    return out;
}

CMatrix FormTower::projector(int p) const {
    const DegreeSpace& s = space(p);
    const auto dim = static_cast<Eigen::Index>(s.dimension);
    switch (s.kind) {
        case ProjectorKind::identity: return CMatrix::Identity(dim, dim);
        case ProjectorKind::zero: return CMatrix::Zero(dim, dim);
        case ProjectorKind::dense: break;
    }
    return s.projector;
}

Complex FormTower::projector_entry(int p, std::size_t row, std::size_t col) const {
    const DegreeSpace& s = space(p);
    if (row >= s.dimension || col >= s.dimension) throw IndexError("projector_entry out of range");
    switch (s.kind) {
        case ProjectorKind::identity: return row == col ? Complex{1.0} : Complex{};
        case ProjectorKind::zero: return {};
        case ProjectorKind::dense: break;
    }
    return s.projector(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

void FormTower::canonicalize(int p, CMatrix& coefficients) const {
    const DegreeSpace& s = space(p);
    switch (s.kind) {
        case ProjectorKind::identity: return;
        case ProjectorKind::zero: coefficients.setZero(); return;
        case ProjectorKind::dense: coefficients = (s.projector * coefficients).eval(); return;
    }
}

TowerPtr build_tower(Subspace b, DualData d, GAStructure g, int max_degree, double tol) {
    if (max_degree < 1) throw ParameterError("build_tower: max_degree must be at least 1");
    const int n = b.n();
    auto tower = std::shared_ptr<FormTower>(new FormTower(std::move(b), std::move(d), std::move(g), max_degree, tol));

    tower->spaces_.push_back(trivial_space(0, n, ProjectorKind::identity));
    tower->spaces_.push_back(trivial_space(1, n, ProjectorKind::identity));
    if (max_degree >= 2) {
        const int R = tower->structure_.R;
        if (R == n * n) {
            for (int p = 2; p <= max_degree; ++p) tower->spaces_.push_back(trivial_space(p, n, ProjectorKind::identity));
        } else if (R == 0) {
            for (int p = 2; p <= max_degree; ++p) tower->spaces_.push_back(trivial_space(p, n, ProjectorKind::zero));
        } else {
            const auto nn = static_cast<Eigen::Index>(n) * n;
            const CMatrix pair_relation = CMatrix::Identity(nn, nn) - tower->structure_.P.conjugate();
            for (int p = 2; p <= max_degree; ++p) tower->spaces_.push_back(dense_space(p, n, pair_relation, tol));
        }
    }
    return tower;
}

TowerPtr make_calculus(const Subspace& b, int max_degree, double tol) {
    DualData d = dual_data(b, tol);
    GAStructure g = analyze_relations(b, d, tol);
    return build_tower(b, std::move(d), std::move(g), max_degree, tol);
}

TowerPtr make_calculus(const Subspace& b, const CMatrix& alpha, int max_degree, double tol) {
    DualData d = dual_data(b, tol);
    GAStructure g = use_relations(b, d, alpha, tol);
    return build_tower(b, std::move(d), std::move(g), max_degree, tol);
}

// ---------------------------------------------------------------- Form

Form::Form(TowerPtr tower, int degree, CMatrix coefficients)
    : Form(std::move(tower), degree, std::move(coefficients), Trusted{}) {
    tower_->canonicalize(degree_, coeffs_);
}

Form::Form(TowerPtr tower, int degree, CMatrix coefficients, Trusted)
    : tower_(std::move(tower)), degree_(degree), coeffs_(std::move(coefficients)) {
    if (!tower_) throw ConfigError("Form: null tower");
    require_degree(*tower_, degree_, "Form");
    if (static_cast<std::size_t>(coeffs_.rows()) != ipow(tower_->n(), degree_) ||
        static_cast<std::size_t>(coeffs_.cols()) != m2(*tower_)) {
        std::ostringstream os;
        os << "Form: coefficient table must be " << ipow(tower_->n(), degree_) << " x " << m2(*tower_)
           << ", got " << coeffs_.rows() << " x " << coeffs_.cols();
        throw ShapeError(os.str());
    }
}

Form Form::zero(TowerPtr tower, int degree) {
    if (!tower) throw ConfigError("Form::zero: null tower");
    require_degree(*tower, degree, "Form::zero");
    const auto rows = static_cast<Eigen::Index>(ipow(tower->n(), degree));
    const auto cols = static_cast<Eigen::Index>(m2(*tower));
    return Form(std::move(tower), degree, CMatrix::Zero(rows, cols), Trusted{});
}

Form Form::function(TowerPtr tower, const CMatrix& f) {
    if (!tower) throw ConfigError("Form::function: null tower");
    if (f.rows() != tower->m() || f.cols() != tower->m()) throw ShapeError("Form::function: wrong matrix size");
    CMatrix c(1, static_cast<Eigen::Index>(m2(*tower)));
    set_row(c, 0, f);
    return Form(std::move(tower), 0, std::move(c), Trusted{});
}

Form Form::from_terms(TowerPtr tower, int degree,
                      const std::vector<std::pair<std::vector<int>, CMatrix>>& terms) {
    Form out = zero(tower, degree);
    for (const auto& [tuple, f] : terms) {
        if (static_cast<int>(tuple.size()) != degree) throw IndexError("from_terms: tuple arity mismatch");
        if (f.rows() != tower->m() || f.cols() != tower->m()) throw ShapeError("from_terms: wrong matrix size");
        const auto row = static_cast<Eigen::Index>(flatten_index(tuple, tower->n()));
        out.coeffs_.row(row) += vec(f).transpose();
    }
    return Form(std::move(tower), degree, std::move(out.coeffs_));
}

CMatrix Form::coefficient(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != degree_) throw IndexError("coefficient: tuple arity mismatch");
    return coefficient(flatten_index(tuple, tower_->n()));
}

CMatrix Form::coefficient(std::size_t flat) const {
    if (flat >= static_cast<std::size_t>(coeffs_.rows())) throw IndexError("coefficient: index out of range");
    return row_matrix(coeffs_, static_cast<Eigen::Index>(flat), tower_->m());
}

double Form::max_norm() const {
    if (coeffs_.size() == 0) return 0.0;
    return coeffs_.rowwise().norm().maxCoeff();
}

Form Form::left_multiply(const CMatrix& f) const {
    const int m = tower_->m();
    if (f.rows() != m || f.cols() != m) throw ShapeError("left_multiply: wrong matrix size");
    // row-major vec(f c) = (f (x) 1) vec(c)
    const CMatrix op = kron(f, CMatrix::Identity(m, m));
    return Form(tower_, degree_, coeffs_ * op.transpose(), Trusted{});
}

Form Form::right_multiply(const CMatrix& f) const {
    const int m = tower_->m();
    if (f.rows() != m || f.cols() != m) throw ShapeError("right_multiply: wrong matrix size");
    // row-major vec(c f) = (1 (x) f^T) vec(c)
    const CMatrix op = kron(CMatrix::Identity(m, m), f);
    return Form(tower_, degree_, coeffs_ * op, Trusted{});
}

void Form::check_compatible(const Form& other) const {
    if (tower_ != other.tower_) throw ConfigError("forms belong to different towers");
    if (degree_ != other.degree_) throw DegreeError("forms have different degrees");
}

Form Form::operator+(const Form& other) const {
    check_compatible(other);
    return Form(tower_, degree_, coeffs_ + other.coeffs_, Trusted{});
}

Form Form::operator-(const Form& other) const {
    check_compatible(other);
    return Form(tower_, degree_, coeffs_ - other.coeffs_, Trusted{});
}

Form Form::operator-() const { return Form(tower_, degree_, -coeffs_, Trusted{}); }

Form Form::operator*(Complex s) const { return Form(tower_, degree_, s * coeffs_, Trusted{}); }

double distance(const Form& a, const Form& b) { return (a - b).max_norm(); }

Form random_form(const TowerPtr& tower, int degree, Rng& rng) {
    require_degree(*tower, degree, "random_form");
    const auto rows = static_cast<int>(ipow(tower->n(), degree));
    return Form(tower, degree, rng.matrix(rows, tower->m() * tower->m()));
}

Form coframe(const TowerPtr& tower, int a) {
    if (a < 0 || a >= tower->n()) throw IndexError("coframe: index " + std::to_string(a) + " out of range");
    const std::vector<int> tuple{a};
    return Form::from_terms(tower, 1, {{tuple, CMatrix::Identity(tower->m(), tower->m())}});
}

Form theta(const TowerPtr& tower) {
    std::vector<std::pair<std::vector<int>, CMatrix>> terms;
    for (int a = 0; a < tower->n(); ++a) terms.push_back({{a}, -tower->subspace().lambda(a)});
    return Form::from_terms(tower, 1, terms);
}

// ---------------------------------------------------------------- products and derivatives

Form wedge(const Form& xi, const Form& zeta) {
    if (xi.tower() != zeta.tower()) throw ConfigError("wedge: forms belong to different towers");
    const TowerPtr& t = xi.tower();
    const int p = xi.degree() + zeta.degree();
    if (p > t->max_degree()) {
        std::ostringstream os;
        os << "wedge: degree " << p << " exceeds tower max " << t->max_degree();
        throw DegreeError(os.str());
    }
    const int m = t->m();
    const CMatrix& a = xi.coefficients();
    const CMatrix& b = zeta.coefficients();
    CMatrix out(a.rows() * b.rows(), static_cast<Eigen::Index>(m) * m);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const CMatrix fi = row_matrix(a, i, m);
        for (Eigen::Index j = 0; j < b.rows(); ++j)
            set_row(out, i * b.rows() + j, fi * row_matrix(b, j, m));
    }
    return Form(t, p, std::move(out));
}

Form graded_commutator(const Form& xi, const Form& zeta) {
    const bool odd = (xi.degree() * zeta.degree()) % 2 == 1;
    const Form ab = wedge(xi, zeta);
    const Form ba = wedge(zeta, xi);
    return odd ? ab + ba : ab - ba;
}

CMatrix contract(const Form& xi, std::span<const int> b) {
    const TowerPtr& t = xi.tower();
    if (static_cast<int>(b.size()) != xi.degree()) throw IndexError("contract: arity mismatch");
    const std::size_t col = flatten_index(b, t->n());
    const DegreeSpace& s = t->space(xi.degree());
    const int m = t->m();
    if (s.kind == ProjectorKind::identity) return xi.coefficient(col);
    CMatrix out = CMatrix::Zero(m, m);
    if (s.kind == ProjectorKind::zero) return out;
    const CMatrix& c = xi.coefficients();
    CVector acc = CVector::Zero(c.cols());
    for (Eigen::Index a = 0; a < c.rows(); ++a)
        acc += t->contraction_entry(xi.degree(), static_cast<std::size_t>(a), col) * c.row(a).transpose();
    return unvec(acc, m, m);
}

Form chi(const Form& xi) {
    const TowerPtr& t = xi.tower();
    const int p = xi.degree();
    if (p + 1 > t->max_degree()) throw DegreeError("chi: result degree exceeds tower");
    const int n = t->n();
    const Tensor3& F = t->structure().sc.F;
    const CMatrix& c = xi.coefficients();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(ipow(n, p + 1)), c.cols());

    for (int q = 0; q < p; ++q) {
        const double sign = (q % 2 == 0) ? -1.0 : 1.0;  // (-1)^{q+1} with q counted from 0
        const std::size_t tail = ipow(n, p - q - 1);
        for (Eigen::Index a = 0; a < c.rows(); ++a) {
            const auto flat = static_cast<std::size_t>(a);
            const std::size_t lo = flat % tail;
            const std::size_t aq = (flat / tail) % static_cast<std::size_t>(n);
            const std::size_t hi = flat / (tail * n);
            for (int b = 0; b < n; ++b)
                for (int cc = 0; cc < n; ++cc) {
                    const Complex k = F(static_cast<int>(aq), b, cc);
                    if (k == Complex{}) continue;
                    const std::size_t row = ((hi * n + b) * n + cc) * tail + lo;
                    out.row(static_cast<Eigen::Index>(row)) += (sign * k) * c.row(a);
                }
        }
    }
    return Form(t, p + 1, std::move(out));
}

Form exterior_d(const Form& xi) {
    const TowerPtr& t = xi.tower();
    if (xi.degree() + 1 > t->max_degree()) {
        std::ostringstream os;
        os << "exterior_d: degree " << xi.degree() + 1 << " exceeds tower max " << t->max_degree();
        throw DegreeError(os.str());
    }
    return chi(xi) - graded_commutator(theta(t), xi);
}

// ---------------------------------------------------------------- epsilon system

EpsilonResult epsilon_check(const GAStructure& g, int p, double tol) {
    if (p < 3) throw ParameterError("epsilon_check: degree must be at least 3");
    const int n = g.n;
    const int R = g.R;
    EpsilonResult res;
    const std::size_t rest = ipow(n, p - 2);
    res.unknowns = static_cast<std::size_t>(p - 1) * rest * static_cast<std::size_t>(R);
    if (R == 0) {
        res.spectral_gap = kInf;
        return res;
    }
    const std::size_t full = ipow(n, p);
    CMatrix sys = CMatrix::Zero(static_cast<Eigen::Index>(static_cast<std::size_t>(p - 2) * full),
                                static_cast<Eigen::Index>(res.unknowns));

    // T_t(A) = sum_r alpha^{a_t a_{t+1}}_r eps_{r t}(A without slots t, t+1)
    auto add_expansion = [&](Eigen::Index row, int slot, const std::vector<int>& tuple, double sign) {
        const std::size_t pair = static_cast<std::size_t>(tuple[slot]) * n + tuple[slot + 1];
        std::size_t remaining = 0;
        for (int s = 0; s < p; ++s)
            if (s != slot && s != slot + 1) remaining = remaining * n + static_cast<std::size_t>(tuple[s]);
        for (int r = 0; r < R; ++r) {
            const std::size_t col = (static_cast<std::size_t>(slot) * rest + remaining) * R + r;
            sys(row, static_cast<Eigen::Index>(col)) += sign * g.alpha(static_cast<Eigen::Index>(pair), r);
        }
    };

    for (std::size_t flat = 0; flat < full; ++flat) {
        const std::vector<int> tuple = unflatten_index(flat, n, p);
        for (int t = 0; t + 2 < p; ++t) {
            const auto row = static_cast<Eigen::Index>(static_cast<std::size_t>(t) * full + flat);
            add_expansion(row, t, tuple, 1.0);
            add_expansion(row, t + 1, tuple, -1.0);
        }
    }

    const RankResult rr = rank_nullspace(sys, tol);
    res.solution_dimension = static_cast<int>(rr.nullspace_basis.size());
    res.exists = res.solution_dimension > 0;
    res.spectral_gap = rr.spectral_gap;
    if (res.exists) res.solution = rr.nullspace_basis.front();
    return res;
}

// ---------------------------------------------------------------- structure equations

StructureEquationReport check_structure_equations(const TowerPtr& tower, double tol) {
    if (tower->max_degree() < 2) throw ParameterError("check_structure_equations: needs max_degree >= 2");
    const int n = tower->n();
    const int m = tower->m();
    const StructureConstants& sc = tower->structure().sc;
    StructureEquationReport rep;
    rep.tolerance = tol * std::max(1.0, sc.product_scale);

    const Form th = theta(tower);
    std::vector<std::pair<std::vector<int>, CMatrix>> trace_terms;
    std::vector<std::pair<std::vector<int>, CMatrix>> rho_terms;
    const CMatrix id = CMatrix::Identity(m, m);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            trace_terms.push_back({{a, c}, (sc.t(a, c) / static_cast<double>(m)) * id});
            rho_terms.push_back({{a, c}, sc.rho[static_cast<std::size_t>(a) * n + c]});
        }
    const Form trace_form = Form::from_terms(tower, 2, trace_terms);
    rep.dtheta_residual = (exterior_d(th) + wedge(th, th) + trace_form).max_norm();
    rep.eta_relation_residual = Form::from_terms(tower, 2, rho_terms).max_norm();

    const std::vector<CMatrix> gamma = elementary_basis(m);
    const std::vector<CMatrix> gamma_dual = matrix_dual_basis(gamma, tol);
    for (int a = 0; a < n; ++a) {
        const Form ta = coframe(tower, a);
        const Form dta = exterior_d(ta);

        std::vector<std::pair<std::vector<int>, CMatrix>> f_terms;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) f_terms.push_back({{p, q}, sc.F(a, p, q) * id});
        const Form expected = -graded_commutator(th, ta) - Form::from_terms(tower, 2, f_terms);
        rep.dtheta_a_residual = std::max(rep.dtheta_a_residual, distance(dta, expected));

        // d(theta^a) through d(gamma_nu lambda^a^dag) d(gamma^nu^dag): only d on functions is used
        const CMatrix lam_dag = tower->duals().duals[static_cast<std::size_t>(a)].adjoint();
        Form route = Form::zero(tower, 2);
        for (std::size_t nu = 0; nu < gamma.size(); ++nu) {
            const Form left = exterior_d(Form::function(tower, gamma[nu] * lam_dag));
            const Form right = exterior_d(Form::function(tower, gamma_dual[nu].adjoint()));
            route = route + wedge(left, right);
        }
        rep.formula_route_residual = std::max(rep.formula_route_residual, distance(dta, route));
    }
    return rep;
}

CoframeFormulaResult coframe_from_formula(const TowerPtr& tower, const std::vector<CMatrix>& gamma) {
    const int m = tower->m();
    const std::vector<CMatrix> gamma_dual = matrix_dual_basis(gamma, tower->tol());
    CoframeFormulaResult res;

    std::vector<Form> d_dual;  // d(gamma^nu^dag)
    d_dual.reserve(gamma.size());
    for (const CMatrix& gd : gamma_dual) d_dual.push_back(exterior_d(Form::function(tower, gd.adjoint())));

    for (int a = 0; a < tower->n(); ++a) {
        const CMatrix lam_dag = tower->duals().duals[static_cast<std::size_t>(a)].adjoint();
        Form acc = Form::zero(tower, 1);
        for (std::size_t nu = 0; nu < gamma.size(); ++nu) acc = acc + d_dual[nu].left_multiply(gamma[nu] * lam_dag);
        res.coframe_residual = std::max(res.coframe_residual, distance(acc, coframe(tower, a)));
        res.coframes.push_back(std::move(acc));
    }

    Form th = Form::zero(tower, 1);
    for (std::size_t mu = 0; mu < gamma.size(); ++mu) th = th + d_dual[mu].left_multiply(gamma[mu]);
    th = th * Complex(1.0 / m);
    res.theta_residual = distance(th, theta(tower));
    res.theta = std::move(th);
    return res;
}

}  // namespace ncg
