#include "ncg/io.hpp"

#include "ncg/errors.hpp"

#include <fstream>
#include <sstream>

namespace ncg {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        std::ostringstream os;
        os << where << ": missing field '" << key << "'";
        throw ParseError(os.str());
    }
    return j.at(key);
}

std::vector<double> numbers(const Json& j, const char* where) {
    if (!j.is_array()) throw ParseError(std::string(where) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(std::string(where) + ": expected a number");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("error writing '" + path + "'");
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Json matrix_to_json(const CMatrix& a) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json r = Json::array();
        Json s = Json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            r.push_back(a(i, k).real());
            s.push_back(a(i, k).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(s));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
    const Json& re = field(j, "re", "matrix");
    if (!re.is_array() || re.empty()) throw ParseError("matrix: 're' must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(numbers(re[0], "matrix row").size());
    CMatrix a = CMatrix::Zero(rows, cols);
    auto fill = [&](const Json& part, bool imag) {
        if (!part.is_array() || static_cast<Eigen::Index>(part.size()) != rows)
            throw ShapeError("matrix: 're' and 'im' row counts differ");
        for (Eigen::Index i = 0; i < rows; ++i) {
            const auto row = numbers(part[static_cast<std::size_t>(i)], "matrix row");
            if (static_cast<Eigen::Index>(row.size()) != cols) throw ShapeError("matrix: ragged rows");
            for (Eigen::Index k = 0; k < cols; ++k) {
                if (imag)
                    a(i, k).imag(row[static_cast<std::size_t>(k)]);
                else
                    a(i, k).real(row[static_cast<std::size_t>(k)]);
            }
        }
    };
    fill(re, false);
    if (j.contains("im")) fill(j.at("im"), true);
    return a;
}

Json vector_to_json(const CVector& v) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CVector vector_from_json(const Json& j) {
    const auto re = numbers(field(j, "re", "vector"), "vector");
    CVector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = re[i];
    if (j.contains("im")) {
        const auto im = numbers(j.at("im"), "vector");
        if (im.size() != re.size()) throw ShapeError("vector: 're' and 'im' lengths differ");
        for (std::size_t i = 0; i < im.size(); ++i) v(static_cast<Eigen::Index>(i)).imag(im[i]);
    }
    return v;
}

Json algebra_to_json(const AlgebraFile& a) {
    Json j{{"m", a.m}, {"label", a.label}};
    Json basis = Json::array();
    for (const auto& l : a.basis) basis.push_back(matrix_to_json(l));
    j["basis"] = std::move(basis);
    if (a.alpha) {
        Json cols = Json::array();
        for (Eigen::Index c = 0; c < a.alpha->cols(); ++c) cols.push_back(vector_to_json(a.alpha->col(c)));
        j["alpha"] = std::move(cols);
    }
    return j;
}

AlgebraFile algebra_from_json(const Json& j) {
    AlgebraFile a;
    const Json& m = field(j, "m", "algebra");
    if (!m.is_number_integer()) throw ParseError("algebra: 'm' must be an integer");
    a.m = m.get<int>();
    if (a.m < 1) throw ShapeError("algebra: 'm' must be positive");
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw ParseError("algebra: 'label' must be a string");
        a.label = j.at("label").get<std::string>();
    }
    const Json& basis = field(j, "basis", "algebra");
    if (!basis.is_array() || basis.empty()) throw ParseError("algebra: 'basis' must be a non-empty array");
    for (const auto& b : basis) {
        CMatrix l = matrix_from_json(b);
        if (l.rows() != a.m || l.cols() != a.m) {
            std::ostringstream os;
            os << "algebra: basis element " << a.basis.size() << " is " << l.rows() << "x" << l.cols()
               << ", expected " << a.m << "x" << a.m;
            throw ShapeError(os.str());
        }
        a.basis.push_back(std::move(l));
    }
    if (j.contains("alpha") && !j.at("alpha").is_null()) {
        const Json& cols = j.at("alpha");
        if (!cols.is_array() || cols.empty()) throw ParseError("algebra: 'alpha' must be a non-empty array of columns");
        const auto n2 = static_cast<Eigen::Index>(a.basis.size() * a.basis.size());
        CMatrix alpha(n2, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const CVector v = vector_from_json(cols[c]);
            if (v.size() != n2) throw ShapeError("algebra: alpha columns must have length n^2");
            alpha.col(static_cast<Eigen::Index>(c)) = v;
        }
        a.alpha = std::move(alpha);
    }
    return a;
}

CMatrix transform_from_json(const Json& j) {
    if (j.is_object() && j.contains("u")) return matrix_from_json(j.at("u"));
    return matrix_from_json(j);
}

Json form_to_json(const Form& xi, double zero_tol) {
    const TowerPtr& t = xi.tower();
    const int p = xi.degree();
    Json coeffs = Json::array();
    for (std::size_t flat = 0; flat < ipow(t->n(), p); ++flat) {
        const CMatrix c = xi.coefficient(flat);
        if (c.cwiseAbs().maxCoeff() <= zero_tol) continue;
        Json idx = Json::array();
        for (int b : unflatten_index(flat, t->n(), p)) idx.push_back(b + 1);
        coeffs.push_back(Json{{"index", std::move(idx)}, {"matrix", matrix_to_json(c)}});
    }
    return Json{{"degree", p}, {"coefficients", std::move(coeffs)}};
}

Form form_from_json(const TowerPtr& tower, const Json& j) {
    const Json& deg = field(j, "degree", "form");
    if (!deg.is_number_integer()) throw ParseError("form: 'degree' must be an integer");
    const int p = deg.get<int>();
    std::vector<std::pair<std::vector<int>, CMatrix>> terms;
    const Json& coeffs = field(j, "coefficients", "form");
    if (!coeffs.is_array()) throw ParseError("form: 'coefficients' must be an array");
    for (const auto& entry : coeffs) {
        const Json& idx = field(entry, "index", "form coefficient");
        if (!idx.is_array()) throw ParseError("form: 'index' must be an array");
        std::vector<int> tuple;
        for (const auto& b : idx) {
            if (!b.is_number_integer()) throw ParseError("form: index entries must be integers");
            tuple.push_back(b.get<int>() - 1);
        }
        terms.emplace_back(std::move(tuple), matrix_from_json(field(entry, "matrix", "form coefficient")));
    }
    return Form::from_terms(tower, p, terms);
}

}  // namespace ncg
