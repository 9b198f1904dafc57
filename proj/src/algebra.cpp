#include "qgroupoid/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

AlgebraElement::AlgebraElement(GroupoidPtr groupoid) : groupoid_(std::move(groupoid)) {
    if (!groupoid_) throw ValidationError("algebra element needs a groupoid");
    coefficients_.assign(groupoid_->element_count(), Complex{});
}

AlgebraElement::AlgebraElement(GroupoidPtr groupoid, std::vector<Complex> coefficients)
    : groupoid_(std::move(groupoid)), coefficients_(std::move(coefficients)) {
    if (!groupoid_) throw ValidationError("algebra element needs a groupoid");
    if (coefficients_.size() != groupoid_->element_count())
        throw ValidationError("algebra element has " + std::to_string(coefficients_.size()) +
                              " coefficients for " + std::to_string(groupoid_->element_count()) + " elements");
}

AlgebraElement AlgebraElement::delta(GroupoidPtr groupoid, ElementId e, Complex c) {
    AlgebraElement a(std::move(groupoid));
    a[e] = c;
    return a;
}

AlgebraElement AlgebraElement::delta(GroupoidPtr groupoid, std::string_view label, Complex c) {
    const auto e = groupoid->element(label);
    return delta(std::move(groupoid), e, c);
}

AlgebraElement AlgebraElement::from_lagrangian(const QLagrangian& ell) {
    return AlgebraElement(ell.groupoid(), ell.values());
}

void require_same_groupoid(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.groupoid() == b.groupoid()) return;
    if (*a.groupoid() == *b.groupoid() && a.groupoid()->data().elements == b.groupoid()->data().elements) return;
    throw GroupoidMismatchError("algebra elements live on different groupoids");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    require_same_groupoid(*this, other);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    require_same_groupoid(*this, other);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
    for (auto& c : coefficients_) c *= scalar;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return convolve(a, b); }

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    try {
        require_same_groupoid(a, b);
    } catch (const GroupoidMismatchError&) {
        return false;
    }
    return a.coefficients_ == b.coefficients_;
}

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_groupoid(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        worst = std::max(worst, std::abs(a.coefficients()[i] - b.coefficients()[i]));
    return worst;
}

AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_groupoid(a, b);
    const auto& g = *a.groupoid();
    AlgebraElement out(a.groupoid());
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] == Complex{}) continue;
        const auto alpha = element_id(i);
        // α∘β needs target(β) = source(α)
        for (std::size_t j = 0; j < cb.size(); ++j) {
            if (cb[j] == Complex{}) continue;
            if (auto gamma = g.try_compose(alpha, element_id(j))) out[*gamma] += ca[i] * cb[j];
        }
    }
    return out;
}

AlgebraElement algebra_unit(const GroupoidPtr& g) {
    AlgebraElement one(g);
    for (std::size_t a = 0; a < g->outcome_count(); ++a) one[g->unit(outcome_id(a))] = 1.0;
    return one;
}

AlgebraElement involute(const AlgebraElement& a) {
    const auto& g = *a.groupoid();
    AlgebraElement out(a.groupoid());
    for (std::size_t i = 0; i < g.element_count(); ++i)
        out[g.inverse(element_id(i))] = std::conj(a.coefficients()[i]);
    return out;
}

bool is_observable(const AlgebraElement& a, double tol) { return max_abs_difference(a, involute(a)) <= tol; }

Eigen::MatrixXcd fundamental_rep(const AlgebraElement& a) {
    const auto& g = *a.groupoid();
    const auto n = static_cast<Eigen::Index>(g.outcome_count());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < g.element_count(); ++i) {
        const auto e = element_id(i);
        m(static_cast<Eigen::Index>(index(g.target(e))), static_cast<Eigen::Index>(index(g.source(e)))) +=
            a.coefficients()[i];
    }
    return m;
}

AlgebraElement from_representation(const GroupoidPtr& g, const Eigen::MatrixXcd& m, double tol) {
    if (!g->is_principal())
        throw ValidationError("fundamental representation is not injective on this groupoid; pull-back refused");
    const auto n = g->outcome_count();
    if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
        throw ValidationError("matrix size does not match the outcome count");
    AlgebraElement out(g);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            const Complex v = m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            const auto between = g->transitions_between(outcome_id(col), outcome_id(row));
            if (between.empty()) {
                if (std::abs(v) > tol)
                    throw ValidationError("matrix has support at (" + g->outcome_label(outcome_id(row)) + ", " +
                                          g->outcome_label(outcome_id(col)) + ") where no transition exists");
                continue;
            }
            out[between.front()] = v;
        }
    }
    return out;
}

double operator_norm(const AlgebraElement& a) {
    const Eigen::MatrixXcd m = fundamental_rep(a);
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
    return convolve(a, b) - convolve(b, a);
}

AlgebraElement heisenberg_rhs(const AlgebraElement& a, const AlgebraElement& h, double hbar, double tol) {
    if (!is_observable(h, tol)) throw ValidationError("hamiltonian element is not self-adjoint");
    return Complex(0.0, hbar) * commutator(a, h);
}

Eigen::MatrixXcd hermitian_phase_exponential(const Eigen::MatrixXcd& h, double s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const Eigen::VectorXd& w = eig.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, s * w(k));
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

AlgebraElement evolve_observable(const AlgebraElement& a, const AlgebraElement& h, double t, double hbar,
                                 double tol) {
    require_same_groupoid(a, h);
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!is_observable(h, tol)) throw ValidationError("hamiltonian element is not self-adjoint");
    if (!a.groupoid()->is_principal())
        throw ValidationError("fundamental representation is not injective on this groupoid; evolution refused");
    const Eigen::MatrixXcd e = hermitian_phase_exponential(fundamental_rep(h), t / hbar);
    const Eigen::MatrixXcd evolved = e * fundamental_rep(a) * e.adjoint();
    return from_representation(a.groupoid(), evolved, std::max(tol, 1e-9 * (1.0 + evolved.norm())));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd w, double tol) : w_(std::move(w)) {
    if (w_.rows() != w_.cols()) throw ValidationError("density matrix must be square");
    if ((w_ - w_.adjoint()).cwiseAbs().maxCoeff() > tol) throw ValidationError("density matrix is not Hermitian");
    if (std::abs(w_.trace() - Complex(1.0)) > tol) throw ValidationError("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol) throw ValidationError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const double norm2 = psi.amplitudes.squaredNorm();
    if (norm2 == 0.0) throw ValidationError("pure state needs a nonzero vector");
    return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint() / norm2);
}

Complex state_expectation(const StateVector& psi, const AlgebraElement& a) {
    const double norm2 = psi.amplitudes.squaredNorm();
    if (norm2 == 0.0) throw ValidationError("pure state needs a nonzero vector");
    const Eigen::MatrixXcd m = fundamental_rep(a);
    if (m.rows() != psi.amplitudes.size()) throw ValidationError("state dimension does not match the outcome count");
    return psi.amplitudes.dot(m * psi.amplitudes) / norm2;
}

Complex state_expectation(const DensityMatrix& w, const AlgebraElement& a) {
    const Eigen::MatrixXcd m = fundamental_rep(a);
    if (m.rows() != w.matrix().rows()) throw ValidationError("state dimension does not match the outcome count");
    return (w.matrix() * m).trace();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view text, std::size_t line) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError("expected a real number, got '" + std::string(text) + "'", line, 1);
    return value;
}

}  // namespace

std::string format_element(const AlgebraElement& a) {
    std::ostringstream out;
    out.precision(17);
    const auto& g = *a.groupoid();
    for (std::size_t i = 0; i < g.element_count(); ++i) {
        const Complex c = a.coefficients()[i];
        if (c == Complex{}) continue;
        out << g.element_label(element_id(i)) << " = " << c.real() << "," << c.imag() << "\n";
    }
    return out.str();
}

AlgebraElement parse_element(const GroupoidPtr& g, std::string_view text) {
    AlgebraElement out(g);
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.rfind('=');
        if (eq == std::string_view::npos) throw ParseError("expected NAME = re,im", line_no, 1);
        const auto name = trim(line.substr(0, eq));
        const auto value = line.substr(eq + 1);
        const auto comma = value.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected re,im", line_no, eq + 2);
        const auto e = g->find_element(name);
        if (!e) throw ParseError("unknown element '" + std::string(name) + "'", line_no, 1);
        out[*e] = Complex(parse_real(value.substr(0, comma), line_no), parse_real(value.substr(comma + 1), line_no));
    }
    return out;
}

}  // namespace qgroupoid
