#include "kmloop/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace kmloop {

LieBackend make_backend(char series, int n, double lambda) {
    if (series != 'A') throw InputError("make_backend: only the A-series (sl(n)) is supported");
    if (n < 2) throw InputError("make_backend: n must be >= 2");
    if (!(lambda > 0.0)) throw InputError("make_backend: lambda must be positive");
    return LieBackend{series, n, lambda};
}

bool same_backend(const LieBackend& a, const LieBackend& b) {
    return a.series == b.series && a.n == b.n && a.lambda == b.lambda;
}

void validate_element(const LieBackend& backend, const Matrix& x) {
    if (x.rows() != backend.dim() || x.cols() != backend.dim())
        throw DimensionMismatch("validate_element: matrix size does not match backend");
    if (std::abs(x.trace()) > 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()))
        throw InputError("validate_element: matrix is not traceless");
}

Matrix bracket(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw DimensionMismatch("bracket: shape mismatch");
    return x * y - y * x;
}

Complex trace_form(const LieBackend& backend, const Matrix& x, const Matrix& y) {
    if (x.rows() != backend.dim() || y.rows() != backend.dim())
        throw DimensionMismatch("trace_form: shape mismatch");
    return backend.lambda * (x * y).trace();
}

Matrix mexp(const Matrix& x) {
    if (x.rows() != x.cols()) throw DimensionMismatch("mexp: matrix must be square");
    const Eigen::Index d = x.rows();
    const Matrix id = Matrix::Identity(d, d);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double l1 = x.cwiseAbs().colwise().sum().maxCoeff();
    if (l1 == 0.0) return id;
    int squarings = 0;
    if (l1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(l1 / theta13)));
    const Matrix a = x / std::pow(2.0, squarings);

    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                          b[3] * a2 + b[1] * id);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * id;
    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

namespace {

double condition_number(const Matrix& m) {
    const auto sv = m.jacobiSvd().singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

}  // namespace

Matrix mlog(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("mlog: matrix must be square");
    Eigen::ComplexEigenSolver<Matrix> es(m, true);
    if (es.info() != Eigen::Success) throw BranchError("mlog: eigendecomposition failed");
    const Matrix v = es.eigenvectors();
    const double cond = condition_number(v);
    if (!(cond < 1e8)) {
        std::ostringstream msg;
        msg << "mlog: input is defective or near-defective (eigenvector condition " << cond
            << "); principal branch undefined";
        throw BranchError(msg.str());
    }
    Eigen::VectorXcd logs(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Complex lam = es.eigenvalues()(i);
        if (std::abs(lam) < 1e-300) throw InputError("mlog: matrix is singular");
        logs(i) = std::log(lam);  // principal branch, arg in (-pi, pi]
    }
    return v * logs.asDiagonal() * v.inverse();
}

DiagramAutomorphism make_automorphism(const LieBackend& backend, int order) {
    if (order == 1) return DiagramAutomorphism{1};
    if (order == 2 && backend.series == 'A') return DiagramAutomorphism{2};
    std::ostringstream msg;
    msg << "make_automorphism: order " << order << " is not available for series "
        << backend.series;
    throw InputError(msg.str());
}

Matrix sigma_apply(const DiagramAutomorphism& aut, const Matrix& x) {
    if (aut.order == 1) return x;
    return -x.transpose();
}

Complex automorphism_root(const DiagramAutomorphism& aut) {
    return std::polar(1.0, 2.0 * M_PI / aut.order);
}

bool in_exp_image_sl2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionMismatch("in_exp_image_sl2: need a 2x2 matrix");
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det - Complex(1.0, 0.0)) > 1e-10)
        throw InputError("in_exp_image_sl2: determinant must equal 1");
    const Complex tr = m.trace();
    if (std::abs(tr + Complex(2.0, 0.0)) > 1e-9) return true;
    return (m + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-9;
}

namespace {

struct EigPair {
    Complex value;
    Eigen::VectorXcd vector;
};

bool eig_order(const EigPair& a, const EigPair& b) {
    const double arg_a = std::arg(a.value), arg_b = std::arg(b.value);
    if (std::abs(arg_a - arg_b) > 1e-14) return arg_a > arg_b;
    const double abs_a = std::abs(a.value), abs_b = std::abs(b.value);
    if (std::abs(abs_a - abs_b) > 1e-14) return abs_a > abs_b;
    return false;
}

void fix_phase(Eigen::VectorXcd& v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best + 1e-15) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
    v.normalize();
}

}  // namespace

TorusConjugation conjugate_to_torus(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("conjugate_to_torus: matrix must be square");
    const Eigen::Index d = m.rows();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());

    // Already diagonal: nothing to do.
    Matrix off = m;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() <= 1e-14 * scale)
        return TorusConjugation{Matrix::Identity(d, d), Matrix(m.diagonal().asDiagonal())};

    Eigen::ComplexEigenSolver<Matrix> es(m, true);
    if (es.info() != Eigen::Success)
        throw NonSemisimpleError("conjugate_to_torus: eigendecomposition failed");

    std::vector<EigPair> pairs;
    for (Eigen::Index i = 0; i < d; ++i)
        pairs.push_back(EigPair{es.eigenvalues()(i), es.eigenvectors().col(i)});
    std::sort(pairs.begin(), pairs.end(), eig_order);

    const bool unitary = (m.adjoint() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10;
    if (unitary) {
        // Orthonormalize within near-degenerate eigenvalue groups; distinct
        // eigenspaces of a normal matrix are orthogonal already.
        size_t g0 = 0;
        for (size_t i = 1; i <= pairs.size(); ++i) {
            if (i == pairs.size() || std::abs(pairs[i].value - pairs[g0].value) > 1e-8) {
                for (size_t a = g0; a < i; ++a) {
                    for (size_t b = g0; b < a; ++b)
                        pairs[a].vector -= pairs[b].vector.dot(pairs[a].vector) * pairs[b].vector;
                    pairs[a].vector.normalize();
                }
                g0 = i;
            }
        }
    }

    Matrix p(d, d);
    Eigen::VectorXcd diag(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::VectorXcd v = pairs[static_cast<size_t>(i)].vector;
        fix_phase(v);
        p.col(i) = v;
        diag(i) = pairs[static_cast<size_t>(i)].value;
    }

    if (!(condition_number(p) < 1e8))
        throw NonSemisimpleError("conjugate_to_torus: defective input (eigenvector matrix ill-conditioned)");

    const Matrix recon = p * diag.asDiagonal() * p.inverse();
    if ((recon - m).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NonSemisimpleError("conjugate_to_torus: diagonalization residual too large");

    return TorusConjugation{p, Matrix(diag.asDiagonal())};
}

std::vector<double> SectionElement::theta() const {
    std::vector<double> t;
    t.reserve(static_cast<size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) t.push_back(x(i, i).imag());
    return t;
}

SectionElement make_section(const Matrix& x, bool alcove_reduced) {
    if (x.rows() != x.cols()) throw DimensionMismatch("make_section: matrix must be square");
    Matrix off = x;
    off.diagonal().setZero();
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (off.cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("make_section: matrix must be diagonal");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        if (std::abs(x(i, i).real()) > 1e-12 * scale)
            throw InputError("make_section: matrix must be anti-Hermitian (imaginary diagonal)");
        sum += x(i, i).imag();
    }
    if (std::abs(sum) > 1e-10 * scale)
        throw InputError("make_section: diagonal angles must sum to zero");
    return SectionElement{x, alcove_reduced};
}

AlcoveReduction alcove_reduce_witness(const Matrix& x) {
    const SectionElement input = make_section(x);
    const Eigen::Index d = x.rows();
    struct Slot {
        double theta;
        Eigen::Index orig;
        int shift;
    };
    std::vector<Slot> slots;
    for (Eigen::Index i = 0; i < d; ++i) slots.push_back(Slot{x(i, i).imag(), i, 0});

    const double step = kAlcoveLatticeStep;
    auto resort = [&] {
        std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
            if (a.theta != b.theta) return a.theta > b.theta;
            return a.orig < b.orig;
        });
    };
    resort();
    // Each move strictly decreases sum theta^2, so this terminates.
    while (slots.front().theta - slots.back().theta > step + 1e-12) {
        slots.front().theta -= step;
        slots.front().shift -= 1;
        slots.back().theta += step;
        slots.back().shift += 1;
        resort();
    }

    Matrix out = Matrix::Zero(d, d);
    std::vector<int> translation(static_cast<size_t>(d), 0);
    std::vector<Eigen::Index> permutation(static_cast<size_t>(d), 0);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Slot& s = slots[static_cast<size_t>(i)];
        out(i, i) = Complex(0.0, s.theta);
        permutation[static_cast<size_t>(i)] = s.orig;
        translation[static_cast<size_t>(s.orig)] = s.shift;
    }
    return AlcoveReduction{SectionElement{out, true}, translation, permutation};
}

SectionElement alcove_reduce(const Matrix& x) { return alcove_reduce_witness(x).section; }

}  // namespace kmloop
