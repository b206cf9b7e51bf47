#include "kmloop/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace kmloop::oracle {

namespace {

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a == 0 ? 1 : a;
}

}  // namespace

Rat::Rat(long long n) : num(n), den(1) {}

Rat::Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw Error("oracle::Rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = gcd_ll(num, den);
    num /= g;
    den /= g;
}

Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
Rat operator-(Rat a) { return Rat(-a.num, a.den); }
bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }

RatC operator+(const RatC& a, const RatC& b) { return RatC{a.re + b.re, a.im + b.im}; }
RatC operator-(const RatC& a, const RatC& b) { return RatC{a.re - b.re, a.im - b.im}; }
RatC operator*(const RatC& a, const RatC& b) {
    return RatC{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
RatC operator-(const RatC& a) { return RatC{-a.re, -a.im}; }
bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
bool is_zero(const RatC& a) { return a.re.num == 0 && a.im.num == 0; }

SymMatrix::SymMatrix(int dim) : d(dim), a(static_cast<size_t>(dim * dim)) {}

RatC& SymMatrix::at(int i, int j) { return a[static_cast<size_t>(i * d + j)]; }
const RatC& SymMatrix::at(int i, int j) const { return a[static_cast<size_t>(i * d + j)]; }

SymMatrix sym_mul(const SymMatrix& x, const SymMatrix& y) {
    SymMatrix r(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j)
            for (int k = 0; k < x.d; ++k) r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
    return r;
}

SymMatrix sym_add(const SymMatrix& x, const SymMatrix& y) {
    SymMatrix r(x.d);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

SymMatrix sym_neg(const SymMatrix& x) {
    SymMatrix r(x.d);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = -x.a[i];
    return r;
}

SymMatrix sym_scale(const RatC& s, const SymMatrix& x) {
    SymMatrix r(x.d);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
    return r;
}

RatC sym_trace_product(const SymMatrix& x, const SymMatrix& y) {
    RatC t{};
    for (int i = 0; i < x.d; ++i)
        for (int k = 0; k < x.d; ++k) t = t + x.at(i, k) * y.at(k, i);
    return t;
}

bool sym_is_zero(const SymMatrix& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](const RatC& v) { return is_zero(v); });
}

SymLaurent sym_monomial(const SymMatrix& a, int k) {
    SymLaurent f(a.d);
    if (!sym_is_zero(a)) f.terms[k] = a;
    return f;
}

SymLaurent sym_ladd(const SymLaurent& f, const SymLaurent& g) {
    SymLaurent r = f;
    for (const auto& [k, m] : g.terms) {
        auto it = r.terms.find(k);
        if (it == r.terms.end())
            r.terms[k] = m;
        else {
            it->second = sym_add(it->second, m);
            if (sym_is_zero(it->second)) r.terms.erase(it);
        }
    }
    r.d = f.d == 0 ? g.d : f.d;
    return r;
}

SymLaurent sym_lneg(const SymLaurent& f) {
    SymLaurent r(f.d);
    for (const auto& [k, m] : f.terms) r.terms[k] = sym_neg(m);
    return r;
}

SymLaurent sym_lscale(const RatC& s, const SymLaurent& f) {
    SymLaurent r(f.d);
    if (is_zero(s)) return r;
    for (const auto& [k, m] : f.terms) {
        SymMatrix sm = sym_scale(s, m);
        if (!sym_is_zero(sm)) r.terms[k] = std::move(sm);
    }
    return r;
}

SymLaurent sym_lmul(const SymLaurent& f, const SymLaurent& g) {
    SymLaurent r(f.d);
    for (const auto& [j, a] : f.terms)
        for (const auto& [k, b] : g.terms) {
            const SymMatrix p = sym_mul(a, b);
            auto it = r.terms.find(j + k);
            if (it == r.terms.end())
                r.terms[j + k] = p;
            else
                it->second = sym_add(it->second, p);
        }
    for (auto it = r.terms.begin(); it != r.terms.end();)
        it = sym_is_zero(it->second) ? r.terms.erase(it) : std::next(it);
    return r;
}

SymLaurent sym_lbracket(const SymLaurent& f, const SymLaurent& g) {
    return sym_ladd(sym_lmul(f, g), sym_lneg(sym_lmul(g, f)));
}

SymLaurent sym_degree_action(const SymLaurent& f) {
    SymLaurent r(f.d);
    for (const auto& [k, m] : f.terms)
        if (k != 0) r.terms[k] = sym_scale(RatC{Rat(k), Rat(0)}, m);
    return r;
}

bool sym_lis_zero(const SymLaurent& f) {
    return std::all_of(f.terms.begin(), f.terms.end(),
                       [](const auto& kv) { return sym_is_zero(kv.second); });
}

bool sym_lequal(const SymLaurent& f, const SymLaurent& g) {
    return sym_lis_zero(sym_ladd(f, sym_lneg(g)));
}

RatC sym_res_pairing(const SymLaurent& f, const SymLaurent& g) {
    RatC acc{};
    for (const auto& [k, b] : g.terms) {
        if (k == 0) continue;
        auto it = f.terms.find(-k);
        if (it == f.terms.end()) continue;
        acc = acc + RatC{Rat(k), Rat(0)} * sym_trace_product(it->second, b);
    }
    return acc;
}

RatC sym_h0_pairing(const SymLaurent& f, const SymLaurent& g) {
    RatC acc{};
    for (const auto& [k, a] : f.terms) {
        auto it = g.terms.find(-k);
        if (it == g.terms.end()) continue;
        acc = acc + sym_trace_product(a, it->second);
    }
    return acc;
}

SymKmVector sym_km_bracket(const SymKmVector& x, const SymKmVector& y, int cocycle_sign) {
    SymKmVector r;
    r.loop = sym_lbracket(x.loop, y.loop);
    r.loop = sym_ladd(r.loop, sym_lscale(x.r_d, sym_degree_action(y.loop)));
    r.loop = sym_ladd(r.loop, sym_lscale(-y.r_d, sym_degree_action(x.loop)));
    r.r_c = RatC{Rat(cocycle_sign), Rat(0)} * sym_res_pairing(x.loop, y.loop);
    r.r_d = RatC{};
    return r;
}

RatC sym_km_form(const SymKmVector& x, const SymKmVector& y) {
    return sym_h0_pairing(x.loop, y.loop) + x.r_c * y.r_d + x.r_d * y.r_c;
}

bool sym_km_is_zero(const SymKmVector& x) {
    return sym_lis_zero(x.loop) && is_zero(x.r_c) && is_zero(x.r_d);
}

bool sym_km_equal(const SymKmVector& x, const SymKmVector& y) {
    return sym_lequal(x.loop, y.loop) && x.r_c == y.r_c && x.r_d == y.r_d;
}

namespace {

// Conjugation by g = diag(z^{w_i}) moves the (i,j) entry of degree k to
// degree k + w_i - w_j.
SymLaurent conjugate_by_winding(const std::vector<int>& w, const SymLaurent& f) {
    SymLaurent r(f.d);
    for (const auto& [k, m] : f.terms) {
        for (int i = 0; i < f.d; ++i)
            for (int j = 0; j < f.d; ++j) {
                if (is_zero(m.at(i, j))) continue;
                const int dk = k + w[static_cast<size_t>(i)] - w[static_cast<size_t>(j)];
                auto it = r.terms.find(dk);
                if (it == r.terms.end()) {
                    r.terms[dk] = SymMatrix(f.d);
                    it = r.terms.find(dk);
                }
                it->second.at(i, j) = it->second.at(i, j) + m.at(i, j);
            }
    }
    return r;
}

SymLaurent winding_b(const std::vector<int>& w, int d) {
    // B = (i z g') g^{-1} = i diag(w)
    SymMatrix b(d);
    for (int i = 0; i < d; ++i) b.at(i, i) = RatC{Rat(0), Rat(w[static_cast<size_t>(i)])};
    return sym_monomial(b, 0);
}

}  // namespace

SymKmVector sym_adjoint_winding(const std::vector<int>& winding, const SymKmVector& y,
                                int pair_sign, int half_sign) {
    const int d = y.loop.d;
    const SymLaurent a = conjugate_by_winding(winding, y.loop);
    const SymLaurent b = winding_b(winding, d);
    SymKmVector r;
    r.loop = sym_ladd(a, sym_lscale(-y.r_d, b));
    const RatC half{Rat(1, 2), Rat(0)};
    r.r_c = y.r_c + RatC{Rat(pair_sign), Rat(0)} * sym_h0_pairing(a, b) +
            RatC{Rat(half_sign), Rat(0)} * (y.r_d * (half * sym_h0_pairing(b, b)));
    r.r_d = y.r_d;
    return r;
}

namespace {

SymMatrix sl2_e() {
    SymMatrix m(2);
    m.at(0, 1) = RatC{Rat(1), Rat(0)};
    return m;
}

SymMatrix sl2_f() {
    SymMatrix m(2);
    m.at(1, 0) = RatC{Rat(1), Rat(0)};
    return m;
}

SymMatrix sl2_h() {
    SymMatrix m(2);
    m.at(0, 0) = RatC{Rat(1), Rat(0)};
    m.at(1, 1) = RatC{Rat(-1), Rat(0)};
    return m;
}

std::vector<SymKmVector> generator_set() {
    std::vector<SymKmVector> gens;
    for (int k = -2; k <= 2; ++k)
        for (const SymMatrix& m : {sl2_e(), sl2_f(), sl2_h()}) {
            SymKmVector v;
            v.loop = sym_monomial(m, k);
            gens.push_back(v);
        }
    SymKmVector c;
    c.loop = SymLaurent(2);
    c.r_c = RatC{Rat(1), Rat(0)};
    gens.push_back(c);
    SymKmVector dvec;
    dvec.loop = SymLaurent(2);
    dvec.r_d = RatC{Rat(1), Rat(0)};
    gens.push_back(dvec);
    return gens;
}

bool invariance_holds(int s, const std::vector<SymKmVector>& gens) {
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& z : gens) {
                const RatC lhs = sym_km_form(sym_km_bracket(x, y, s), z) +
                                 sym_km_form(y, sym_km_bracket(x, z, s));
                if (!is_zero(lhs)) return false;
            }
    return true;
}

bool adjoint_consistent(int s, int pair_sign, int half_sign,
                        const std::vector<SymKmVector>& gens) {
    (void)s;
    const std::vector<int> w1{1, -1};
    const std::vector<int> w2{2, -2};
    // Isometry of the form.
    for (const auto& y1 : gens)
        for (const auto& y2 : gens) {
            const RatC lhs = sym_km_form(sym_adjoint_winding(w1, y1, pair_sign, half_sign),
                                         sym_adjoint_winding(w1, y2, pair_sign, half_sign));
            if (!(lhs == sym_km_form(y1, y2))) return false;
        }
    // Group action: windings add under composition.
    const std::vector<int> w12{3, -3};
    for (const auto& y : gens) {
        const SymKmVector lhs = sym_adjoint_winding(w12, y, pair_sign, half_sign);
        const SymKmVector rhs = sym_adjoint_winding(
            w1, sym_adjoint_winding(w2, y, pair_sign, half_sign), pair_sign, half_sign);
        if (!sym_km_equal(lhs, rhs)) return false;
    }
    return true;
}

}  // namespace

PinnedSigns pin_conventions() {
    const std::vector<SymKmVector> gens = generator_set();

    // Antisymmetry and Jacobi must hold regardless of the sign candidates;
    // they validate the bracket itself.
    for (int s : {1, -1}) {
        for (const auto& x : gens)
            for (const auto& y : gens) {
                SymKmVector anti = sym_km_bracket(x, y, s);
                const SymKmVector yx = sym_km_bracket(y, x, s);
                anti.loop = sym_ladd(anti.loop, yx.loop);
                anti.r_c = anti.r_c + yx.r_c;
                anti.r_d = anti.r_d + yx.r_d;
                if (!sym_km_is_zero(anti)) throw Error("pin_conventions: antisymmetry failed");
            }
        for (size_t i = 0; i < gens.size(); i += 3)
            for (size_t j = 0; j < gens.size(); j += 2)
                for (size_t k = 0; k < gens.size(); k += 5) {
                    const auto& x = gens[i];
                    const auto& y = gens[j];
                    const auto& z = gens[k];
                    SymKmVector acc = sym_km_bracket(sym_km_bracket(x, y, s), z, s);
                    const SymKmVector t2 = sym_km_bracket(sym_km_bracket(y, z, s), x, s);
                    const SymKmVector t3 = sym_km_bracket(sym_km_bracket(z, x, s), y, s);
                    acc.loop = sym_ladd(acc.loop, sym_ladd(t2.loop, t3.loop));
                    acc.r_c = acc.r_c + t2.r_c + t3.r_c;
                    acc.r_d = acc.r_d + t2.r_d + t3.r_d;
                    if (!sym_km_is_zero(acc)) throw Error("pin_conventions: Jacobi failed");
                }
    }

    PinnedSigns pinned;
    int invariance_count = 0;
    for (int s : {1, -1})
        if (invariance_holds(s, gens)) {
            pinned.cocycle_sign = s;
            ++invariance_count;
        }
    if (invariance_count != 1)
        throw Error("pin_conventions: form invariance did not pin a unique cocycle sign");

    int adjoint_count = 0;
    for (int ps : {1, -1})
        for (int hs : {1, -1})
            if (adjoint_consistent(pinned.cocycle_sign, ps, hs, gens)) {
                pinned.pair_sign = ps;
                pinned.half_sign = hs;
                ++adjoint_count;
            }
    if (adjoint_count != 1)
        throw Error("pin_conventions: Adjoint identities did not pin unique signs");
    return pinned;
}

Matrix oracle_eval(const LaurentMatrix& f, Complex z) {
    Matrix acc = Matrix::Zero(f.dim(), f.dim());
    for (int k = f.k_min(); k <= f.k_max(); ++k) acc += f.coeff(k) * std::pow(z, k);
    return acc;
}

double oracle_norm_sup(const LaurentMatrix& f, int n, int samples_per_circle) {
    double sup = 0.0;
    for (double radius : {std::exp(static_cast<double>(n)), std::exp(-static_cast<double>(n))}) {
        for (int i = 0; i < samples_per_circle; ++i) {
            const Complex z = std::polar(radius, 2.0 * M_PI * i / static_cast<double>(samples_per_circle));
            sup = std::max(sup, oracle_eval(f, z).jacobiSvd().singularValues()(0));
        }
    }
    return sup;
}

Matrix oracle_abelian_monodromy(const LaurentMatrix& alpha) {
    for (int j = alpha.k_min(); j <= alpha.k_max(); ++j)
        for (int k = j; k <= alpha.k_max(); ++k) {
            const Matrix comm = alpha.coeff(j) * alpha.coeff(k) - alpha.coeff(k) * alpha.coeff(j);
            if (!comm.isZero(0.0))
                throw InputError("oracle_abelian_monodromy: coefficients do not commute exactly");
        }
    const Matrix m = Complex(0.0, 2.0 * M_PI) * residue(alpha);
    // Diagonal case exactly; otherwise an independent eigendecomposition.
    Matrix off = m;
    off.diagonal().setZero();
    if (off.isZero(0.0)) {
        Matrix r = Matrix::Zero(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, i) = std::exp(m(i, i));
        return r;
    }
    Eigen::ComplexEigenSolver<Matrix> es(m, true);
    if (es.info() != Eigen::Success)
        throw DegeneracyError("oracle_abelian_monodromy: eigendecomposition failed");
    Eigen::VectorXcd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::exp(ev(i));
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().inverse();
}

SectionElement oracle_alcove(const Matrix& x, int search_radius) {
    const SectionElement input = make_section(x);
    const std::vector<double> theta = input.theta();
    const int d = static_cast<int>(theta.size());

    std::vector<double> best;
    int best_maxshift = 0;
    std::vector<int> shift(static_cast<size_t>(d), -search_radius);
    std::vector<int> order(static_cast<size_t>(d));

    auto consider = [&](const std::vector<int>& m) {
        if (std::accumulate(m.begin(), m.end(), 0) != 0) return;
        std::vector<double> cand(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i)
            cand[static_cast<size_t>(i)] =
                theta[static_cast<size_t>(i)] + kAlcoveLatticeStep * m[static_cast<size_t>(i)];
        std::sort(cand.begin(), cand.end(), std::greater<>());
        if (cand.front() - cand.back() > kAlcoveLatticeStep + 1e-12) return;
        if (best.empty() || std::lexicographical_compare(best.begin(), best.end(), cand.begin(), cand.end())) {
            best = cand;
            best_maxshift = 0;
            for (int v : m) best_maxshift = std::max(best_maxshift, std::abs(v));
        }
    };

    // Odometer over all shift vectors in [-radius, radius]^d.
    while (true) {
        consider(shift);
        int pos = 0;
        while (pos < d && ++shift[static_cast<size_t>(pos)] > search_radius) {
            shift[static_cast<size_t>(pos)] = -search_radius;
            ++pos;
        }
        if (pos == d) break;
    }
    if (best.empty()) throw DegeneracyError("oracle_alcove: no in-alcove image found; enlarge the radius");
    if (best_maxshift == search_radius && search_radius > 0) {
        std::ostringstream msg;
        msg << "oracle_alcove: optimum touches the search boundary (radius " << search_radius
            << "); enlarge and retry";
        throw DegeneracyError(msg.str());
    }

    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) out(i, i) = Complex(0.0, best[static_cast<size_t>(i)]);
    return SectionElement{out, true};
}

}  // namespace kmloop::oracle
