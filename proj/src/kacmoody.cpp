#include "kmloop/kacmoody.hpp"

#include <cmath>

namespace kmloop {

KacMoodyVector km_vector(LoopAlgebraElement loop, Complex r_c, Complex r_d,
                         Convention convention) {
    return KacMoodyVector{std::move(loop), r_c, r_d, convention};
}

Complex h0_pairing(const LaurentMatrix& f, const LaurentMatrix& g, double lambda) {
    if (f.dim() != g.dim()) throw DimensionMismatch("h0_pairing: dim mismatch");
    Complex acc{0.0, 0.0};
    for (int k = f.k_min(); k <= f.k_max(); ++k) {
        if (!g.in_window(-k)) continue;
        acc += (f.coeff(k) * g.coeff(-k)).trace();
    }
    return lambda * acc;
}

Complex cocycle(const LoopAlgebraElement& f, const LoopAlgebraElement& g,
                const KmConventions& conv) {
    if (!same_backend(f.backend, g.backend)) throw InputError("cocycle: backend mismatch");
    // Res<f, g'> = sum_k k lambda tr(a_{-k} b_k)
    Complex res{0.0, 0.0};
    for (int k = g.value.k_min(); k <= g.value.k_max(); ++k) {
        if (k == 0 || !f.value.in_window(-k)) continue;
        res += static_cast<double>(k) * (f.value.coeff(-k) * g.value.coeff(k)).trace();
    }
    return conv.cocycle_sign * conv.lambda * res;
}

KacMoodyVector km_bracket(const KacMoodyVector& x, const KacMoodyVector& y,
                          const KmConventions& conv) {
    if (x.convention != y.convention) throw InputError("km_bracket: convention mismatch");
    LoopAlgebraElement loop = lbracket(x.loop, y.loop);
    const bool has_degree = x.r_d != Complex(0.0, 0.0) || y.r_d != Complex(0.0, 0.0);
    if (has_degree) {
        loop.value += x.r_d * d_action(y.loop.value, x.convention) -
                      y.r_d * d_action(x.loop.value, x.convention);
        // z f' does not preserve the compact form (i z f' does).
        if (x.convention == Convention::standard) loop.real_form = false;
    }
    KmConventions used = conv;
    used.convention = x.convention;
    return KacMoodyVector{std::move(loop), cocycle(x.loop, y.loop, used), Complex(0.0, 0.0),
                          x.convention};
}

Complex km_form(const KacMoodyVector& x, const KacMoodyVector& y, const KmConventions& conv) {
    if (!same_backend(x.loop.backend, y.loop.backend)) throw InputError("km_form: backend mismatch");
    if (x.convention != y.convention) throw InputError("km_form: convention mismatch");
    return h0_pairing(x.loop.value, y.loop.value, conv.lambda) + x.r_c * y.r_d + x.r_d * y.r_c;
}

double km_norm(const KacMoodyVector& x, const GradingConfig& cfg) {
    return norm_sup(x.loop.value, cfg) +
           std::sqrt(std::norm(x.r_c) + std::norm(x.r_d));
}

std::vector<TameRow> ad_tame_report(const KacMoodyVector& x, const KacMoodyVector& y,
                                    int n_from, int n_to, int boundary_samples,
                                    double bound_scale, const KmConventions& conv) {
    if (n_from > n_to) throw InputError("ad_tame_report: empty range");
    const KacMoodyVector br = km_bracket(x, y, conv);
    std::vector<TameRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        const double lhs = km_norm(br, GradingConfig(n, boundary_samples));
        const GradingConfig up(n + 1, boundary_samples);
        const double bound = bound_scale * 6.0 * M_PI * std::exp(2.0 * n + 1.0) *
                             km_norm(x, up) * km_norm(y, up);
        rows.push_back(TameRow{n, lhs, bound, bound > 0.0 ? lhs / bound : 0.0});
    }
    return rows;
}

}  // namespace kmloop
