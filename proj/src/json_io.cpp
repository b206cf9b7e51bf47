#include "kmloop/json_io.hpp"

#include <fstream>

namespace kmloop {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("json: complex must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const Matrix& m, Eigen::Index dim) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) out.push_back(complex_to_json(m(i, j)));
    return out;
}

Matrix matrix_from_json(const Json& j, Eigen::Index dim) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim * dim)
        throw InputError("json: matrix entry count does not match dim");
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index k = 0; k < dim; ++k)
            m(i, k) = complex_from_json(j[static_cast<size_t>(i * dim + k)]);
    return m;
}

Json laurent_to_json(const LaurentMatrix& f) {
    Json out;
    out["dim"] = f.dim();
    out["k_min"] = f.k_min();
    out["k_max"] = f.k_max();
    Json coeffs = Json::array();
    for (int k = f.k_min(); k <= f.k_max(); ++k) coeffs.push_back(matrix_to_json(f.coeff(k), f.dim()));
    out["coeffs"] = std::move(coeffs);
    return out;
}

LaurentMatrix laurent_from_json(const Json& j) {
    const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
    const int k_min = j.at("k_min").get<int>();
    const int k_max = j.at("k_max").get<int>();
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != k_max - k_min + 1)
        throw InputError("json: coeffs length must equal k_max - k_min + 1");
    std::vector<Matrix> cs;
    for (const Json& c : coeffs) cs.push_back(matrix_from_json(c, dim));
    return LaurentMatrix(dim, k_min, std::move(cs));
}

Json backend_to_json(const LieBackend& b) {
    Json out;
    out["series"] = std::string(1, b.series);
    out["n"] = b.n;
    out["lambda"] = b.lambda;
    return out;
}

LieBackend backend_from_json(const Json& j) {
    const std::string series = j.at("series").get<std::string>();
    if (series.size() != 1) throw InputError("json: backend series must be one letter");
    return make_backend(series[0], j.at("n").get<int>(), j.at("lambda").get<double>());
}

Json loop_element_to_json(const LoopAlgebraElement& e) {
    Json out = laurent_to_json(e.value);
    out["backend"] = backend_to_json(e.backend);
    out["twist"] = e.twist ? Json{{"order", e.twist->order}} : Json(nullptr);
    out["real_form"] = e.real_form;
    return out;
}

LoopAlgebraElement loop_element_from_json(const Json& j) {
    LaurentMatrix value = laurent_from_json(j);
    const LieBackend backend = backend_from_json(j.at("backend"));
    std::optional<DiagramAutomorphism> twist;
    if (j.contains("twist") && !j.at("twist").is_null())
        twist = make_automorphism(backend, j.at("twist").at("order").get<int>());
    const bool real_form = j.value("real_form", false);
    return make_loop_element(std::move(value), backend, twist, real_form);
}

Json km_vector_to_json(const KacMoodyVector& v) {
    Json out = loop_element_to_json(v.loop);
    out["r_c"] = complex_to_json(v.r_c);
    out["r_d"] = complex_to_json(v.r_d);
    out["convention"] = v.convention == Convention::standard ? "standard" : "paper_literal";
    return out;
}

KacMoodyVector km_vector_from_json(const Json& j) {
    LoopAlgebraElement loop = loop_element_from_json(j);
    const Complex rc = j.contains("r_c") ? complex_from_json(j.at("r_c")) : Complex(0.0, 0.0);
    const Complex rd = j.contains("r_d") ? complex_from_json(j.at("r_d")) : Complex(0.0, 0.0);
    Convention conv = Convention::standard;
    if (j.contains("convention")) {
        const std::string name = j.at("convention").get<std::string>();
        if (name == "paper_literal")
            conv = Convention::paper_literal;
        else if (name != "standard")
            throw InputError("json: unknown convention " + name);
    }
    return KacMoodyVector{std::move(loop), rc, rd, conv};
}

Json group_element_to_json(const KacMoodyGroupElement& x) {
    Json out;
    out["mat"] = laurent_to_json(x.g.mat);
    out["w_c"] = complex_to_json(x.w_c);
    out["w_d"] = complex_to_json(x.w_d);
    return out;
}

KacMoodyGroupElement group_element_from_json(const Json& j) {
    LaurentMatrix mat = j.contains("mat") ? laurent_from_json(j.at("mat")) : laurent_from_json(j);
    const Complex wc = j.contains("w_c") ? complex_from_json(j.at("w_c")) : Complex(1.0, 0.0);
    const Complex wd = j.contains("w_d") ? complex_from_json(j.at("w_d")) : Complex(1.0, 0.0);
    return km_group_element(certify_group_element(std::move(mat)), wc, wd);
}

Json sampled_loop_to_json(const SampledLoop& loop, Eigen::Index dim) {
    Json out;
    out["radius"] = loop.radius;
    Json samples = Json::array();
    for (const Matrix& m : loop.samples) samples.push_back(matrix_to_json(m, dim));
    out["samples"] = std::move(samples);
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("json parse error in ") + path + ": " + e.what());
    }
    return j;
}

}  // namespace kmloop
