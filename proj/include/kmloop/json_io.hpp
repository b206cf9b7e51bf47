#ifndef KMLOOP_JSON_IO_HPP
#define KMLOOP_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "kmloop/kacmoody.hpp"
#include "kmloop/loopgroup.hpp"
#include "kmloop/polar.hpp"

namespace kmloop {

// Deterministic wire format: ordered keys, numbers printed by the shortest
// round-trip representation. Complex numbers are [re, im]; matrices are
// row-major arrays of [re, im].
using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m, Eigen::Index dim);
Matrix matrix_from_json(const Json& j, Eigen::Index dim);

Json laurent_to_json(const LaurentMatrix& f);
LaurentMatrix laurent_from_json(const Json& j);

Json backend_to_json(const LieBackend& b);
LieBackend backend_from_json(const Json& j);

Json loop_element_to_json(const LoopAlgebraElement& e);
LoopAlgebraElement loop_element_from_json(const Json& j);

Json km_vector_to_json(const KacMoodyVector& v);
KacMoodyVector km_vector_from_json(const Json& j);

Json group_element_to_json(const KacMoodyGroupElement& x);
KacMoodyGroupElement group_element_from_json(const Json& j);

Json sampled_loop_to_json(const SampledLoop& loop, Eigen::Index dim);

Json load_json_file(const std::string& path);

}  // namespace kmloop

#endif
