// Copyright 2026 The Coherentia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coherentia/json_io.hpp"

#include <fstream>
#include <sstream>

#include "coherentia/error.hpp"

namespace coherentia::json_io {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& what) {
  std::ostringstream os;
  os << where << ": " << what;
  throw ValidationError(os.str());
}

const Json& field(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

Index positive_int(const Json& j, const char* key, std::string_view where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() <= 0) fail(where, std::string("\"") + key + "\" must be a positive integer");
  return static_cast<Index>(v.get<long long>());
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a [re, im] pair");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

Json pair(Complex z) { return Json::array({z.real(), z.imag()}); }

template <typename F>
auto with_context(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) entries.push_back(pair(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Json to_json(const StateVector& v) {
  Json amps = Json::array();
  for (Index i = 0; i < v.dim(); ++i) amps.push_back(pair(v[i]));
  return {{"dim", v.dim()}, {"amplitudes", std::move(amps)}};
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

Json to_json(const IncompleteBasis& basis) {
  Json vs = Json::array();
  for (const auto& v : basis.vectors()) vs.push_back(to_json(v));
  return {{"dim", basis.dim()}, {"vectors", std::move(vs)}};
}

Json to_json(const KrausChannel& channel) {
  Json ops = Json::array();
  for (const auto& k : channel.kraus_ops()) ops.push_back(to_json(k));
  return {{"dim", channel.dim()}, {"kraus", std::move(ops)}};
}

Json to_json(const InterferometerConfig& cfg) {
  Json amps = Json::array();
  for (const auto& a : cfg.amplitudes()) amps.push_back(pair(a));
  Json dets = Json::array();
  for (const auto& d : cfg.detectors()) dets.push_back(to_json(d));
  return {{"amplitudes", std::move(amps)}, {"detectors", std::move(dets)}};
}

Json to_json(const FreeStateParams& params) {
  return {{"q", params.q},
          {"p", std::vector<double>(params.p.data(), params.p.data() + params.p.size())},
          {"complement_block", to_json(params.complement_block)}};
}

Json to_json(const BasisCompletion& completion) {
  return {{"completion_unitary", to_json(completion.completion_unitary())},
          {"full_basis", to_json(completion.full_basis())}};
}

Json to_json(const StructureCheck& check) {
  Json defects = Json::array();
  for (const auto& d : check.defects) {
    Json item = {{"what", d.what}, {"magnitude", d.magnitude}};
    if (d.row >= 0) item["row"] = d.row;
    if (d.col >= 0) item["col"] = d.col;
    defects.push_back(std::move(item));
  }
  return {{"passed", check.passed}, {"max_defect", check.max_defect}, {"defects", std::move(defects)}};
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view where) {
  const Index rows = positive_int(j, "rows", where);
  const Index cols = positive_int(j, "cols", where);
  const Json& entries = field(j, "entries", where);
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
    std::ostringstream os;
    os << "\"entries\" must hold rows*cols = " << rows * cols << " pairs";
    fail(where, os.str());
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      std::ostringstream path;
      path << where << ".entries[" << k << "]";
      const Complex z = complex_from(entries[k], path.str());
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(path.str(), "non-finite entry");
      m(i, c) = z;
    }
  }
  return m;
}

StateVector state_vector_from_json(const Json& j, std::string_view where) {
  const Index dim = positive_int(j, "dim", where);
  const Json& amps = field(j, "amplitudes", where);
  if (!amps.is_array() || static_cast<Index>(amps.size()) != dim) fail(where, "\"amplitudes\" must hold dim pairs");
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    std::ostringstream path;
    path << where << ".amplitudes[" << i << "]";
    v[i] = complex_from(amps[static_cast<std::size_t>(i)], path.str());
  }
  return with_context(where, [&] { return StateVector(std::move(v)); });
}

DensityMatrix density_from_json(const Json& j, std::string_view where) {
  if (j.is_object() && j.contains("amplitudes")) {
    const StateVector v = state_vector_from_json(j, where);
    return DensityMatrix::pure(v);
  }
  ComplexMatrix m = matrix_from_json(j, where);
  return with_context(where, [&] { return DensityMatrix(std::move(m)); });
}

IncompleteBasis basis_from_json(const Json& j, std::string_view where) {
  const Index dim = positive_int(j, "dim", where);
  const Json& vs = field(j, "vectors", where);
  if (!vs.is_array() || vs.empty()) fail(where, "\"vectors\" must be a non-empty array");
  std::vector<StateVector> vectors;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::ostringstream path;
    path << where << ".vectors[" << k << "]";
    StateVector v = state_vector_from_json(vs[k], path.str());
    if (v.dim() != dim) fail(path.str(), "dimension differs from \"dim\"");
    vectors.push_back(std::move(v));
  }
  return with_context(where, [&] { return IncompleteBasis(std::move(vectors)); });
}

KrausChannel channel_from_json(const Json& j, std::string_view where) {
  const Index dim = positive_int(j, "dim", where);
  const Json& ks = field(j, "kraus", where);
  if (!ks.is_array() || ks.empty()) fail(where, "\"kraus\" must be a non-empty array");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < ks.size(); ++k) {
    std::ostringstream path;
    path << where << ".kraus[" << k << "]";
    ComplexMatrix m = matrix_from_json(ks[k], path.str());
    if (m.rows() != dim || m.cols() != dim) fail(path.str(), "shape differs from dim x dim");
    ops.push_back(std::move(m));
  }
  return with_context(where, [&] { return KrausChannel(std::move(ops)); });
}

InterferometerConfig config_from_json(const Json& j, std::string_view where) {
  const Json& amps = field(j, "amplitudes", where);
  const Json& dets = field(j, "detectors", where);
  if (!amps.is_array() || amps.size() != 4) fail(where, "\"amplitudes\" must hold 4 pairs");
  if (!dets.is_array() || dets.size() != 4) fail(where, "\"detectors\" must hold 4 vectors");
  std::array<Complex, kSlits> a{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::ostringstream path;
    path << where << ".amplitudes[" << i << "]";
    a[i] = complex_from(amps[i], path.str());
  }
  auto det = [&](std::size_t i) {
    std::ostringstream path;
    path << where << ".detectors[" << i << "]";
    return state_vector_from_json(dets[i], path.str());
  };
  std::array<StateVector, kSlits> d{det(0), det(1), det(2), det(3)};
  return with_context(where, [&] { return InterferometerConfig(a, std::move(d)); });
}

FreeStateParams free_params_from_json(const Json& j, std::string_view where) {
  const double q = number(field(j, "q", where), std::string(where) + ".q");
  const Json& pj = field(j, "p", where);
  if (!pj.is_array() || pj.empty()) fail(where, "\"p\" must be a non-empty array");
  RealVector p(static_cast<Index>(pj.size()));
  for (std::size_t i = 0; i < pj.size(); ++i) p[static_cast<Index>(i)] = number(pj[i], std::string(where) + ".p");
  DensityMatrix block = density_from_json(field(j, "complement_block", where), std::string(where) + ".complement_block");
  return with_context(where, [&] { return FreeStateParams(q, std::move(p), std::move(block)); });
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

std::string canonical(const Json& j) { return j.dump(); }

}  // namespace coherentia::json_io
