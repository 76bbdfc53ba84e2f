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

#include <fstream>

#include <gtest/gtest.h>

#include "coherentia/duality.hpp"
#include "coherentia/error.hpp"
#include "coherentia/json_io.hpp"
#include "fixtures.hpp"

namespace coherentia {
namespace {

using json_io::Json;

template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(JsonIo, MatrixRoundTrip) {
  Rng rng(1);
  const ComplexMatrix m = gaussian_matrix(3, 5, rng);
  const Json j = Json::parse(json_io::to_json(m).dump());
  EXPECT_LE(max_abs(json_io::matrix_from_json(j) - m), 1e-15);
}

TEST(JsonIo, StateAndBasisRoundTrip) {
  Rng rng(2);
  const DensityMatrix rho = random_density_matrix(4, rng);
  EXPECT_LE(max_abs(json_io::density_from_json(Json::parse(json_io::to_json(rho).dump())).matrix() - rho.matrix()), 1e-15);

  const StateVector v = random_state_vector(4, rng);
  const DensityMatrix pure = json_io::density_from_json(json_io::to_json(v));
  EXPECT_LE(max_abs(pure.matrix() - v.projector()), 1e-15);

  const IncompleteBasis basis = IncompleteBasis::computational(4, 2);
  const IncompleteBasis back = json_io::basis_from_json(json_io::to_json(basis));
  ASSERT_EQ(back.size(), 2);
  EXPECT_EQ(back.dim(), 4);
  EXPECT_EQ(back.vectors()[1].amplitudes(), basis.vectors()[1].amplitudes());
}

TEST(JsonIo, ChannelAndConfigRoundTrip) {
  const IncompleteBasis basis = IncompleteBasis::computational(4, 2);
  const KrausChannel ch = random_channel_class2(basis, 3, 5);
  const KrausChannel back = json_io::channel_from_json(Json::parse(json_io::to_json(ch).dump()));
  ASSERT_EQ(back.kraus_ops().size(), ch.kraus_ops().size());
  for (std::size_t m = 0; m < ch.kraus_ops().size(); ++m)
    EXPECT_LE(max_abs(back.kraus_ops()[m] - ch.kraus_ops()[m]), 1e-15);

  Rng rng(3);
  const InterferometerConfig cfg = random_config(rng);
  const InterferometerConfig cb = json_io::config_from_json(Json::parse(json_io::to_json(cfg).dump()));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LE(std::abs(cb.amplitudes()[i] - cfg.amplitudes()[i]), 1e-15);
    EXPECT_LE((cb.detectors()[i].amplitudes() - cfg.detectors()[i].amplitudes()).norm(), 1e-15);
  }
}

TEST(JsonIo, FreeParamsRoundTrip) {
  const IncompleteBasis basis = IncompleteBasis::computational(4, 2);
  Rng rng(4);
  const FreeStateParams p = random_free_state_params(basis, rng);
  const FreeStateParams back = json_io::free_params_from_json(Json::parse(json_io::to_json(p).dump()));
  EXPECT_NEAR(back.q, p.q, 1e-15);
  EXPECT_LE((back.p - p.p).norm(), 1e-15);
  EXPECT_LE(max_abs(back.complement_block.matrix() - p.complement_block.matrix()), 1e-15);
}

TEST(JsonIo, ErrorsNameTheLocation) {
  EXPECT_NE(error_of([] { json_io::matrix_from_json(Json::object(), "m"); }).find("missing field \"rows\""),
            std::string::npos);
  const Json bad_entry = {{"rows", 1}, {"cols", 2}, {"entries", {{1.0, 0.0}, {"x", 0.0}}}};
  EXPECT_NE(error_of([&] { json_io::matrix_from_json(bad_entry, "m"); }).find("m"), std::string::npos);
  const Json short_entries = {{"rows", 2}, {"cols", 2}, {"entries", {{1.0, 0.0}}}};
  EXPECT_FALSE(error_of([&] { json_io::matrix_from_json(short_entries); }).empty());
  const Json not_hermitian = {{"rows", 2}, {"cols", 2}, {"entries", {{0.5, 0.0}, {0.3, 0.0}, {0.0, 0.0}, {0.5, 0.0}}}};
  EXPECT_NE(error_of([&] { json_io::density_from_json(not_hermitian, "state"); }).find("state"), std::string::npos);
  const Json mixed_dims = {{"dim", 2}, {"vectors", {{{"dim", 3}, {"amplitudes", {{1, 0}, {0, 0}, {0, 0}}}}}}};
  EXPECT_NE(error_of([&] { json_io::basis_from_json(mixed_dims); }).find("dimension"), std::string::npos);
  const Json few_amps = {{"amplitudes", {{1, 0}}}, {"detectors", Json::array()}};
  EXPECT_NE(error_of([&] { json_io::config_from_json(few_amps); }).find("amplitudes"), std::string::npos);
  const Json incomplete = {{"dim", 2}, {"kraus", {json_io::to_json(ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2)))}}};
  EXPECT_NE(error_of([&] { json_io::channel_from_json(incomplete); }).find("completeness"), std::string::npos);
}

TEST(JsonIo, ReadFileErrors) {
  const auto dir = testing::scratch_dir("jsonio");
  EXPECT_NE(error_of([&] { json_io::read_file(dir / "absent.json"); }).find("absent.json"), std::string::npos);
  std::ofstream(dir / "broken.json") << "{\"rows\": ";
  EXPECT_NE(error_of([&] { json_io::read_file(dir / "broken.json"); }).find("broken.json"), std::string::npos);
  const auto ok = testing::write_json(dir, "ok.json", Json{{"a", 1}});
  EXPECT_EQ(json_io::read_file(ok)["a"], 1);
}

TEST(JsonIo, CanonicalIsSortedSingleLine) {
  const Json j = Json::parse(R"({"zeta": 1, "alpha": {"y": [1, 2], "b": true}})");
  EXPECT_EQ(json_io::canonical(j), R"({"alpha":{"b":true,"y":[1,2]},"zeta":1})");
}

}  // namespace
}  // namespace coherentia
