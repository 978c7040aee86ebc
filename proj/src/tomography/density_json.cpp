// Copyright 2026 The envlab Authors
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

#include "envlab/density_json.hpp"

#include "envlab/error.hpp"

namespace envlab {

nlohmann::json space_to_json(const SpaceDescriptor& space) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : space.subsystems()) {
    subs.push_back({{"id", s.id}, {"labels", s.labels}});
  }
  return subs;
}

SpaceDescriptor space_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "subsystems must be an array");
  std::vector<Subsystem> subs;
  try {
    for (const auto& s : j) {
      subs.push_back({s.at("id").get<std::string>(),
                      s.at("labels").get<std::vector<std::string>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("subsystem entry: ") + e.what());
  }
  return SpaceDescriptor(std::move(subs));
}

nlohmann::json density_to_json(const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"schema_version", 1},
          {"subsystems", space_to_json(rho.space())},
          {"matrix", std::move(rows)}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("subsystems") || !j.contains("matrix")) {
    fail(ErrorCode::ParseError, "density JSON needs subsystems and matrix");
  }
  SpaceDescriptor space = space_from_json(j.at("subsystems"));
  const auto& rows = j.at("matrix");
  auto d = static_cast<Eigen::Index>(space.dimension());
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
    fail(ErrorCode::ParseError, "matrix row count does not match the space");
  }
  CMatrix m(d, d);
  try {
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        fail(ErrorCode::ParseError, "matrix row length does not match the space");
      }
      for (Eigen::Index k = 0; k < d; ++k) {
        const auto& cell = row.at(static_cast<std::size_t>(k));
        if (!cell.is_array() || cell.size() != 2) {
          fail(ErrorCode::ParseError, "matrix entries must be [re, im] pairs");
        }
        m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("matrix entry: ") + e.what());
  }
  return DensityMatrix(std::move(space), std::move(m), 1e-8);
}

}  // namespace envlab
