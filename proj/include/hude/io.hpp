// Copyright 2026 The hude Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HUDE_IO_HPP_
#define HUDE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hude/model.hpp"
#include "hude/residuals.hpp"

namespace hude::io {

/// "%.17g".
std::string format_double(double v);

/// Observation CSV: header `t,x`, optionally followed by derivative
/// columns `x1,...`. Blank lines are skipped.
ObservationSeries read_observations_csv(std::istream& in);
ObservationSeries read_observations_csv(const std::filesystem::path& path);
void write_observations_csv(std::ostream& out, const ObservationSeries& s);

/// Residual CSV: header `j,epsilon`.
ResidualVector read_residuals_csv(std::istream& in);
ResidualVector read_residuals_csv(const std::filesystem::path& path);
void write_residuals_csv(std::ostream& out, const ResidualVector& r);

/// Contents of a model file:
///   { "order": n, "drift": "...", "diffusions": ["...", ...],
///     "params": ["sig1", ...], "theta": {"sig1": 0.1},
///     "init": {"t0": 0, "values": [...]}, "t_end": 1 }
/// Only order and drift are required.
struct ModelFile {
  HudeModel model;
  std::optional<std::map<std::string, double>> theta;
  std::optional<InitialState> init;
  std::optional<double> t_end;
};

/// Throws ParseError for malformed JSON or expressions.
ModelFile parse_model_json(std::string_view text);
ModelFile load_model_file(const std::filesystem::path& path);

/// Reads a whole file; throws IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path` in one go; throws IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hude::io

#endif  // HUDE_IO_HPP_
