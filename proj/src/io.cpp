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

#include "hude/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "hude/errors.hpp"

namespace hude::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  if (field.empty() || field == "nan" || field == "NaN") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size()) {
    throw ParseError("bad number '" + field + "' on line " +
                         std::to_string(line_no),
                     0);
  }
  return v;
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ObservationSeries read_observations_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty observation CSV", 0);
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "t" || header[1] != "x") {
    throw ParseError("observation CSV header must start with 't,x'", 0);
  }
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c] != "x" + std::to_string(c - 1)) {
      throw ParseError("unexpected column '" + header[c] + "'", 0);
    }
  }
  ObservationSeries s;
  s.derivatives.assign(header.size() - 2, {});
  while (next_line(in, line, line_no)) {
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError("wrong field count on line " + std::to_string(line_no), 0);
    }
    s.times.push_back(parse_number(fields[0], line_no));
    s.values.push_back(parse_number(fields[1], line_no));
    for (std::size_t c = 2; c < fields.size(); ++c) {
      s.derivatives[c - 2].push_back(parse_number(fields[c], line_no));
    }
  }
  s.validate();
  return s;
}

ObservationSeries read_observations_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return read_observations_csv(in);
}

void write_observations_csv(std::ostream& out, const ObservationSeries& s) {
  out << "t,x";
  for (std::size_t v = 0; v < s.derivatives.size(); ++v) out << ",x" << v + 1;
  out << '\n';
  for (std::size_t j = 0; j < s.size(); ++j) {
    out << format_double(s.times[j]) << ',' << format_double(s.values[j]);
    for (const auto& column : s.derivatives) {
      out << ',';
      if (std::isfinite(column[j])) out << format_double(column[j]);
    }
    out << '\n';
  }
}

ResidualVector read_residuals_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty residual CSV", 0);
  const auto header = split_fields(line);
  if (header.size() != 2 || header[0] != "j" || header[1] != "epsilon") {
    throw ParseError("residual CSV header must be 'j,epsilon'", 0);
  }
  ResidualVector r;
  while (next_line(in, line, line_no)) {
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError("wrong field count on line " + std::to_string(line_no), 0);
    }
    const double j = parse_number(fields[0], line_no);
    const double e = parse_number(fields[1], line_no);
    if (!(j >= 1.0) || j != std::floor(j)) {
      throw ParseError("bad residual index on line " + std::to_string(line_no), 0);
    }
    if (!(e > 0.0 && e < 1.0)) {
      throw ParseError("residual outside (0,1) on line " + std::to_string(line_no), 0);
    }
    r.index.push_back(static_cast<std::size_t>(j));
    r.epsilon.push_back(e);
    r.envelope.push_back(Envelope::kInside);
    r.monotone.push_back(true);
  }
  return r;
}

ResidualVector read_residuals_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return read_residuals_csv(in);
}

void write_residuals_csv(std::ostream& out, const ResidualVector& r) {
  out << "j,epsilon\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    out << r.index[i] << ',' << format_double(r.epsilon[i]) << '\n';
  }
}

ModelFile parse_model_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), e.byte);
  }
  try {
    const int order = doc.at("order").get<int>();
    const std::string drift = doc.at("drift").get<std::string>();
    std::vector<std::string> diffusions, params;
    if (doc.contains("diffusions")) {
      diffusions = doc["diffusions"].get<std::vector<std::string>>();
    }
    if (doc.contains("params")) params = doc["params"].get<std::vector<std::string>>();

    ModelFile file{HudeModel(order, drift, diffusions, params), {}, {}, {}};
    if (doc.contains("theta")) {
      file.theta = doc["theta"].get<std::map<std::string, double>>();
    }
    if (doc.contains("init")) {
      const auto& init = doc["init"];
      InitialState state;
      state.t0 = init.value("t0", 0.0);
      state.values = init.at("values").get<std::vector<double>>();
      if (state.values.size() != static_cast<std::size_t>(order)) {
        throw PreconditionError("init.values must have one entry per order");
      }
      file.init = std::move(state);
    }
    if (doc.contains("t_end")) file.t_end = doc["t_end"].get<double>();
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
}

ModelFile load_model_file(const std::filesystem::path& path) {
  return parse_model_json(read_file(path));
}

}  // namespace hude::io
