// Copyright 2026 The entsrc Authors
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

#include "entsrc/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "entsrc/error.hpp"
#include "json.hpp"

namespace entsrc {
namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kTestSetFormat = "entsrc-testset";
constexpr int kTestSetVersion = 1;
constexpr double kCacheTolerance = 1e-10;

json matrix_to_json(const Matrix4& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix4 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::kParseFailure, "POVM element must have 4 rows");
  Matrix4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != 4) throw Error(ErrorCode::kParseFailure, "POVM row must have 4 entries");
    for (std::size_t c = 0; c < 4; ++c) {
      const json& z = row[c];
      if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::kParseFailure, "matrix entry must be [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string record_to_json(const MeasurementRecord& rec) {
  json settings = json::array();
  for (const SettingCounts& sc : rec.settings()) {
    json s;
    s["a"] = sc.setting.a;
    s["b"] = sc.setting.b;
    s["counts"] = sc.counts;
    if (sc.povm) {
      json povm = json::array();
      for (const Matrix4& e : *sc.povm) povm.push_back(matrix_to_json(e));
      s["povm"] = std::move(povm);
    }
    settings.push_back(std::move(s));
  }
  json doc;
  doc["settings"] = std::move(settings);
  doc["meta"] = {{"seed", rec.meta().seed},
                 {"label", rec.meta().label},
                 {"shots_per_setting", rec.meta().shots_per_setting}};
  return doc.dump(2) + "\n";
}

MeasurementRecord record_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (!doc.is_object() || !doc.contains("settings") || !doc["settings"].is_array()) {
      throw Error(ErrorCode::kParseFailure, "record has no 'settings' array");
    }
    if (doc["settings"].empty()) throw Error(ErrorCode::kParseFailure, "record has no settings");
    std::vector<SettingCounts> settings;
    for (const json& s : doc["settings"]) {
      SettingCounts sc;
      sc.setting = {s.at("a").get<int>(), s.at("b").get<int>()};
      const json& counts = s.at("counts");
      if (!counts.is_array() || counts.size() != 4) {
        throw Error(ErrorCode::kParseFailure, "'counts' must hold exactly 4 integers");
      }
      for (std::size_t k = 0; k < 4; ++k) sc.counts[k] = counts[k].get<std::int64_t>();
      if (s.contains("povm")) {
        const json& povm = s["povm"];
        if (!povm.is_array() || povm.size() != 4) throw Error(ErrorCode::kParseFailure, "'povm' must hold 4 elements");
        Povm p;
        for (std::size_t k = 0; k < 4; ++k) p[k] = matrix_from_json(povm[k]);
        sc.povm = p;
      }
      settings.push_back(std::move(sc));
    }
    RecordMeta meta;
    if (doc.contains("meta")) {
      const json& m = doc["meta"];
      meta.seed = m.value("seed", std::uint64_t{0});
      meta.label = m.value("label", std::string{});
      meta.shots_per_setting = m.value("shots_per_setting", std::int64_t{0});
    }
    return MeasurementRecord(std::move(settings), std::move(meta));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseFailure, std::string("malformed record: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseFailure) throw;
    throw Error(ErrorCode::kParseFailure, std::string("invalid record: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIoFailure, "write to '" + path.string() + "' failed");
}

MeasurementRecord load_record(const std::filesystem::path& path) { return record_from_json(read_text_file(path)); }

void save_record(const std::filesystem::path& path, const MeasurementRecord& rec) {
  write_text_file(path, record_to_json(rec));
}

void write_test_set(std::ostream& out, const TestSet& ts) {
  json header;
  header["format"] = kTestSetFormat;
  header["version"] = kTestSetVersion;
  header["model"] = model_name(ts.model_id());
  header["n_states"] = ts.size();
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const TestState& s = ts.state(i);
    json line;
    switch (s.label.model) {
      case ModelId::kTwoParam: line["params"] = {s.label.params[0], s.label.params[1]}; break;
      case ModelId::kBellDiagonal: line["params"] = s.label.params; break;
    }
    line["prior"] = ts.prior_weights()[i];
    line["negativity"] = s.negativity;
    line["purity"] = s.purity;
    line["entangled"] = s.entangled;
    out << line.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "writing test set failed");
}

TestSet read_test_set(std::istream& in) {
  try {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::kParseFailure, "test set file is empty");
    const json header = json::parse(line);
    if (header.value("format", std::string{}) != kTestSetFormat) {
      throw Error(ErrorCode::kParseFailure, "not a test set file");
    }
    if (header.value("version", 0) != kTestSetVersion) {
      throw Error(ErrorCode::kParseFailure, "unsupported test set version");
    }
    const ModelId model = parse_model_name(header.at("model").get<std::string>());
    const auto n = header.at("n_states").get<std::size_t>();
    std::vector<TestState> states;
    std::vector<double> prior;
    states.reserve(n);
    prior.reserve(n);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      StateLabel label{model, {}};
      const json& params = j.at("params");
      const std::size_t expected = model == ModelId::kTwoParam ? 2 : 4;
      if (!params.is_array() || params.size() != expected) {
        throw Error(ErrorCode::kParseFailure, "state parameters have the wrong length");
      }
      for (std::size_t k = 0; k < expected; ++k) label.params[k] = params[k].get<double>();
      TestState s = make_test_state(state_from_label(label), label);
      if (std::abs(s.negativity - j.at("negativity").get<double>()) > kCacheTolerance ||
          std::abs(s.purity - j.at("purity").get<double>()) > kCacheTolerance) {
        throw Error(ErrorCode::kParseFailure, "cached negativity/purity disagree with the state on line " +
                                                  std::to_string(states.size() + 2));
      }
      prior.push_back(j.at("prior").get<double>());
      states.push_back(std::move(s));
    }
    if (states.size() != n) throw Error(ErrorCode::kParseFailure, "state count does not match the header");
    return TestSet(model, std::move(states), std::move(prior));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseFailure, std::string("malformed test set: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseFailure) throw;
    throw Error(ErrorCode::kParseFailure, std::string("invalid test set: ") + e.what());
  }
}

std::string histogram_to_csv(const Histogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "bin_low,bin_high,mass\n";
  out << 0.0 << ',' << 0.0 << ',' << h.separable_mass << '\n';
  for (std::size_t b = 0; b < h.bin_mass.size(); ++b) {
    out << h.bin_edges[b] << ',' << h.bin_edges[b + 1] << ',' << h.bin_mass[b] << '\n';
  }
  return out.str();
}

}  // namespace entsrc
