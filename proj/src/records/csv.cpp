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

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "envlab/error.hpp"
#include "envlab/records.hpp"

namespace envlab {
namespace {

constexpr std::string_view kMetaHeader =
    "total_shots,seed,experiment,swap_config,mode,shot_noise";
constexpr std::string_view kRowHeader = "projector_id,count";

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename Int>
Int parse_int(const std::string& text, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::ParseError, std::string("bad ") + what + ": '" + text + "'");
  }
  return value;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

void write_csv(std::ostream& out, const CountTable& counts) {
  const auto& p = counts.provenance;
  out << kMetaHeader << '\n'
      << counts.total_shots << ',' << counts.seed << ',' << to_string(p.experiment)
      << ',' << to_string(p.swap) << ',' << to_string(p.mode) << ','
      << (counts.shot_noise ? "true" : "false") << '\n'
      << kRowHeader << '\n';
  for (const auto& e : counts.entries) {
    out << e.projector_id << ',' << e.count << '\n';
  }
}

std::string to_csv(const CountTable& counts) {
  std::ostringstream ss;
  write_csv(ss, counts);
  return ss.str();
}

CountTable read_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != kMetaHeader) {
    fail(ErrorCode::ParseError, "missing count-table metadata header");
  }
  if (!next_line(in, line)) fail(ErrorCode::ParseError, "missing metadata row");
  auto meta = split_commas(line);
  if (meta.size() != 6) {
    fail(ErrorCode::ParseError, "metadata row needs 6 fields");
  }
  CountTable t;
  t.total_shots = parse_int<std::int64_t>(meta[0], "total_shots");
  t.seed = parse_int<std::uint64_t>(meta[1], "seed");
  t.provenance.experiment = parse_experiment(meta[2]);
  t.provenance.swap = parse_swap_config(meta[3]);
  t.provenance.mode = parse_projector_mode(meta[4]);
  if (meta[5] == "true") {
    t.shot_noise = true;
  } else if (meta[5] == "false") {
    t.shot_noise = false;
  } else {
    fail(ErrorCode::ParseError, "shot_noise must be true or false");
  }
  if (!next_line(in, line) || line != kRowHeader) {
    fail(ErrorCode::ParseError, "missing projector_id,count header");
  }
  while (next_line(in, line)) {
    if (line.empty()) continue;
    auto cells = split_commas(line);
    if (cells.size() != 2 || cells[0].empty()) {
      fail(ErrorCode::ParseError, "bad count row '" + line + "'");
    }
    auto n = parse_int<std::int64_t>(cells[1], "count");
    if (n < 0) fail(ErrorCode::ParseError, "negative count in '" + line + "'");
    if (t.find(cells[0])) {
      fail(ErrorCode::ParseError, "projector '" + cells[0] + "' listed twice");
    }
    t.entries.push_back({cells[0], n});
  }
  return t;
}

CountTable parse_csv(const std::string& text) {
  std::istringstream ss(text);
  return read_csv(ss);
}

}  // namespace envlab
