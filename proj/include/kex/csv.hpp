// Copyright 2026 The kexlab Authors
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

#ifndef KEX_CSV_HPP_
#define KEX_CSV_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kex {

constexpr const char* kVersion = "0.1.0";

// Shortest round-trip decimal form; byte-stable across runs.
inline std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
inline std::string format_number(int v) { return std::to_string(v); }
inline std::string format_number(long long v) { return std::to_string(v); }

/// CSV with the fixed dialect: comma-separated, '.' decimals, LF endings,
/// a comment header block (version, config hash, seed) and one header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::uint64_t config_hash, std::uint64_t seed)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    out_ << "# kexlab " << kVersion << "\n";
    out_ << "# config-hash: " << config_hash << "\n";
    out_ << "# seed: " << seed << "\n";
  }

  void header(const std::vector<std::string>& cols) { line(cols); }

  template <class... Ts>
  void row(Ts... vals) {
    std::vector<std::string> cells{format_number(vals)...};
    line(cells);
  }

  void raw_row(const std::vector<std::string>& cells) { line(cells); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  std::ofstream out_;
};

}  // namespace kex

#endif  // KEX_CSV_HPP_
