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

#ifndef OPTOSENSE_INI_HPP
#define OPTOSENSE_INI_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace optosense {

// Flat INI: `[section]` headers, `key = value` lines, `#` or `;` comments.
// A `#` preceded by whitespace also starts a trailing comment. Keys and
// section names are lower-cased; values keep their case. Order is preserved.

struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;  // 1-based column of the value
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;

  const IniEntry* find(std::string_view key) const;
  bool has(std::string_view key) const { return find(key) != nullptr; }
  /// Replaces the value if the key exists, appends otherwise.
  void set(std::string_view key, std::string value);
};

struct IniDocument {
  std::vector<IniSection> sections;

  const IniSection* find(std::string_view name) const;
  IniSection& section(std::string_view name);  // created if missing
  std::string dump() const;
};

/// Throws ConfigError with line and column on malformed input, duplicate
/// sections, duplicate keys, or keys outside a section.
IniDocument parse_ini(std::string_view text);
IniDocument read_ini_file(const std::filesystem::path& path);

}  // namespace optosense

#endif  // OPTOSENSE_INI_HPP
