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

#include "optosense/ini.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "optosense/errors.hpp"

namespace optosense {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Offsets of the first and one-past-last non-blank characters.
std::pair<std::size_t, std::size_t> trimmed(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {b, e};
}

std::string_view strip_trailing_comment(std::string_view s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '#' && is_space(s[i - 1])) return s.substr(0, i);
  }
  return s;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

const IniEntry* IniSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

void IniSection::set(std::string_view key, std::string value) {
  for (auto& e : entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  entries.push_back({std::string(key), std::move(value), 0, 0});
}

const IniSection* IniDocument::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniSection& IniDocument::section(std::string_view name) {
  for (auto& s : sections) {
    if (s.name == name) return s;
  }
  sections.push_back({std::string(name), 0, {}});
  return sections.back();
}

std::string IniDocument::dump() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : sections) {
    if (!first) out << '\n';
    first = false;
    out << '[' << s.name << "]\n";
    for (const auto& e : s.entries) out << e.key << " = " << e.value << '\n';
  }
  return out.str();
}

IniDocument parse_ini(std::string_view text) {
  IniDocument doc;
  IniSection* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;  // UTF-8 BOM
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto [b, e] = trimmed(raw);
    if (b == e) continue;
    const char lead = raw[b];
    if (lead == '#' || lead == ';') continue;
    const int col = static_cast<int>(b) + 1;

    if (lead == '[') {
      const std::string_view body = strip_trailing_comment(raw.substr(b, e - b));
      const auto [bb, be] = trimmed(body);
      if (body[be - 1] != ']') {
        throw ConfigError("section header missing ']'", line_no, col);
      }
      const std::string_view inner = body.substr(bb + 1, be - bb - 2);
      const auto [ib, ie] = trimmed(inner);
      const std::string name = lower(inner.substr(ib, ie - ib));
      if (!valid_name(name)) {
        throw ConfigError("invalid section name '" + name + "'", line_no, col + 1);
      }
      if (doc.find(name)) {
        throw ConfigError("duplicate section [" + name + "]", line_no, col);
      }
      doc.sections.push_back({name, line_no, {}});
      current = &doc.sections.back();
      continue;
    }

    const std::size_t eq = raw.find('=', b);
    if (eq == std::string_view::npos || eq >= e) {
      throw ConfigError("expected 'key = value'", line_no, col);
    }
    if (!current) {
      throw ConfigError("key outside any section", line_no, col);
    }
    const auto [kb, ke] = trimmed(raw.substr(b, eq - b));
    const std::string key = lower(raw.substr(b + kb, ke - kb));
    if (!valid_name(key)) {
      throw ConfigError("invalid key '" + key + "'", line_no, col);
    }
    if (current->has(key)) {
      throw ConfigError("duplicate key '" + key + "' in [" + current->name + "]",
                        line_no, col);
    }
    const std::string_view rest = strip_trailing_comment(raw.substr(eq + 1));
    const auto [vb, ve] = trimmed(rest);
    const int value_col = static_cast<int>(eq + 1 + vb) + 1;
    current->entries.push_back(
        {key, std::string(rest.substr(vb, ve - vb)), line_no, value_col});
  }
  return doc;
}

IniDocument read_ini_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ini(buf.str());
}

}  // namespace optosense
