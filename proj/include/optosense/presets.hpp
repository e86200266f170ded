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

#ifndef OPTOSENSE_PRESETS_HPP
#define OPTOSENSE_PRESETS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optosense/ini.hpp"

namespace optosense {

struct Preset {
  std::string name;
  std::string description;
  IniDocument document;  // explicit sections, no [scenario]
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace optosense

#endif  // OPTOSENSE_PRESETS_HPP
