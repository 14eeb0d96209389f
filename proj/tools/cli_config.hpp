// Copyright 2026 The relaxsim Authors
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

#pragma once

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace relaxsim::cli {

/// Reads config files in either TOML or JSON. A file whose first
/// non-blank character is '{' is JSON; keys mirror the long flag names.
class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Fill options of `app` that were not given on the command line from a
/// config file. Keys may sit at the top level or under a section named
/// after the subcommand. Unknown keys raise CLI::ConfigError.
void apply_config_file(CLI::App& app, const std::string& path);

}  // namespace relaxsim::cli
