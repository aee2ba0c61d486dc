/*
   Copyright 2026 The fpclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>
#include <vector>

#include "app/config.hpp"

namespace fpclab::app {

struct RunOutcome {
    std::string summary;             // one line, no trailing newline
    std::vector<std::string> files;  // written artifacts, in order
    std::size_t warnings = 0;        // sweep cells that failed
};

/// Executes the configured command and writes its CSV (and SVG) files under
/// config.out_dir. Throws fpclab::Error subclasses on failure.
RunOutcome run(const RunConfig& config);

/// Config after command-specific defaults are applied; this is what the CSV
/// header records.
RunConfig effective_config(const RunConfig& config);

}  // namespace fpclab::app
