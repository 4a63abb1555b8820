// Copyright 2026 The qsimnet Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace qsimnet {

/**
 * Entry point of the `qsimnet` command-line tool. `args` excludes the
 * program name. Returns the process exit code: 0 success, 1 validation
 * error, 2 I/O error, 3 resource/capacity error.
 *
 * Subcommands: gen-synth, train, eval-rank, eval-classify, eval-pvm.
 * Every subcommand also accepts --config FILE.json whose keys are flag names
 * without the leading dashes; flags given on the command line win.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace qsimnet
