// Copyright 2026 The rekoop Authors.
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

#ifndef REKOOP_TOOLS_COMMANDS_H_
#define REKOOP_TOOLS_COMMANDS_H_

#include <iosfwd>

#include <json.hpp>

#include "config.h"
#include "rekoop/datagen.h"

namespace rekoop::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kNumericalError = 3,
};

struct SimulatedData {
  SegmentedTrajectory trajectory;
  nlohmann::json truth;  // sidecar: generating model and its eigenvalues
};

SimulatedData SimulateFromConfig(const RunConfig& cfg);

// Each command writes data to files named in the config (or to `out` when no
// output path is set) and progress to `log`. Errors are thrown; RunCli maps
// them to exit codes.
void CmdSimulate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdFitStream(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdFitBatch(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdPredict(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdSweepDelta(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdBench(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void CmdEig(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// Full command line entry point: parses arguments, runs the subcommand and
// returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace rekoop::cli

#endif  // REKOOP_TOOLS_COMMANDS_H_
