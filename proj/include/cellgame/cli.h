// Copyright 2026 The cellgame Authors
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

#ifndef CELLGAME_CLI_H_
#define CELLGAME_CLI_H_

#include <iosfwd>

namespace cellgame {

// Parses campaign flags, runs the campaign and writes the CSV. Returns 0 on
// success, 1 on a usage error, 2 when the run cannot start or the output
// cannot be written, and 3 when the CSV was written but some rows carry an
// error (for example an exceeded solver budget).
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace cellgame

#endif  // CELLGAME_CLI_H_
