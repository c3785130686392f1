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

#ifndef KEX_CLI_HPP_
#define KEX_CLI_HPP_

namespace kex::cli {

// Exit codes: 0 all declared checks pass, 1 a check failed, 2 config error.
int run(int argc, const char* const* argv);

}  // namespace kex::cli

#endif  // KEX_CLI_HPP_
