// Copyright 2026 The Pricing Lab Authors. All rights reserved.
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


#ifndef PRICING_LAB_VERIFY_HPP
#define PRICING_LAB_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace plab {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// "constants", "consistency", "oracles", "propositions", "linear-regret".
const std::vector<std::string>& verify_suites();

/// Runs one suite, or every suite for "all". Throws ConfigError for an
/// unknown name.
std::vector<VerifyCheck> run_verify(const std::string& suite);

/// Prints `CHECK <name> PASS|FAIL <detail>` lines. Returns 0 when every check
/// passes, 1 otherwise, 3 for an unknown suite.
int verify(const std::string& suite, std::ostream& out);

}  // namespace plab

#endif  // PRICING_LAB_VERIFY_HPP
