// Copyright 2026 The matorder Authors
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

#pragma once

#include <cstdint>

#include "matorder/json_io.hpp"

namespace matorder {

struct SelftestOutcome {
  Json result;   // deterministic given the seed
  Json timings;  // per-check wall time, excluded from comparisons
  bool passed = false;
};

// A small fixed corpus of analytic checks across every module.
SelftestOutcome run_selftest(std::uint64_t seed, int threads = 1);

}  // namespace matorder
