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

#include <string>

#include "json.hpp"
#include "matorder/algebra.hpp"
#include "matorder/core.hpp"
#include "matorder/correlations.hpp"
#include "matorder/verdict.hpp"

namespace matorder {

using Json = nlohmann::json;

// Complex scalars are [re, im]; plain numbers are read as real.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const Matrix& m);  // row-major nested arrays
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const BlockSpace& s);
BlockSpace block_space_from_json(const Json& j);

// An element is a list of block matrices or one dense ambient matrix.
Json to_json(const HermitianElement& x);
HermitianElement element_from_json(const BlockSpace& space, const Json& j);

// {"blocks":[...], "k":int, "basis":[[block matrices]...]}
Json to_json(const ConcreteSystem& v);
ConcreteSystem system_from_json(const Json& j);

// {"n":int, "flat":matrix} or {"entries":[[dense ambient matrices]]}
Json to_json(const LevelElement& x);
LevelElement level_element_from_json(SystemPtr system, const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json to_json(const Verdict& v, VerdictContext ctx);
Verdict verdict_from_json(const Json& j);

Json to_json(const Correlation& c);
Correlation correlation_from_json(const Json& j);
Json to_json(const BellFunctional& f);
BellFunctional functional_from_json(const Json& j);  // also accepts {"name":"chsh"}
Json to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

Json to_json(const GeneratedAlgebra& a);
Json to_json(const BlockDecomposition& d);
Json to_json(const GNSRep& g);

// Parses text, throwing ParseError with "source:line:column: message".
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace matorder
