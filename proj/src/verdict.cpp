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

#include "matorder/verdict.hpp"

namespace matorder {

std::string certificate_kind(const Certificate& c) {
  struct Visitor {
    std::string operator()(const std::monostate&) const { return "none"; }
    std::string operator()(const SpectralProof&) const { return "spectral_proof"; }
    std::string operator()(const KMinWitness&) const { return "kmin_witness"; }
    std::string operator()(const KStateWitness&) const { return "kstate_witness"; }
    std::string operator()(const KMaxDecomposition&) const { return "kmax_decomposition"; }
    std::string operator()(const DualWitness&) const { return "dual_witness"; }
    std::string operator()(const MapRefutation&) const { return "map_refutation"; }
    std::string operator()(const CpConeCertificate&) const { return "cp_cone"; }
    std::string operator()(const ProjectionRefutation&) const {
      return "projection_refutation";
    }
  };
  return std::visit(Visitor{}, c);
}

std::string status_label(Status s, VerdictContext ctx) {
  if (s == Status::kUndecided) return "UNDECIDED";
  switch (ctx) {
    case VerdictContext::kCone:
      return s == Status::kMember ? "MEMBER" : "NOT_MEMBER";
    case VerdictContext::kMap:
      return s == Status::kMember ? "K_POSITIVE" : "NOT_K_POSITIVE";
    case VerdictContext::kProjection:
      return s == Status::kMember ? "MEMBER" : "NOT_PROJECTION";
  }
  return "UNDECIDED";
}

}  // namespace matorder
