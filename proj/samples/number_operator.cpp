// Copyright 2026 The Tomoplane Authors
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

// Averages the number operator over a few Fock and coherent states three ways:
// planar pairing, optical pairing and the number-basis trace.

#include <cstdio>

#include "tomoplane/pairing.hpp"

int main() {
    using namespace tomoplane;
    const ObservableExpr number = ObservableExpr::number();
    std::printf("%-40s %12s %12s %12s\n", "state", "planar", "optical", "trace");
    for (const StateSpec& state : {StateSpec::fock(0), StateSpec::fock(3), StateSpec::coherent({1.0, 1.0})}) {
        const ExpectationReport r = expectation_report(state, number);
        std::printf("%-40s %12.8f %12.8f %12.8f\n", r.state.c_str(), r.value_planar, r.value_optical, r.value_trace);
    }
}
