// Copyright 2026 The hrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hrcsim/region.hpp"
#include "hrcsim/tableau.hpp"

namespace hrcsim {

/// Renyi entanglement entropy of `region` in units of log 2:
/// S = rank_GF2(G restricted to the region's columns) - |region|.
/// For stabilizer states all Renyi orders coincide, and the result is a
/// non-negative integer.
int entanglement_entropy(const StabilizerTableau& t, const Region& region);

/// I(A:C) = S_A + S_C - S_{A union C}. Regions must be disjoint.
int mutual_information(const StabilizerTableau& t, const Region& a,
                       const Region& c);

/// I3(A:B:C) = S_A + S_B + S_C - S_AB - S_AC - S_BC + S_ABC for pairwise
/// disjoint regions.
int tripartite_mutual_information(const StabilizerTableau& t, const Region& a,
                                  const Region& b, const Region& c);

/// I3 of the first three blocks of a quadripartition.
int tripartite_mutual_information(const StabilizerTableau& t,
                                  const Quadripartition& q);

/// Logarithmic negativity E(A:B) in units of log 2 for disjoint regions.
/// Equal to half the GF(2) rank of the antisymmetric form
///   J_pq = symplectic product of the A-restrictions of g_p and g_q,
/// where {g_p} spans the stabilizers supported on A union B. An integer for
/// stabilizer states because rank(J) is even.
int log_negativity(const StabilizerTableau& t, const Region& a,
                   const Region& b);

}  // namespace hrcsim
