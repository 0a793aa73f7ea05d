// Copyright 2026 The psdrec Authors
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

#ifndef PSDREC_TAGS_HPP
#define PSDREC_TAGS_HPP

// Tag operators and approximate tag containment.
//
// The operator of a tag is the mean like-effect of its items, so tr(rho E_t)
// is the probability that a user in state rho likes a random item carrying
// the tag. Tag t is contained in t' (up to epsilon) when users who like t
// almost surely also like t'.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psdrec/data.hpp"
#include "psdrec/models.hpp"

namespace psdrec {

struct TagOperator {
    std::string name;
    HermitianMatrix effect;
    int members = 0;
};

/// Mean of E_i,like over `members`. Throws InvalidInput on an empty or
/// out-of-range member list.
TagOperator tag_operator(const QuantumModel &m, std::span<const int> members, std::string name = {});

/// tr(E_t E_t') >= (1 - epsilon) tr(E_t).
bool subset_simple(const TagOperator &t, const TagOperator &t2, double epsilon);

struct SdpOptions {
    int restarts = 16;
    int steps = 200;
    double tol = 1e-9;
    std::uint64_t seed = 7;
};

struct SdpDecision {
    bool gate = false;      // lambda_max(E_t) >= 1 - epsilon/2
    double best = 0.0;      // largest |tr(rho (E_t' - E_t))| found on the constrained set
    bool member = false;
};

/// Spectral gate, then a search for rho with tr(rho E_t) >= 1 - epsilon/2 and
/// |tr(rho (E_t' - E_t))| > epsilon/2. Membership holds when the gate passes
/// and no such rho is found. The search is projected gradient ascent from
/// random starts, so a miss is heuristic evidence of infeasibility.
SdpDecision subset_sdp_decide(const TagOperator &t, const TagOperator &t2, double epsilon,
                              const SdpOptions &opts = {});
bool subset_sdp(const TagOperator &t, const TagOperator &t2, double epsilon, const SdpOptions &opts = {});

/// Euclidean projection onto {rho density : tr(rho e) >= level}. Requires
/// lambda_max(e) >= level.
HermitianMatrix project_to_level_set(const HermitianMatrix &y, const HermitianMatrix &e, double level);

enum class HierarchyMethod { Simple, Sdp };
const char *method_name(HierarchyMethod m);
HierarchyMethod parse_method(const std::string &name);

struct HierarchyGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;  // (t, t'): t is contained in t'
    double epsilon = 0.0;
    HierarchyMethod method = HierarchyMethod::Simple;
};

/// Tests every ordered pair of distinct tags. Edges come out sorted.
HierarchyGraph build_hierarchy(const QuantumModel &m, const TagCatalog &catalog, double epsilon,
                               HierarchyMethod method, const SdpOptions &opts = {}, int threads = 0);
HierarchyGraph build_hierarchy(std::span<const TagOperator> ops, double epsilon, HierarchyMethod method,
                               const SdpOptions &opts = {}, int threads = 0);

/// Vertices in lexicographic order; a pair of opposite edges is written
/// once with dir=both.
std::string export_dot(const HierarchyGraph &g);
void write_dot(std::ostream &out, const HierarchyGraph &g);

}  // namespace psdrec

#endif  // PSDREC_TAGS_HPP
