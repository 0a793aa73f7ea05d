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

#include "psdrec/tags.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "psdrec/error.hpp"

namespace psdrec {

TagOperator tag_operator(const QuantumModel &m, std::span<const int> members, std::string name) {
    if (members.empty()) {
        throw InvalidInput("tag '" + name + "' has no members");
    }
    HermitianMatrix sum(m.dim());
    for (int i : members) {
        if (i < 0 || i >= m.num_items()) {
            throw InvalidInput("tag '" + name + "' has an out-of-range member");
        }
        sum += m.effect(i, kLike);
    }
    sum *= 1.0 / static_cast<double>(members.size());
    return {std::move(name), std::move(sum), static_cast<int>(members.size())};
}

bool subset_simple(const TagOperator &t, const TagOperator &t2, double epsilon) {
    // The slack absorbs rounding, so a projector contains itself at epsilon = 0.
    const double tr = t.effect.trace();
    return trace_inner(t.effect, t2.effect) >= (1.0 - epsilon) * tr - 1e-12 * std::max(1.0, tr);
}

HermitianMatrix project_to_level_set(const HermitianMatrix &y, const HermitianMatrix &e, double level) {
    auto at = [&](double mu) { return project_to_spectrahedron(y + mu * e); };
    HermitianMatrix rho = at(0.0);
    if (trace_inner(rho, e) >= level) {
        return rho;
    }
    // tr(P(y + mu e) e) is nondecreasing in mu, so bisect on the multiplier.
    double lo = 0.0, hi = std::max(1.0, frobenius_norm(y));
    HermitianMatrix best = at(hi);
    for (int k = 0; k < 60 && trace_inner(best, e) < level; ++k) {
        lo = hi;
        hi *= 2.0;
        best = at(hi);
    }
    for (int k = 0; k < 100 && hi - lo > 1e-14 * hi; ++k) {
        double mid = 0.5 * (lo + hi);
        HermitianMatrix cand = at(mid);
        if (trace_inner(cand, e) >= level) {
            hi = mid;
            best = std::move(cand);
        } else {
            lo = mid;
        }
    }
    return best;
}

SdpDecision subset_sdp_decide(const TagOperator &t, const TagOperator &t2, double epsilon, const SdpOptions &opts) {
    if (t.effect.dim() != t2.effect.dim()) {
        throw InvalidInput("tag operators differ in dimension");
    }
    SdpDecision out;
    const double level = 1.0 - epsilon / 2.0;
    const double threshold = epsilon / 2.0 + opts.tol;
    out.gate = max_eigenvalue(t.effect) >= level;
    if (!out.gate) {
        return out;
    }
    const HermitianMatrix diff = t2.effect - t.effect;
    const double scale = frobenius_norm(diff);
    if (scale == 0.0) {
        out.member = true;
        return out;
    }

    const Index d = t.effect.dim();
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal;
    const EigenDecomposition top = eigh(t.effect);
    for (int r = 0; r < opts.restarts && out.best <= threshold; ++r) {
        CVector v(d);
        if (r == 0) {
            v = top.vectors.col(0);
        } else {
            for (Index j = 0; j < d; ++j) {
                v[j] = Complex(normal(rng), normal(rng));
            }
        }
        const HermitianMatrix start = project_to_level_set(HermitianMatrix::outer(v.normalized()), t.effect, level);
        for (double sign : {1.0, -1.0}) {
            HermitianMatrix rho = start;
            double step = 1.0 / scale;
            for (int k = 0; k < opts.steps; ++k) {
                double value = sign * trace_inner(rho, diff);
                if (!std::isfinite(value)) {
                    throw NumericalFailure("subset_sdp: non-finite objective");
                }
                out.best = std::max(out.best, value);
                if (out.best > threshold) {
                    break;
                }
                HermitianMatrix next = project_to_level_set(rho + (sign * step) * diff, t.effect, level);
                if (frobenius_distance(next, rho) < 1e-14) {
                    break;
                }
                rho = std::move(next);
                step *= 1.25;  // linear objective: longer steps move straight to the optimal face
            }
            out.best = std::max(out.best, sign * trace_inner(rho, diff));
        }
    }
    out.member = out.best <= threshold;
    return out;
}

bool subset_sdp(const TagOperator &t, const TagOperator &t2, double epsilon, const SdpOptions &opts) {
    return subset_sdp_decide(t, t2, epsilon, opts).member;
}

const char *method_name(HierarchyMethod m) {
    return m == HierarchyMethod::Simple ? "simple" : "sdp";
}

HierarchyMethod parse_method(const std::string &name) {
    if (name == "simple") {
        return HierarchyMethod::Simple;
    }
    if (name == "sdp") {
        return HierarchyMethod::Sdp;
    }
    throw InvalidInput("unknown method '" + name + "' (expected simple|sdp)");
}

HierarchyGraph build_hierarchy(std::span<const TagOperator> ops, double epsilon, HierarchyMethod method,
                               const SdpOptions &opts, int threads) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw InvalidInput("epsilon must lie in [0, 1)");
    }
    HierarchyGraph g;
    g.epsilon = epsilon;
    g.method = method;
    const int n = static_cast<int>(ops.size());
    for (const auto &op : ops) {
        g.vertices.push_back(op.name);
    }
    std::vector<char> related(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    detail::parallel_for(n * n, threads, [&](int k) {
        int a = k / n, b = k % n;
        if (a == b) {
            return;
        }
        const auto &t = ops[static_cast<std::size_t>(a)];
        const auto &t2 = ops[static_cast<std::size_t>(b)];
        bool in = method == HierarchyMethod::Simple ? subset_simple(t, t2, epsilon) : subset_sdp(t, t2, epsilon, opts);
        related[static_cast<std::size_t>(k)] = in ? 1 : 0;
    });
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (related[static_cast<std::size_t>(a * n + b)]) {
                g.edges.emplace_back(a, b);
            }
        }
    }
    return g;
}

HierarchyGraph build_hierarchy(const QuantumModel &m, const TagCatalog &catalog, double epsilon,
                               HierarchyMethod method, const SdpOptions &opts, int threads) {
    std::vector<TagOperator> ops;
    for (std::size_t t = 0; t < catalog.tags.size(); ++t) {
        ops.push_back(tag_operator(m, catalog.members[t], catalog.tags[t]));
    }
    return build_hierarchy(ops, epsilon, method, opts, threads);
}

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

}  // namespace

void write_dot(std::ostream &out, const HierarchyGraph &g) {
    const int n = static_cast<int>(g.vertices.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        order[static_cast<std::size_t>(k)] = k;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.vertices[static_cast<std::size_t>(a)] < g.vertices[static_cast<std::size_t>(b)];
    });
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    }
    std::set<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw InvalidInput("hierarchy edge endpoint out of range");
        }
        if (a != b) {
            edges.emplace(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
        }
    }

    out << "digraph {\n";
    for (int k : order) {
        out << "  " << quoted(g.vertices[static_cast<std::size_t>(k)]) << ";\n";
    }
    for (auto [a, b] : edges) {
        bool mutual = edges.count({b, a}) > 0;
        if (mutual && b < a) {
            continue;
        }
        out << "  " << quoted(g.vertices[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])]) << " -> "
            << quoted(g.vertices[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])]);
        if (mutual) {
            out << " [dir=both]";
        }
        out << ";\n";
    }
    out << "}\n";
}

std::string export_dot(const HierarchyGraph &g) {
    std::ostringstream out;
    write_dot(out, g);
    return out.str();
}

}  // namespace psdrec
