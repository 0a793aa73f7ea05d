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

#ifndef PSDREC_TRAIN_HPP
#define PSDREC_TRAIN_HPP

// Alternating constrained least squares for quantum models and NNMs.
//
// Ratings r are read as like-probabilities r / z_star. One sweep first
// refits every item with the users frozen, then every user with the items
// frozen. Each per-user / per-item subproblem is a convex quadratic in the
// real coordinates of the free matrix (see to_coords) and is solved
// inexactly by projected gradient with backtracking, which never increases
// the subobjective.
//
// During zero-filled sweeps every unobserved (u, i) counts as target 0. The
// dense part of those objectives is a single Gram matrix shared by all
// subproblems of a half-sweep, so no dense U x I array is ever built.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psdrec/data.hpp"
#include "psdrec/models.hpp"

namespace psdrec {

enum class TrainMode { Mae, Recall };
enum class ModelKind { Quantum, Nnm };

const char *mode_name(TrainMode m);
const char *kind_name(ModelKind k);

struct TrainConfig {
    ModelKind kind = ModelKind::Quantum;
    int dim = 2;
    int max_iter = 16;
    TrainMode mode = TrainMode::Mae;
    /// Unset: 2 in MAE mode, max_iter in recall mode.
    std::optional<int> zero_fill_sweeps;
    /// Step multiplier applied to 1/L, L the subproblem Lipschitz estimate.
    double initial_step = 1.0;
    double backtrack_factor = 0.5;
    int max_backtracks = 30;
    int inner_iterations = 5;
    std::uint64_t seed = 1;
    Field field = Field::Complex;
    /// Star alphabet used for targets r / z_star. 0 means the dataset's.
    int z_star = 0;
    /// Worker threads for the per-user / per-item loops. 0 means all cores.
    int threads = 0;

    int effective_zero_fill_sweeps() const;
    /// Throws InvalidInput on out-of-range values.
    void validate() const;
};

/// Applies one `key=value` setting. Throws InvalidInput on unknown keys or
/// unparseable values.
void set_config_value(TrainConfig &cfg, const std::string &key, const std::string &value);
/// Reads `key=value` lines; blank lines and `#` comments are ignored.
TrainConfig read_train_config(std::istream &in, TrainConfig base = {});
TrainConfig load_train_config(const std::string &path, TrainConfig base = {});
void write_train_config(std::ostream &out, const TrainConfig &cfg);

/// Training targets on (u, i): r_ui / z_star on observed entries and, when
/// zero filled, 0 everywhere else.
class EffectiveTargets {
public:
    EffectiveTargets(const RatingDataset &ds, bool zero_fill, int z_star = 0);

    const RatingDataset &dataset() const noexcept {
        return *ds_;
    }
    bool zero_filled() const noexcept {
        return zero_fill_;
    }
    double z_star() const noexcept {
        return z_star_;
    }
    /// Target of (u, i), or nullopt when (u, i) does not enter the objective.
    std::optional<double> at(int u, int i) const;
    double target(const Rating &r) const {
        return static_cast<double>(r.value) / z_star_;
    }

private:
    const RatingDataset *ds_;
    bool zero_fill_;
    double z_star_;
};

EffectiveTargets effective_targets(const RatingDataset &ds, bool zero_fill, int z_star = 0);

/// f(x) = x^T G x - 2 b^T x + c.
struct QuadraticForm {
    RMatrix gram;
    RVector linear;
    double constant = 0.0;

    double value(const RVector &x) const;
    RVector gradient(const RVector &x) const;
};

struct ProjectedGradientOptions {
    int inner_iterations = 5;
    double initial_step = 1.0;
    double backtrack_factor = 0.5;
    int max_backtracks = 30;

    static ProjectedGradientOptions from(const TrainConfig &cfg);
};

/// Projected gradient with backtracking from `x`. `project` maps
/// coordinates onto the feasible set. When `trace` is given, the objective
/// before the first and after every accepted step is appended.
RVector minimize_projected(const QuadraticForm &q, RVector x, const std::function<RVector(const RVector &)> &project,
                           const ProjectedGradientOptions &opts, std::vector<double> *trace = nullptr);

// Subproblems of the quantum trainer in `field` coordinates. `shared_gram`,
// when non-null, is the zero-fill Gram matrix of the frozen side; it is
// computed from scratch otherwise.
QuadraticForm user_subproblem(const QuantumModel &m, int u, const EffectiveTargets &t, Field field,
                              const RMatrix *shared_gram = nullptr);
QuadraticForm item_subproblem(const QuantumModel &m, int i, const EffectiveTargets &t, Field field,
                              const RMatrix *shared_gram = nullptr);
QuadraticForm user_subproblem(const NnmModel &m, int u, const EffectiveTargets &t,
                              const RMatrix *shared_gram = nullptr);
QuadraticForm item_subproblem(const NnmModel &m, int i, const EffectiveTargets &t,
                              const RMatrix *shared_gram = nullptr);

/// Sum over target pairs of (like-probability - target)^2, using the raw
/// (unclamped) trace / dot product.
double objective(const QuantumModel &m, const EffectiveTargets &t);
double objective(const NnmModel &m, const EffectiveTargets &t);

/// rho_u = v v^dagger with v uniform on the unit sphere of C^D (R^D in real
/// mode).
std::vector<HermitianMatrix> init_quantum_users(int num_users, int dim, std::uint64_t seed,
                                                Field field = Field::Complex);
/// p_u = |v_j|^2 for the same sphere samples (uniform on the simplex).
std::vector<ProbabilityVector> init_nnm_users(int num_users, int dim, std::uint64_t seed);

/// Initial model: sampled users, every item (I/2, I/2).
QuantumModel init_quantum_model(const RatingDataset &ds, const TrainConfig &cfg);
NnmModel init_nnm_model(const RatingDataset &ds, const TrainConfig &cfg);

/// Per-subproblem objective traces, collected on request (tests).
struct SubproblemTraces {
    std::vector<std::vector<double>> traces;
};

/// Two-outcome models only. Throws NumericalFailure on a non-finite
/// objective.
QuantumModel update_items(const QuantumModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                          SubproblemTraces *traces = nullptr);
QuantumModel update_users(const QuantumModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                          SubproblemTraces *traces = nullptr);
NnmModel update_items(const NnmModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                      SubproblemTraces *traces = nullptr);
NnmModel update_users(const NnmModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                      SubproblemTraces *traces = nullptr);

struct SweepRecord {
    int sweep = 0;  // 1-based
    bool zero_filled = false;
    double objective = 0.0;  // on this sweep's targets, after the sweep
    double seconds = 0.0;
    double max_residual = 0.0;
};

struct TrainHistory {
    double initial_objective = 0.0;  // on the first sweep's targets
    std::vector<SweepRecord> sweeps;
};

using SweepCallback = std::function<void(const SweepRecord &)>;

struct QuantumTrainResult {
    QuantumModel model;
    TrainHistory history;
};

struct NnmTrainResult {
    NnmModel model;
    TrainHistory history;
};

QuantumTrainResult train_quantum(const RatingDataset &ds, const TrainConfig &cfg, const SweepCallback &on_sweep = {});
NnmTrainResult train_nnm(const RatingDataset &ds, const TrainConfig &cfg, const SweepCallback &on_sweep = {});

}  // namespace psdrec

#endif  // PSDREC_TRAIN_HPP
