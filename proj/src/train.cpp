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

#include "psdrec/train.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "parallel.hpp"
#include "psdrec/error.hpp"

namespace psdrec {

const char *mode_name(TrainMode m) {
    return m == TrainMode::Mae ? "mae" : "recall";
}

const char *kind_name(ModelKind k) {
    return k == ModelKind::Quantum ? "quantum" : "nnm";
}

// ---------------------------------------------------------------------------
// Configuration

int TrainConfig::effective_zero_fill_sweeps() const {
    if (zero_fill_sweeps) {
        return *zero_fill_sweeps;
    }
    return mode == TrainMode::Mae ? std::min(2, max_iter) : max_iter;
}

void TrainConfig::validate() const {
    if (dim < 1) {
        throw InvalidInput("config: dim must be >= 1");
    }
    if (max_iter < 0) {
        throw InvalidInput("config: max_iter must be >= 0");
    }
    int zf = effective_zero_fill_sweeps();
    if (zf < 0 || zf > max_iter) {
        throw InvalidInput("config: zero_fill_sweeps must lie in [0, max_iter]");
    }
    if (!(initial_step > 0.0) || !(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
        throw InvalidInput("config: initial_step must be > 0 and backtrack_factor in (0, 1)");
    }
    if (max_backtracks < 0 || inner_iterations < 0) {
        throw InvalidInput("config: max_backtracks and inner_iterations must be >= 0");
    }
    if (z_star < 0 || threads < 0) {
        throw InvalidInput("config: z_star and threads must be >= 0");
    }
}

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used == value.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw InvalidInput("config: '" + key + "' expects an integer, got '" + value + "'");
}

double parse_double(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used == value.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw InvalidInput("config: '" + key + "' expects a number, got '" + value + "'");
}

}  // namespace

void set_config_value(TrainConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "kind") {
        if (value == "quantum") {
            cfg.kind = ModelKind::Quantum;
        } else if (value == "nnm") {
            cfg.kind = ModelKind::Nnm;
        } else {
            throw InvalidInput("config: kind must be quantum|nnm");
        }
    } else if (key == "dim" || key == "D") {
        cfg.dim = static_cast<int>(parse_integer(key, value));
    } else if (key == "max_iter") {
        cfg.max_iter = static_cast<int>(parse_integer(key, value));
    } else if (key == "mode") {
        if (value == "mae") {
            cfg.mode = TrainMode::Mae;
        } else if (value == "recall") {
            cfg.mode = TrainMode::Recall;
        } else {
            throw InvalidInput("config: mode must be mae|recall");
        }
    } else if (key == "zero_fill_sweeps") {
        if (value == "auto") {
            cfg.zero_fill_sweeps.reset();
        } else {
            cfg.zero_fill_sweeps = static_cast<int>(parse_integer(key, value));
        }
    } else if (key == "initial_step") {
        cfg.initial_step = parse_double(key, value);
    } else if (key == "backtrack_factor") {
        cfg.backtrack_factor = parse_double(key, value);
    } else if (key == "max_backtracks") {
        cfg.max_backtracks = static_cast<int>(parse_integer(key, value));
    } else if (key == "inner_iterations") {
        cfg.inner_iterations = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "field") {
        cfg.field = parse_field(value);
    } else if (key == "z_star") {
        cfg.z_star = static_cast<int>(parse_integer(key, value));
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_integer(key, value));
    } else {
        throw InvalidInput("config: unknown key '" + key + "'");
    }
}

TrainConfig read_train_config(std::istream &in, TrainConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected key=value", line_no);
        }
        try {
            set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const InvalidInput &e) {
            throw ParseError(e.what(), line_no);
        }
    }
    base.validate();
    return base;
}

TrainConfig load_train_config(const std::string &path, TrainConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    return read_train_config(in, std::move(base));
}

void write_train_config(std::ostream &out, const TrainConfig &cfg) {
    out << "kind=" << kind_name(cfg.kind) << '\n'
        << "dim=" << cfg.dim << '\n'
        << "max_iter=" << cfg.max_iter << '\n'
        << "mode=" << mode_name(cfg.mode) << '\n'
        << "zero_fill_sweeps=" << cfg.effective_zero_fill_sweeps() << '\n'
        << "initial_step=" << cfg.initial_step << '\n'
        << "backtrack_factor=" << cfg.backtrack_factor << '\n'
        << "max_backtracks=" << cfg.max_backtracks << '\n'
        << "inner_iterations=" << cfg.inner_iterations << '\n'
        << "seed=" << cfg.seed << '\n'
        << "field=" << field_name(cfg.field) << '\n'
        << "z_star=" << cfg.z_star << '\n'
        << "threads=" << cfg.threads << '\n';
}

// ---------------------------------------------------------------------------
// Targets

EffectiveTargets::EffectiveTargets(const RatingDataset &ds, bool zero_fill, int z_star)
    : ds_(&ds), zero_fill_(zero_fill), z_star_(static_cast<double>(z_star > 0 ? z_star : ds.z_star())) {
}

std::optional<double> EffectiveTargets::at(int u, int i) const {
    if (auto r = ds_->rating(u, i)) {
        return static_cast<double>(*r) / z_star_;
    }
    if (zero_fill_) {
        return 0.0;
    }
    return std::nullopt;
}

EffectiveTargets effective_targets(const RatingDataset &ds, bool zero_fill, int z_star) {
    return EffectiveTargets(ds, zero_fill, z_star);
}

// ---------------------------------------------------------------------------
// Quadratic subproblems

double QuadraticForm::value(const RVector &x) const {
    return x.dot(gram * x) - 2.0 * linear.dot(x) + constant;
}

RVector QuadraticForm::gradient(const RVector &x) const {
    return 2.0 * (gram * x - linear);
}

ProjectedGradientOptions ProjectedGradientOptions::from(const TrainConfig &cfg) {
    return {cfg.inner_iterations, cfg.initial_step, cfg.backtrack_factor, cfg.max_backtracks};
}

namespace {

double top_eigenvalue(const RMatrix &g) {
    if (g.rows() == 0) {
        return 0.0;
    }
    if (g.rows() <= 64) {
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(g, Eigen::EigenvaluesOnly);
        return std::max(0.0, solver.eigenvalues().maxCoeff());
    }
    RVector v = RVector::Ones(g.rows()).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 50; ++it) {
        RVector w = g * v;
        double n = w.norm();
        if (n == 0.0) {
            return 0.0;
        }
        lambda = v.dot(w);
        v = w / n;
    }
    return std::max(0.0, lambda);
}

}  // namespace

RVector minimize_projected(const QuadraticForm &q, RVector x, const std::function<RVector(const RVector &)> &project,
                           const ProjectedGradientOptions &opts, std::vector<double> *trace) {
    double f = q.value(x);
    if (!std::isfinite(f)) {
        throw NumericalFailure("subproblem objective is not finite");
    }
    if (trace) {
        trace->push_back(f);
    }
    const double lipschitz = 2.0 * top_eigenvalue(q.gram);
    if (lipschitz <= 0.0) {
        return x;  // constant objective
    }
    const double s0 = opts.initial_step / lipschitz;
    for (int it = 0; it < opts.inner_iterations; ++it) {
        RVector g = q.gradient(x);
        double step = s0;
        bool accepted = false;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            RVector next = project(x - step * g);
            RVector delta = next - x;
            double f_next = q.value(next);
            if (!std::isfinite(f_next)) {
                throw NumericalFailure("subproblem objective is not finite");
            }
            // Sufficient decrease for projected gradient; the second test
            // keeps rounding from admitting an increase.
            if (f_next <= f + g.dot(delta) + delta.squaredNorm() / (2.0 * step) && f_next <= f) {
                accepted = delta.squaredNorm() > 0.0;
                if (accepted) {
                    x = std::move(next);
                    f = f_next;
                }
                break;
            }
            step *= opts.backtrack_factor;
        }
        if (!accepted) {
            break;
        }
        if (trace) {
            trace->push_back(f);
        }
    }
    return x;
}

namespace {

RMatrix gram_of(const std::vector<RVector> &coords, Index n) {
    RMatrix g = RMatrix::Zero(n, n);
    for (const auto &a : coords) {
        g.selfadjointView<Eigen::Lower>().rankUpdate(a);
    }
    return g.selfadjointView<Eigen::Lower>();
}

// One side's subproblem given the frozen side's coordinates. `entries` are
// this user's (or item's) entry indices; `other` picks the frozen partner
// of an entry.
template <typename Other>
QuadraticForm build_subproblem(const std::vector<RVector> &frozen, std::span<const std::size_t> entries,
                               const EffectiveTargets &t, const RMatrix *shared_gram, Other other) {
    const Index n = frozen.empty() ? 0 : frozen.front().size();
    QuadraticForm q;
    q.linear = RVector::Zero(n);
    if (t.zero_filled()) {
        q.gram = shared_gram ? *shared_gram : gram_of(frozen, n);
    } else {
        q.gram = RMatrix::Zero(n, n);
    }
    for (std::size_t k : entries) {
        const Rating &r = t.dataset().entry(k);
        const RVector &a = frozen[static_cast<std::size_t>(other(r))];
        double target = t.target(r);
        q.linear += target * a;
        q.constant += target * target;
        if (!t.zero_filled()) {
            q.gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
        }
    }
    if (!t.zero_filled()) {
        q.gram = q.gram.selfadjointView<Eigen::Lower>();
    }
    return q;
}

std::vector<RVector> like_coords(const QuantumModel &m, Field field) {
    std::vector<RVector> out(static_cast<std::size_t>(m.num_items()));
    for (int i = 0; i < m.num_items(); ++i) {
        out[static_cast<std::size_t>(i)] = to_coords(m.effect(i, kLike), field);
    }
    return out;
}

std::vector<RVector> user_coords(const QuantumModel &m, Field field) {
    std::vector<RVector> out(static_cast<std::size_t>(m.num_users()));
    for (int u = 0; u < m.num_users(); ++u) {
        out[static_cast<std::size_t>(u)] = to_coords(m.user(u), field);
    }
    return out;
}

std::vector<RVector> like_coords(const NnmModel &m) {
    std::vector<RVector> out(static_cast<std::size_t>(m.num_items()));
    for (int i = 0; i < m.num_items(); ++i) {
        out[static_cast<std::size_t>(i)] = m.effect(i, kLike);
    }
    return out;
}

std::vector<RVector> user_coords(const NnmModel &m) {
    std::vector<RVector> out(static_cast<std::size_t>(m.num_users()));
    for (int u = 0; u < m.num_users(); ++u) {
        out[static_cast<std::size_t>(u)] = m.user(u).vec();
    }
    return out;
}

auto item_of = [](const Rating &r) { return r.item; };
auto user_of = [](const Rating &r) { return r.user; };

// Zero-fill objective: sum_all (a_u . a_i)^2 + sum_Gamma (t^2 - 2 t a_u . a_i).
double objective_from_coords(const std::vector<RVector> &users, const std::vector<RVector> &items,
                             const EffectiveTargets &t) {
    const RatingDataset &ds = t.dataset();
    double total = 0.0;
    if (t.zero_filled()) {
        const Index n = items.empty() ? 0 : items.front().size();
        RMatrix g = gram_of(items, n);
        for (const auto &a : users) {
            total += a.dot(g * a);
        }
        for (const auto &r : ds.entries()) {
            double p = users[static_cast<std::size_t>(r.user)].dot(items[static_cast<std::size_t>(r.item)]);
            double target = t.target(r);
            total += target * target - 2.0 * target * p;
        }
    } else {
        for (const auto &r : ds.entries()) {
            double p = users[static_cast<std::size_t>(r.user)].dot(items[static_cast<std::size_t>(r.item)]);
            double diff = p - t.target(r);
            total += diff * diff;
        }
    }
    return total;
}

void check_alignment(int num_users, int num_items, const EffectiveTargets &t) {
    if (num_users != t.dataset().num_users() || num_items != t.dataset().num_items()) {
        throw InvalidInput("model and dataset sizes differ");
    }
}

}  // namespace

QuadraticForm user_subproblem(const QuantumModel &m, int u, const EffectiveTargets &t, Field field,
                              const RMatrix *shared_gram) {
    check_alignment(m.num_users(), m.num_items(), t);
    return build_subproblem(like_coords(m, field), t.dataset().by_user(u), t, shared_gram, item_of);
}

QuadraticForm item_subproblem(const QuantumModel &m, int i, const EffectiveTargets &t, Field field,
                              const RMatrix *shared_gram) {
    check_alignment(m.num_users(), m.num_items(), t);
    return build_subproblem(user_coords(m, field), t.dataset().by_item(i), t, shared_gram, user_of);
}

QuadraticForm user_subproblem(const NnmModel &m, int u, const EffectiveTargets &t, const RMatrix *shared_gram) {
    check_alignment(m.num_users(), m.num_items(), t);
    return build_subproblem(like_coords(m), t.dataset().by_user(u), t, shared_gram, item_of);
}

QuadraticForm item_subproblem(const NnmModel &m, int i, const EffectiveTargets &t, const RMatrix *shared_gram) {
    check_alignment(m.num_users(), m.num_items(), t);
    return build_subproblem(user_coords(m), t.dataset().by_item(i), t, shared_gram, user_of);
}

double objective(const QuantumModel &m, const EffectiveTargets &t) {
    check_alignment(m.num_users(), m.num_items(), t);
    return objective_from_coords(user_coords(m, Field::Complex), like_coords(m, Field::Complex), t);
}

double objective(const NnmModel &m, const EffectiveTargets &t) {
    check_alignment(m.num_users(), m.num_items(), t);
    return objective_from_coords(user_coords(m), like_coords(m), t);
}

// ---------------------------------------------------------------------------
// Initialization

namespace {

CVector sphere_sample(int dim, Field field, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CVector v(dim);
    do {
        for (int j = 0; j < dim; ++j) {
            double re = normal(rng);
            double im = field == Field::Complex ? normal(rng) : 0.0;
            v[j] = Complex(re, im);
        }
    } while (v.norm() == 0.0);
    return v / v.norm();
}

}  // namespace

std::vector<HermitianMatrix> init_quantum_users(int num_users, int dim, std::uint64_t seed, Field field) {
    if (num_users < 0 || dim < 1) {
        throw InvalidInput("init_quantum_users: need num_users >= 0 and dim >= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<HermitianMatrix> out;
    out.reserve(static_cast<std::size_t>(num_users));
    for (int u = 0; u < num_users; ++u) {
        out.push_back(HermitianMatrix::outer(sphere_sample(dim, field, rng)));
    }
    return out;
}

std::vector<ProbabilityVector> init_nnm_users(int num_users, int dim, std::uint64_t seed) {
    if (num_users < 0 || dim < 1) {
        throw InvalidInput("init_nnm_users: need num_users >= 0 and dim >= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<ProbabilityVector> out;
    out.reserve(static_cast<std::size_t>(num_users));
    for (int u = 0; u < num_users; ++u) {
        RVector p = sphere_sample(dim, Field::Complex, rng).cwiseAbs2();
        out.emplace_back(p / p.sum());
    }
    return out;
}

QuantumModel init_quantum_model(const RatingDataset &ds, const TrainConfig &cfg) {
    cfg.validate();
    HermitianMatrix half = 0.5 * HermitianMatrix::identity(cfg.dim);
    std::vector<std::vector<HermitianMatrix>> items(static_cast<std::size_t>(ds.num_items()), {half, half});
    return QuantumModel(cfg.dim, 2, cfg.field, init_quantum_users(ds.num_users(), cfg.dim, cfg.seed, cfg.field),
                        std::move(items));
}

NnmModel init_nnm_model(const RatingDataset &ds, const TrainConfig &cfg) {
    cfg.validate();
    RVector half = RVector::Constant(cfg.dim, 0.5);
    std::vector<std::vector<RVector>> items(static_cast<std::size_t>(ds.num_items()), {half, half});
    return NnmModel(cfg.dim, 2, init_nnm_users(ds.num_users(), cfg.dim, cfg.seed), std::move(items));
}

// ---------------------------------------------------------------------------
// Half-sweeps

namespace {

void require_two_outcomes(int outcomes) {
    if (outcomes != 2) {
        throw InvalidInput("training needs a two-outcome (like/dislike) model");
    }
}

void prepare_traces(SubproblemTraces *traces, int n) {
    if (traces) {
        traces->traces.assign(static_cast<std::size_t>(n), {});
    }
}

std::vector<double> *trace_slot(SubproblemTraces *traces, int k) {
    return traces ? &traces->traces[static_cast<std::size_t>(k)] : nullptr;
}

}  // namespace

QuantumModel update_items(const QuantumModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                          SubproblemTraces *traces) {
    require_two_outcomes(m.outcomes());
    check_alignment(m.num_users(), m.num_items(), t);
    const Field field = m.field();
    const Index d = m.dim();
    const auto frozen = user_coords(m, field);
    std::optional<RMatrix> shared;
    if (t.zero_filled()) {
        shared = gram_of(frozen, hermitian_dof(d, field));
    }
    const auto opts = ProjectedGradientOptions::from(cfg);
    const HermitianMatrix eye = HermitianMatrix::identity(d);
    auto project = [&](const RVector &x) {
        return to_coords(project_to_unit_interval(from_coords(x, d, field)), field);
    };

    std::vector<std::vector<HermitianMatrix>> items(static_cast<std::size_t>(m.num_items()));
    prepare_traces(traces, m.num_items());
    detail::parallel_for(m.num_items(), cfg.threads, [&](int i) {
        QuadraticForm q = build_subproblem(frozen, t.dataset().by_item(i), t, shared ? &*shared : nullptr, user_of);
        RVector x = minimize_projected(q, to_coords(m.effect(i, kLike), field), project, opts, trace_slot(traces, i));
        HermitianMatrix like = from_coords(x, d, field);
        items[static_cast<std::size_t>(i)] = {like, eye - like};
    });

    QuantumModel out = m;
    for (int i = 0; i < m.num_items(); ++i) {
        out.set_item(i, std::move(items[static_cast<std::size_t>(i)]));
    }
    return out;
}

QuantumModel update_users(const QuantumModel &m, const EffectiveTargets &t, const TrainConfig &cfg,
                          SubproblemTraces *traces) {
    require_two_outcomes(m.outcomes());
    check_alignment(m.num_users(), m.num_items(), t);
    const Field field = m.field();
    const Index d = m.dim();
    const auto frozen = like_coords(m, field);
    std::optional<RMatrix> shared;
    if (t.zero_filled()) {
        shared = gram_of(frozen, hermitian_dof(d, field));
    }
    const auto opts = ProjectedGradientOptions::from(cfg);
    auto project = [&](const RVector &x) {
        return to_coords(project_to_spectrahedron(from_coords(x, d, field)), field);
    };

    std::vector<HermitianMatrix> users(static_cast<std::size_t>(m.num_users()));
    prepare_traces(traces, m.num_users());
    detail::parallel_for(m.num_users(), cfg.threads, [&](int u) {
        QuadraticForm q = build_subproblem(frozen, t.dataset().by_user(u), t, shared ? &*shared : nullptr, item_of);
        RVector x = minimize_projected(q, to_coords(m.user(u), field), project, opts, trace_slot(traces, u));
        users[static_cast<std::size_t>(u)] = from_coords(x, d, field);
    });

    QuantumModel out = m;
    for (int u = 0; u < m.num_users(); ++u) {
        out.set_user(u, std::move(users[static_cast<std::size_t>(u)]));
    }
    return out;
}

NnmModel update_items(const NnmModel &m, const EffectiveTargets &t, const TrainConfig &cfg, SubproblemTraces *traces) {
    require_two_outcomes(m.outcomes());
    check_alignment(m.num_users(), m.num_items(), t);
    const auto frozen = user_coords(m);
    std::optional<RMatrix> shared;
    if (t.zero_filled()) {
        shared = gram_of(frozen, m.dim());
    }
    const auto opts = ProjectedGradientOptions::from(cfg);
    // (e, 1 - e) onto {a + b = 1, a, b >= 0} is a clip of e to [0, 1].
    auto project = [](const RVector &x) -> RVector { return x.cwiseMax(0.0).cwiseMin(1.0); };

    std::vector<std::vector<RVector>> items(static_cast<std::size_t>(m.num_items()));
    prepare_traces(traces, m.num_items());
    detail::parallel_for(m.num_items(), cfg.threads, [&](int i) {
        QuadraticForm q = build_subproblem(frozen, t.dataset().by_item(i), t, shared ? &*shared : nullptr, user_of);
        RVector x = minimize_projected(q, m.effect(i, kLike), project, opts, trace_slot(traces, i));
        RVector rest = (1.0 - x.array()).matrix();
        items[static_cast<std::size_t>(i)] = {std::move(x), std::move(rest)};
    });

    NnmModel out = m;
    for (int i = 0; i < m.num_items(); ++i) {
        out.set_item(i, std::move(items[static_cast<std::size_t>(i)]));
    }
    return out;
}

NnmModel update_users(const NnmModel &m, const EffectiveTargets &t, const TrainConfig &cfg, SubproblemTraces *traces) {
    require_two_outcomes(m.outcomes());
    check_alignment(m.num_users(), m.num_items(), t);
    const auto frozen = like_coords(m);
    std::optional<RMatrix> shared;
    if (t.zero_filled()) {
        shared = gram_of(frozen, m.dim());
    }
    const auto opts = ProjectedGradientOptions::from(cfg);
    auto project = [](const RVector &x) -> RVector { return project_to_simplex(x).vec(); };

    std::vector<RVector> users(static_cast<std::size_t>(m.num_users()));
    prepare_traces(traces, m.num_users());
    detail::parallel_for(m.num_users(), cfg.threads, [&](int u) {
        QuadraticForm q = build_subproblem(frozen, t.dataset().by_user(u), t, shared ? &*shared : nullptr, item_of);
        users[static_cast<std::size_t>(u)] =
            minimize_projected(q, m.user(u).vec(), project, opts, trace_slot(traces, u));
    });

    NnmModel out = m;
    for (int u = 0; u < m.num_users(); ++u) {
        out.set_user(u, ProbabilityVector(std::move(users[static_cast<std::size_t>(u)])));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Full training

namespace {

template <typename Model, typename Init>
std::pair<Model, TrainHistory> run_training(const RatingDataset &ds, const TrainConfig &cfg, const SweepCallback &cb,
                                            Init init) {
    cfg.validate();
    Model model = init(ds, cfg);
    const int zero_fill = cfg.effective_zero_fill_sweeps();
    TrainHistory history;
    history.initial_objective = objective(model, effective_targets(ds, zero_fill > 0, cfg.z_star));
    for (int sweep = 1; sweep <= cfg.max_iter; ++sweep) {
        auto start = std::chrono::steady_clock::now();
        const bool filled = sweep <= zero_fill;
        EffectiveTargets targets = effective_targets(ds, filled, cfg.z_star);
        model = update_items(model, targets, cfg);
        model = update_users(model, targets, cfg);
        SweepRecord rec;
        rec.sweep = sweep;
        rec.zero_filled = filled;
        rec.objective = objective(model, targets);
        if (!std::isfinite(rec.objective)) {
            throw NumericalFailure("training objective is not finite");
        }
        rec.max_residual = model.max_residual();
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        history.sweeps.push_back(rec);
        if (cb) {
            cb(rec);
        }
    }
    return {std::move(model), std::move(history)};
}

}  // namespace

QuantumTrainResult train_quantum(const RatingDataset &ds, const TrainConfig &cfg, const SweepCallback &on_sweep) {
    auto [model, history] = run_training<QuantumModel>(ds, cfg, on_sweep, init_quantum_model);
    return {std::move(model), std::move(history)};
}

NnmTrainResult train_nnm(const RatingDataset &ds, const TrainConfig &cfg, const SweepCallback &on_sweep) {
    auto [model, history] = run_training<NnmModel>(ds, cfg, on_sweep, init_nnm_model);
    return {std::move(model), std::move(history)};
}

}  // namespace psdrec
