#include "adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace sqpc {

const char* attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::HONEST: return "honest";
        case AttackKind::INTERCEPT_RESEND: return "intercept-resend";
        case AttackKind::MEASURE_RESEND_FORWARD: return "measure-resend-forward";
        case AttackKind::MEASURE_RESEND_RETURN: return "measure-resend-return";
        case AttackKind::ENTANGLE_MEASURE: return "entangle-measure";
    }
    return "?";
}

AttackKind attack_from_name(const std::string& name) {
    for (AttackKind k : {AttackKind::HONEST, AttackKind::INTERCEPT_RESEND,
                         AttackKind::MEASURE_RESEND_FORWARD,
                         AttackKind::MEASURE_RESEND_RETURN, AttackKind::ENTANGLE_MEASURE})
        if (name == attack_name(k)) return k;
    throw std::invalid_argument("unknown attack: " + name);
}

void EntangleSpec::validate() const {
    if (particle_dim < 2) throw std::invalid_argument("attack: particle_dim must be >= 2");
    if (probe_dim < 1) throw std::invalid_argument("attack: probe_dim must be >= 1");
    const Eigen::Index dim = static_cast<Eigen::Index>(particle_dim) * probe_dim;
    if (probe_state.size() != probe_dim)
        throw std::invalid_argument("attack: probe state size mismatch");
    if (std::abs(probe_state.norm() - 1.0) > kStateTol)
        throw std::invalid_argument("attack: probe state not normalized");
    for (const Mat* u : {&forward_unitary, &return_unitary}) {
        if (u->rows() != dim || u->cols() != dim)
            throw std::invalid_argument("attack: unitary dimension mismatch");
        if (unitarity_residual(*u) > kStateTol)
            throw std::invalid_argument("attack: matrix is not unitary");
    }
}

namespace {

// Controlled shift: adds the particle value into the probe register.
EntangleSpec controlled_shift_spec(int d) {
    EntangleSpec s;
    s.particle_dim = d;
    s.probe_dim = d;
    s.probe_state = Vec::Zero(d);
    s.probe_state[0] = 1.0;
    const int dim = d * d;
    s.forward_unitary = Mat::Zero(dim, dim);
    for (int p = 0; p < d; ++p)
        for (int e = 0; e < d; ++e)
            s.forward_unitary(p * d + (e + p) % d, p * d + e) = 1.0;
    s.return_unitary = Mat::Identity(dim, dim);
    return s;
}

} // namespace

AttackSpec AttackSpec::preset(const std::string& name, int d) {
    validate_dimension(d);
    AttackSpec spec;
    spec.kind = attack_from_name(name);
    if (spec.kind == AttackKind::ENTANGLE_MEASURE)
        spec.entangle = controlled_shift_spec(d);
    return spec;
}

void AttackSpec::validate(int d) const {
    if (kind == AttackKind::ENTANGLE_MEASURE) {
        if (!entangle) throw std::invalid_argument("attack: missing entangling unitaries");
        entangle->validate();
        if (entangle->particle_dim != d)
            throw std::invalid_argument("attack: particle_dim differs from session d");
    } else if (entangle) {
        throw std::invalid_argument("attack: unitaries given for a non-entangling kind");
    }
}

std::string AttackSpec::describe() const {
    std::string s = attack_name(kind);
    if (kind == AttackKind::ENTANGLE_MEASURE && entangle)
        s += " (probe_dim=" + std::to_string(entangle->probe_dim) + ")";
    return s;
}

InterceptResendHook::InterceptResendHook(int d, RandomStream stream)
    : d_(d), stream_(std::move(stream)) {
    validate_dimension(d);
}

JointState InterceptResendHook::on_forward(JointState s) {
    genuine_ = std::move(s);
    int decoy = stream_.uniform_int(d_);
    decoy_values_.push_back(decoy);
    return JointState::bare(QuditState::basis_state({Basis::Z, decoy}, d_));
}

JointState InterceptResendHook::on_return(JointState s) {
    if (!genuine_) throw std::logic_error("intercept hook: return before forward");
    return_outcomes_.push_back(sample_particle_outcome(s, Basis::Z, stream_));
    JointState out = std::move(*genuine_);
    genuine_.reset();
    return out;
}

MeasureResendHook::MeasureResendHook(Direction dir, RandomStream stream)
    : dir_(dir), stream_(std::move(stream)) {}

JointState MeasureResendHook::on_forward(JointState s) {
    if (dir_ != Direction::FORWARD) return s;
    auto m = measure_particle(s, Basis::Z, stream_);
    outcomes_.push_back(m.outcome);
    return std::move(m.after);
}

JointState MeasureResendHook::on_return(JointState s) {
    if (dir_ != Direction::RETURN) return s;
    auto m = measure_particle(s, Basis::Z, stream_);
    outcomes_.push_back(m.outcome);
    return std::move(m.after);
}

EntangleMeasureHook::EntangleMeasureHook(EntangleSpec spec, bool retain_probes)
    : spec_(std::move(spec)), retain_(retain_probes) {
    spec_.validate();
    mean_probe_ = Mat::Zero(spec_.probe_dim, spec_.probe_dim);
}

JointState EntangleMeasureHook::on_forward(JointState s) {
    if (s.particle_dim() != spec_.particle_dim)
        throw std::invalid_argument("entangle hook: particle dimension mismatch");
    if (s.probe_dim() != 1)
        throw std::logic_error("entangle hook: particle already carries a probe");
    JointState joint = JointState::product(s.particle(), spec_.probe_state);
    return apply_joint(spec_.forward_unitary, joint);
}

JointState EntangleMeasureHook::on_return(JointState s) {
    JointState out = apply_joint(spec_.return_unitary, s);
    Mat probe = reduced_probe(out);
    ++particles_seen_;
    mean_probe_ += (probe - mean_probe_) / particles_seen_;
    if (retain_) retained_probes_.push_back(std::move(probe));
    return out;
}

std::unique_ptr<AttackHook> make_hook(const AttackSpec& spec, int d,
                                      RandomStream stream, bool retain_probes) {
    spec.validate(d);
    switch (spec.kind) {
        case AttackKind::HONEST: {
            struct PassThrough final : AttackHook {
                JointState on_forward(JointState s) override { return s; }
                JointState on_return(JointState s) override { return s; }
            };
            return std::make_unique<PassThrough>();
        }
        case AttackKind::INTERCEPT_RESEND:
            return std::make_unique<InterceptResendHook>(d, std::move(stream));
        case AttackKind::MEASURE_RESEND_FORWARD:
            return std::make_unique<MeasureResendHook>(MeasureResendHook::Direction::FORWARD,
                                                       std::move(stream));
        case AttackKind::MEASURE_RESEND_RETURN:
            return std::make_unique<MeasureResendHook>(MeasureResendHook::Direction::RETURN,
                                                       std::move(stream));
        case AttackKind::ENTANGLE_MEASURE:
            return std::make_unique<EntangleMeasureHook>(*spec.entangle, retain_probes);
    }
    throw std::logic_error("make_hook: unreachable");
}

namespace {

// Probe-space block t of a joint ket.
Vec probe_block(const Vec& joint, int t, int de) {
    return joint.segment(static_cast<Eigen::Index>(t) * de, de);
}

Vec embed_block(const Vec& probe, int t, int d) {
    const int de = static_cast<int>(probe.size());
    Vec out = Vec::Zero(static_cast<Eigen::Index>(d) * de);
    out.segment(static_cast<Eigen::Index>(t) * de, de) = probe;
    return out;
}

} // namespace

VerifyResult verify_zero_error_form(const EntangleSpec& spec, double tol) {
    spec.validate();
    const int d = spec.particle_dim, de = spec.probe_dim;
    VerifyResult r;
    r.tolerance = tol;

    std::vector<Vec> surviving_probe_images(d);
    for (int g = 0; g < d; ++g) {
        Vec ket = Vec::Zero(static_cast<Eigen::Index>(d) * de);
        ket.segment(static_cast<Eigen::Index>(g) * de, de) = spec.probe_state;
        Vec fwd = spec.forward_unitary * ket;

        for (int t = 0; t < d; ++t) {
            if (t == g) continue;
            r.off_diagonal_residual =
                std::max(r.off_diagonal_residual, probe_block(fwd, t, de).norm());
        }

        // Evolve only the surviving (diagonal) component through the return
        // unitary and see where the particle lands.
        Vec back = spec.return_unitary * embed_block(probe_block(fwd, g, de), g, d);
        double stray = 0.0;
        for (int t = 0; t < d; ++t) {
            if (t == g) continue;
            stray += probe_block(back, t, de).squaredNorm();
        }
        r.particle_return_residual = std::max(r.particle_return_residual, std::sqrt(stray));
        surviving_probe_images[g] = probe_block(back, g, de);
    }

    for (int g = 0; g < d; ++g)
        for (int t = g + 1; t < d; ++t)
            r.probe_equality_residual =
                std::max(r.probe_equality_residual,
                         (surviving_probe_images[g] - surviving_probe_images[t]).norm());

    r.forward_diagonal = r.off_diagonal_residual <= tol;
    r.returns_particle = r.particle_return_residual <= tol;
    r.probes_equal = r.probe_equality_residual <= tol;
    return r;
}

namespace {

// Classical record model for the non-entangling attacks: Eve's per-particle
// record distribution conditioned on a Z preparation of value g.  Leakage is
// the max pairwise total variation (trace distance of the diagonal density
// matrices) and guess accuracy the exact maximum-likelihood success under a
// uniform prior.
struct RecordModel {
    // conditional[g][record] = P(record | prepared (Z, g))
    std::vector<std::vector<double>> conditional;
};

double record_leakage(const RecordModel& m) {
    double worst = 0.0;
    for (std::size_t a = 0; a < m.conditional.size(); ++a)
        for (std::size_t b = a + 1; b < m.conditional.size(); ++b) {
            double tv = 0.0;
            for (std::size_t r = 0; r < m.conditional[a].size(); ++r)
                tv += std::abs(m.conditional[a][r] - m.conditional[b][r]);
            worst = std::max(worst, 0.5 * tv);
        }
    return worst;
}

double record_guess_accuracy(const RecordModel& m) {
    const double prior = 1.0 / m.conditional.size();
    double acc = 0.0;
    for (std::size_t r = 0; r < m.conditional[0].size(); ++r) {
        double best = 0.0;
        for (const auto& cond : m.conditional) best = std::max(best, prior * cond[r]);
        acc += best;
    }
    return acc;
}

AttackProfile profile_honest(int d) {
    AttackProfile p;
    p.kind = AttackKind::HONEST;
    p.d = d;
    p.eve_guess_accuracy = 1.0 / d;
    return p;
}

AttackProfile profile_intercept(int d) {
    AttackProfile p;
    p.kind = AttackKind::INTERCEPT_RESEND;
    p.d = d;

    // Reflected classes: TP always receives the untouched genuine particle,
    // so her remeasurement matches the preparation exactly.
    p.error_bz_r = 0.0;
    p.error_bf_r = 0.0;

    // Published tests: the participant measured Eve's uniform decoy instead
    // of the genuine particle.
    double correct = 0.0;
    for (int g = 0; g < d; ++g) {
        QuditState prepared = QuditState::basis_state({Basis::Z, g}, d);
        for (int u = 0; u < d; ++u) {
            QuditState decoy = QuditState::basis_state({Basis::Z, u}, d);
            double p_outcome_matches = std::norm(prepared.amps().dot(decoy.amps()));
            correct += (1.0 / d) * (1.0 / d) * p_outcome_matches;
        }
    }
    p.error_bz_m = 1.0 - correct;

    // Eve's record is her measurement of what the participant emitted, which
    // is always her own decoy value: independent of the preparation.
    RecordModel m;
    m.conditional.assign(d, std::vector<double>(d, 1.0 / d));
    p.leakage = record_leakage(m);
    p.eve_guess_accuracy = record_guess_accuracy(m);
    return p;
}

AttackProfile profile_measure_resend(int d, AttackKind kind) {
    AttackProfile p;
    p.kind = kind;
    p.d = d;
    const Mat f = fourier_matrix(d);

    // Z preparations survive a computational-basis measurement in either
    // direction, so the reflected-Z check and the published tests are clean.
    p.error_bz_r = 0.0;
    p.error_bz_m = 0.0;

    // Reflected F preparations collapse: P(TP reads j back) =
    // sum_k |<k|F_j>|^2 |<F_j|k>|^2.
    double correct = 0.0;
    for (int j = 0; j < d; ++j) {
        double pj = 0.0;
        for (int k = 0; k < d; ++k) pj += std::norm(f(k, j)) * std::norm(f(k, j));
        correct += pj / d;
    }
    p.error_bf_r = 1.0 - correct;

    // Either direction hands Eve the exact prepared Z value (forward: she
    // measures the genuine particle; return: the participant's fresh copy or
    // reflection of it).
    RecordModel m;
    m.conditional.assign(d, std::vector<double>(d, 0.0));
    for (int g = 0; g < d; ++g) m.conditional[g][g] = 1.0;
    p.leakage = record_leakage(m);
    p.eve_guess_accuracy = record_guess_accuracy(m);
    return p;
}

AttackProfile profile_entangle(const EntangleSpec& spec) {
    const int d = spec.particle_dim, de = spec.probe_dim;
    const Mat fd = fourier_matrix(d);
    AttackProfile p;
    p.kind = AttackKind::ENTANGLE_MEASURE;
    p.d = d;

    std::vector<Mat> conditional_probes(d, Mat::Zero(de, de));

    for (int g = 0; g < d; ++g) {
        JointState fwd = apply_joint(
            spec.forward_unitary,
            JointState::product(QuditState::basis_state({Basis::Z, g}, d), spec.probe_state));

        // Participant measures (probability 1/2): outcome t with the block
        // weight; a fresh |t> goes back with the conditional probe attached.
        auto probs = particle_probabilities(fwd, Basis::Z);
        p.error_bz_m += (1.0 - probs[g]) / d;

        Mat probe_after_measure = Mat::Zero(de, de);
        for (int t = 0; t < d; ++t) {
            Vec cond = fwd.amps().segment(static_cast<Eigen::Index>(t) * de, de);
            if (cond.squaredNorm() <= 0.0) continue;
            Vec back = spec.return_unitary * embed_block(cond, t, d);
            for (int s = 0; s < d; ++s) {
                Vec blk = probe_block(back, s, de);
                probe_after_measure += blk * blk.adjoint();
            }
        }

        // Participant reflects (probability 1/2).
        JointState ret = apply_joint(spec.return_unitary, fwd);
        auto rprobs = particle_probabilities(ret, Basis::Z);
        p.error_bz_r += (1.0 - rprobs[g]) / d;
        Mat probe_after_reflect = reduced_probe(ret);

        conditional_probes[g] = 0.5 * (probe_after_measure + probe_after_reflect);
    }

    for (int j = 0; j < d; ++j) {
        JointState fwd = apply_joint(
            spec.forward_unitary,
            JointState::product(QuditState::basis_state({Basis::F, j}, d), spec.probe_state));
        JointState ret = apply_joint(spec.return_unitary, fwd);
        auto probs = particle_probabilities(ret, Basis::F);
        p.error_bf_r += (1.0 - probs[j]) / d;
    }

    for (int g = 0; g < d; ++g)
        for (int t = g + 1; t < d; ++t)
            p.leakage = std::max(p.leakage,
                                 trace_distance(conditional_probes[g], conditional_probes[t]));

    p.eve_guess_accuracy = discrimination_success(
        conditional_probes, std::vector<double>(d, 1.0 / d));

    // Clamp tiny negative rounding residue.
    for (double* v : {&p.error_bz_r, &p.error_bf_r, &p.error_bz_m, &p.leakage})
        *v = std::max(*v, 0.0);
    return p;
}

} // namespace

AttackProfile compute_attack_profile(const AttackSpec& spec, int d) {
    spec.validate(d);
    switch (spec.kind) {
        case AttackKind::HONEST: return profile_honest(d);
        case AttackKind::INTERCEPT_RESEND: return profile_intercept(d);
        case AttackKind::MEASURE_RESEND_FORWARD:
        case AttackKind::MEASURE_RESEND_RETURN:
            return profile_measure_resend(d, spec.kind);
        case AttackKind::ENTANGLE_MEASURE: return profile_entangle(*spec.entangle);
    }
    throw std::logic_error("compute_attack_profile: unreachable");
}

} // namespace sqpc
