#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "protocol.hpp"

namespace sqpc {

enum class AttackKind {
    HONEST,
    INTERCEPT_RESEND,
    MEASURE_RESEND_FORWARD,
    MEASURE_RESEND_RETURN,
    ENTANGLE_MEASURE,
};

const char* attack_name(AttackKind k);
AttackKind attack_from_name(const std::string& name);

// Entangling attack description: Eve couples a fresh probe of dimension
// probe_dim to each traveling particle with forward_unitary on the way in
// and return_unitary on the way out.
struct EntangleSpec {
    int particle_dim = 0;
    int probe_dim = 0;
    Vec probe_state;     // initial probe ket, normalized
    Mat forward_unitary; // (particle_dim * probe_dim)^2, unitary
    Mat return_unitary;
    void validate() const;
};

struct AttackSpec {
    AttackKind kind = AttackKind::HONEST;
    std::optional<EntangleSpec> entangle; // ENTANGLE_MEASURE only

    // Named presets: honest, intercept-resend, measure-resend-forward,
    // measure-resend-return, entangle-measure (controlled-shift probe, the
    // canonical fully-informative instance).
    static AttackSpec preset(const std::string& name, int d);
    void validate(int d) const;
    std::string describe() const;
};

// Channel hooks that also expose what Eve recorded.
class AttackHook : public ChannelHook {
public:
    // Per-particle best guess of the prepared value, -1 when Eve has none.
    virtual std::vector<int> guesses() const { return {}; }
};

// Replaces each forward particle by a fresh Z-basis decoy of a random value
// and keeps the genuine one; on return she measures whatever the participant
// sent (her only data) and forwards the stored genuine particle to TP.
class InterceptResendHook final : public AttackHook {
public:
    InterceptResendHook(int d, RandomStream stream);
    JointState on_forward(JointState s) override;
    JointState on_return(JointState s) override;
    std::vector<int> guesses() const override { return return_outcomes_; }
    const std::vector<int>& decoy_values() const { return decoy_values_; }

private:
    int d_;
    RandomStream stream_;
    std::optional<JointState> genuine_;
    std::vector<int> decoy_values_;
    std::vector<int> return_outcomes_;
};

// Measures the particle in the computational basis while it travels in the
// chosen direction, resending the collapsed value.
class MeasureResendHook final : public AttackHook {
public:
    enum class Direction { FORWARD, RETURN };
    MeasureResendHook(Direction dir, RandomStream stream);
    JointState on_forward(JointState s) override;
    JointState on_return(JointState s) override;
    std::vector<int> guesses() const override { return outcomes_; }

private:
    Direction dir_;
    RandomStream stream_;
    std::vector<int> outcomes_;
};

// Couples a fresh probe on the way in and applies the return unitary on the
// way out, retaining the reduced probe state (never anyone's private data).
class EntangleMeasureHook final : public AttackHook {
public:
    EntangleMeasureHook(EntangleSpec spec, bool retain_probes = true);
    JointState on_forward(JointState s) override;
    JointState on_return(JointState s) override;

    int particles_seen() const { return particles_seen_; }
    const Mat& mean_probe() const { return mean_probe_; }
    const std::vector<Mat>& retained_probes() const { return retained_probes_; }

private:
    EntangleSpec spec_;
    bool retain_;
    int particles_seen_ = 0;
    Mat mean_probe_;
    std::vector<Mat> retained_probes_;
};

std::unique_ptr<AttackHook> make_hook(const AttackSpec& spec, int d,
                                      RandomStream stream, bool retain_probes = false);

/*
 * Structural zero-error test for an entangling attack.  The attack escapes
 * every disturbance check iff (a) the forward unitary leaves Z preparations
 * diagonal (no cross terms onto other particle values), (b) the return
 * unitary maps each surviving component back onto the prepared particle
 * value, and (c) the surviving probe components are one and the same vector
 * for every prepared value -- which simultaneously forces zero leakage.
 */
struct VerifyResult {
    bool forward_diagonal = false;  // (a)
    bool returns_particle = false;  // (b)
    bool probes_equal = false;      // (c)
    double off_diagonal_residual = 0.0;
    double particle_return_residual = 0.0;
    double probe_equality_residual = 0.0;
    double tolerance = 0.0;
    bool passes() const { return forward_diagonal && returns_particle && probes_equal; }
};

VerifyResult verify_zero_error_form(const EntangleSpec& spec, double tol = 1e-9);

// Exact per-class expectations for one attacked leg, computed by enumerating
// preparations, participant operations, and outcome amplitudes (no sampling).
struct AttackProfile {
    AttackKind kind = AttackKind::HONEST;
    int d = 0;
    double error_bz_r = 0.0; // reflected, Z-prepared
    double error_bf_r = 0.0; // reflected, F-prepared
    double error_bz_m = 0.0; // published test value vs preparation
    double leakage = 0.0;    // max pairwise trace distance of Eve's
                             // conditional states given the prepared Z value
    double eve_guess_accuracy = 0.0; // optimal-measurement success probability
};

AttackProfile compute_attack_profile(const AttackSpec& spec, int d);

} // namespace sqpc
