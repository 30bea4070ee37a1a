#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mod_arith.hpp"
#include "qudit.hpp"

namespace sqpc {

/*
 * Three-party comparison session over a semiquantum channel.
 *
 * A third party (TP) prepares single qudits, each uniformly random in the
 * computational (Z) or Fourier (F) basis, and sends them one at a time to a
 * classical participant, who either measures in Z and resends a fresh copy
 * of the observed value, or reflects the particle untouched.  TP remeasures
 * every returned particle in its preparation basis.  Reflected particles
 * serve as disturbance detectors; measured Z-prepared particles split into
 * published test positions and private comparison digits that carry the
 * masked secrets.
 */

struct SessionParams {
    int d = 3;                  // qudit dimension, odd and >= 3
    int n = 1;                  // number of compared digits
    double delta = 0.25;        // transmission oversampling fraction
    double test_threshold = 0.0; // max tolerated error rate per check
    std::uint64_t seed = 0;

    int h() const { return half_range(d); }
    int sequence_length() const; // ceil(8 * n * (1 + delta)) particles per leg
    void validate() const;
};

enum class ParticipantOp { MEASURE, REFLECT };
enum class ParticleClass { BZ_M, BZ_R, BF_R, BF_M };
enum class ParticleUsage { DETECTION, TEST, COMPARISON, IGNORED, UNUSED };
enum class Party { TP, ALICE, BOB, EVE };

const char* op_name(ParticipantOp op);
const char* class_name(ParticleClass c);
const char* usage_name(ParticleUsage u);
const char* party_name(Party p);

// Preparation basis x participant operation -> transcript class.
ParticleClass classify(Basis prepared, ParticipantOp op);

struct ParticleRecord {
    int index;
    BasisLabel prepared;
    ParticipantOp op;
    int participant_outcome; // -1 when the particle was reflected
    int tp_outcome;          // TP's remeasurement in the prepared basis
    ParticleClass cls;
    ParticleUsage usage;
};

struct LegLedger {
    std::vector<ParticleRecord> records;

    int class_count(ParticleClass c) const;
    std::vector<int> positions_of_class(ParticleClass c) const;
};

// In-flight channel interposer.  Hooks see only the traveling particle
// (possibly joint with an adversary probe); participant and TP private state
// is out of reach by construction.
class ChannelHook {
public:
    virtual ~ChannelHook() = default;
    virtual JointState on_forward(JointState s) = 0; // TP -> participant
    virtual JointState on_return(JointState s) = 0;  // participant -> TP
};

class IdentityHook final : public ChannelHook {
public:
    JointState on_forward(JointState s) override { return s; }
    JointState on_return(JointState s) override { return s; }
};

// Full lockstep quantum phase for one participant leg: particle i completes
// its round trip before particle i+1 is prepared.
LegLedger run_leg(const SessionParams& params, Party participant, ChannelHook& hook);

struct ChannelCheck {
    std::string name;
    bool ran = false;
    bool empty_class = false; // no observations; rate reported as zero
    int observations = 0;
    int mismatches = 0;
    double rate = 0.0;
};

// Disturbance check over one reflected class (BZ_R or BF_R): TP compares her
// remeasurement against the prepared value.
ChannelCheck check_reflected(const LegLedger& ledger, ParticleClass cls,
                             const std::string& name);

struct TestSelection {
    std::vector<int> test_positions;       // ascending particle indices
    std::vector<int> published_outcomes;   // participant outcomes at those
    ChannelCheck check;                    // published value vs prepared value
    std::vector<int> comparison_positions; // first n surviving BZ_M positions
};

// Uniformly samples n TEST positions among the BZ_M particles (TP's stream),
// publishes the participant outcomes there, checks them against preparation,
// and marks usages (TEST / COMPARISON / UNUSED).  Requires >= 2n BZ_M.
TestSelection select_and_check_test(const SessionParams& params, LegLedger& ledger,
                                    Party participant, RandomStream& tp_select,
                                    const std::string& check_name);

enum class SessionStatus { COMPLETED, ABORTED_EAVESDROP, ABORTED_INSUFFICIENT };

const char* status_name(SessionStatus s);

struct AbortRecord {
    std::string check;    // name of the failed check
    double error_rate;    // measured rate (eavesdropping aborts)
    int have = -1;        // supply aborts: BZ_M count seen ...
    int need = -1;        // ... and the 2n required
};

struct LegData {
    LegLedger ledger;
    std::vector<int> z_positions;        // TP's basis announcement
    std::vector<int> reflect_positions;  // participant's announcement
    ChannelCheck reflected_z_check;
    ChannelCheck reflected_f_check;
    std::vector<int> test_positions;
    std::vector<int> test_outcomes;
    ChannelCheck test_check;
    std::vector<int> comparison_positions;
};

struct SessionInputs {
    std::vector<int> x;   // Alice's secret digits, each in [0, h]
    std::vector<int> y;   // Bob's secret digits, each in [0, h]
    std::vector<int> key; // pre-shared key digits, each in [0, d)
};

struct Transcript {
    SessionParams params;
    SessionInputs inputs;
    LegData alice;
    LegData bob;

    // Comparison phase (populated only for completed sessions).
    int mask_constant = -1;                 // TP's private session digit
    std::vector<int> alice_comparison_tp;   // TP-side comparison values (prepared)
    std::vector<int> bob_comparison_tp;
    std::vector<int> alice_comparison_seen; // participant-side measured values
    std::vector<int> bob_comparison_seen;
    std::vector<int> alice_complement;      // TP's mask complements
    std::vector<int> bob_complement;
    std::vector<int> alice_message;         // key-encoded secrets
    std::vector<int> bob_message;
    std::vector<int> masked_alice;          // published masked digits
    std::vector<int> masked_bob;
    std::vector<int> combined;              // TP-private combined digits
    std::vector<int> published_sign;        // TP's public sign tokens (-1/0/+1)
    std::vector<int> results;               // participant-decoded relations

    SessionStatus status = SessionStatus::COMPLETED;
    std::optional<AbortRecord> abort;
};

// Runs both legs, the disturbance and test checks in fixed order (Alice
// reflected-Z, Alice reflected-F, Bob reflected-Z, Bob reflected-F, Alice
// supply+test, Bob supply+test; first failure aborts), then the masked
// comparison phase.  Null hooks mean an untouched channel.
Transcript run_session(const SessionParams& params, const SessionInputs& inputs,
                       ChannelHook* alice_hook = nullptr,
                       ChannelHook* bob_hook = nullptr);

// Everything a party legitimately sees.
struct PublicMessages {
    std::vector<int> alice_z_positions, bob_z_positions;
    std::vector<int> alice_reflect_positions, bob_reflect_positions;
    std::vector<int> alice_test_positions, alice_test_outcomes;
    std::vector<int> bob_test_positions, bob_test_outcomes;
    std::vector<int> masked_alice, masked_bob;
    std::vector<int> published_sign;
    SessionStatus status = SessionStatus::COMPLETED;
    std::optional<AbortRecord> abort;
};

struct TpPrivate {
    int mask_constant = -1;
    std::vector<BasisLabel> alice_prepared, bob_prepared;
    std::vector<int> alice_tp_outcomes, bob_tp_outcomes;
    std::vector<int> alice_comparison, bob_comparison; // TP-side values
    std::vector<int> alice_complement, bob_complement;
    std::vector<int> combined;
    std::vector<int> equality_indices; // digit positions with combined == 0
};

struct ParticipantPrivate {
    std::vector<int> secret;
    std::vector<int> key;
    std::vector<ParticipantOp> ops;
    std::vector<int> outcomes;           // own measurement results (-1 reflected)
    std::vector<int> comparison_values;  // own measured comparison digits
    std::vector<int> messages;
    std::vector<int> results;
};

struct PartyView {
    Party party;
    SessionParams params;
    PublicMessages pub;
    std::optional<TpPrivate> tp;            // TP only
    std::optional<ParticipantPrivate> self; // Alice/Bob only
};

// Filtered projection of a transcript.  Eve's view carries only the public
// messages; anything she captured lives in her hook object.
PartyView party_view(const Transcript& t, Party party);

} // namespace sqpc
