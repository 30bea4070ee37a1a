#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "protocol.hpp"

namespace sqpc {

/*
 * Resource accounting for one session: payload digits vs transmitted qudits
 * (TP prepares 8n(1+delta) per leg and each participant regenerates roughly
 * half of them as fresh copies, 24n(1+delta) total in expectation) vs the
 * classical digits exchanged in the comparison phase (two masked sequences
 * plus the published signs, 3n).
 */
struct EfficiencyReport {
    double payload_digits;    // n
    double quantum_cost;      // 24 n (1 + delta), expected
    double classical_cost;    // 3 n
    double efficiency;        // payload / (quantum + classical)
    double closed_form;       // 1 / (24 (1 + delta) + 3)
};

EfficiencyReport efficiency(int n, double delta);

// Wilson score interval for a binomial proportion.
struct Interval {
    double low;
    double high;
};
Interval wilson_interval(long successes, long trials, double z);

// z for a two-sided 99% interval.
inline constexpr double kWilson99Z = 2.5758293035489004;

struct RateSummary {
    std::string name;
    long observations = 0;
    long mismatches = 0;
    bool any_ran = false;
    double rate = 0.0;
    Interval wilson99{0.0, 0.0};
    double exact = 0.0; // from the analytic attack profile
};

struct ClassStat {
    std::string leg;   // "alice" / "bob"
    std::string cls;   // BZ_M / BZ_R / BF_R / BF_M
    long total = 0;
    double expected = 0.0; // trials * N / 4
    double z = 0.0;        // (total - expected) / binomial sigma
};

struct CampaignReport {
    SessionParams params;
    std::string attack;
    AttackKind kind = AttackKind::HONEST;
    int trials = 0;
    int completed = 0;
    int aborted_eavesdrop = 0;
    int aborted_insufficient = 0;
    std::map<std::string, int> abort_checks; // failed-check name -> count
    std::vector<RateSummary> checks;         // fixed six-check order
    AttackProfile exact_profile;             // attacked (Alice) leg
    std::vector<ClassStat> class_stats;      // eight rows, fixed order
    long tp_equality_digits = 0;             // combined == 0 across completions
    long result_digits = 0;                  // decoded relations checked ...
    long correct_results = 0;                // ... and how many matched plaintext
    long guess_observations = 0;             // Eve guesses scored on Z preparations
    long guess_correct = 0;
};

/*
 * Repeated seeded sessions with the attack on Alice's leg and an untouched
 * Bob leg.  Secrets and keys are redrawn per trial from the master seed;
 * trial t is fully determined by (params, attack, t), so reports are
 * identical for any job count: workers fill a per-trial slot array that is
 * folded in index order.
 */
CampaignReport run_campaign(const SessionParams& params, const AttackSpec& attack,
                            int trials, int jobs = 1);

/*
 * What each party can and cannot infer from its own view of a completed
 * honest transcript, by exact counting over the unknowns.
 */
struct VisibilityAudit {
    // TP side: posterior over a participant's encoded message digit given the
    // masked announcement, counting over all d key values.
    bool tp_alice_message_uniform = false;
    bool tp_bob_message_uniform = false;
    int message_candidates = 0; // always d when uniform
    // Secrets are never pinned down... except through the encoding's range
    // asymmetry; support sizes are reported per digit position.
    std::vector<int> tp_x_support;
    std::vector<int> tp_y_support;
    std::vector<int> tp_equality_indices; // positions TP sees as equal
    // Participant cross-inference: posterior over the other secret given the
    // public masked digit and the shared key, counting over the unknown
    // comparison value; uniform over [0, h] means zero knowledge.
    bool bob_x_uniform = false;
    bool alice_y_uniform = false;
};

// Requires a completed transcript.
VisibilityAudit visibility_audit(const Transcript& t);

} // namespace sqpc
