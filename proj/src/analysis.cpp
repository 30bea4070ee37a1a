#include "analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace sqpc {

EfficiencyReport efficiency(int n, double delta) {
    if (n < 1) throw std::invalid_argument("efficiency: n must be >= 1");
    if (!(delta >= 0.0)) throw std::invalid_argument("efficiency: delta must be >= 0");
    EfficiencyReport r;
    r.payload_digits = n;
    r.quantum_cost = 24.0 * n * (1.0 + delta);
    r.classical_cost = 3.0 * n;
    r.efficiency = r.payload_digits / (r.quantum_cost + r.classical_cost);
    r.closed_form = 1.0 / (24.0 * (1.0 + delta) + 3.0);
    return r;
}

Interval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) return {0.0, 0.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct TrialResult {
    SessionStatus status;
    std::string abort_check;
    // name-indexed (fixed order) check observations
    std::array<long, 6> observations{};
    std::array<long, 6> mismatches{};
    std::array<bool, 6> ran{};
    std::array<long, 8> class_counts{}; // [leg * 4 + class]
    long equality_digits = 0;
    long result_digits = 0;
    long correct_results = 0;
    long guess_observations = 0;
    long guess_correct = 0;
};

constexpr std::array<const char*, 6> kCheckNames = {
    "alice_reflected_z", "alice_reflected_f", "bob_reflected_z",
    "bob_reflected_f",   "alice_test",        "bob_test",
};

constexpr std::array<ParticleClass, 4> kClassOrder = {
    ParticleClass::BZ_M, ParticleClass::BZ_R, ParticleClass::BF_R, ParticleClass::BF_M};

int class_slot(ParticleClass c) {
    for (int i = 0; i < 4; ++i)
        if (kClassOrder[i] == c) return i;
    return 0;
}

void fold_check(TrialResult& out, int slot, const ChannelCheck& c) {
    if (!c.ran) return;
    out.ran[slot] = true;
    out.observations[slot] += c.observations;
    out.mismatches[slot] += c.mismatches;
}

int compare_digits(int x, int y) { return x < y ? -1 : x > y ? 1 : 0; }

TrialResult run_trial(const SessionParams& base, const AttackSpec& attack, int trial) {
    SessionParams params = base;
    params.seed = mix64(base.seed ^ mix64(0x747269616cULL + trial));

    auto input_stream = RandomStream::derive(base.seed, "campaign-inputs",
                                             static_cast<std::uint64_t>(trial));
    SessionInputs in;
    const int h = params.h();
    for (int i = 0; i < params.n; ++i) {
        in.x.push_back(input_stream.uniform_int(h + 1));
        in.y.push_back(input_stream.uniform_int(h + 1));
        in.key.push_back(input_stream.uniform_int(params.d));
    }

    auto eve_stream = RandomStream::derive(base.seed, "campaign-eve",
                                           static_cast<std::uint64_t>(trial));
    auto hook = make_hook(attack, params.d, std::move(eve_stream), false);
    Transcript t = run_session(params, in, hook.get(), nullptr);

    TrialResult out;
    out.status = t.status;
    if (t.abort) out.abort_check = t.abort->check;
    fold_check(out, 0, t.alice.reflected_z_check);
    fold_check(out, 1, t.alice.reflected_f_check);
    fold_check(out, 2, t.bob.reflected_z_check);
    fold_check(out, 3, t.bob.reflected_f_check);
    fold_check(out, 4, t.alice.test_check);
    fold_check(out, 5, t.bob.test_check);

    for (int leg = 0; leg < 2; ++leg) {
        const LegLedger& ledger = leg == 0 ? t.alice.ledger : t.bob.ledger;
        for (const auto& r : ledger.records) ++out.class_counts[leg * 4 + class_slot(r.cls)];
    }

    if (t.status == SessionStatus::COMPLETED) {
        for (int v : t.combined) out.equality_digits += v == 0;
        for (int i = 0; i < params.n; ++i) {
            ++out.result_digits;
            out.correct_results += t.results[i] == compare_digits(in.x[i], in.y[i]);
        }
    }

    auto guesses = hook->guesses();
    if (!guesses.empty()) {
        // Score per-particle guesses against the Z preparations on Alice's leg.
        const auto& records = t.alice.ledger.records;
        for (std::size_t i = 0; i < records.size() && i < guesses.size(); ++i) {
            if (records[i].prepared.basis != Basis::Z || guesses[i] < 0) continue;
            ++out.guess_observations;
            out.guess_correct += guesses[i] == records[i].prepared.value;
        }
    }
    return out;
}

} // namespace

CampaignReport run_campaign(const SessionParams& base, const AttackSpec& attack,
                            int trials, int jobs) {
    base.validate();
    attack.validate(base.d);
    if (trials < 1) throw std::invalid_argument("run_campaign: trials must be >= 1");
    if (jobs < 1) jobs = 1;

    std::vector<TrialResult> slots(static_cast<std::size_t>(trials));
    if (jobs == 1) {
        for (int t = 0; t < trials; ++t) slots[t] = run_trial(base, attack, t);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= trials) return;
                slots[t] = run_trial(base, attack, t);
            }
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min(jobs, trials);
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    CampaignReport rep;
    rep.params = base;
    rep.attack = attack.describe();
    rep.kind = attack.kind;
    rep.trials = trials;
    rep.exact_profile = compute_attack_profile(attack, base.d);

    // Exact expectations per check: the attack sits on Alice's leg only.
    const AttackProfile honest = compute_attack_profile(AttackSpec{}, base.d);
    const std::array<double, 6> exact = {
        rep.exact_profile.error_bz_r, rep.exact_profile.error_bf_r,
        honest.error_bz_r,            honest.error_bf_r,
        rep.exact_profile.error_bz_m, honest.error_bz_m,
    };

    std::array<long, 6> obs{}, mis{};
    std::array<bool, 6> ran{};
    std::array<long, 8> classes{};
    for (const auto& s : slots) { // fold in trial order
        switch (s.status) {
            case SessionStatus::COMPLETED: ++rep.completed; break;
            case SessionStatus::ABORTED_EAVESDROP: ++rep.aborted_eavesdrop; break;
            case SessionStatus::ABORTED_INSUFFICIENT: ++rep.aborted_insufficient; break;
        }
        if (!s.abort_check.empty()) ++rep.abort_checks[s.abort_check];
        for (int i = 0; i < 6; ++i) {
            obs[i] += s.observations[i];
            mis[i] += s.mismatches[i];
            ran[i] = ran[i] || s.ran[i];
        }
        for (int i = 0; i < 8; ++i) classes[i] += s.class_counts[i];
        rep.tp_equality_digits += s.equality_digits;
        rep.result_digits += s.result_digits;
        rep.correct_results += s.correct_results;
        rep.guess_observations += s.guess_observations;
        rep.guess_correct += s.guess_correct;
    }

    for (int i = 0; i < 6; ++i) {
        RateSummary r;
        r.name = kCheckNames[i];
        r.observations = obs[i];
        r.mismatches = mis[i];
        r.any_ran = ran[i];
        r.rate = obs[i] > 0 ? static_cast<double>(mis[i]) / obs[i] : 0.0;
        r.wilson99 = wilson_interval(mis[i], obs[i], kWilson99Z);
        r.exact = exact[i];
        rep.checks.push_back(std::move(r));
    }

    const double per_leg = static_cast<double>(base.sequence_length()) * trials;
    for (int leg = 0; leg < 2; ++leg)
        for (int c = 0; c < 4; ++c) {
            ClassStat cs;
            cs.leg = leg == 0 ? "alice" : "bob";
            cs.cls = class_name(kClassOrder[c]);
            cs.total = classes[leg * 4 + c];
            cs.expected = per_leg / 4.0;
            const double sigma = std::sqrt(per_leg * 0.25 * 0.75);
            cs.z = sigma > 0.0 ? (cs.total - cs.expected) / sigma : 0.0;
            rep.class_stats.push_back(std::move(cs));
        }
    return rep;
}

namespace {

int mod_sub(int a, int b, int d) { return ((a - b) % d + d) % d; }

// Secret candidate implied by one key value and an observed message digit;
// -1 when out of the legal range.
int decode_secret(int message, int key, int d) {
    const int h = (d - 1) / 2;
    const int x = key % 2 == 0 ? message : (d - 1) - message;
    return x <= h ? x : -1;
}

} // namespace

VisibilityAudit visibility_audit(const Transcript& t) {
    if (t.status != SessionStatus::COMPLETED)
        throw std::invalid_argument("visibility_audit: transcript is not a completed session");
    const int d = t.params.d;
    const int h = t.params.h();
    const int n = t.params.n;

    VisibilityAudit a;
    a.message_candidates = d;
    a.tp_alice_message_uniform = true;
    a.tp_bob_message_uniform = true;
    a.bob_x_uniform = true;
    a.alice_y_uniform = true;

    for (int i = 0; i < n; ++i) {
        // TP knows the comparison value it prepared; subtracting it from the
        // masked digit leaves message + key.  Counting over the d equally
        // likely keys must produce every message value exactly once.
        for (int side = 0; side < 2; ++side) {
            const int masked = side == 0 ? t.masked_alice[i] : t.masked_bob[i];
            const int comp = side == 0 ? t.alice_comparison_tp[i] : t.bob_comparison_tp[i];
            const int c = mod_sub(masked, comp, d);
            std::set<int> messages;
            std::set<int> secrets;
            for (int k = 0; k < d; ++k) {
                const int m = mod_sub(c, k, d);
                messages.insert(m);
                if (int x = decode_secret(m, k, d); x >= 0) secrets.insert(x);
            }
            bool uniform = static_cast<int>(messages.size()) == d;
            if (side == 0) {
                a.tp_alice_message_uniform = a.tp_alice_message_uniform && uniform;
                a.tp_x_support.push_back(static_cast<int>(secrets.size()));
            } else {
                a.tp_bob_message_uniform = a.tp_bob_message_uniform && uniform;
                a.tp_y_support.push_back(static_cast<int>(secrets.size()));
            }
        }

        // A participant knows the key but not the other side's comparison
        // value: counting over that unknown must hit every legal secret value
        // the same number of times.
        for (int side = 0; side < 2; ++side) {
            const int masked = side == 0 ? t.masked_alice[i] : t.masked_bob[i];
            const int key = t.inputs.key[i];
            std::vector<int> counts(static_cast<std::size_t>(h + 1), 0);
            for (int comp = 0; comp < d; ++comp) {
                const int m = mod_sub(mod_sub(masked, comp, d), key, d);
                const int x = decode_secret(m, key, d);
                if (x >= 0) ++counts[x];
            }
            const bool uniform =
                std::all_of(counts.begin(), counts.end(), [&](int c) { return c == counts[0]; }) &&
                counts[0] > 0;
            if (side == 0)
                a.bob_x_uniform = a.bob_x_uniform && uniform;
            else
                a.alice_y_uniform = a.alice_y_uniform && uniform;
        }

        if (t.combined[i] == 0) a.tp_equality_indices.push_back(i);
    }
    return a;
}

} // namespace sqpc
