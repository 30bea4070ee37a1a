#include "protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqpc {

int SessionParams::sequence_length() const {
    // Small epsilon so exact products (e.g. 8*10*1.1 = 88) don't round to 89.
    double raw = 8.0 * n * (1.0 + delta);
    return static_cast<int>(std::ceil(raw - 1e-9));
}

void SessionParams::validate() const {
    validate_dimension(d);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("delta must be >= 0");
    if (!(test_threshold >= 0.0 && test_threshold <= 1.0))
        throw std::invalid_argument("test_threshold must be in [0, 1]");
}

const char* op_name(ParticipantOp op) {
    return op == ParticipantOp::MEASURE ? "MEASURE" : "REFLECT";
}

const char* class_name(ParticleClass c) {
    switch (c) {
        case ParticleClass::BZ_M: return "BZ_M";
        case ParticleClass::BZ_R: return "BZ_R";
        case ParticleClass::BF_R: return "BF_R";
        case ParticleClass::BF_M: return "BF_M";
    }
    return "?";
}

const char* usage_name(ParticleUsage u) {
    switch (u) {
        case ParticleUsage::DETECTION: return "DETECTION";
        case ParticleUsage::TEST: return "TEST";
        case ParticleUsage::COMPARISON: return "COMPARISON";
        case ParticleUsage::IGNORED: return "IGNORED";
        case ParticleUsage::UNUSED: return "UNUSED";
    }
    return "?";
}

const char* party_name(Party p) {
    switch (p) {
        case Party::TP: return "tp";
        case Party::ALICE: return "alice";
        case Party::BOB: return "bob";
        case Party::EVE: return "eve";
    }
    return "?";
}

ParticleClass classify(Basis prepared, ParticipantOp op) {
    if (prepared == Basis::Z)
        return op == ParticipantOp::MEASURE ? ParticleClass::BZ_M : ParticleClass::BZ_R;
    return op == ParticipantOp::MEASURE ? ParticleClass::BF_M : ParticleClass::BF_R;
}

int LegLedger::class_count(ParticleClass c) const {
    int k = 0;
    for (const auto& r : records) k += r.cls == c;
    return k;
}

std::vector<int> LegLedger::positions_of_class(ParticleClass c) const {
    std::vector<int> out;
    for (const auto& r : records)
        if (r.cls == c) out.push_back(r.index);
    return out;
}

LegLedger run_leg(const SessionParams& params, Party participant, ChannelHook& hook) {
    params.validate();
    if (participant != Party::ALICE && participant != Party::BOB)
        throw std::invalid_argument("run_leg: participant must be Alice or Bob");
    const char* who = party_name(participant);

    // Stream layout (fixed draw order per particle: preparation basis coin,
    // preparation value, operation coin, participant measurement, TP
    // remeasurement).
    auto prep = RandomStream::derive(params.seed, std::string("tp-prep/") + who);
    auto part = RandomStream::derive(params.seed, std::string("op/") + who);
    auto meas = RandomStream::derive(params.seed, std::string("tp-meas/") + who);

    const int n_particles = params.sequence_length();
    LegLedger ledger;
    ledger.records.reserve(n_particles);

    for (int i = 0; i < n_particles; ++i) {
        Basis basis = prep.coin() ? Basis::Z : Basis::F;
        int value = prep.uniform_int(params.d);
        BasisLabel prepared{basis, value};

        JointState flight = JointState::bare(QuditState::basis_state(prepared, params.d));
        flight = hook.on_forward(std::move(flight));

        ParticipantOp op = part.coin() ? ParticipantOp::MEASURE : ParticipantOp::REFLECT;
        int seen = -1;
        if (op == ParticipantOp::MEASURE) {
            auto m = measure_particle(flight, Basis::Z, part);
            seen = m.outcome;
            flight = std::move(m.after);
        }

        flight = hook.on_return(std::move(flight));
        int tp_outcome = sample_particle_outcome(flight, basis, meas);

        ParticleClass cls = classify(basis, op);
        ParticleUsage usage = ParticleUsage::UNUSED;
        if (cls == ParticleClass::BZ_R || cls == ParticleClass::BF_R)
            usage = ParticleUsage::DETECTION;
        else if (cls == ParticleClass::BF_M)
            usage = ParticleUsage::IGNORED;
        ledger.records.push_back({i, prepared, op, seen, tp_outcome, cls, usage});
    }
    return ledger;
}

ChannelCheck check_reflected(const LegLedger& ledger, ParticleClass cls,
                             const std::string& name) {
    if (cls != ParticleClass::BZ_R && cls != ParticleClass::BF_R)
        throw std::invalid_argument("check_reflected: not a reflected class");
    ChannelCheck out;
    out.name = name;
    out.ran = true;
    for (const auto& r : ledger.records) {
        if (r.cls != cls) continue;
        ++out.observations;
        out.mismatches += r.tp_outcome != r.prepared.value;
    }
    out.empty_class = out.observations == 0;
    out.rate = out.empty_class ? 0.0
                               : static_cast<double>(out.mismatches) / out.observations;
    return out;
}

TestSelection select_and_check_test(const SessionParams& params, LegLedger& ledger,
                                    Party participant, RandomStream& tp_select,
                                    const std::string& check_name) {
    (void)participant;
    std::vector<int> pool; // ledger record offsets of BZ_M particles, in order
    for (std::size_t k = 0; k < ledger.records.size(); ++k)
        if (ledger.records[k].cls == ParticleClass::BZ_M)
            pool.push_back(static_cast<int>(k));
    const int need = 2 * params.n;
    if (static_cast<int>(pool.size()) < need)
        throw std::logic_error("select_and_check_test: fewer than 2n measured Z particles");

    // Partial Fisher-Yates over the pool picks n distinct test offsets.
    std::vector<int> shuffled = pool;
    for (int i = 0; i < params.n; ++i) {
        int j = i + tp_select.uniform_int(static_cast<int>(shuffled.size()) - i);
        std::swap(shuffled[i], shuffled[j]);
    }
    std::vector<int> test_offsets(shuffled.begin(), shuffled.begin() + params.n);
    std::sort(test_offsets.begin(), test_offsets.end());

    TestSelection sel;
    sel.check.name = check_name;
    sel.check.ran = true;
    for (int off : test_offsets) {
        auto& rec = ledger.records[off];
        rec.usage = ParticleUsage::TEST;
        sel.test_positions.push_back(rec.index);
        sel.published_outcomes.push_back(rec.participant_outcome);
        ++sel.check.observations;
        sel.check.mismatches += rec.participant_outcome != rec.prepared.value;
    }
    sel.check.rate = static_cast<double>(sel.check.mismatches) / sel.check.observations;

    int taken = 0;
    for (int off : pool) {
        auto& rec = ledger.records[off];
        if (rec.usage == ParticleUsage::TEST) continue;
        if (taken < params.n) {
            rec.usage = ParticleUsage::COMPARISON;
            sel.comparison_positions.push_back(rec.index);
            ++taken;
        }
    }
    return sel;
}

const char* status_name(SessionStatus s) {
    switch (s) {
        case SessionStatus::COMPLETED: return "completed";
        case SessionStatus::ABORTED_EAVESDROP: return "aborted-eavesdrop";
        case SessionStatus::ABORTED_INSUFFICIENT: return "aborted-insufficient-particles";
    }
    return "?";
}

namespace {

void validate_inputs(const SessionParams& params, const SessionInputs& in) {
    const std::size_t n = static_cast<std::size_t>(params.n);
    if (in.x.size() != n || in.y.size() != n || in.key.size() != n)
        throw std::invalid_argument("inputs must each hold exactly n digits");
    const int h = params.h();
    for (int v : in.x)
        if (v < 0 || v > h) throw std::invalid_argument("secret digit out of [0, h]");
    for (int v : in.y)
        if (v < 0 || v > h) throw std::invalid_argument("secret digit out of [0, h]");
    for (int v : in.key)
        if (v < 0 || v >= params.d) throw std::invalid_argument("key digit out of [0, d)");
}

void fill_announcements(LegData& leg) {
    for (const auto& r : leg.ledger.records) {
        if (r.prepared.basis == Basis::Z) leg.z_positions.push_back(r.index);
        if (r.op == ParticipantOp::REFLECT) leg.reflect_positions.push_back(r.index);
    }
}

const ParticleRecord& record_at(const LegLedger& ledger, int index) {
    return ledger.records.at(static_cast<std::size_t>(index));
}

} // namespace

Transcript run_session(const SessionParams& params, const SessionInputs& inputs,
                       ChannelHook* alice_hook, ChannelHook* bob_hook) {
    params.validate();
    validate_inputs(params, inputs);

    IdentityHook identity;
    ChannelHook& ha = alice_hook ? *alice_hook : identity;
    ChannelHook& hb = bob_hook ? *bob_hook : identity;

    Transcript t;
    t.params = params;
    t.inputs = inputs;
    t.alice.ledger = run_leg(params, Party::ALICE, ha);
    t.bob.ledger = run_leg(params, Party::BOB, hb);
    fill_announcements(t.alice);
    fill_announcements(t.bob);

    t.alice.reflected_z_check =
        check_reflected(t.alice.ledger, ParticleClass::BZ_R, "alice_reflected_z");
    t.alice.reflected_f_check =
        check_reflected(t.alice.ledger, ParticleClass::BF_R, "alice_reflected_f");
    t.bob.reflected_z_check =
        check_reflected(t.bob.ledger, ParticleClass::BZ_R, "bob_reflected_z");
    t.bob.reflected_f_check =
        check_reflected(t.bob.ledger, ParticleClass::BF_R, "bob_reflected_f");

    auto eavesdrop_abort = [&](const ChannelCheck& c) {
        t.status = SessionStatus::ABORTED_EAVESDROP;
        t.abort = AbortRecord{c.name, c.rate};
    };
    for (const ChannelCheck* c : {&t.alice.reflected_z_check, &t.alice.reflected_f_check,
                                  &t.bob.reflected_z_check, &t.bob.reflected_f_check}) {
        if (c->rate > params.test_threshold) {
            eavesdrop_abort(*c);
            return t;
        }
    }

    auto tp_select = RandomStream::derive(params.seed, "tp-select");
    auto run_tests = [&](LegData& leg, Party who, const std::string& name) -> bool {
        const int have = leg.ledger.class_count(ParticleClass::BZ_M);
        const int need = 2 * params.n;
        if (have < need) {
            t.status = SessionStatus::ABORTED_INSUFFICIENT;
            t.abort = AbortRecord{std::string(party_name(who)) + "_supply", -1.0, have, need};
            return false;
        }
        auto sel = select_and_check_test(params, leg.ledger, who, tp_select, name);
        leg.test_positions = std::move(sel.test_positions);
        leg.test_outcomes = std::move(sel.published_outcomes);
        leg.test_check = std::move(sel.check);
        leg.comparison_positions = std::move(sel.comparison_positions);
        if (leg.test_check.rate > params.test_threshold) {
            eavesdrop_abort(leg.test_check);
            return false;
        }
        return true;
    };
    if (!run_tests(t.alice, Party::ALICE, "alice_test")) return t;
    if (!run_tests(t.bob, Party::BOB, "bob_test")) return t;

    // Masked comparison phase.
    const int d = params.d;
    auto tp_mask = RandomStream::derive(params.seed, "tp-mask");
    t.mask_constant = tp_mask.uniform_int(d);
    const Digit s_digit = make_digit(t.mask_constant, d);

    for (int i = 0; i < params.n; ++i) {
        const auto& ra = record_at(t.alice.ledger, t.alice.comparison_positions[i]);
        const auto& rb = record_at(t.bob.ledger, t.bob.comparison_positions[i]);
        t.alice_comparison_tp.push_back(ra.prepared.value);
        t.bob_comparison_tp.push_back(rb.prepared.value);
        t.alice_comparison_seen.push_back(ra.participant_outcome);
        t.bob_comparison_seen.push_back(rb.participant_outcome);

        // TP splits her session digit against the values she prepared.
        Digit ca = sub_mod(s_digit, make_digit(ra.prepared.value, d));
        Digit cb = sub_mod(s_digit, make_digit(rb.prepared.value, d));
        t.alice_complement.push_back(ca.value);
        t.bob_complement.push_back(cb.value);

        // Participants mask with the values they measured themselves.
        Digit key = make_digit(inputs.key[i], d);
        Digit ma = encode_message(make_digit(inputs.x[i], d), key);
        Digit mb = encode_message(make_digit(inputs.y[i], d), key);
        t.alice_message.push_back(ma.value);
        t.bob_message.push_back(mb.value);
        Digit masked_a = mask(make_digit(ra.participant_outcome, d), ma, key);
        Digit masked_b = mask(make_digit(rb.participant_outcome, d), mb, key);
        t.masked_alice.push_back(masked_a.value);
        t.masked_bob.push_back(masked_b.value);

        Digit combined = tp_combine(masked_b, cb, masked_a, ca);
        t.combined.push_back(combined.value);
        TernarySign sign = combined_to_sign(combined);
        t.published_sign.push_back(sign_value(sign));
        t.results.push_back(sign_value(sign_to_result(sign, key)));
    }
    t.status = SessionStatus::COMPLETED;
    return t;
}

PartyView party_view(const Transcript& t, Party party) {
    PartyView v;
    v.party = party;
    v.params = t.params;

    v.pub.alice_z_positions = t.alice.z_positions;
    v.pub.bob_z_positions = t.bob.z_positions;
    v.pub.alice_reflect_positions = t.alice.reflect_positions;
    v.pub.bob_reflect_positions = t.bob.reflect_positions;
    v.pub.alice_test_positions = t.alice.test_positions;
    v.pub.alice_test_outcomes = t.alice.test_outcomes;
    v.pub.bob_test_positions = t.bob.test_positions;
    v.pub.bob_test_outcomes = t.bob.test_outcomes;
    v.pub.masked_alice = t.masked_alice;
    v.pub.masked_bob = t.masked_bob;
    v.pub.published_sign = t.published_sign;
    v.pub.status = t.status;
    v.pub.abort = t.abort;

    if (party == Party::TP) {
        TpPrivate tp;
        tp.mask_constant = t.mask_constant;
        for (const auto& r : t.alice.ledger.records) {
            tp.alice_prepared.push_back(r.prepared);
            tp.alice_tp_outcomes.push_back(r.tp_outcome);
        }
        for (const auto& r : t.bob.ledger.records) {
            tp.bob_prepared.push_back(r.prepared);
            tp.bob_tp_outcomes.push_back(r.tp_outcome);
        }
        tp.alice_comparison = t.alice_comparison_tp;
        tp.bob_comparison = t.bob_comparison_tp;
        tp.alice_complement = t.alice_complement;
        tp.bob_complement = t.bob_complement;
        tp.combined = t.combined;
        for (std::size_t i = 0; i < t.combined.size(); ++i)
            if (t.combined[i] == 0) tp.equality_indices.push_back(static_cast<int>(i));
        v.tp = std::move(tp);
    } else if (party == Party::ALICE || party == Party::BOB) {
        const bool is_alice = party == Party::ALICE;
        const LegData& leg = is_alice ? t.alice : t.bob;
        ParticipantPrivate self;
        self.secret = is_alice ? t.inputs.x : t.inputs.y;
        self.key = t.inputs.key;
        for (const auto& r : leg.ledger.records) {
            self.ops.push_back(r.op);
            self.outcomes.push_back(r.participant_outcome);
        }
        self.comparison_values = is_alice ? t.alice_comparison_seen : t.bob_comparison_seen;
        self.messages = is_alice ? t.alice_message : t.bob_message;
        self.results = t.results;
        v.self = std::move(self);
    }
    return v;
}

} // namespace sqpc
