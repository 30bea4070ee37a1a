#include "serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqpc {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kTranscriptFormat = "sqpc-transcript/1";
constexpr const char* kCampaignFormat = "sqpc-campaign/1";

ordered_json params_json(const SessionParams& p) {
    return {{"d", p.d},
            {"n", p.n},
            {"delta", p.delta},
            {"test_threshold", p.test_threshold},
            {"seed", p.seed},
            {"sequence_length", p.sequence_length()}};
}

SessionParams params_from(const ordered_json& j) {
    SessionParams p;
    p.d = j.at("d").get<int>();
    p.n = j.at("n").get<int>();
    p.delta = j.at("delta").get<double>();
    p.test_threshold = j.at("test_threshold").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.validate();
    return p;
}

ordered_json check_json(const ChannelCheck& c) {
    return {{"name", c.name},
            {"ran", c.ran},
            {"empty_class", c.empty_class},
            {"observations", c.observations},
            {"mismatches", c.mismatches},
            {"rate", c.rate}};
}

ChannelCheck check_from(const ordered_json& j) {
    ChannelCheck c;
    c.name = j.at("name").get<std::string>();
    c.ran = j.at("ran").get<bool>();
    c.empty_class = j.at("empty_class").get<bool>();
    c.observations = j.at("observations").get<int>();
    c.mismatches = j.at("mismatches").get<int>();
    c.rate = j.at("rate").get<double>();
    return c;
}

ordered_json leg_json(const LegData& leg) {
    ordered_json particles = ordered_json::array();
    for (const auto& r : leg.ledger.records) {
        particles.push_back({{"i", r.index},
                             {"basis", basis_name(r.prepared.basis)},
                             {"value", r.prepared.value},
                             {"op", op_name(r.op)},
                             {"seen", r.participant_outcome},
                             {"tp", r.tp_outcome},
                             {"class", class_name(r.cls)},
                             {"usage", usage_name(r.usage)}});
    }
    return {{"particles", std::move(particles)},
            {"z_positions", leg.z_positions},
            {"reflect_positions", leg.reflect_positions},
            {"checks",
             {{"reflected_z", check_json(leg.reflected_z_check)},
              {"reflected_f", check_json(leg.reflected_f_check)},
              {"test", check_json(leg.test_check)}}},
            {"test_positions", leg.test_positions},
            {"test_outcomes", leg.test_outcomes},
            {"comparison_positions", leg.comparison_positions}};
}

Basis basis_from(const std::string& s) {
    if (s == "Z") return Basis::Z;
    if (s == "F") return Basis::F;
    throw std::runtime_error("transcript: unknown basis " + s);
}

ParticipantOp op_from(const std::string& s) {
    if (s == "MEASURE") return ParticipantOp::MEASURE;
    if (s == "REFLECT") return ParticipantOp::REFLECT;
    throw std::runtime_error("transcript: unknown operation " + s);
}

ParticleClass cls_from(const std::string& s) {
    for (ParticleClass c : {ParticleClass::BZ_M, ParticleClass::BZ_R, ParticleClass::BF_R,
                            ParticleClass::BF_M})
        if (s == class_name(c)) return c;
    throw std::runtime_error("transcript: unknown class " + s);
}

ParticleUsage usage_from(const std::string& s) {
    for (ParticleUsage u : {ParticleUsage::DETECTION, ParticleUsage::TEST,
                            ParticleUsage::COMPARISON, ParticleUsage::IGNORED,
                            ParticleUsage::UNUSED})
        if (s == usage_name(u)) return u;
    throw std::runtime_error("transcript: unknown usage " + s);
}

LegData leg_from(const ordered_json& j, const SessionParams& p) {
    LegData leg;
    const auto& particles = j.at("particles");
    if (static_cast<int>(particles.size()) != p.sequence_length())
        throw std::runtime_error("transcript: particle count does not match parameters");
    int expect = 0;
    for (const auto& pj : particles) {
        ParticleRecord r;
        r.index = pj.at("i").get<int>();
        if (r.index != expect++)
            throw std::runtime_error("transcript: particle indices out of order");
        r.prepared = {basis_from(pj.at("basis").get<std::string>()),
                      pj.at("value").get<int>()};
        if (r.prepared.value < 0 || r.prepared.value >= p.d)
            throw std::runtime_error("transcript: prepared value out of range");
        r.op = op_from(pj.at("op").get<std::string>());
        r.participant_outcome = pj.at("seen").get<int>();
        r.tp_outcome = pj.at("tp").get<int>();
        r.cls = cls_from(pj.at("class").get<std::string>());
        if (r.cls != classify(r.prepared.basis, r.op))
            throw std::runtime_error("transcript: class contradicts basis and operation");
        r.usage = usage_from(pj.at("usage").get<std::string>());
        leg.ledger.records.push_back(std::move(r));
    }
    leg.z_positions = j.at("z_positions").get<std::vector<int>>();
    leg.reflect_positions = j.at("reflect_positions").get<std::vector<int>>();
    leg.reflected_z_check = check_from(j.at("checks").at("reflected_z"));
    leg.reflected_f_check = check_from(j.at("checks").at("reflected_f"));
    leg.test_check = check_from(j.at("checks").at("test"));
    leg.test_positions = j.at("test_positions").get<std::vector<int>>();
    leg.test_outcomes = j.at("test_outcomes").get<std::vector<int>>();
    leg.comparison_positions = j.at("comparison_positions").get<std::vector<int>>();
    return leg;
}

SessionStatus status_from(const std::string& s) {
    for (SessionStatus st : {SessionStatus::COMPLETED, SessionStatus::ABORTED_EAVESDROP,
                             SessionStatus::ABORTED_INSUFFICIENT})
        if (s == status_name(st)) return st;
    throw std::runtime_error("transcript: unknown status " + s);
}

void require_size(const std::vector<int>& v, int n, const char* what) {
    if (static_cast<int>(v.size()) != n)
        throw std::runtime_error(std::string("transcript: ") + what +
                                 " count does not match n");
}

} // namespace

std::string transcript_to_text(const Transcript& t) {
    ordered_json j;
    j["format"] = kTranscriptFormat;
    j["params"] = params_json(t.params);
    j["inputs"] = {{"x", t.inputs.x}, {"y", t.inputs.y}, {"key", t.inputs.key}};
    j["alice"] = leg_json(t.alice);
    j["bob"] = leg_json(t.bob);
    j["status"] = status_name(t.status);
    if (t.abort) {
        ordered_json a{{"check", t.abort->check}, {"error_rate", t.abort->error_rate}};
        if (t.abort->need >= 0) {
            a["have"] = t.abort->have;
            a["need"] = t.abort->need;
        }
        j["abort"] = std::move(a);
    }
    if (t.status == SessionStatus::COMPLETED) {
        j["comparison"] = {{"mask_constant", t.mask_constant},
                           {"alice_comparison_tp", t.alice_comparison_tp},
                           {"bob_comparison_tp", t.bob_comparison_tp},
                           {"alice_comparison_seen", t.alice_comparison_seen},
                           {"bob_comparison_seen", t.bob_comparison_seen},
                           {"alice_complement", t.alice_complement},
                           {"bob_complement", t.bob_complement},
                           {"alice_message", t.alice_message},
                           {"bob_message", t.bob_message},
                           {"masked_alice", t.masked_alice},
                           {"masked_bob", t.masked_bob},
                           {"combined", t.combined},
                           {"published_sign", t.published_sign},
                           {"results", t.results}};
    }
    return j.dump(2) + "\n";
}

Transcript transcript_from_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("transcript: invalid JSON: ") + e.what());
    }
    if (j.value("format", "") != kTranscriptFormat)
        throw std::runtime_error("transcript: unknown format marker");

    Transcript t;
    t.params = params_from(j.at("params"));
    const int n = t.params.n;
    t.inputs.x = j.at("inputs").at("x").get<std::vector<int>>();
    t.inputs.y = j.at("inputs").at("y").get<std::vector<int>>();
    t.inputs.key = j.at("inputs").at("key").get<std::vector<int>>();
    require_size(t.inputs.x, n, "secret x");
    require_size(t.inputs.y, n, "secret y");
    require_size(t.inputs.key, n, "key");
    t.alice = leg_from(j.at("alice"), t.params);
    t.bob = leg_from(j.at("bob"), t.params);
    t.status = status_from(j.at("status").get<std::string>());
    if (j.contains("abort")) {
        AbortRecord a;
        a.check = j["abort"].at("check").get<std::string>();
        a.error_rate = j["abort"].at("error_rate").get<double>();
        a.have = j["abort"].value("have", -1);
        a.need = j["abort"].value("need", -1);
        t.abort = std::move(a);
    }
    if (t.status == SessionStatus::COMPLETED) {
        if (t.abort) throw std::runtime_error("transcript: completed session with abort record");
        const auto& c = j.at("comparison");
        t.mask_constant = c.at("mask_constant").get<int>();
        auto vec = [&](const char* k) { return c.at(k).get<std::vector<int>>(); };
        t.alice_comparison_tp = vec("alice_comparison_tp");
        t.bob_comparison_tp = vec("bob_comparison_tp");
        t.alice_comparison_seen = vec("alice_comparison_seen");
        t.bob_comparison_seen = vec("bob_comparison_seen");
        t.alice_complement = vec("alice_complement");
        t.bob_complement = vec("bob_complement");
        t.alice_message = vec("alice_message");
        t.bob_message = vec("bob_message");
        t.masked_alice = vec("masked_alice");
        t.masked_bob = vec("masked_bob");
        t.combined = vec("combined");
        t.published_sign = vec("published_sign");
        t.results = vec("results");
        for (const auto* v :
             {&t.alice_comparison_tp, &t.bob_comparison_tp, &t.alice_comparison_seen,
              &t.bob_comparison_seen, &t.alice_complement, &t.bob_complement,
              &t.alice_message, &t.bob_message, &t.masked_alice, &t.masked_bob,
              &t.combined, &t.published_sign, &t.results})
            require_size(*v, n, "comparison digit");
        for (int s : t.published_sign)
            if (s < -1 || s > 1)
                throw std::runtime_error("transcript: sign token outside {-1, 0, +1}");
    } else if (!t.abort) {
        throw std::runtime_error("transcript: aborted session without abort record");
    }
    return t;
}

namespace {
const char* sign_text(int s) { return s < 0 ? "-1" : s > 0 ? "+1" : "0"; }
} // namespace

std::string transcript_summary(const Transcript& t) {
    std::ostringstream out;
    out << "session d=" << t.params.d << " n=" << t.params.n << " delta=" << t.params.delta
        << " threshold=" << t.params.test_threshold << " seed=" << t.params.seed << "\n";
    auto check_line = [&](const ChannelCheck& c) {
        if (!c.ran) return;
        out << "  check " << c.name << ": rate=" << c.rate << " (" << c.mismatches << "/"
            << c.observations << ")\n";
    };
    for (const auto* leg : {&t.alice, &t.bob}) {
        check_line(leg->reflected_z_check);
        check_line(leg->reflected_f_check);
        check_line(leg->test_check);
    }
    out << "status: " << status_name(t.status) << "\n";
    if (t.abort) {
        out << "abort: check=" << t.abort->check;
        if (t.abort->need >= 0)
            out << " have=" << t.abort->have << " need=" << t.abort->need
                << " (raise delta to enlarge the measured-Z supply)";
        else
            out << " error_rate=" << t.abort->error_rate;
        out << "\n";
    }
    if (t.status == SessionStatus::COMPLETED) {
        for (int i = 0; i < t.params.n; ++i) {
            out << "digit " << i << ": masked_alice=" << t.masked_alice[i]
                << " masked_bob=" << t.masked_bob[i] << " combined=" << t.combined[i]
                << " sign=" << sign_text(t.published_sign[i])
                << " result=" << sign_text(t.results[i]) << " ("
                << relation_name(sign_from_value(t.results[i])) << ")\n";
        }
    }
    return out.str();
}

std::string party_view_to_text(const PartyView& v) {
    ordered_json j;
    j["party"] = party_name(v.party);
    j["params"] = params_json(v.params);
    ordered_json pub;
    pub["alice_z_positions"] = v.pub.alice_z_positions;
    pub["bob_z_positions"] = v.pub.bob_z_positions;
    pub["alice_reflect_positions"] = v.pub.alice_reflect_positions;
    pub["bob_reflect_positions"] = v.pub.bob_reflect_positions;
    pub["alice_test_positions"] = v.pub.alice_test_positions;
    pub["alice_test_outcomes"] = v.pub.alice_test_outcomes;
    pub["bob_test_positions"] = v.pub.bob_test_positions;
    pub["bob_test_outcomes"] = v.pub.bob_test_outcomes;
    pub["masked_alice"] = v.pub.masked_alice;
    pub["masked_bob"] = v.pub.masked_bob;
    pub["published_sign"] = v.pub.published_sign;
    pub["status"] = status_name(v.pub.status);
    j["public"] = std::move(pub);
    if (v.tp) {
        ordered_json tp;
        tp["mask_constant"] = v.tp->mask_constant;
        auto prepared = [](const std::vector<BasisLabel>& ls) {
            ordered_json arr = ordered_json::array();
            for (const auto& l : ls)
                arr.push_back({{"basis", basis_name(l.basis)}, {"value", l.value}});
            return arr;
        };
        tp["alice_prepared"] = prepared(v.tp->alice_prepared);
        tp["bob_prepared"] = prepared(v.tp->bob_prepared);
        tp["alice_tp_outcomes"] = v.tp->alice_tp_outcomes;
        tp["bob_tp_outcomes"] = v.tp->bob_tp_outcomes;
        tp["alice_comparison"] = v.tp->alice_comparison;
        tp["bob_comparison"] = v.tp->bob_comparison;
        tp["alice_complement"] = v.tp->alice_complement;
        tp["bob_complement"] = v.tp->bob_complement;
        tp["combined"] = v.tp->combined;
        tp["equality_indices"] = v.tp->equality_indices;
        j["tp"] = std::move(tp);
    }
    if (v.self) {
        ordered_json self;
        self["secret"] = v.self->secret;
        self["key"] = v.self->key;
        ordered_json ops = ordered_json::array();
        for (auto op : v.self->ops) ops.push_back(op_name(op));
        self["ops"] = std::move(ops);
        self["outcomes"] = v.self->outcomes;
        self["comparison_values"] = v.self->comparison_values;
        self["messages"] = v.self->messages;
        self["results"] = v.self->results;
        j["self"] = std::move(self);
    }
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> tokenize_spec(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    return tokens;
}

double parse_double(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("attack spec: bad number for ") + what +
                                 ": '" + tok + "'");
    }
}

int parse_int(const std::string& tok, const char* what) {
    double v = parse_double(tok, what);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error(std::string("attack spec: ") + what + " must be an integer");
    return i;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

AttackSpec attack_spec_from_text(const std::string& text) {
    auto tokens = tokenize_spec(text);
    std::size_t pos = 0;
    auto next = [&](const char* what) -> const std::string& {
        if (pos >= tokens.size())
            throw std::runtime_error(std::string("attack spec: missing ") + what);
        return tokens[pos++];
    };

    AttackSpec spec;
    spec.kind = AttackKind::ENTANGLE_MEASURE;
    EntangleSpec e;
    bool saw_kind = false, saw_probe = false, saw_fwd = false, saw_ret = false;

    while (pos < tokens.size()) {
        const std::string key = next("keyword");
        if (key == "kind") {
            const std::string& name = next("kind");
            try {
                spec.kind = attack_from_name(name);
            } catch (const std::invalid_argument&) {
                throw std::runtime_error("attack spec: unknown kind '" + name + "'");
            }
            saw_kind = true;
        } else if (key == "particle_dim") {
            e.particle_dim = parse_int(next("particle_dim"), "particle_dim");
        } else if (key == "probe_dim") {
            e.probe_dim = parse_int(next("probe_dim"), "probe_dim");
        } else if (key == "probe_state") {
            if (e.probe_dim < 1)
                throw std::runtime_error("attack spec: probe_dim must precede probe_state");
            e.probe_state = Vec(e.probe_dim);
            for (int i = 0; i < e.probe_dim; ++i) {
                double re = parse_double(next("probe_state"), "probe_state");
                double im = parse_double(next("probe_state"), "probe_state");
                e.probe_state[i] = Cx(re, im);
            }
            saw_probe = true;
        } else if (key == "forward_unitary" || key == "return_unitary") {
            if (e.particle_dim < 2 || e.probe_dim < 1)
                throw std::runtime_error("attack spec: dims must precede matrices");
            const int dim = e.particle_dim * e.probe_dim;
            Mat m(dim, dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) {
                    double re = parse_double(next(key.c_str()), key.c_str());
                    double im = parse_double(next(key.c_str()), key.c_str());
                    m(r, c) = Cx(re, im);
                }
            (key[0] == 'f' ? e.forward_unitary : e.return_unitary) = std::move(m);
            (key[0] == 'f' ? saw_fwd : saw_ret) = true;
        } else {
            throw std::runtime_error("attack spec: unknown keyword '" + key + "'");
        }
    }

    if (spec.kind != AttackKind::ENTANGLE_MEASURE) {
        if (saw_probe || saw_fwd || saw_ret || e.particle_dim || e.probe_dim)
            throw std::runtime_error("attack spec: matrices given for a non-entangling kind");
        return spec;
    }
    (void)saw_kind;
    if (!saw_probe) throw std::runtime_error("attack spec: missing probe_state");
    if (!saw_fwd) throw std::runtime_error("attack spec: missing forward_unitary");
    if (!saw_ret) throw std::runtime_error("attack spec: missing return_unitary");
    try {
        e.validate();
    } catch (const std::exception& ex) {
        throw std::runtime_error(std::string("attack spec: ") + ex.what());
    }
    spec.entangle = std::move(e);
    return spec;
}

AttackSpec attack_spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("attack spec: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return attack_spec_from_text(ss.str());
}

std::string attack_spec_to_text(const AttackSpec& spec) {
    std::ostringstream out;
    out << "kind " << attack_name(spec.kind) << "\n";
    if (spec.kind != AttackKind::ENTANGLE_MEASURE) return out.str();
    const EntangleSpec& e = *spec.entangle;
    out << "particle_dim " << e.particle_dim << "\n";
    out << "probe_dim " << e.probe_dim << "\n";
    out << "probe_state\n";
    for (int i = 0; i < e.probe_dim; ++i) {
        out << format_double(e.probe_state[i].real()) << " "
            << format_double(e.probe_state[i].imag());
        out << (i + 1 == e.probe_dim ? "\n" : "  ");
    }
    const int dim = e.particle_dim * e.probe_dim;
    for (const auto& [name, m] :
         {std::pair<const char*, const Mat&>{"forward_unitary", e.forward_unitary},
          {"return_unitary", e.return_unitary}}) {
        out << name << "\n";
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                out << format_double(m(r, c).real()) << " " << format_double(m(r, c).imag());
                out << (c + 1 == dim ? "\n" : "  ");
            }
        }
    }
    return out.str();
}

std::string profile_to_json(const AttackProfile& p) {
    ordered_json j{{"attack", attack_name(p.kind)},
                   {"d", p.d},
                   {"error_bz_r", p.error_bz_r},
                   {"error_bf_r", p.error_bf_r},
                   {"error_bz_m", p.error_bz_m},
                   {"leakage", p.leakage},
                   {"eve_guess_accuracy", p.eve_guess_accuracy}};
    return j.dump(2) + "\n";
}

std::string verify_result_to_json(const VerifyResult& r) {
    ordered_json j{{"passes", r.passes()},
                   {"forward_diagonal", r.forward_diagonal},
                   {"returns_particle", r.returns_particle},
                   {"probes_equal", r.probes_equal},
                   {"off_diagonal_residual", r.off_diagonal_residual},
                   {"particle_return_residual", r.particle_return_residual},
                   {"probe_equality_residual", r.probe_equality_residual},
                   {"tolerance", r.tolerance}};
    return j.dump(2) + "\n";
}

namespace {

ordered_json campaign_json(const CampaignReport& r) {
    ordered_json j;
    j["format"] = kCampaignFormat;
    ordered_json cfg = params_json(r.params);
    cfg["trials"] = r.trials;
    cfg["attack"] = r.attack;
    j["config"] = std::move(cfg);
    ordered_json outcomes{{"completed", r.completed},
                          {"aborted_eavesdrop", r.aborted_eavesdrop},
                          {"aborted_insufficient", r.aborted_insufficient}};
    ordered_json aborts = ordered_json::object();
    for (const auto& [name, count] : r.abort_checks) aborts[name] = count;
    outcomes["abort_checks"] = std::move(aborts);
    j["outcomes"] = std::move(outcomes);
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"ran", c.any_ran},
                          {"observations", c.observations},
                          {"mismatches", c.mismatches},
                          {"rate", c.rate},
                          {"wilson99", {c.wilson99.low, c.wilson99.high}},
                          {"exact", c.exact}});
    }
    j["checks"] = std::move(checks);
    j["exact_profile"] =
        ordered_json::parse(profile_to_json(r.exact_profile));
    ordered_json stats = ordered_json::array();
    for (const auto& s : r.class_stats)
        stats.push_back({{"leg", s.leg},
                         {"class", s.cls},
                         {"total", s.total},
                         {"expected", s.expected},
                         {"z", s.z}});
    j["class_stats"] = std::move(stats);
    j["tp_equality_digits"] = r.tp_equality_digits;
    j["results"] = {{"digits", r.result_digits}, {"correct", r.correct_results}};
    j["eve_guesses"] = {{"observations", r.guess_observations},
                        {"correct", r.guess_correct}};
    return j;
}

} // namespace

std::string campaign_to_json(const CampaignReport& r) {
    return campaign_json(r).dump(2) + "\n";
}

std::string campaign_to_csv(const CampaignReport& r) {
    std::ostringstream out;
    out << "name,observations,mismatches,rate,wilson99_low,wilson99_high,exact\n";
    for (const auto& c : r.checks) {
        out << c.name << "," << c.observations << "," << c.mismatches << ","
            << format_double(c.rate) << "," << format_double(c.wilson99.low) << ","
            << format_double(c.wilson99.high) << "," << format_double(c.exact) << "\n";
    }
    const double trials = r.trials;
    out << "outcome_completed," << r.completed << ",," << format_double(r.completed / trials)
        << ",,,\n";
    out << "outcome_aborted_eavesdrop," << r.aborted_eavesdrop << ",,"
        << format_double(r.aborted_eavesdrop / trials) << ",,,\n";
    out << "outcome_aborted_insufficient," << r.aborted_insufficient << ",,"
        << format_double(r.aborted_insufficient / trials) << ",,,\n";
    out << "leakage,,,,,," << format_double(r.exact_profile.leakage) << "\n";
    out << "eve_guess_accuracy,,,,,," << format_double(r.exact_profile.eve_guess_accuracy)
        << "\n";
    return out.str();
}

std::string audit_to_json(const VisibilityAudit& a) {
    ordered_json j{{"tp_alice_message_uniform", a.tp_alice_message_uniform},
                   {"tp_bob_message_uniform", a.tp_bob_message_uniform},
                   {"message_candidates", a.message_candidates},
                   {"tp_x_support", a.tp_x_support},
                   {"tp_y_support", a.tp_y_support},
                   {"tp_equality_indices", a.tp_equality_indices},
                   {"bob_x_uniform", a.bob_x_uniform},
                   {"alice_y_uniform", a.alice_y_uniform}};
    return j.dump(2) + "\n";
}

} // namespace sqpc
