#include "sqpc/sqpc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "adversary.hpp"
#include "analysis.hpp"
#include "protocol.hpp"
#include "serialize.hpp"

struct sqpc_session {
    sqpc::SessionParams params;
    std::vector<int> x, y, key; // empty means: draw from the seed at run time
    int key_parity = -1;        // -1 free, 0 even digits, 1 odd digits
};

struct sqpc_transcript {
    sqpc::Transcript t;
};

struct sqpc_attack {
    sqpc::AttackSpec spec;
};

struct sqpc_campaign {
    sqpc::CampaignReport report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Exceptions cross into status codes here; nothing may propagate past the ABI.
template <typename Fn>
sqpc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SQPC_ERROR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return SQPC_ERROR_PARSE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SQPC_ERROR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return SQPC_ERROR_INTERNAL;
    }
}

sqpc_status string_out(const std::string& s, char** out) {
    if (!out) {
        set_error("output pointer is null");
        return SQPC_ERROR_INVALID_ARGUMENT;
    }
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) {
        set_error("out of memory");
        return SQPC_ERROR_INTERNAL;
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
    return SQPC_OK;
}

sqpc_status require(bool ok, const char* msg) {
    if (ok) return SQPC_OK;
    set_error(msg);
    return SQPC_ERROR_INVALID_ARGUMENT;
}

std::vector<int> draw_digits(sqpc::RandomStream& rng, int count, int bound) {
    std::vector<int> v(static_cast<std::size_t>(count));
    for (auto& d : v) d = rng.uniform_int(bound);
    return v;
}

} // namespace

extern "C" {

const char* sqpc_version(void) { return "1.0.0"; }

const char* sqpc_last_error(void) { return g_last_error.c_str(); }

void sqpc_string_free(char* s) { std::free(s); }

sqpc_status sqpc_session_new(sqpc_session** out) {
    return guarded([&] {
        if (auto st = require(out != nullptr, "output pointer is null")) return st;
        *out = new sqpc_session();
        return SQPC_OK;
    });
}

void sqpc_session_free(sqpc_session* s) { delete s; }

sqpc_status sqpc_session_set_dimension(sqpc_session* s, int d) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        sqpc::validate_dimension(d);
        s->params.d = d;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_digits(sqpc_session* s, int n) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        if (auto st = require(n >= 1, "n must be >= 1")) return st;
        s->params.n = n;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_delta(sqpc_session* s, double delta) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        if (auto st = require(delta >= 0.0, "delta must be >= 0")) return st;
        s->params.delta = delta;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_threshold(sqpc_session* s, double threshold) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        if (auto st = require(threshold >= 0.0 && threshold <= 1.0,
                              "threshold must be in [0, 1]"))
            return st;
        s->params.test_threshold = threshold;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_seed(sqpc_session* s, uint64_t seed) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        s->params.seed = seed;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_secrets(sqpc_session* s, const int* x, const int* y,
                                     int len) {
    return guarded([&] {
        if (auto st = require(s && x && y, "null argument")) return st;
        if (auto st = require(len == s->params.n, "secret length must equal n")) return st;
        const int h = s->params.h();
        for (int i = 0; i < len; ++i)
            if (auto st = require(x[i] >= 0 && x[i] <= h && y[i] >= 0 && y[i] <= h,
                                  "secret digits must lie in [0, (d-1)/2]"))
                return st;
        s->x.assign(x, x + len);
        s->y.assign(y, y + len);
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_key(sqpc_session* s, const int* key, int len) {
    return guarded([&] {
        if (auto st = require(s && key, "null argument")) return st;
        if (auto st = require(len == s->params.n, "key length must equal n")) return st;
        for (int i = 0; i < len; ++i)
            if (auto st = require(key[i] >= 0 && key[i] < s->params.d,
                                  "key digits must lie in [0, d-1]"))
                return st;
        s->key.assign(key, key + len);
        s->key_parity = -1;
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_set_key_parity(sqpc_session* s, int odd) {
    return guarded([&] {
        if (auto st = require(s != nullptr, "session is null")) return st;
        s->key_parity = odd ? 1 : 0;
        s->key.clear();
        return SQPC_OK;
    });
}

sqpc_status sqpc_session_run(sqpc_session* s, const sqpc_attack* attack,
                             sqpc_transcript** out) {
    return guarded([&] {
        if (auto st = require(s && out, "null argument")) return st;
        s->params.validate();

        sqpc::SessionInputs inputs;
        auto fill = [&](const std::vector<int>& given, const char* tag, int bound) {
            if (!given.empty()) return given;
            auto rng = sqpc::RandomStream::derive(s->params.seed, tag);
            return draw_digits(rng, s->params.n, bound);
        };
        inputs.x = fill(s->x, "inputs-x", s->params.h() + 1);
        inputs.y = fill(s->y, "inputs-y", s->params.h() + 1);
        if (s->key.empty() && s->key_parity >= 0) {
            // d odd: h+1 even digits {0,2,..,d-1}, h odd digits {1,3,..,d-2}
            auto rng = sqpc::RandomStream::derive(s->params.seed, "inputs-key");
            const int h = s->params.h();
            inputs.key.resize(static_cast<std::size_t>(s->params.n));
            for (auto& k : inputs.key)
                k = s->key_parity ? 2 * rng.uniform_int(h) + 1 : 2 * rng.uniform_int(h + 1);
        } else {
            inputs.key = fill(s->key, "inputs-key", s->params.d);
        }

        std::unique_ptr<sqpc::AttackHook> hook;
        if (attack) {
            attack->spec.validate(s->params.d);
            hook = sqpc::make_hook(attack->spec, s->params.d,
                                   sqpc::RandomStream::derive(s->params.seed, "eve"));
        }
        auto t = sqpc::run_session(s->params, inputs, hook.get(), nullptr);
        *out = new sqpc_transcript{std::move(t)};
        return SQPC_OK;
    });
}

void sqpc_transcript_free(sqpc_transcript* t) { delete t; }

sqpc_status sqpc_transcript_outcome(const sqpc_transcript* t, sqpc_outcome* out) {
    return guarded([&] {
        if (auto st = require(t && out, "null argument")) return st;
        switch (t->t.status) {
            case sqpc::SessionStatus::COMPLETED: *out = SQPC_OUTCOME_COMPLETED; break;
            case sqpc::SessionStatus::ABORTED_EAVESDROP:
                *out = SQPC_OUTCOME_ABORTED_EAVESDROP;
                break;
            case sqpc::SessionStatus::ABORTED_INSUFFICIENT:
                *out = SQPC_OUTCOME_ABORTED_INSUFFICIENT;
                break;
        }
        return SQPC_OK;
    });
}

sqpc_status sqpc_transcript_results(const sqpc_transcript* t, int* out, int len) {
    return guarded([&] {
        if (auto st = require(t && out, "null argument")) return st;
        if (auto st = require(t->t.status == sqpc::SessionStatus::COMPLETED,
                              "session did not complete"))
            return st;
        if (auto st = require(len == static_cast<int>(t->t.results.size()),
                              "result buffer length must equal n"))
            return st;
        std::copy(t->t.results.begin(), t->t.results.end(), out);
        return SQPC_OK;
    });
}

sqpc_status sqpc_transcript_to_text(const sqpc_transcript* t, char** out) {
    return guarded([&] {
        if (auto st = require(t != nullptr, "transcript is null")) return st;
        return string_out(sqpc::transcript_to_text(t->t), out);
    });
}

sqpc_status sqpc_transcript_from_text(const char* text, sqpc_transcript** out) {
    return guarded([&] {
        if (auto st = require(text && out, "null argument")) return st;
        auto t = sqpc::transcript_from_text(text);
        *out = new sqpc_transcript{std::move(t)};
        return SQPC_OK;
    });
}

sqpc_status sqpc_transcript_summary(const sqpc_transcript* t, char** out) {
    return guarded([&] {
        if (auto st = require(t != nullptr, "transcript is null")) return st;
        return string_out(sqpc::transcript_summary(t->t), out);
    });
}

sqpc_status sqpc_transcript_party_view(const sqpc_transcript* t, const char* party,
                                       char** out) {
    return guarded([&] {
        if (auto st = require(t && party, "null argument")) return st;
        const std::string name = party;
        sqpc::Party p;
        if (name == "tp") p = sqpc::Party::TP;
        else if (name == "alice") p = sqpc::Party::ALICE;
        else if (name == "bob") p = sqpc::Party::BOB;
        else if (name == "eve") p = sqpc::Party::EVE;
        else return require(false, "party must be tp, alice, bob, or eve");
        return string_out(sqpc::party_view_to_text(sqpc::party_view(t->t, p)), out);
    });
}

sqpc_status sqpc_transcript_audit(const sqpc_transcript* t, char** out) {
    return guarded([&] {
        if (auto st = require(t != nullptr, "transcript is null")) return st;
        return string_out(sqpc::audit_to_json(sqpc::visibility_audit(t->t)), out);
    });
}

sqpc_status sqpc_attack_preset(const char* name, int d, sqpc_attack** out) {
    return guarded([&] {
        if (auto st = require(name && out, "null argument")) return st;
        auto spec = sqpc::AttackSpec::preset(name, d);
        spec.validate(d);
        *out = new sqpc_attack{std::move(spec)};
        return SQPC_OK;
    });
}

sqpc_status sqpc_attack_parse(const char* text, sqpc_attack** out) {
    return guarded([&] {
        if (auto st = require(text && out, "null argument")) return st;
        auto spec = sqpc::attack_spec_from_text(text);
        *out = new sqpc_attack{std::move(spec)};
        return SQPC_OK;
    });
}

sqpc_status sqpc_attack_load(const char* path, sqpc_attack** out) {
    return guarded([&] {
        if (auto st = require(path && out, "null argument")) return st;
        std::ifstream in(path);
        if (!in) {
            set_error(std::string("cannot open ") + path);
            return SQPC_ERROR_IO;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        auto spec = sqpc::attack_spec_from_text(ss.str());
        *out = new sqpc_attack{std::move(spec)};
        return SQPC_OK;
    });
}

void sqpc_attack_free(sqpc_attack* a) { delete a; }

sqpc_status sqpc_attack_describe(const sqpc_attack* a, char** out) {
    return guarded([&] {
        if (auto st = require(a != nullptr, "attack is null")) return st;
        return string_out(a->spec.describe(), out);
    });
}

sqpc_status sqpc_attack_profile_json(const sqpc_attack* a, int d, char** out) {
    return guarded([&] {
        if (auto st = require(a != nullptr, "attack is null")) return st;
        auto profile = sqpc::compute_attack_profile(a->spec, d);
        return string_out(sqpc::profile_to_json(profile), out);
    });
}

sqpc_status sqpc_attack_verify_json(const sqpc_attack* a, double tolerance, char** out,
                                    int* passes) {
    return guarded([&] {
        if (auto st = require(a != nullptr, "attack is null")) return st;
        if (auto st = require(a->spec.kind == sqpc::AttackKind::ENTANGLE_MEASURE &&
                                  a->spec.entangle.has_value(),
                              "verification applies to entangling attacks only"))
            return st;
        if (auto st = require(tolerance > 0.0, "tolerance must be > 0")) return st;
        auto r = sqpc::verify_zero_error_form(*a->spec.entangle, tolerance);
        if (passes) *passes = r.passes() ? 1 : 0;
        if (out) return string_out(sqpc::verify_result_to_json(r), out);
        return SQPC_OK;
    });
}

sqpc_status sqpc_campaign_run(const sqpc_session* s, const sqpc_attack* attack,
                              int trials, int jobs, sqpc_campaign** out) {
    return guarded([&] {
        if (auto st = require(s && out, "null argument")) return st;
        sqpc::AttackSpec spec; // defaults to honest channels
        if (attack) spec = attack->spec;
        if (jobs <= 0) {
            unsigned hw = std::thread::hardware_concurrency();
            jobs = hw ? static_cast<int>(hw) : 1;
        }
        auto report = sqpc::run_campaign(s->params, spec, trials, jobs);
        *out = new sqpc_campaign{std::move(report)};
        return SQPC_OK;
    });
}

void sqpc_campaign_free(sqpc_campaign* c) { delete c; }

sqpc_status sqpc_campaign_to_json(const sqpc_campaign* c, char** out) {
    return guarded([&] {
        if (auto st = require(c != nullptr, "campaign is null")) return st;
        return string_out(sqpc::campaign_to_json(c->report), out);
    });
}

sqpc_status sqpc_campaign_to_csv(const sqpc_campaign* c, char** out) {
    return guarded([&] {
        if (auto st = require(c != nullptr, "campaign is null")) return st;
        return string_out(sqpc::campaign_to_csv(c->report), out);
    });
}

sqpc_status sqpc_efficiency(int n, double delta, double* out) {
    return guarded([&] {
        if (auto st = require(out != nullptr, "output pointer is null")) return st;
        *out = sqpc::efficiency(n, delta).efficiency;
        return SQPC_OK;
    });
}

} // extern "C"
