// Command-line front end. Talks to the simulator exclusively through the
// public C interface, the same way an external consumer would.
#include <sqpc/sqpc.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

// Exit codes: 0 success (verify: attack passes), 1 verify rejected the
// attack, 2 bad configuration, 3 session aborted on eavesdropping evidence,
// 4 session aborted on an insufficient particle supply, 5 file or parse
// trouble.
enum ExitCode {
    kOk = 0,
    kVerifyFailed = 1,
    kConfig = 2,
    kAbortEavesdrop = 3,
    kAbortInsufficient = 4,
    kIo = 5,
};

[[noreturn]] void fail(int code, const std::string& msg) {
    std::cerr << "sqpc: " << msg << "\n";
    std::exit(code);
}

int exit_code_for(sqpc_status st) {
    switch (st) {
        case SQPC_ERROR_PARSE:
        case SQPC_ERROR_IO: return kIo;
        default: return kConfig;
    }
}

void check(sqpc_status st) {
    if (st != SQPC_OK) fail(exit_code_for(st), sqpc_last_error());
}

struct Str {
    char* p = nullptr;
    ~Str() { sqpc_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    T* get() const { return p; }
};

using Session = Handle<sqpc_session, sqpc_session_free>;
using TranscriptH = Handle<sqpc_transcript, sqpc_transcript_free>;
using AttackH = Handle<sqpc_attack, sqpc_attack_free>;
using CampaignH = Handle<sqpc_campaign, sqpc_campaign_free>;

// "1,2,3" inline, or "@path" naming a file of comma/whitespace separated
// integers.
std::vector<int> parse_digits(const std::string& arg, const char* what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) fail(kIo, std::string("cannot open ") + arg.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    for (auto& c : text)
        if (c == ',') c = ' ';
    std::vector<int> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(kConfig, std::string("bad digit '") + tok + "' in " + what);
        }
    }
    if (out.empty()) fail(kConfig, std::string(what) + " holds no digits");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(kIo, "cannot write " + out_path);
    out << text;
    if (!out) fail(kIo, "cannot write " + out_path);
}

struct SessionOpts {
    int d = 3;
    int n = 1;
    double delta = 0.25;
    double threshold = 0.0;
    std::uint64_t seed = 0;
};

void add_session_flags(CLI::App* cmd, SessionOpts& o) {
    cmd->add_option("--d", o.d, "qudit dimension (odd, >= 3)")->capture_default_str();
    cmd->add_option("--n", o.n, "compared digits per secret")->capture_default_str();
    cmd->add_option("--delta", o.delta, "transmission oversampling fraction")
        ->capture_default_str();
    cmd->add_option("--threshold", o.threshold, "tolerated error rate per check")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "master random seed")->capture_default_str();
}

void configure(Session& s, const SessionOpts& o) {
    check(sqpc_session_new(s.out()));
    check(sqpc_session_set_dimension(s.get(), o.d));
    check(sqpc_session_set_digits(s.get(), o.n));
    check(sqpc_session_set_delta(s.get(), o.delta));
    check(sqpc_session_set_threshold(s.get(), o.threshold));
    check(sqpc_session_set_seed(s.get(), o.seed));
}

// --attack preset name or --spec file; at most one.
void load_attack(AttackH& a, const std::string& preset, const std::string& spec_path,
                 int d) {
    if (!preset.empty() && !spec_path.empty())
        fail(kConfig, "--attack and --spec are mutually exclusive");
    if (!spec_path.empty())
        check(sqpc_attack_load(spec_path.c_str(), a.out()));
    else if (!preset.empty() && preset != "honest")
        check(sqpc_attack_preset(preset.c_str(), d, a.out()));
}

int cmd_run(const SessionOpts& opts, const std::string& x_arg, const std::string& y_arg,
            const std::string& key_arg, const std::string& key_parity,
            const std::string& attack, const std::string& spec_path,
            const std::string& format, const std::string& view, bool audit,
            const std::string& out_path) {
    if (format != "" && format != "json" && format != "summary")
        fail(kConfig, "run emits json or summary, not " + format);
    if (x_arg.empty() != y_arg.empty())
        fail(kConfig, "--x and --y must be given together");

    Session s;
    configure(s, opts);
    if (!x_arg.empty()) {
        auto x = parse_digits(x_arg, "--x");
        auto y = parse_digits(y_arg, "--y");
        if (x.size() != y.size()) fail(kConfig, "--x and --y differ in length");
        check(sqpc_session_set_secrets(s.get(), x.data(), y.data(),
                                       static_cast<int>(x.size())));
    }
    if (!key_arg.empty()) {
        auto key = parse_digits(key_arg, "--key");
        check(sqpc_session_set_key(s.get(), key.data(), static_cast<int>(key.size())));
    } else if (!key_parity.empty()) {
        check(sqpc_session_set_key_parity(s.get(), key_parity == "odd"));
    }

    AttackH atk;
    load_attack(atk, attack, spec_path, opts.d);

    TranscriptH t;
    check(sqpc_session_run(s.get(), atk.get(), t.out()));

    Str payload;
    if (!view.empty()) {
        check(sqpc_transcript_party_view(t.get(), view.c_str(), &payload.p));
    } else if (audit) {
        check(sqpc_transcript_audit(t.get(), &payload.p));
    } else if (format == "json") {
        check(sqpc_transcript_to_text(t.get(), &payload.p));
    } else {
        check(sqpc_transcript_summary(t.get(), &payload.p));
    }
    emit(payload.str(), out_path);

    sqpc_outcome outcome;
    check(sqpc_transcript_outcome(t.get(), &outcome));
    if (outcome == SQPC_OUTCOME_ABORTED_EAVESDROP) return kAbortEavesdrop;
    if (outcome == SQPC_OUTCOME_ABORTED_INSUFFICIENT) return kAbortInsufficient;
    return kOk;
}

int cmd_attack(const SessionOpts& opts, const std::string& attack,
               const std::string& spec_path, int trials, int jobs,
               const std::string& format, const std::string& out_path) {
    Session s;
    configure(s, opts);
    AttackH atk;
    load_attack(atk, attack, spec_path, opts.d);

    CampaignH c;
    check(sqpc_campaign_run(s.get(), atk.get(), trials, jobs, c.out()));
    Str payload;
    if (format == "csv")
        check(sqpc_campaign_to_csv(c.get(), &payload.p));
    else
        check(sqpc_campaign_to_json(c.get(), &payload.p));
    emit(payload.str(), out_path);
    return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& attack, int d,
               double tol, const std::string& out_path) {
    AttackH atk;
    if (!spec_path.empty() && !attack.empty())
        fail(kConfig, "--attack and --spec are mutually exclusive");
    if (!spec_path.empty())
        check(sqpc_attack_load(spec_path.c_str(), atk.out()));
    else if (!attack.empty())
        check(sqpc_attack_preset(attack.c_str(), d, atk.out()));
    else
        fail(kConfig, "verify needs --spec or --attack");

    Str payload;
    int passes = 0;
    check(sqpc_attack_verify_json(atk.get(), tol, &payload.p, &passes));
    emit(payload.str(), out_path);
    return passes ? kOk : kVerifyFailed;
}

int cmd_sweep(std::vector<int> dims, std::vector<double> deltas,
              const std::string& format, const std::string& out_path) {
    static const char* kPresets[] = {"honest", "intercept-resend",
                                     "measure-resend-forward", "measure-resend-return",
                                     "entangle-measure"};
    nlohmann::ordered_json profiles = nlohmann::ordered_json::array();
    for (int d : dims) {
        for (const char* name : kPresets) {
            AttackH a;
            check(sqpc_attack_preset(name, d, a.out()));
            Str json;
            check(sqpc_attack_profile_json(a.get(), d, &json.p));
            profiles.push_back(nlohmann::ordered_json::parse(json.str()));
        }
    }
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (double delta : deltas) {
        double eff = 0.0;
        check(sqpc_efficiency(1, delta, &eff));
        table.push_back({{"delta", delta}, {"efficiency", eff}});
    }

    std::string payload;
    if (format == "csv") {
        std::ostringstream out;
        out << "row,attack,d,delta,error_bz_r,error_bf_r,error_bz_m,leakage,"
               "eve_guess_accuracy,efficiency\n";
        char buf[512];
        for (const auto& p : profiles) {
            std::snprintf(buf, sizeof buf, "profile,%s,%d,,%.17g,%.17g,%.17g,%.17g,%.17g,\n",
                          p.at("attack").get<std::string>().c_str(), p.at("d").get<int>(),
                          p.at("error_bz_r").get<double>(), p.at("error_bf_r").get<double>(),
                          p.at("error_bz_m").get<double>(), p.at("leakage").get<double>(),
                          p.at("eve_guess_accuracy").get<double>());
            out << buf;
        }
        for (const auto& e : table) {
            std::snprintf(buf, sizeof buf, "efficiency,,,%.17g,,,,,,%.17g\n",
                          e.at("delta").get<double>(), e.at("efficiency").get<double>());
            out << buf;
        }
        payload = out.str();
    } else {
        nlohmann::ordered_json j{{"format", "sqpc-sweep/1"},
                                 {"profiles", std::move(profiles)},
                                 {"efficiency", std::move(table)}};
        payload = j.dump(2) + "\n";
    }
    emit(payload, out_path);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiquantum private comparison simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(sqpc_version()); });

    SessionOpts opts;
    std::string x_arg, y_arg, key_arg, key_parity, attack, spec_path;
    std::string format, view, out_path;
    bool audit = false;
    int trials = 100, jobs = 1, verify_d = 3;
    double tol = 1e-9;
    std::vector<int> dims{3, 5, 7, 9, 11};
    std::vector<double> deltas{0.0, 0.25, 0.5, 1.0, 2.0};

    auto* run = app.add_subcommand("run", "run one comparison session");
    add_session_flags(run, opts);
    run->add_option("--x", x_arg, "first secret: digits or @file");
    run->add_option("--y", y_arg, "second secret: digits or @file");
    auto* key_opt = run->add_option("--key", key_arg, "pre-shared key: digits or @file");
    run->add_option("--key-parity", key_parity, "draw the key with fixed parity")
        ->check(CLI::IsMember({"even", "odd"}))
        ->excludes(key_opt);
    run->add_option("--attack", attack, "attack preset on the first leg");
    run->add_option("--spec", spec_path, "entangling attack description file");
    run->add_option("--format", format, "json (full transcript) or summary");
    run->add_option("--view", view, "emit one party's view: tp, alice, bob, eve");
    run->add_flag("--audit", audit, "emit the privacy audit of a completed session");
    run->add_option("--out", out_path, "write the payload to a file");

    auto* atk = app.add_subcommand("attack", "run a seeded attack campaign");
    add_session_flags(atk, opts);
    atk->add_option("--attack", attack, "attack preset name");
    atk->add_option("--spec", spec_path, "entangling attack description file");
    atk->add_option("--trials", trials, "independent sessions")->capture_default_str();
    atk->add_option("--jobs", jobs, "worker threads (0 = hardware)")
        ->capture_default_str();
    atk->add_option("--format", format, "json or csv");
    atk->add_option("--out", out_path, "write the report to a file");

    auto* ver = app.add_subcommand("verify", "check an entangling attack for the zero-error form");
    ver->add_option("--spec", spec_path, "entangling attack description file");
    ver->add_option("--attack", attack, "built-in preset to verify instead");
    ver->add_option("--d", verify_d, "dimension for a preset attack")->capture_default_str();
    ver->add_option("--tol", tol, "numerical tolerance")->capture_default_str();
    ver->add_option("--out", out_path, "write the verdict to a file");

    auto* swp = app.add_subcommand("sweep", "tabulate preset attack profiles and efficiency");
    swp->add_option("--dims", dims, "dimensions to profile")->delimiter(',');
    swp->add_option("--deltas", deltas, "oversampling fractions to tabulate")
        ->delimiter(',');
    swp->add_option("--format", format, "json or csv");
    swp->add_option("--out", out_path, "write the table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kConfig;
    }

    if (!format.empty() && format != "json" && format != "csv" && format != "summary")
        fail(kConfig, "unknown format " + format);
    if (format == "csv" && !atk->parsed() && !swp->parsed())
        fail(kConfig, "csv output applies to attack and sweep reports");

    if (run->parsed())
        return cmd_run(opts, x_arg, y_arg, key_arg, key_parity, attack, spec_path, format,
                       view, audit, out_path);
    if (atk->parsed()) return cmd_attack(opts, attack, spec_path, trials, jobs, format, out_path);
    if (ver->parsed()) return cmd_verify(spec_path, attack, verify_d, tol, out_path);
    if (swp->parsed()) return cmd_sweep(dims, deltas, format, out_path);
    return kConfig;
}
