#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "adversary.hpp"

using namespace sqpc;

namespace {

EntangleSpec identity_spec(int d, int de) {
    EntangleSpec s;
    s.particle_dim = d;
    s.probe_dim = de;
    s.probe_state = Vec::Zero(de);
    s.probe_state[0] = 1.0;
    s.forward_unitary = Mat::Identity(d * de, d * de);
    s.return_unitary = Mat::Identity(d * de, d * de);
    return s;
}

// Controlled shift in, inverse controlled shift out: the probe returns to its
// start state no matter which particle value controlled it.
EntangleSpec shift_undo_spec(int d) {
    EntangleSpec s = identity_spec(d, d);
    s.forward_unitary.setZero();
    s.return_unitary.setZero();
    for (int p = 0; p < d; ++p)
        for (int e = 0; e < d; ++e) {
            s.forward_unitary(p * d + (e + p) % d, p * d + e) = 1.0;
            s.return_unitary(p * d + ((e - p) % d + d) % d, p * d + e) = 1.0;
        }
    return s;
}

// Diagonal forward phases conditioned on the particle value. Harmless to any
// computational-basis observer, but the relative phases break superpositions.
EntangleSpec conditional_phase_spec(int d, double theta) {
    EntangleSpec s = identity_spec(d, 1);
    for (int p = 0; p < d; ++p)
        s.forward_unitary(p, p) = std::polar(1.0, theta * p);
    return s;
}

// Probe-only rotation: acts as identity on the particle factor.
EntangleSpec probe_local_spec(int d, int de, bool on_forward, RandomStream& rng) {
    EntangleSpec s = identity_spec(d, de);
    Mat v = random_unitary(de, rng);
    Mat lifted = Mat::Zero(d * de, d * de);
    for (int p = 0; p < d; ++p)
        lifted.block(p * de, p * de, de, de) = v;
    (on_forward ? s.forward_unitary : s.return_unitary) = lifted;
    return s;
}

double max_error_rate(const AttackProfile& p) {
    return std::max({p.error_bz_r, p.error_bf_r, p.error_bz_m});
}

} // namespace

TEST_CASE("attack names round-trip and unknown names are rejected") {
    for (AttackKind k : {AttackKind::HONEST, AttackKind::INTERCEPT_RESEND,
                         AttackKind::MEASURE_RESEND_FORWARD,
                         AttackKind::MEASURE_RESEND_RETURN,
                         AttackKind::ENTANGLE_MEASURE}) {
        CHECK(attack_from_name(attack_name(k)) == k);
    }
    CHECK(std::string(attack_name(AttackKind::INTERCEPT_RESEND)) == "intercept-resend");
    CHECK(std::string(attack_name(AttackKind::ENTANGLE_MEASURE)) == "entangle-measure");
    CHECK_THROWS_AS(attack_from_name("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(attack_from_name(""), std::invalid_argument);
}

TEST_CASE("entangling spec validation rejects malformed data") {
    EntangleSpec good = AttackSpec::preset("entangle-measure", 3).entangle.value();
    CHECK_NOTHROW(good.validate());

    EntangleSpec bad = good;
    bad.probe_state = Vec::Zero(2);
    bad.probe_state[0] = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // size != probe_dim

    bad = good;
    bad.probe_state.setZero();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // unnormalized

    bad = good;
    bad.forward_unitary = Mat::Identity(4, 4);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // wrong shape

    bad = good;
    bad.forward_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // not unitary

    bad = good;
    bad.return_unitary(0, 1) = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = good;
    bad.particle_dim = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("attack spec validation ties the unitaries to the kind") {
    AttackSpec missing;
    missing.kind = AttackKind::ENTANGLE_MEASURE;
    CHECK_THROWS_AS(missing.validate(3), std::invalid_argument);

    AttackSpec extra = AttackSpec::preset("entangle-measure", 3);
    extra.kind = AttackKind::HONEST;
    CHECK_THROWS_AS(extra.validate(3), std::invalid_argument);

    AttackSpec mismatched = AttackSpec::preset("entangle-measure", 3);
    CHECK_THROWS_AS(mismatched.validate(5), std::invalid_argument);
    CHECK_NOTHROW(mismatched.validate(3));

    CHECK(AttackSpec::preset("honest", 3).describe() == "honest");
    CHECK(AttackSpec::preset("entangle-measure", 7).describe()
          == "entangle-measure (probe_dim=7)");
}

TEST_CASE("the entangling preset couples a fresh probe by a controlled shift") {
    AttackSpec spec = AttackSpec::preset("entangle-measure", 5);
    REQUIRE(spec.entangle.has_value());
    const EntangleSpec& e = *spec.entangle;
    CHECK(e.particle_dim == 5);
    CHECK(e.probe_dim == 5);
    CHECK(e.probe_state[0] == std::complex<double>(1.0, 0.0));
    CHECK(unitarity_residual(e.forward_unitary) < 1e-14);
    // particle value p shifts the probe from e to e+p mod 5
    CHECK(std::abs(e.forward_unitary(1 * 5 + 1, 1 * 5 + 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.forward_unitary(3 * 5 + 2, 3 * 5 + 4) - 1.0) < 1e-15);
    CHECK(std::abs(e.forward_unitary(0 * 5 + 2, 0 * 5 + 2) - 1.0) < 1e-15);
    CHECK((e.return_unitary - Mat::Identity(25, 25)).norm() < 1e-15);
}

TEST_CASE("intercept hook hands out decoys and returns the genuine particle") {
    const int d = 5;
    InterceptResendHook hook(d, RandomStream::derive(7, "eve"));

    // Fourier-prepared particle, participant reflects Eve's decoy untouched.
    QuditState prep = QuditState::basis_state({Basis::F, 3}, d);
    JointState fwd = hook.on_forward(JointState::bare(prep));
    REQUIRE(hook.decoy_values().size() == 1);
    const int decoy = hook.decoy_values()[0];
    CHECK(fwd.probe_dim() == 1);
    QuditState expected = QuditState::basis_state({Basis::Z, decoy}, d);
    CHECK((fwd.particle().amps() - expected.amps()).norm() < 1e-15);

    JointState back = hook.on_return(std::move(fwd));
    CHECK((back.particle().amps() - prep.amps()).norm() < 1e-15);
    // Eve's return measurement sees her own decoy, deterministically.
    REQUIRE(hook.guesses().size() == 1);
    CHECK(hook.guesses()[0] == decoy);

    // Z-prepared particle, participant measures the decoy and resends fresh.
    QuditState zprep = QuditState::basis_state({Basis::Z, 2}, d);
    JointState fwd2 = hook.on_forward(JointState::bare(zprep));
    const int decoy2 = hook.decoy_values()[1];
    JointState resent = JointState::bare(QuditState::basis_state({Basis::Z, decoy2}, d));
    JointState back2 = hook.on_return(std::move(resent));
    CHECK((back2.particle().amps() - zprep.amps()).norm() < 1e-15);
    CHECK(hook.guesses()[1] == decoy2);

    InterceptResendHook fresh(d, RandomStream::derive(7, "eve"));
    CHECK_THROWS_AS(fresh.on_return(JointState::bare(zprep)), std::logic_error);
}

TEST_CASE("measure-resend hooks collapse in their configured direction only") {
    const int d = 5;

    SUBCASE("forward direction") {
        MeasureResendHook hook(MeasureResendHook::Direction::FORWARD,
                               RandomStream::derive(11, "eve"));
        // Z preparations collapse onto themselves.
        QuditState zprep = QuditState::basis_state({Basis::Z, 2}, d);
        JointState out = hook.on_forward(JointState::bare(zprep));
        CHECK((out.particle().amps() - zprep.amps()).norm() < 1e-15);
        REQUIRE(hook.guesses().size() == 1);
        CHECK(hook.guesses()[0] == 2);

        // Fourier preparations collapse to some computational value.
        QuditState fprep = QuditState::basis_state({Basis::F, 1}, d);
        JointState out2 = hook.on_forward(JointState::bare(fprep));
        REQUIRE(hook.guesses().size() == 2);
        const int seen = hook.guesses()[1];
        CHECK(seen >= 0);
        CHECK(seen < d);
        // the resent particle matches the record up to an irrelevant phase
        QuditState collapsed = QuditState::basis_state({Basis::Z, seen}, d);
        CHECK(approx_equal_up_to_phase(out2.particle(), collapsed, 1e-12));

        // The return leg passes through untouched.
        JointState ret = hook.on_return(JointState::bare(fprep));
        CHECK((ret.particle().amps() - fprep.amps()).norm() < 1e-15);
        CHECK(hook.guesses().size() == 2);
    }

    SUBCASE("return direction") {
        MeasureResendHook hook(MeasureResendHook::Direction::RETURN,
                               RandomStream::derive(11, "eve"));
        QuditState fprep = QuditState::basis_state({Basis::F, 1}, d);
        JointState fwd = hook.on_forward(JointState::bare(fprep));
        CHECK((fwd.particle().amps() - fprep.amps()).norm() < 1e-15);
        CHECK(hook.guesses().empty());

        JointState ret = hook.on_return(std::move(fwd));
        REQUIRE(hook.guesses().size() == 1);
        const int seen = hook.guesses()[0];
        QuditState collapsed = QuditState::basis_state({Basis::Z, seen}, d);
        CHECK(approx_equal_up_to_phase(ret.particle(), collapsed, 1e-12));
    }
}

TEST_CASE("exact attack profiles match their closed forms") {
    for (int d : {3, 5, 11}) {
        CAPTURE(d);
        const double skewed = static_cast<double>(d - 1) / d;

        AttackProfile honest = compute_attack_profile(AttackSpec::preset("honest", d), d);
        CHECK(honest.kind == AttackKind::HONEST);
        CHECK(honest.d == d);
        CHECK(max_error_rate(honest) == 0.0);
        CHECK(honest.leakage == 0.0);
        CHECK(honest.eve_guess_accuracy == doctest::Approx(1.0 / d).epsilon(1e-12));

        AttackProfile ir =
            compute_attack_profile(AttackSpec::preset("intercept-resend", d), d);
        CHECK(ir.error_bz_r == 0.0);
        CHECK(ir.error_bf_r == 0.0);
        CHECK(ir.error_bz_m == doctest::Approx(skewed).epsilon(1e-12));
        CHECK(ir.leakage < 1e-12);
        CHECK(ir.eve_guess_accuracy == doctest::Approx(1.0 / d).epsilon(1e-12));

        for (const char* name : {"measure-resend-forward", "measure-resend-return"}) {
            CAPTURE(name);
            AttackProfile mr = compute_attack_profile(AttackSpec::preset(name, d), d);
            CHECK(mr.error_bz_r < 1e-12);
            CHECK(mr.error_bf_r == doctest::Approx(skewed).epsilon(1e-12));
            CHECK(mr.error_bz_m < 1e-12);
            CHECK(mr.leakage == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(mr.eve_guess_accuracy == doctest::Approx(1.0).epsilon(1e-12));
        }

        AttackProfile em =
            compute_attack_profile(AttackSpec::preset("entangle-measure", d), d);
        CHECK(em.error_bz_r < 1e-12);
        CHECK(em.error_bf_r == doctest::Approx(skewed).epsilon(1e-12));
        CHECK(em.error_bz_m < 1e-12);
        CHECK(em.leakage == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(em.eve_guess_accuracy == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("zero-error verifier separates the structural cases") {
    SUBCASE("identity coupling passes with zero residuals") {
        VerifyResult r = verify_zero_error_form(identity_spec(3, 2));
        CHECK(r.passes());
        CHECK(r.off_diagonal_residual == 0.0);
        CHECK(r.particle_return_residual == 0.0);
        CHECK(r.probe_equality_residual == 0.0);
        CHECK(r.tolerance == doctest::Approx(1e-9));
    }

    SUBCASE("controlled shift keeps the particle but marks the probe") {
        EntangleSpec cs = AttackSpec::preset("entangle-measure", 5).entangle.value();
        VerifyResult r = verify_zero_error_form(cs);
        CHECK(r.forward_diagonal);
        CHECK(r.returns_particle);
        CHECK_FALSE(r.probes_equal);
        CHECK(r.probe_equality_residual > 0.5);
        CHECK_FALSE(r.passes());
    }

    SUBCASE("undoing the shift on the way out passes and is harmless") {
        for (int d : {3, 5}) {
            CAPTURE(d);
            EntangleSpec su = shift_undo_spec(d);
            VerifyResult r = verify_zero_error_form(su);
            CHECK(r.passes());
            AttackSpec spec;
            spec.kind = AttackKind::ENTANGLE_MEASURE;
            spec.entangle = su;
            AttackProfile p = compute_attack_profile(spec, d);
            CHECK(max_error_rate(p) <= 1e-9);
            CHECK(p.leakage <= 1e-9);
        }
    }

    SUBCASE("conditional phases slip past the computational checks only") {
        EntangleSpec cp = conditional_phase_spec(5, 0.7);
        VerifyResult r = verify_zero_error_form(cp);
        CHECK(r.forward_diagonal);
        CHECK(r.returns_particle);
        CHECK_FALSE(r.probes_equal);
        AttackSpec spec;
        spec.kind = AttackKind::ENTANGLE_MEASURE;
        spec.entangle = cp;
        AttackProfile p = compute_attack_profile(spec, 5);
        CHECK(p.error_bz_r < 1e-12);
        CHECK(p.error_bz_m < 1e-12);
        CHECK(p.error_bf_r > 1e-3); // superpositions feel the relative phases
    }

    SUBCASE("probe-local rotations never touch the particle") {
        auto rng = RandomStream::derive(3, "probe-local");
        for (bool fwd : {true, false}) {
            CAPTURE(fwd);
            EntangleSpec pl = probe_local_spec(3, 3, fwd, rng);
            VerifyResult r = verify_zero_error_form(pl);
            CHECK(r.passes());
            AttackSpec spec;
            spec.kind = AttackKind::ENTANGLE_MEASURE;
            spec.entangle = pl;
            AttackProfile p = compute_attack_profile(spec, 3);
            CHECK(max_error_rate(p) <= 1e-9);
            CHECK(p.leakage <= 1e-9);
        }
    }
}

TEST_CASE("verifier verdict agrees with the exact profile on a mixed corpus") {
    const int d = 3;
    auto rng = RandomStream::derive(17, "corpus");
    std::vector<EntangleSpec> corpus;
    corpus.push_back(identity_spec(d, 1));
    corpus.push_back(identity_spec(d, 2));
    corpus.push_back(shift_undo_spec(d));
    corpus.push_back(conditional_phase_spec(d, 1.3));
    corpus.push_back(AttackSpec::preset("entangle-measure", d).entangle.value());
    corpus.push_back(probe_local_spec(d, 2, true, rng));
    corpus.push_back(probe_local_spec(d, 2, false, rng));
    for (int i = 0; i < 6; ++i) {
        EntangleSpec s = identity_spec(d, 2);
        s.forward_unitary = random_unitary(d * 2, rng);
        s.return_unitary = random_unitary(d * 2, rng);
        corpus.push_back(std::move(s));
    }

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CAPTURE(i);
        VerifyResult r = verify_zero_error_form(corpus[i]);
        AttackSpec spec;
        spec.kind = AttackKind::ENTANGLE_MEASURE;
        spec.entangle = corpus[i];
        AttackProfile p = compute_attack_profile(spec, d);
        CHECK(r.passes() == (max_error_rate(p) < 1e-9));
        if (r.passes()) CHECK(p.leakage < 1e-9);
    }
}

TEST_CASE("entangle hook tracks the probes it retains") {
    EntangleSpec cs = AttackSpec::preset("entangle-measure", 3).entangle.value();
    EntangleMeasureHook hook(cs, true);

    // Value 1 shifts the probe to |1>, value 2 to |2>; reflections keep them.
    for (int g : {1, 2}) {
        QuditState prep = QuditState::basis_state({Basis::Z, g}, 3);
        JointState fwd = hook.on_forward(JointState::bare(prep));
        CHECK(fwd.particle_dim() == 3);
        CHECK(fwd.probe_dim() == 3);
        CHECK(std::abs(fwd.amps()[g * 3 + g] - std::complex<double>(1.0, 0.0)) < 1e-15);
        hook.on_return(std::move(fwd));
    }
    CHECK(hook.particles_seen() == 2);
    REQUIRE(hook.retained_probes().size() == 2);
    CHECK(std::abs(hook.retained_probes()[0](1, 1) - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(hook.retained_probes()[1](2, 2) - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(hook.mean_probe()(1, 1) - std::complex<double>(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(hook.mean_probe()(2, 2) - std::complex<double>(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(hook.mean_probe().trace() - std::complex<double>(1.0, 0.0)) < 1e-12);

    QuditState prep = QuditState::basis_state({Basis::Z, 0}, 3);
    JointState with_probe = JointState::product(prep, Vec::Ones(2) / std::sqrt(2.0));
    CHECK_THROWS_AS(hook.on_forward(std::move(with_probe)), std::logic_error);
    QuditState wrong_dim = QuditState::basis_state({Basis::Z, 0}, 4);
    CHECK_THROWS_AS(hook.on_forward(JointState::bare(wrong_dim)), std::invalid_argument);
}

TEST_CASE("make_hook builds the right hook for each kind") {
    auto honest = make_hook(AttackSpec::preset("honest", 3), 3,
                            RandomStream::derive(1, "eve"));
    QuditState fprep = QuditState::basis_state({Basis::F, 2}, 3);
    JointState out = honest->on_forward(JointState::bare(fprep));
    CHECK((out.particle().amps() - fprep.amps()).norm() == 0.0);
    JointState back = honest->on_return(std::move(out));
    CHECK((back.particle().amps() - fprep.amps()).norm() == 0.0);
    CHECK(honest->guesses().empty());

    AttackSpec broken;
    broken.kind = AttackKind::ENTANGLE_MEASURE;
    CHECK_THROWS_AS(make_hook(broken, 3, RandomStream::derive(1, "eve")),
                    std::invalid_argument);

    auto em = make_hook(AttackSpec::preset("entangle-measure", 3), 3,
                        RandomStream::derive(1, "eve"), true);
    auto* typed = dynamic_cast<EntangleMeasureHook*>(em.get());
    REQUIRE(typed != nullptr);
    QuditState zprep = QuditState::basis_state({Basis::Z, 1}, 3);
    typed->on_return(typed->on_forward(JointState::bare(zprep)));
    CHECK(typed->particles_seen() == 1);
    CHECK(typed->retained_probes().size() == 1);
}
