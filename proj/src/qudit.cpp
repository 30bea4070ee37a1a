#include "qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqpc {

namespace {

Cx root_of_unity(int d, long long power) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / d;
    return {std::cos(angle), std::sin(angle)};
}

void check_finite(const Vec& v, const char* who) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw std::invalid_argument(std::string(who) + ": non-finite amplitude");
    }
}

} // namespace

const char* basis_name(Basis b) { return b == Basis::Z ? "Z" : "F"; }

QuditState::QuditState(Vec amps) : amps_(std::move(amps)) {
    if (amps_.size() < 2) throw std::invalid_argument("QuditState: dim must be >= 2");
    check_finite(amps_, "QuditState");
    if (std::abs(amps_.norm() - 1.0) > kStateTol)
        throw std::invalid_argument("QuditState: not normalized");
}

QuditState QuditState::basis_state(BasisLabel label, int dim) {
    if (dim < 2) throw std::invalid_argument("basis_state: dim must be >= 2");
    if (label.value < 0 || label.value >= dim)
        throw std::invalid_argument("basis_state: value out of range");
    if (label.basis == Basis::Z) {
        Vec v = Vec::Zero(dim);
        v[label.value] = 1.0;
        return QuditState(std::move(v));
    }
    Vec v(dim);
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int k = 0; k < dim; ++k)
        v[k] = scale * root_of_unity(dim, static_cast<long long>(label.value) * k);
    return QuditState(std::move(v));
}

Mat fourier_matrix(int d) {
    if (d < 2) throw std::invalid_argument("fourier_matrix: d must be >= 2");
    Mat f(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j)
            f(k, j) = scale * root_of_unity(d, static_cast<long long>(j) * k);
    return f;
}

double unitarity_residual(const Mat& u) {
    Mat g = u.adjoint() * u - Mat::Identity(u.cols(), u.cols());
    return g.cwiseAbs().maxCoeff();
}

std::vector<double> basis_probabilities(const QuditState& s, Basis b) {
    Vec a = s.amps();
    if (b == Basis::F) a = fourier_matrix(s.dim()).adjoint() * a;
    std::vector<double> p(static_cast<std::size_t>(s.dim()));
    for (int k = 0; k < s.dim(); ++k) p[k] = std::norm(a[k]);
    return p;
}

MeasureResult measure(const QuditState& s, Basis b, RandomStream& rng) {
    int outcome = rng.sample_pmf(basis_probabilities(s, b));
    return {outcome, QuditState::basis_state({b, outcome}, s.dim())};
}

JointState::JointState(Vec amps, int particle_dim, int probe_dim)
    : amps_(std::move(amps)), particle_dim_(particle_dim), probe_dim_(probe_dim) {
    if (particle_dim_ < 2 || probe_dim_ < 1)
        throw std::invalid_argument("JointState: bad dimensions");
    if (amps_.size() != static_cast<Eigen::Index>(particle_dim_) * probe_dim_)
        throw std::invalid_argument("JointState: amplitude count mismatch");
    check_finite(amps_, "JointState");
    if (std::abs(amps_.norm() - 1.0) > kStateTol)
        throw std::invalid_argument("JointState: not normalized");
}

JointState JointState::product(const QuditState& particle, const Vec& probe) {
    int de = static_cast<int>(probe.size());
    if (de < 1) throw std::invalid_argument("JointState: empty probe");
    Vec v(particle.dim() * de);
    for (int p = 0; p < particle.dim(); ++p)
        for (int e = 0; e < de; ++e)
            v[static_cast<Eigen::Index>(p) * de + e] = particle.amps()[p] * probe[e];
    return JointState(std::move(v), particle.dim(), de);
}

JointState JointState::bare(const QuditState& particle) {
    return JointState(particle.amps(), particle.dim(), 1);
}

QuditState JointState::particle() const {
    if (probe_dim_ != 1)
        throw std::logic_error("JointState::particle: probe is not trivial");
    return QuditState(amps_);
}

JointState apply_joint(const Mat& u, const JointState& s) {
    if (u.rows() != s.dim() || u.cols() != s.dim())
        throw std::invalid_argument("apply_joint: dimension mismatch");
    return JointState(u * s.amps(), s.particle_dim(), s.probe_dim());
}

namespace {

// Amplitudes with the particle index rotated into basis b.
Vec particle_frame(const JointState& s, Basis b) {
    if (b == Basis::Z) return s.amps();
    int d = s.particle_dim(), de = s.probe_dim();
    Mat fd = fourier_matrix(d).adjoint();
    Vec out = Vec::Zero(s.dim());
    for (int t = 0; t < d; ++t)
        for (int p = 0; p < d; ++p)
            for (int e = 0; e < de; ++e)
                out[static_cast<Eigen::Index>(t) * de + e] +=
                    fd(t, p) * s.amps()[static_cast<Eigen::Index>(p) * de + e];
    return out;
}

std::vector<double> frame_probabilities(const Vec& a, int d, int de) {
    std::vector<double> p(static_cast<std::size_t>(d), 0.0);
    for (int t = 0; t < d; ++t)
        for (int e = 0; e < de; ++e)
            p[t] += std::norm(a[static_cast<Eigen::Index>(t) * de + e]);
    return p;
}

} // namespace

std::vector<double> particle_probabilities(const JointState& s, Basis b) {
    return frame_probabilities(particle_frame(s, b), s.particle_dim(), s.probe_dim());
}

ParticleMeasureResult measure_particle(const JointState& s, Basis b, RandomStream& rng) {
    Vec frame = particle_frame(s, b);
    int d = s.particle_dim(), de = s.probe_dim();
    auto probs = frame_probabilities(frame, d, de);
    int outcome = rng.sample_pmf(probs);

    Vec probe(de);
    for (int e = 0; e < de; ++e)
        probe[e] = frame[static_cast<Eigen::Index>(outcome) * de + e];
    double nrm = probe.norm();
    if (nrm <= 0.0) throw std::logic_error("measure_particle: zero-probability branch");
    probe /= nrm;
    return {outcome,
            JointState::product(QuditState::basis_state({b, outcome}, d), probe)};
}

int sample_particle_outcome(const JointState& s, Basis b, RandomStream& rng) {
    return rng.sample_pmf(particle_probabilities(s, b));
}

Mat partial_trace_probe(const JointState& s, int particle_outcome) {
    int d = s.particle_dim(), de = s.probe_dim();
    if (particle_outcome < 0 || particle_outcome >= d)
        throw std::invalid_argument("partial_trace_probe: outcome out of range");
    Mat rho = Mat::Zero(de, de);
    for (int e = 0; e < de; ++e)
        for (int f = 0; f < de; ++f)
            rho(e, f) = s.amps()[static_cast<Eigen::Index>(particle_outcome) * de + e] *
                        std::conj(s.amps()[static_cast<Eigen::Index>(particle_outcome) * de + f]);
    return rho;
}

Mat reduced_probe(const JointState& s) {
    int de = s.probe_dim();
    Mat rho = Mat::Zero(de, de);
    for (int p = 0; p < s.particle_dim(); ++p)
        rho += partial_trace_probe(s, p);
    return rho;
}

bool approx_equal_up_to_phase(const QuditState& a, const QuditState& b, double tol) {
    if (a.dim() != b.dim()) return false;
    Cx overlap = a.amps().dot(b.amps());
    return std::abs(std::abs(overlap) - 1.0) <= tol;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Mat diff = rho - sigma;
    diff = 0.5 * (diff + diff.adjoint().eval()); // guard tiny asymmetries
    Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

// Hermitian square root and pseudo-inverse square root, eigenvalues clamped
// at a relative threshold.
void sqrt_and_pinv_sqrt(const Mat& g, Mat& root, Mat& pinv_root) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint().eval()));
    const auto& vals = es.eigenvalues();
    const Mat& vecs = es.eigenvectors();
    double cutoff = std::max(vals.cwiseAbs().maxCoeff(), 1e-300) * 1e-14;
    Eigen::VectorXd r(vals.size()), ir(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        double v = std::max(vals[i], 0.0);
        r[i] = std::sqrt(v);
        ir[i] = v > cutoff ? 1.0 / r[i] : 0.0;
    }
    root = vecs * r.asDiagonal() * vecs.adjoint();
    pinv_root = vecs * ir.asDiagonal() * vecs.adjoint();
}

} // namespace

double discrimination_success(const std::vector<Mat>& states,
                              const std::vector<double>& priors) {
    if (states.empty() || states.size() != priors.size())
        throw std::invalid_argument("discrimination_success: bad input sizes");
    const auto m = states.size();
    const auto dim = states[0].rows();
    std::vector<Mat> weighted(m);
    for (std::size_t g = 0; g < m; ++g) {
        if (states[g].rows() != dim || states[g].cols() != dim)
            throw std::invalid_argument("discrimination_success: dimension mismatch");
        weighted[g] = priors[g] * states[g];
    }

    std::vector<Mat> povm(m, Mat::Identity(dim, dim) / static_cast<double>(m));
    auto success = [&] {
        double p = 0.0;
        for (std::size_t g = 0; g < m; ++g) p += (weighted[g] * povm[g]).trace().real();
        return p;
    };

    double best = success();
    for (int iter = 0; iter < 500; ++iter) {
        Mat g_sum = Mat::Zero(dim, dim);
        for (std::size_t g = 0; g < m; ++g)
            g_sum += weighted[g] * povm[g] * weighted[g];
        Mat root, pinv_root;
        sqrt_and_pinv_sqrt(g_sum, root, pinv_root);
        for (std::size_t g = 0; g < m; ++g) {
            Mat e = pinv_root * weighted[g] * povm[g] * weighted[g] * pinv_root;
            povm[g] = 0.5 * (e + e.adjoint().eval());
        }
        // Renormalize completeness drift from the pseudo-inverse.
        Mat total = Mat::Zero(dim, dim);
        for (const auto& e : povm) total += e;
        double gap = (total - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
        if (gap > 1e-9) {
            Mat troot, tpinv;
            sqrt_and_pinv_sqrt(total, troot, tpinv);
            for (auto& e : povm) {
                e = tpinv * e * tpinv;
                e = 0.5 * (e + e.adjoint().eval());
            }
        }
        double p = success();
        if (p > best + 1e-13) {
            best = p;
        } else if (iter > 20) {
            break;
        }
    }
    return std::min(best, 1.0);
}

Mat random_unitary(int dim, RandomStream& rng) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            g(i, j) = Cx(rng.next_gaussian(), rng.next_gaussian()) * std::numbers::sqrt2 / 2.0;

    Mat q(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Vec v = g.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                Cx overlap = q.col(i).dot(v);
                v -= overlap * q.col(i);
            }
        double nrm = v.norm();
        if (nrm < 1e-12)
            throw std::runtime_error("random_unitary: degenerate Gaussian draw");
        q.col(j) = v / nrm;
    }
    return q;
}

} // namespace sqpc
