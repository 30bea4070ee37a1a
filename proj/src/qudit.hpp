#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rng.hpp"

namespace sqpc {

using Cx  = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Valid states must be normalized within this tolerance.
inline constexpr double kStateTol = 1e-9;

enum class Basis { Z, F };

// One preparation choice: a basis and a value index within it.
struct BasisLabel {
    Basis basis;
    int value;
    bool operator==(const BasisLabel&) const = default;
};

const char* basis_name(Basis b);

/*
 * Pure state of a single d-level system, stored as computational-basis
 * amplitudes.  Construction rejects non-finite or unnormalized vectors.
 */
class QuditState {
public:
    explicit QuditState(Vec amps);

    static QuditState basis_state(BasisLabel label, int dim);

    int dim() const { return static_cast<int>(amps_.size()); }
    const Vec& amps() const { return amps_; }

private:
    Vec amps_;
};

// Discrete Fourier transform matrix: entry (k, j) = exp(2*pi*i*j*k/d)/sqrt(d).
// Column j is the j-th Fourier basis vector.
Mat fourier_matrix(int d);

// Max-abs entry of (U^dagger U - I); zero for exact unitaries.
double unitarity_residual(const Mat& u);

// Outcome probabilities of a projective measurement in the given basis.
std::vector<double> basis_probabilities(const QuditState& s, Basis b);

struct MeasureResult {
    int outcome;
    QuditState collapsed; // ideal post-measurement basis state
};

// Projective measurement; outcome sampled by inverse CDF in ascending index
// order from the stream.
MeasureResult measure(const QuditState& s, Basis b, RandomStream& rng);

/*
 * Pure state of particle (dim d) tensor probe (dim d_e), amplitude index
 * p * d_e + e.  A bare particle is the d_e = 1 case.
 */
class JointState {
public:
    JointState(Vec amps, int particle_dim, int probe_dim);

    static JointState product(const QuditState& particle, const Vec& probe);
    static JointState bare(const QuditState& particle);

    int particle_dim() const { return particle_dim_; }
    int probe_dim() const { return probe_dim_; }
    int dim() const { return particle_dim_ * probe_dim_; }
    const Vec& amps() const { return amps_; }

    // Particle amplitudes when the probe is trivial (probe_dim == 1).
    QuditState particle() const;

private:
    Vec amps_;
    int particle_dim_;
    int probe_dim_;
};

// Apply a unitary on the full particle (x) probe space.  Dimensions must match.
JointState apply_joint(const Mat& u, const JointState& s);

// Measurement of the particle subsystem only.
std::vector<double> particle_probabilities(const JointState& s, Basis b);

struct ParticleMeasureResult {
    int outcome;
    JointState after; // fresh basis state (x) normalized conditional probe
};

// Measure the particle in basis b; the particle is replaced by the ideal
// basis state of the observed outcome while the probe keeps its conditional
// state (this is what a participant who measures-and-resends produces).
ParticleMeasureResult measure_particle(const JointState& s, Basis b, RandomStream& rng);

// Sample an outcome without keeping the post-measurement state (final
// verification measurements).
int sample_particle_outcome(const JointState& s, Basis b, RandomStream& rng);

// Unnormalized conditional probe density matrix for one particle outcome in
// the computational basis; its trace is the outcome probability.
Mat partial_trace_probe(const JointState& s, int particle_outcome);

// Probe density matrix with the particle traced out.
Mat reduced_probe(const JointState& s);

// |<a|b>| within tol of 1, i.e. equality up to a global phase.
bool approx_equal_up_to_phase(const QuditState& a, const QuditState& b,
                              double tol = kStateTol);

// Trace distance 0.5*||rho - sigma||_1 of Hermitian matrices.
double trace_distance(const Mat& rho, const Mat& sigma);

/*
 * Minimum-error discrimination success probability for a set of density
 * matrices with given priors, via the Jezek-Rehacek-Fiurasek fixed-point
 * iteration over POVMs.  Exact for the two-state (Helstrom) case and for
 * orthogonal or identical states; used for eavesdropper guess accuracy.
 */
double discrimination_success(const std::vector<Mat>& states,
                              const std::vector<double>& priors);

// Haar-like random unitary: complex Gaussian matrix orthonormalized by
// modified Gram-Schmidt.  Deterministic for a given stream state.
Mat random_unitary(int dim, RandomStream& rng);

} // namespace sqpc
