#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpovm/linalg.hpp"
#include "qpovm/states.hpp"

namespace qpovm {

/// Ordered list of 2x2 Kraus operators. Construction only checks the
/// list is nonempty; completeness and complete positivity are checked
/// by validate_cptp (which must be able to report a broken channel)
/// and enforced by apply().
class KrausChannel {
public:
    KrausChannel(std::vector<Matrix2cd> ops, std::string label);

    const std::vector<Matrix2cd>& kraus_ops() const { return ops_; }
    const std::string& label() const { return label_; }
    int rank() const { return static_cast<int>(ops_.size()); }

    /// Heisenberg-picture partner: the daggered operator list.
    KrausChannel conjugate() const;

private:
    std::vector<Matrix2cd> ops_;
    std::string label_;
};

struct CptpDiagnosis {
    bool complete = false;          // sum K^dag K = 1 within tolerance
    bool unital = false;            // sum K K^dag = 1 within tolerance
    bool trace_preserving = false;  // synonym of complete
    double choi_min_eig = 0.0;
    double completeness_residual = 0.0;
    double unitality_residual = 0.0;
};

CptpDiagnosis validate_cptp(const KrausChannel& ch);

/// Schroedinger picture: rho -> sum K rho K^dag. Throws if the channel
/// fails the completeness check.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Heisenberg picture: A -> sum K^dag A K for Hermitian A. The image of
/// an observable need not be positive, so this returns a plain matrix.
Matrix2cd apply_conjugate(const KrausChannel& ch, const Matrix2cd& a);

/// 4x4 real matrix of the channel's affine action on (1, r): block form
/// [[1, 0], [t, L]] for trace-preserving channels, transposed for their
/// conjugates.
class MuellerMatrix {
public:
    explicit MuellerMatrix(Matrix4d m) : mat_(std::move(m)) {}

    const Matrix4d& matrix() const { return mat_; }
    Vector3d translation() const { return mat_.block<3, 1>(1, 0); }
    Matrix3d contraction() const { return mat_.block<3, 3>(1, 1); }

    bool trace_preserving_form(double tolerance = tol::completeness) const;
    bool unital_form(double tolerance = tol::completeness) const;

    /// Affine action on a Bloch vector: t + L r.
    Vector3d apply_to_bloch(const Vector3d& r) const;

private:
    Matrix4d mat_;
};

/// M[a][b] = (1/2) Tr(sigma_a E[sigma_b]) with sigma_0 = identity.
MuellerMatrix mueller_matrix(const KrausChannel& ch);

/// Transpose; the Mueller matrix of the conjugate channel.
MuellerMatrix conjugate_mueller(const MuellerMatrix& m);

/// Random-telegraph-noise memory kernel
///   L(nu) = e^{-nu} [cos(mu nu) + sin(mu nu)/mu],  mu = sqrt((4 a_tau)^2 - 1),
/// evaluated through a single complex formula so the underdamped
/// (oscillatory), overdamped (hyperbolic) and critical mu -> 0 regimes
/// all come out of one expression.
double rtn_kernel(double nu, double a_tau);

/// Damped amplitude-damping kernel
///   G(tau) = e^{-tau/2} [cosh(s tau/2) + sinh(s tau/2)/s],  s = sqrt(1 - 2R),
/// complex-safe across the 2R > 1 oscillatory regime.
double ad_memory_kernel(double tau, double coupling_r);

enum class ChannelKind { rtn, pd, depolarizing, ad, ad_memory, gad };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

/// Time-parametrized family from the channel catalog. Stateless: each
/// channel_at(t) call rebuilds the Kraus list, so concurrent evaluation
/// at different times is safe.
class ChannelFamily {
public:
    ChannelFamily(ChannelKind kind, std::map<std::string, double> params);

    ChannelKind kind() const { return kind_; }
    const std::map<std::string, double>& params() const { return params_; }

    KrausChannel channel_at(double t) const;

    /// Scalar memory kernel at time t (1.0 for the memoryless channels).
    double kernel_at(double t) const;

private:
    ChannelKind kind_;
    std::map<std::string, double> params_;
};

/// Validated catalog entry point; throws SpecParseError on unknown or
/// out-of-range parameters.
ChannelFamily catalog(ChannelKind kind,
                      const std::map<std::string, double>& params);

/// The catalog operators without corrections. Differs from catalog()
/// only for phase damping, whose commonly quoted raw pair is not trace
/// preserving.
KrausChannel raw_catalog_channel(ChannelKind kind,
                                 const std::map<std::string, double>& params,
                                 double t);

} // namespace qpovm
