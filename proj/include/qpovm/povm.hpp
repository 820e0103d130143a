#pragma once

#include <utility>

#include "qpovm/channels.hpp"
#include "qpovm/states.hpp"

namespace qpovm {

/// Bias x and effect vector m of a dichotomic POVM element
/// E+ = (1/2)[(1 + x) I + m.sigma]; sharpness = |m|.
struct BiasSharpness {
    double x = 0.0;
    Vector3d m{0.0, 0.0, 0.0};
    double sharpness = 0.0;
};

/// Affine action of an effect pair on Bloch vectors: the unnormalized
/// post-measurement image of r is A r + t per outcome.
struct AffineMeasurementMap {
    Matrix3d a_plus;
    Matrix3d a_minus;
    Vector3d t_plus;
    Vector3d t_minus;
};

/// Evolve the eigenprojectors of Q(theta, phi) through the conjugate
/// channel: E+- = sum K^dag P+- K. Requires a trace-preserving channel
/// so the pair still sums to identity.
std::pair<Effect, Effect> heisenberg_effects(const KrausChannel& ch,
                                             double theta, double phi);

/// x = Tr(E+) - 1, m_j = Tr(sigma_j E+).
BiasSharpness extract_bias_sharpness(const Effect& e_plus);

/// Printed closed-form bias/sharpness for a catalog channel at time t.
/// For the AD and GAD rows the published entries disagree with the
/// conjugate-Kraus derivation; closed_form_status() says which entries are
/// reliable enough to assert against.
BiasSharpness catalog_closed_form(ChannelKind kind,
                                 const std::map<std::string, double>& params,
                                 double theta, double t);

struct ClosedFormStatus {
    bool bias_asserted = true;
    bool sharpness_asserted = true;
};

ClosedFormStatus closed_form_status(ChannelKind kind);

/// A_ij = (1/2) Tr(sigma_i E sigma_j E^dag), T_i = (1/2) Tr(sigma_i E E^dag).
std::pair<Matrix3d, Vector3d> affine_measurement_map(const Effect& e);

AffineMeasurementMap affine_measurement_pair(const Effect& e_plus,
                                             const Effect& e_minus);

struct PostMeasurement {
    DensityMatrix state;
    double probability = 0.0;
};

/// Normalized post-measurement state E rho E^dag / Tr(E rho E^dag) with
/// outcome probability Tr(E rho). Throws OutcomeImpossibleError when the
/// probability vanishes.
PostMeasurement post_measurement_state(const Effect& e,
                                       const DensityMatrix& rho);

} // namespace qpovm
