#include "qpovm/povm.hpp"

#include <cmath>
#include <sstream>

#include "qpovm/errors.hpp"

namespace qpovm {

std::pair<Effect, Effect> heisenberg_effects(const KrausChannel& ch,
                                             double theta, double phi) {
    const CptpDiagnosis d = validate_cptp(ch);
    if (!d.complete) {
        std::ostringstream msg;
        msg << "heisenberg evolution needs a trace-preserving channel; '"
            << ch.label() << "' has completeness residual "
            << d.completeness_residual;
        throw InvalidChannelError(msg.str());
    }
    const Observable q = observable_from_angles(theta, phi);
    const Matrix2cd plus = 0.5 * (identity2() + q.matrix);
    const Matrix2cd minus = 0.5 * (identity2() - q.matrix);
    return {Effect::from_matrix(apply_conjugate(ch, plus)),
            Effect::from_matrix(apply_conjugate(ch, minus))};
}

BiasSharpness extract_bias_sharpness(const Effect& e_plus) {
    BiasSharpness out;
    out.x = e_plus.matrix().trace().real() - 1.0;
    for (int j = 0; j < 3; ++j)
        out.m[j] = (pauli(j + 1) * e_plus.matrix()).trace().real();
    out.sharpness = out.m.norm();
    return out;
}

BiasSharpness catalog_closed_form(ChannelKind kind,
                                 const std::map<std::string, double>& params,
                                 double theta, double t) {
    const ChannelFamily family = catalog(kind, params);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    BiasSharpness out;
    switch (kind) {
        case ChannelKind::rtn: {
            const double kernel = family.kernel_at(t);
            out.x = 0.0;
            out.sharpness = std::sqrt(ct * ct + kernel * kernel * st * st);
            break;
        }
        case ChannelKind::pd: {
            const double lambda = family.params().at("lambda");
            out.x = 0.0;
            out.sharpness = std::sqrt(1.0 - lambda * st * st);
            break;
        }
        case ChannelKind::depolarizing: {
            out.x = 0.0;
            out.sharpness = 1.0 - 4.0 * family.params().at("q") / 3.0;
            break;
        }
        case ChannelKind::ad: {
            const double gamma = family.params().at("gamma");
            out.x = std::abs(gamma * ct);
            out.sharpness = std::sqrt(1.0 - gamma) * st;
            break;
        }
        case ChannelKind::ad_memory: {
            const double g = family.kernel_at(t);
            out.x = std::abs(g * g * ct - 1.0);
            out.sharpness =
                std::abs(g) * std::sqrt(st * st + g * g * ct * ct);
            break;
        }
        case ChannelKind::gad: {
            const double p = family.params().at("p");
            const double gamma = family.params().at("gamma");
            out.x = std::abs((2.0 * p - 1.0) * gamma * ct);
            out.sharpness = std::sqrt((1.0 - gamma) * (1.0 - gamma * st * st));
            break;
        }
    }
    // The closed forms carry no azimuthal dependence, so the effect
    // vector is reported along the polar plane.
    out.m = Vector3d(out.sharpness * st, 0.0, out.sharpness * ct);
    return out;
}

ClosedFormStatus closed_form_status(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::rtn:
        case ChannelKind::pd:
        case ChannelKind::depolarizing:
            return {true, true};
        case ChannelKind::ad_memory:
            // Printed bias matches the derivation only at theta = 0.
            return {false, true};
        case ChannelKind::ad:
        case ChannelKind::gad:
            return {false, false};
    }
    return {false, false};
}

std::pair<Matrix3d, Vector3d> affine_measurement_map(const Effect& e) {
    const Matrix2cd& m = e.matrix();
    Matrix3d a;
    Vector3d t;
    const Matrix2cd m_dag = m.adjoint();
    for (int i = 0; i < 3; ++i) {
        t[i] = 0.5 * (pauli(i + 1) * m * m_dag).trace().real();
        for (int j = 0; j < 3; ++j)
            a(i, j) = 0.5 * (pauli(i + 1) * m * pauli(j + 1) * m_dag).trace().real();
    }
    return {a, t};
}

AffineMeasurementMap affine_measurement_pair(const Effect& e_plus,
                                             const Effect& e_minus) {
    AffineMeasurementMap map;
    std::tie(map.a_plus, map.t_plus) = affine_measurement_map(e_plus);
    std::tie(map.a_minus, map.t_minus) = affine_measurement_map(e_minus);
    return map;
}

PostMeasurement post_measurement_state(const Effect& e,
                                       const DensityMatrix& rho) {
    if (rho.dim() != 2)
        throw DimensionError("post-measurement update is defined for qubits");
    const double probability = (e.matrix() * rho.matrix()).trace().real();
    if (probability <= 1e-14)
        throw OutcomeImpossibleError("outcome probability vanishes");
    const Matrix2cd image = e.matrix() * rho.matrix() * e.matrix().adjoint();
    const double norm = image.trace().real();
    if (norm <= 1e-14)
        throw OutcomeImpossibleError("post-measurement state has zero weight");
    return {DensityMatrix::from_matrix(image / norm), probability};
}

} // namespace qpovm
