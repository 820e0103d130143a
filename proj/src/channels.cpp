#include "qpovm/channels.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include "qpovm/errors.hpp"

namespace qpovm {

namespace {

using Complex = std::complex<double>;

double max_abs_dev_from_identity(const Matrix2cd& m) {
    return (m - identity2()).cwiseAbs().maxCoeff();
}

/// Column-stacking vectorization; the Choi convention is internal, only
/// the PSD verdict leaves this file.
Eigen::Vector4cd vec(const Matrix2cd& k) {
    Eigen::Vector4cd v;
    v << k(0, 0), k(1, 0), k(0, 1), k(1, 1);
    return v;
}

double clamped_sqrt(double v) {
    return std::sqrt(std::max(0.0, v));
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, ChannelKind kind) {
    auto it = params.find(key);
    if (it == params.end()) {
        std::ostringstream msg;
        msg << to_string(kind) << " channel requires parameter '" << key << "'";
        throw SpecParseError(msg.str());
    }
    if (!std::isfinite(it->second)) {
        std::ostringstream msg;
        msg << to_string(kind) << " parameter '" << key << "' is not finite";
        throw SpecParseError(msg.str());
    }
    return it->second;
}

void require_unit_interval(double v, const std::string& key, ChannelKind kind) {
    if (v < 0.0 || v > 1.0) {
        std::ostringstream msg;
        msg << to_string(kind) << " parameter '" << key << "' must lie in [0,1], got "
            << v;
        throw SpecParseError(msg.str());
    }
}

void require_nonnegative(double v, const std::string& key, ChannelKind kind) {
    if (v < 0.0) {
        std::ostringstream msg;
        msg << to_string(kind) << " parameter '" << key << "' must be >= 0, got " << v;
        throw SpecParseError(msg.str());
    }
}

std::vector<Matrix2cd> rtn_kraus(double kernel) {
    const double w_plus = clamped_sqrt(0.5 * (1.0 + kernel));
    const double w_minus = clamped_sqrt(0.5 * (1.0 - kernel));
    return {w_plus * identity2(), w_minus * sigma_z()};
}

std::vector<Matrix2cd> pd_kraus(double lambda) {
    Matrix2cd p0 = Matrix2cd::Zero(), p1 = Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    p0(1, 1) = clamped_sqrt(1.0 - lambda);
    p1(1, 1) = clamped_sqrt(lambda);
    return {p0, p1};
}

std::vector<Matrix2cd> depolarizing_kraus(double q) {
    std::vector<Matrix2cd> ops;
    ops.push_back(clamped_sqrt(1.0 - q) * identity2());
    for (int j = 1; j <= 3; ++j) ops.push_back(clamped_sqrt(q / 3.0) * pauli(j));
    return ops;
}

// Catalog convention: sqrt(gamma) is the coherence survival amplitude,
// so gamma = 1 is the identity channel and gamma = 0 decays fully.
std::vector<Matrix2cd> ad_kraus(double gamma) {
    Matrix2cd a0 = Matrix2cd::Zero(), a1 = Matrix2cd::Zero();
    a0(0, 0) = 1.0;
    a0(1, 1) = clamped_sqrt(gamma);
    a1(0, 1) = clamped_sqrt(1.0 - gamma);
    return {a0, a1};
}

std::vector<Matrix2cd> ad_memory_kraus(double kernel) {
    Matrix2cd a0 = Matrix2cd::Zero(), a1 = Matrix2cd::Zero();
    a0(0, 0) = 1.0;
    a0(1, 1) = kernel;  // may be negative in the oscillatory regime
    a1(0, 1) = clamped_sqrt(1.0 - kernel * kernel);
    return {a0, a1};
}

std::vector<Matrix2cd> gad_kraus(double p, double gamma) {
    const double sp = clamped_sqrt(p);
    const double sq = clamped_sqrt(1.0 - p);
    Matrix2cd g0 = Matrix2cd::Zero(), g1 = Matrix2cd::Zero();
    Matrix2cd g2 = Matrix2cd::Zero(), g3 = Matrix2cd::Zero();
    g0(0, 0) = sp;
    g0(1, 1) = sp * clamped_sqrt(1.0 - gamma);
    g1(0, 1) = sp * clamped_sqrt(gamma);
    g2(0, 0) = sq * clamped_sqrt(1.0 - gamma);
    g2(1, 1) = sq;
    g3(1, 0) = sq * clamped_sqrt(gamma);
    return {g0, g1, g2, g3};
}

} // namespace

KrausChannel::KrausChannel(std::vector<Matrix2cd> ops, std::string label)
    : ops_(std::move(ops)), label_(std::move(label)) {
    if (ops_.empty())
        throw InvalidChannelError("channel needs at least one Kraus operator");
}

KrausChannel KrausChannel::conjugate() const {
    std::vector<Matrix2cd> daggered;
    daggered.reserve(ops_.size());
    for (const auto& k : ops_) daggered.push_back(k.adjoint());
    return KrausChannel(std::move(daggered), label_ + "^dag");
}

CptpDiagnosis validate_cptp(const KrausChannel& ch) {
    Matrix2cd sum_dag_k = Matrix2cd::Zero();
    Matrix2cd sum_k_dag = Matrix2cd::Zero();
    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    for (const auto& k : ch.kraus_ops()) {
        sum_dag_k += k.adjoint() * k;
        sum_k_dag += k * k.adjoint();
        const Eigen::Vector4cd v = vec(k);
        choi += v * v.adjoint();
    }
    CptpDiagnosis d;
    d.completeness_residual = max_abs_dev_from_identity(sum_dag_k);
    d.unitality_residual = max_abs_dev_from_identity(sum_k_dag);
    d.complete = d.completeness_residual <= tol::completeness;
    d.unital = d.unitality_residual <= tol::completeness;
    d.trace_preserving = d.complete;
    d.choi_min_eig = hermitian_eigenvalues(choi).minCoeff();
    return d;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != 2)
        throw DimensionError("qubit channel applied to a non-qubit state");
    const CptpDiagnosis d = validate_cptp(ch);
    if (!d.complete) {
        std::ostringstream msg;
        msg << "channel '" << ch.label() << "' fails completeness (residual "
            << d.completeness_residual << ")";
        throw InvalidChannelError(msg.str());
    }
    Matrix2cd out = Matrix2cd::Zero();
    for (const auto& k : ch.kraus_ops())
        out += k * rho.matrix() * k.adjoint();
    return DensityMatrix::from_matrix(out);
}

Matrix2cd apply_conjugate(const KrausChannel& ch, const Matrix2cd& a) {
    if (hermiticity_residual(a) > tol::hermitian)
        throw InvalidStateError("conjugate channel input must be Hermitian");
    Matrix2cd out = Matrix2cd::Zero();
    for (const auto& k : ch.kraus_ops()) out += k.adjoint() * a * k;
    return symmetrized(out);
}

bool MuellerMatrix::trace_preserving_form(double tolerance) const {
    return std::abs(mat_(0, 0) - 1.0) <= tolerance &&
           std::abs(mat_(0, 1)) <= tolerance &&
           std::abs(mat_(0, 2)) <= tolerance && std::abs(mat_(0, 3)) <= tolerance;
}

bool MuellerMatrix::unital_form(double tolerance) const {
    return std::abs(mat_(0, 0) - 1.0) <= tolerance &&
           std::abs(mat_(1, 0)) <= tolerance &&
           std::abs(mat_(2, 0)) <= tolerance && std::abs(mat_(3, 0)) <= tolerance;
}

Vector3d MuellerMatrix::apply_to_bloch(const Vector3d& r) const {
    return translation() + contraction() * r;
}

MuellerMatrix mueller_matrix(const KrausChannel& ch) {
    Matrix4d m = Matrix4d::Zero();
    for (int b = 0; b < 4; ++b) {
        Matrix2cd image = Matrix2cd::Zero();
        for (const auto& k : ch.kraus_ops())
            image += k * pauli(b) * k.adjoint();
        for (int a = 0; a < 4; ++a)
            m(a, b) = 0.5 * (pauli(a) * image).trace().real();
    }
    return MuellerMatrix(m);
}

MuellerMatrix conjugate_mueller(const MuellerMatrix& m) {
    return MuellerMatrix(m.matrix().transpose());
}

double rtn_kernel(double nu, double a_tau) {
    if (nu < 0.0) throw Error("rtn kernel: negative time");
    if (a_tau < 0.0) throw Error("rtn kernel: negative coupling");
    const double four_at = 4.0 * a_tau;
    const Complex mu = std::sqrt(Complex(four_at * four_at - 1.0, 0.0));
    Complex bracket;
    if (std::abs(mu) < 1e-9) {
        bracket = Complex(1.0 + nu, 0.0);  // limit of cos + sin/mu at mu -> 0
    } else {
        bracket = std::cos(mu * nu) + std::sin(mu * nu) / mu;
    }
    const Complex value = std::exp(-nu) * bracket;
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
        throw Error("rtn kernel: nonreal value");
    return value.real();
}

double ad_memory_kernel(double tau, double coupling_r) {
    if (tau < 0.0) throw Error("ad memory kernel: negative time");
    if (coupling_r < 0.0) throw Error("ad memory kernel: negative coupling");
    const Complex s = std::sqrt(Complex(1.0 - 2.0 * coupling_r, 0.0));
    const double half_tau = 0.5 * tau;
    Complex bracket;
    if (std::abs(s) < 1e-9) {
        bracket = Complex(1.0 + half_tau, 0.0);
    } else {
        bracket = std::cosh(s * half_tau) + std::sinh(s * half_tau) / s;
    }
    const Complex value = std::exp(-half_tau) * bracket;
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
        throw Error("ad memory kernel: nonreal value");
    return value.real();
}

std::string to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::rtn: return "rtn";
        case ChannelKind::pd: return "pd";
        case ChannelKind::depolarizing: return "depolarizing";
        case ChannelKind::ad: return "ad";
        case ChannelKind::ad_memory: return "ad_memory";
        case ChannelKind::gad: return "gad";
    }
    return "unknown";
}

ChannelKind channel_kind_from_string(const std::string& name) {
    if (name == "rtn") return ChannelKind::rtn;
    if (name == "pd") return ChannelKind::pd;
    if (name == "depolarizing") return ChannelKind::depolarizing;
    if (name == "ad") return ChannelKind::ad;
    if (name == "ad_memory") return ChannelKind::ad_memory;
    if (name == "gad") return ChannelKind::gad;
    throw SpecParseError("unknown channel kind '" + name + "'");
}

ChannelFamily::ChannelFamily(ChannelKind kind,
                             std::map<std::string, double> params)
    : kind_(kind), params_(std::move(params)) {}

double ChannelFamily::kernel_at(double t) const {
    switch (kind_) {
        case ChannelKind::rtn: {
            const double rate = params_.at("gamma_rate");
            return rtn_kernel(rate * t, params_.at("a") / (2.0 * rate));
        }
        case ChannelKind::ad_memory:
            return ad_memory_kernel(t, params_.at("R"));
        default:
            return 1.0;
    }
}

KrausChannel ChannelFamily::channel_at(double t) const {
    switch (kind_) {
        case ChannelKind::rtn:
            return KrausChannel(rtn_kraus(kernel_at(t)), "rtn");
        case ChannelKind::pd:
            return KrausChannel(pd_kraus(params_.at("lambda")), "pd");
        case ChannelKind::depolarizing:
            return KrausChannel(depolarizing_kraus(params_.at("q")), "depolarizing");
        case ChannelKind::ad:
            return KrausChannel(ad_kraus(params_.at("gamma")), "ad");
        case ChannelKind::ad_memory:
            return KrausChannel(ad_memory_kraus(kernel_at(t)), "ad_memory");
        case ChannelKind::gad:
            return KrausChannel(gad_kraus(params_.at("p"), params_.at("gamma")),
                                "gad");
    }
    throw InvalidChannelError("unhandled channel kind");
}

ChannelFamily catalog(ChannelKind kind,
                      const std::map<std::string, double>& params) {
    std::map<std::string, double> accepted;
    switch (kind) {
        case ChannelKind::rtn: {
            const double a = require_param(params, "a", kind);
            const double rate = require_param(params, "gamma_rate", kind);
            require_nonnegative(a, "a", kind);
            if (rate <= 0.0)
                throw SpecParseError("rtn parameter 'gamma_rate' must be > 0");
            accepted = {{"a", a}, {"gamma_rate", rate}};
            break;
        }
        case ChannelKind::pd: {
            const double lambda = require_param(params, "lambda", kind);
            require_unit_interval(lambda, "lambda", kind);
            accepted = {{"lambda", lambda}};
            break;
        }
        case ChannelKind::depolarizing: {
            const double q = require_param(params, "q", kind);
            require_unit_interval(q, "q", kind);
            accepted = {{"q", q}};
            break;
        }
        case ChannelKind::ad: {
            const double gamma = require_param(params, "gamma", kind);
            require_unit_interval(gamma, "gamma", kind);
            accepted = {{"gamma", gamma}};
            break;
        }
        case ChannelKind::ad_memory: {
            const double r = require_param(params, "R", kind);
            require_nonnegative(r, "R", kind);
            accepted = {{"R", r}};
            break;
        }
        case ChannelKind::gad: {
            const double p = require_param(params, "p", kind);
            const double gamma = require_param(params, "gamma", kind);
            require_unit_interval(p, "p", kind);
            require_unit_interval(gamma, "gamma", kind);
            accepted = {{"p", p}, {"gamma", gamma}};
            break;
        }
    }
    if (params.size() != accepted.size()) {
        for (const auto& [key, value] : params) {
            (void)value;
            if (accepted.find(key) == accepted.end())
                throw SpecParseError("unknown parameter '" + key + "' for " +
                                     to_string(kind) + " channel");
        }
    }
    return ChannelFamily(kind, std::move(accepted));
}

KrausChannel raw_catalog_channel(ChannelKind kind,
                                   const std::map<std::string, double>& params,
                                   double t) {
    const ChannelFamily family = catalog(kind, params);
    if (kind != ChannelKind::pd) return family.channel_at(t);
    // The widely quoted raw pair has P1 = diag(1, sqrt(lambda)), which with
    // P0 sums to diag(2, 1): kept verbatim so the validator can reject it.
    const double lambda = family.params().at("lambda");
    Matrix2cd p0 = Matrix2cd::Zero(), p1 = Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    p0(1, 1) = clamped_sqrt(1.0 - lambda);
    p1(0, 0) = 1.0;
    p1(1, 1) = clamped_sqrt(lambda);
    return KrausChannel({p0, p1}, "pd(raw)");
}

} // namespace qpovm
