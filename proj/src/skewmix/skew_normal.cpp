#include "ellcf/errors.hpp"
#include "ellcf/skewmix.hpp"
#include "ellcf/specfun.hpp"

#include <cmath>

namespace ellcf::skew {
namespace {

std::complex<double> unit_phase(double phase) { return {std::cos(phase), std::sin(phase)}; }

// c_sn at zero location: e^{-Q/2} + 2 e^{-Q/2} (Phi(iy) - 1/2).
std::complex<double> centered_skew_normal(double Q, double y)
{
    const auto p = specfun::phi_imag(y);
    return std::exp(-0.5 * Q) + 2.0 * p.centered_times_exp(-0.5 * Q);
}

}  // namespace

std::string to_string(Parametrization p)
{
    return p == Parametrization::HalfRoot ? "half_root" : "full_sigma";
}

SkewNormalSpec::SkewNormalSpec(Vector mu, Matrix sigma, Vector alpha, Parametrization p)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), alpha_(std::move(alpha)), param_(p)
{
    const auto n = mu_.size();
    if (n < 1) throw DomainError("location vector is empty");
    if (alpha_.size() != n) throw DomainError("alpha does not match dimension");
    if (sigma_.rows() != n || sigma_.cols() != n) throw DomainError("dispersion matrix does not match dimension");
    if (!mu_.allFinite() || !alpha_.allFinite()) throw DomainError("location or alpha has non-finite entries");
    roots_ = matrix_roots(sigma_);
    alpha_tilde_ = p == Parametrization::HalfRoot ? alpha_ : Vector(roots_.symmetric_root * alpha_);
}

Vector SkewNormalSpec::delta() const { return alpha_tilde_ / std::sqrt(1.0 + alpha_tilde_.squaredNorm()); }

double SkewNormalSpec::skew_argument(const Vector& t) const
{
    return alpha_tilde_.dot(roots_.symmetric_root * t) / std::sqrt(1.0 + alpha_tilde_.squaredNorm());
}

KFunction skew_normal_k(const Vector& alpha_tilde)
{
    const double c = 1.0 / std::sqrt(1.0 + alpha_tilde.squaredNorm());
    return [a = alpha_tilde, c](const Vector& s) { return specfun::phi_imag(c * a.dot(s)).value(); };
}

GSESpec skew_normal_as_gse(const SkewNormalSpec& spec)
{
    return GSESpec::from_k(spec.mu(), spec.sigma(), [](double Q) { return std::exp(-0.5 * Q); },
                           skew_normal_k(spec.alpha_tilde()));
}

ComplexCF cf_skew_normal(const SkewNormalSpec& spec, const Vector& t)
{
    if (t.size() != spec.dim()) throw DomainError("argument dimension does not match spec");
    ComplexCF out;
    out.method = Method::ClosedForm;
    if (t.isZero(0.0)) return out;
    const double Q = std::max(0.0, t.dot(spec.sigma() * t));
    out.value = unit_phase(t.dot(spec.mu())) * centered_skew_normal(Q, spec.skew_argument(t));
    return out;
}

ComplexCF cf_smsn(const SMSNSpec& spec, const Vector& t)
{
    const auto& sn = spec.base;
    if (t.size() != sn.dim()) throw DomainError("argument dimension does not match spec");
    ComplexCF out;
    out.method = Method::ClosedForm;
    if (t.isZero(0.0)) return out;
    const double Q = std::max(0.0, t.dot(sn.sigma() * t));
    const double y = sn.skew_argument(t);
    const auto e = spec.mixing.expect([&](double xi) {
        const double k = spec.mixing.weight(xi);
        return centered_skew_normal(k * Q, std::sqrt(k) * y);
    });
    out.value = unit_phase(t.dot(sn.mu())) * e.value;
    if (e.abs_err > 0.0) out.abs_err = e.abs_err;
    return out;
}

SMSNSplit smsn_split(const SMSNSpec& spec, const Vector& t)
{
    const auto& sn = spec.base;
    if (t.size() != sn.dim()) throw DomainError("argument dimension does not match spec");
    SMSNSplit out;
    if (t.isZero(0.0)) return out;
    const double Q = std::max(0.0, t.dot(sn.sigma() * t));
    const double y = sn.skew_argument(t);
    out.psi = spec.mixing.expect([&](double xi) -> std::complex<double> {
                              return std::exp(-0.5 * spec.mixing.weight(xi) * Q);
                          })
                  .value.real();
    const auto centered = spec.mixing.expect([&](double xi) {
        const double k = spec.mixing.weight(xi);
        return specfun::phi_imag(std::sqrt(k) * y).centered_times_exp(-0.5 * k * Q);
    });
    out.kn = out.psi > 0.0 ? 0.5 + centered.value / out.psi : std::complex<double>(0.5, 0.0);
    out.assembled = unit_phase(t.dot(sn.mu())) * 2.0 * out.psi * out.kn;
    return out;
}

}  // namespace ellcf::skew
