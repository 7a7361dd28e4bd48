#include "ellcf/errors.hpp"
#include "ellcf/skewmix.hpp"

#include <cmath>

namespace ellcf::skew {

LSMixtureSpec::LSMixtureSpec(DensityGenerator base, Vector mu, Vector gamma, Matrix sigma, MixingLaw mixing)
    : base_(std::move(base)), mu_(std::move(mu)), gamma_(std::move(gamma)), sigma_(std::move(sigma)),
      mixing_(std::move(mixing))
{
    const auto n = mu_.size();
    if (n < 1) throw DomainError("location vector is empty");
    if (gamma_.size() != n) throw DomainError("gamma does not match dimension");
    if (sigma_.rows() != n || sigma_.cols() != n) throw DomainError("dispersion matrix does not match dimension");
    if (base_.dim() != n) throw DomainError("base generator dimension does not match location vector");
    if (!mu_.allFinite() || !gamma_.allFinite()) throw DomainError("location or gamma has non-finite entries");
    roots_ = matrix_roots(sigma_);
}

ComplexCF cf_lsm(const LSMixtureSpec& spec, const Vector& t, Route route, const quad::QuadratureControl& ctl)
{
    if (t.size() != spec.dim()) throw DomainError("argument dimension does not match spec");
    const bool closed = route != Route::Hankel && phi_closed(spec.base(), 1.0).has_value();
    if (route == Route::ClosedForm && !closed) {
        throw DomainError("no closed form for " + spec.base().describe() + "; use the Hankel route");
    }
    ComplexCF out;
    out.method = closed ? Method::ClosedForm : Method::Hankel;
    if (t.isZero(0.0)) return out;

    const double Q = std::max(0.0, t.dot(spec.sigma() * t));
    const double a = t.dot(spec.gamma());
    const Route r = closed ? Route::ClosedForm : Route::Hankel;
    const auto e = spec.mixing().expect([&](double v) -> std::complex<double> {
        const double p = phi(spec.base(), v * Q, r, ctl);
        return {p * std::cos(v * a), p * std::sin(v * a)};
    });
    const double phase = t.dot(spec.mu());
    out.value = e.value * std::complex<double>(std::cos(phase), std::sin(phase));
    if (e.abs_err > 0.0) out.abs_err = e.abs_err;
    return out;
}

}  // namespace ellcf::skew
