#include "ellcf/errors.hpp"
#include "ellcf/skewmix.hpp"

#include <cmath>
#include <random>

namespace ellcf::skew {

GSESpec::GSESpec(Vector mu, Matrix sigma, CharacteristicGenerator psi, KFunction kn)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), psi_(std::move(psi)), kn_(std::move(kn))
{
    const auto n = mu_.size();
    if (n < 1) throw DomainError("location vector is empty");
    if (sigma_.rows() != n || sigma_.cols() != n) throw DomainError("dispersion matrix does not match dimension");
    if (!psi_) throw DomainError("GSE spec needs a characteristic generator");
    if (!kn_) throw DomainError("GSE spec needs a k-function");
    roots_ = matrix_roots(sigma_);

    const Vector zero = Vector::Zero(n);
    if (std::abs(kn_(zero) - 0.5) > 1e-12) throw DomainError("k-function must equal 1/2 at the origin");
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> z;
    for (double scale : {0.3, 1.0, 3.0}) {
        for (int i = 0; i < 8; ++i) {
            Vector t(n);
            for (Eigen::Index j = 0; j < n; ++j) t(j) = scale * z(rng);
            const auto kp = kn_(t);
            const auto km = kn_(-t);
            if (!std::isfinite(std::abs(kp)) || !std::isfinite(std::abs(km))) continue;
            if (std::abs(kp + km - 1.0) > 1e-12 * (1.0 + std::abs(kp) + std::abs(km))) {
                throw DomainError("k-function violates k(t) + k(-t) = 1");
            }
        }
    }
}

GSESpec GSESpec::from_k(Vector mu, Matrix sigma, CharacteristicGenerator psi, const KFunction& k)
{
    if (!k) throw DomainError("GSE spec needs a k-function");
    validate_dispersion(sigma, "dispersion matrix");
    const Matrix root = matrix_roots(sigma).symmetric_root;
    KFunction kn = [k, root](const Vector& t) { return k(root * t); };
    return GSESpec(std::move(mu), std::move(sigma), std::move(psi), std::move(kn));
}

GSESpec GSESpec::from_kn(Vector mu, Matrix sigma, CharacteristicGenerator psi, KFunction kn)
{
    return GSESpec(std::move(mu), std::move(sigma), std::move(psi), std::move(kn));
}

ComplexCF cf_gse(const GSESpec& spec, const Vector& t)
{
    if (t.size() != spec.dim()) throw DomainError("argument dimension does not match spec");
    ComplexCF out;
    out.method = Method::ClosedForm;
    if (t.isZero(0.0)) return out;
    const double Q = std::max(0.0, t.dot(spec.sigma() * t));
    const double phase = t.dot(spec.mu());
    out.value = 2.0 * std::complex<double>(std::cos(phase), std::sin(phase)) * spec.psi(Q) * spec.kn(t);
    return out;
}

std::complex<double> tau_from_k(std::complex<double> kn_at_minus_t) { return 1.0 - 2.0 * kn_at_minus_t; }

GSESpec gse_affine(const GSESpec& spec, const Vector& a, const Matrix& B)
{
    const auto n = spec.dim();
    if (B.cols() != n) throw DomainError("affine map: B must have as many columns as the spec dimension");
    if (B.rows() < 1 || B.rows() > n) throw DomainError("affine map: B must have between 1 and n rows");
    if (a.size() != B.rows()) throw DomainError("affine map: a must have as many entries as B has rows");
    if (numerical_rank(B) != B.rows()) throw DomainError("affine map: B must have full row rank");
    Vector mu = a + B * spec.mu();
    Matrix sigma = B * spec.sigma() * B.transpose();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    const Matrix Bt = B.transpose();
    KFunction kn = [inner = spec.kn_fn(), Bt](const Vector& t) { return inner(Bt * t); };
    return GSESpec::from_kn(std::move(mu), std::move(sigma), spec.psi_fn(), std::move(kn));
}

}  // namespace ellcf::skew
