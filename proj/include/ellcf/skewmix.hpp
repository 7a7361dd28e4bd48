#pragma once

#include "ellcf/elliptical.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace ellcf::skew {

namespace mixing {

struct Degenerate {
    double v0 = 1.0;
};
struct FiniteDiscrete {
    std::vector<double> points;
    std::vector<double> weights;
};
// Density b^a / Gamma(a) x^{-a-1} exp(-b/x) on (0, inf).
struct InverseGamma {
    double shape = 1.0;
    double scale = 1.0;
};
// A density h on [lo, hi), normalised to 1.
struct CustomDensity {
    std::function<double(double)> h;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double scale = 1.0;  // length scale of the bulk, for quadrature and tabulation
};

}  // namespace mixing

using MixingKind = std::variant<mixing::Degenerate, mixing::FiniteDiscrete, mixing::InverseGamma, mixing::CustomDensity>;

struct Expectation {
    std::complex<double> value;
    double abs_err = 0.0;
};

/// Law of a nonnegative mixing variable together with a weight function k
/// (identity unless given).
///
/// Discrete laws are summed exactly. Continuous laws are integrated with
/// adaptive G7-K15 on a semi-infinite map and abs_tol 1e-8; the result is
/// divided by the quadrature's own mass so the expectation of a bounded
/// function never leaves the bound.
class MixingLaw {
public:
    explicit MixingLaw(MixingKind kind, std::function<double(double)> weight = {});

    static MixingLaw degenerate(double v0);
    static MixingLaw finite_discrete(std::vector<double> points, std::vector<double> weights);
    static MixingLaw inverse_gamma(double shape, double scale);
    static MixingLaw custom_density(std::function<double(double)> h, double lo, double hi, double scale = 1.0);

    MixingLaw with_weight(std::function<double(double)> weight) const;

    const MixingKind& kind() const { return kind_; }
    bool has_weight() const { return static_cast<bool>(weight_); }
    double weight(double v) const { return weight_ ? weight_(v) : v; }
    /// Smallest point of the support.
    double lower_bound() const;

    /// E[f(V)].
    Expectation expect(const std::function<std::complex<double>(double)>& f) const;

    std::string describe() const;

private:
    MixingKind kind_;
    std::function<double(double)> weight_;
};

/// X = mu + V gamma + sqrt(V) Sigma^{1/2} Z with Z ~ ELL_n(0, I, g).
class LSMixtureSpec {
public:
    LSMixtureSpec(DensityGenerator base, Vector mu, Vector gamma, Matrix sigma, MixingLaw mixing);

    int dim() const { return static_cast<int>(mu_.size()); }
    const DensityGenerator& base() const { return base_; }
    const Vector& mu() const { return mu_; }
    const Vector& gamma() const { return gamma_; }
    const Matrix& sigma() const { return sigma_; }
    const MatrixRoots& roots() const { return roots_; }
    const MixingLaw& mixing() const { return mixing_; }

private:
    DensityGenerator base_;
    Vector mu_;
    Vector gamma_;
    Matrix sigma_;
    MatrixRoots roots_;
    MixingLaw mixing_;
};

/// e^{i t'mu} E_V[e^{i V t'gamma} phi(V t'Sigma t)].
ComplexCF cf_lsm(const LSMixtureSpec& spec, const Vector& t, Route route = Route::Auto,
                 const quad::QuadratureControl& ctl = {});

/// Density of W in the representation X = W V^{(n)} (V^{(n)} uniform in
/// the unit ball). Requires g' and star unimodality.
double smu_density(const DensityGenerator& g, double w);

/// Throws DomainError unless g has a derivative that is <= 0 everywhere and
/// not identically zero on a probe grid over the support.
void check_star_unimodal(const DensityGenerator& g);

/// The SMU characteristic generator at u = |t|, from the Bessel integral of g'.
quad::QuadResult phi_smu(const DensityGenerator& g, double u, const quad::QuadratureControl& ctl = {});

/// Characteristic function of W V^{(n)} at t.
ComplexCF cf_smu(const DensityGenerator& g, const Vector& t, const quad::QuadratureControl& ctl = {});

using KFunction = std::function<std::complex<double>(const Vector&)>;

/// Generalized skew-elliptical law, CF 2 e^{i t'mu} psi(t'Sigma t) k_n(t).
///
/// k_n is stored already composed with Sigma^{1/2}; antisymmetry
/// k_n(t) + k_n(-t) = 1 is probed on random points at construction.
class GSESpec {
public:
    /// k_n(t) = k(Sigma^{1/2} t).
    static GSESpec from_k(Vector mu, Matrix sigma, CharacteristicGenerator psi, const KFunction& k);
    /// k_n supplied directly.
    static GSESpec from_kn(Vector mu, Matrix sigma, CharacteristicGenerator psi, KFunction kn);

    int dim() const { return static_cast<int>(mu_.size()); }
    const Vector& mu() const { return mu_; }
    const Matrix& sigma() const { return sigma_; }
    const MatrixRoots& roots() const { return roots_; }
    double psi(double Q) const { return psi_(Q); }
    const CharacteristicGenerator& psi_fn() const { return psi_; }
    std::complex<double> kn(const Vector& t) const { return kn_(t); }
    const KFunction& kn_fn() const { return kn_; }

private:
    GSESpec(Vector mu, Matrix sigma, CharacteristicGenerator psi, KFunction kn);

    Vector mu_;
    Matrix sigma_;
    MatrixRoots roots_;
    CharacteristicGenerator psi_;
    KFunction kn_;
};

ComplexCF cf_gse(const GSESpec& spec, const Vector& t);

/// tau_n(t) = 1 - 2 k_n(-t), given the value k_n(-t).
std::complex<double> tau_from_k(std::complex<double> kn_at_minus_t);

/// The law of a + B Y for Y with the given spec; B is m x n of full row rank.
GSESpec gse_affine(const GSESpec& spec, const Vector& a, const Matrix& B);

enum class Parametrization {
    // Phi(i alpha' Sigma^{1/2} t / sqrt(1 + alpha'alpha))
    HalfRoot,
    // Phi(i alpha' Sigma t / sqrt(1 + alpha' Sigma alpha))
    FullSigma,
};

std::string to_string(Parametrization p);

class SkewNormalSpec {
public:
    SkewNormalSpec(Vector mu, Matrix sigma, Vector alpha, Parametrization p);

    int dim() const { return static_cast<int>(mu_.size()); }
    const Vector& mu() const { return mu_; }
    const Matrix& sigma() const { return sigma_; }
    const Vector& alpha() const { return alpha_; }
    Parametrization parametrization() const { return param_; }
    const MatrixRoots& roots() const { return roots_; }

    /// The vector a with k(s) = Phi(i a's / sqrt(1 + a'a)) acting on s = Sigma^{1/2} t.
    const Vector& alpha_tilde() const { return alpha_tilde_; }
    /// delta = a / sqrt(1 + a'a).
    Vector delta() const;
    /// The real number y with c_sn(t) = 2 e^{-Q/2} Phi(i y).
    double skew_argument(const Vector& t) const;

private:
    Vector mu_;
    Matrix sigma_;
    Vector alpha_;
    Parametrization param_;
    MatrixRoots roots_;
    Vector alpha_tilde_;
};

/// k(s) = Phi(i a's / sqrt(1 + a'a)).
KFunction skew_normal_k(const Vector& alpha_tilde);

/// The skew-normal law as a GSE spec.
GSESpec skew_normal_as_gse(const SkewNormalSpec& spec);

ComplexCF cf_skew_normal(const SkewNormalSpec& spec, const Vector& t);

/// Scale mixture of skew-normals: Y = mu + sqrt(k(xi)) X0 with
/// X0 ~ SN(0, Sigma, alpha) and xi drawn from the mixing law.
struct SMSNSpec {
    SkewNormalSpec base;
    MixingLaw mixing;
};

/// e^{i t'mu} E[c_sn(sqrt(k(xi)) t)] with c_sn taken at zero location.
ComplexCF cf_smsn(const SMSNSpec& spec, const Vector& t);

/// The (psi, k_n) factorisation of the SMSN characteristic function:
/// psi = E[exp(-k Q/2)], k_n = 1/2 + E[exp(-k Q/2)(Phi(i y sqrt k) - 1/2)] / psi.
struct SMSNSplit {
    double psi = 1.0;
    std::complex<double> kn{0.5, 0.0};
    // e^{i t'mu} 2 psi k_n
    std::complex<double> assembled{1.0, 0.0};
};

SMSNSplit smsn_split(const SMSNSpec& spec, const Vector& t);

}  // namespace ellcf::skew
