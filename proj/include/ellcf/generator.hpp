#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>

namespace ellcf {

enum class Family { Normal, UniformBall, GeneralizedT, PearsonII, PearsonVII, Kotz, Bessel, Custom };

std::string to_string(Family f);

namespace family {

struct Normal {};
struct UniformBall {};
// (1 + z/s)^{-(n+m)/2}; m = s gives the multivariate t.
struct GeneralizedT {
    double s = 1.0;
    double m = 1.0;
};
// (1 - z)^m on [0, 1].
struct PearsonII {
    double m = 0.0;
};
// (1 + z/s)^{-N}.
struct PearsonVII {
    double N = 1.0;
    double s = 1.0;
};
// z^{N-1} exp(-r z^s).
struct Kotz {
    double N = 1.0;
    double r = 0.5;
    double s = 1.0;
};
// (sqrt(z)/beta)^a K_a(sqrt(z)/beta).
struct Bessel {
    double a = 0.0;
    double beta = 1.0;
};
// User-supplied generator. support_radius, scale and tail_power are hints
// for the quadrature engine; tail_power p means g(z) ~ C z^{-p} as z -> inf.
struct Custom {
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    double support_radius = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    std::optional<double> tail_power;
    std::string name = "custom";
};

}  // namespace family

using FamilyParams = std::variant<family::Normal, family::UniformBall, family::GeneralizedT, family::PearsonII,
                                  family::PearsonVII, family::Kotz, family::Bessel, family::Custom>;

/// Density generator g of an elliptical law, bound to the dimension n its
/// parameters were validated for.
///
/// Construction checks the family's parameter constraints and that the
/// moment integral int_0^inf z^{n/2-1} g(z) dz is finite; the value of that
/// integral is cached.
class DensityGenerator {
public:
    static DensityGenerator normal(int n);
    static DensityGenerator uniform_ball(int n);
    static DensityGenerator generalized_t(int n, double s, double m);
    static DensityGenerator cauchy(int n) { return generalized_t(n, 1.0, 1.0); }
    static DensityGenerator pearson_ii(int n, double m);
    static DensityGenerator pearson_vii(int n, double N, double s);
    static DensityGenerator kotz(int n, double N, double r, double s);
    static DensityGenerator bessel(int n, double a, double beta);
    static DensityGenerator custom(int n, family::Custom def);

    int dim() const { return n_; }
    Family family() const;
    const FamilyParams& params() const { return params_; }

    /// g(z) for z >= 0; zero outside the support.
    double operator()(double z) const;
    bool has_derivative() const;
    /// g'(z); throws DomainError when no derivative is available.
    double derivative(double z) const;

    /// Radius (in r = sqrt(z)) beyond which g vanishes.
    double support_radius() const;
    /// Radial length scale where the bulk of h_R lives.
    double scale() const;
    /// Exponent p with g(z) ~ C z^{-p}, for power-law tails.
    std::optional<double> tail_power() const;

    /// int_0^inf z^{n/2-1} g(z) dz.
    double moment_integral_value() const { return moment_; }

    std::string describe() const;

private:
    DensityGenerator(int n, FamilyParams p);
    void init_moment();

    int n_;
    FamilyParams params_;
    double moment_ = 0.0;
};

}  // namespace ellcf
