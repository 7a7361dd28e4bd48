#include "ellcf/errors.hpp"
#include "ellcf/specfun.hpp"

#include <cmath>
#include <string>

namespace ellcf::specfun {
namespace {

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x)
{
    if (!std::isfinite(x) || is_pole(x)) {
        throw DomainError("gamma_fn: pole or non-finite argument " + std::to_string(x));
    }
    return std::tgamma(x);
}

double log_gamma(double x)
{
    if (!std::isfinite(x) || is_pole(x)) {
        throw DomainError("log_gamma: pole or non-finite argument " + std::to_string(x));
    }
    return std::lgamma(x);
}

double pochhammer(double a, int k)
{
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
        p *= a + i;
    }
    return p;
}

}  // namespace ellcf::specfun
