#pragma once

#include <functional>
#include <stdexcept>

namespace cipc::specfun {

// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

// log(1+r)/r with the removable singularity at r = 0 filled in.
double log1p_over(double r);

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;

  void validate() const;  // throws std::invalid_argument on a bad spec
};

// Raised when an iterative evaluation stops before reaching the requested
// tolerance.  Carries the best estimate and the achieved error bound.
struct ToleranceError : std::runtime_error {
  double best_estimate;
  double error_bound;
  ToleranceError(const std::string& what, double estimate, double error);
};

//                 inf
//                  -     -t
//                 | |   e
//  Ei(x) = -     -|-   ---  dt ,   x != 0.
//               | |     t
//                -
//                -x
//
// Relative error <= 1e-12 for |x| in [1e-6, 700].  Throws std::domain_error
// at x = 0 and std::overflow_error once e^x/x exceeds double range.
double ei(double x);

// e^x E1(x) for x > 0, evaluated without forming e^{-x} (stable for large x).
double e1_scaled(double x);

// 3F3([1,1,1],[2,2,2]; z) = sum_k z^k / ((k+1)^3 k!)  for z > 0.
// Only this parameter set is needed by the expected-min-error closed form.
double hyper3f3_unit_params(double z, int max_terms = 10000);

// Integral of f over [lower, inf).  The domain is mapped to (0,1] via
// t = 1/(1 + x - lower) and integrated with adaptive Gauss-Kronrod 7/15
// subdivision.  Throws ToleranceError when the error estimate cannot be
// brought below max(abs_tol, rel_tol*|I|) within max_subdivisions.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower,
                               const QuadratureSpec& spec = {});

}  // namespace cipc::specfun
