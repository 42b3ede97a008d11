#include "cipc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace cipc::specfun {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

ToleranceError::ToleranceError(const std::string& what, double estimate, double error)
    : std::runtime_error(what), best_estimate(estimate), error_bound(error) {}

double log1p_over(double r) {
  if (std::abs(r) < 1e-4) {
    return 1.0 - r * (1.0 / 2.0 - r * (1.0 / 3.0 - r * (1.0 / 4.0 - r / 5.0)));
  }
  return std::log1p(r) / r;
}

namespace {

// E1(t) = -gamma - ln t + sum_{k>=1} (-1)^{k+1} t^k / (k k!),  0 < t <= 1.
double e1_series(double t) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 64; ++k) {
    term *= -t / k;
    const double add = -term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(t) + sum;
}

// e^t E1(t) via the continued fraction
//   E1(t) = e^{-t} / (t + 1 - 1/(t + 3 - 4/(t + 5 - 9/(...))))
// evaluated with the modified Lentz algorithm.  Good for t >= 1.
double e1_cf_scaled(double t) {
  const double tiny = 1e-300;
  double b = t + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int j = 1; j < 400; ++j) {
    const double a = -static_cast<double>(j) * j;
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double e1_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("e1_scaled: requires x > 0");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_cf_scaled(x);
}

double ei(double x) {
  if (x == 0.0 || std::isnan(x)) throw std::domain_error("ei: x must be nonzero");
  if (x < 0.0) {
    const double t = -x;
    if (t <= 1.0) return -e1_series(t);
    return -std::exp(-t) * e1_cf_scaled(t);
  }
  if (x <= 40.0) {
    // Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k k!); all terms positive.
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 160; ++k) {
      term *= x / k;
      const double add = term / k;
      sum += add;
      if (add < 1e-18 * sum) break;
    }
    return euler_gamma + std::log(x) + sum;
  }
  // Asymptotic series Ei(x) ~ (e^x/x) sum_k k!/x^k, truncated at its
  // smallest term.  e^x/x is formed as exp(x - ln x) to delay overflow.
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * k / x;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  const double value = std::exp(x - std::log(x)) * sum;
  if (!std::isfinite(value)) throw std::overflow_error("ei: overflow for large x");
  return value;
}

double hyper3f3_unit_params(double z, int max_terms) {
  if (!(z > 0.0)) throw std::domain_error("hyper3f3_unit_params: requires z > 0");
  if (z > 700.0) throw std::overflow_error("hyper3f3_unit_params: z beyond series range");
  double sum = 1.0;  // k = 0 term
  double pow_term = 1.0;
  int quiet = 0;
  for (int k = 1; k <= max_terms; ++k) {
    pow_term *= z / k;
    const double kp1 = k + 1.0;
    const double add = pow_term / (kp1 * kp1 * kp1);
    sum += add;
    if (add < 1e-16 * sum) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw ToleranceError("hyper3f3_unit_params: series did not converge", sum,
                       pow_term);
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights mapped to [0,1].
// Odd-indexed abscissae carry the embedded 7-point Gauss rule.
constexpr double kGk15Nodes[15] = {
    0.0042723144395936940576063989283284,
    0.025446043828620756865888097308925,
    0.067567788320115451661251881887438,
    0.12923440720030276995800022632466,
    0.20695638226615442611944217787823,
    0.29707742431130140792205907018797,
    0.3961075224960507457083735971537,
    0.5,
    0.6038924775039492542916264028463,
    0.7029225756886985365667896985542,
    0.79304361773384557388055782212177,
    0.87076559279969723004199977367534,
    0.93243221167988454833874811811256,
    0.97455395617137918762296067143325,
    0.99572768556040625043124236981384};

constexpr double kK15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kG7Weights[15] = {
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0};

struct Panel {
  double a, b;
  double value;
  double error;
  std::uint64_t id;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.id > y.id;  // deterministic tie-break
  }
};

Panel evaluate_panel(const std::function<double(double)>& g, double a, double b,
                     std::uint64_t id) {
  const double half = 0.5 * (b - a);  // weights are normalized for [-1, 1]
  double k15 = 0.0;
  double g7 = 0.0;
  for (int j = 0; j < 15; ++j) {
    const double y = g(a + (b - a) * kGk15Nodes[j]);
    k15 += kK15Weights[j] * y;
    g7 += kG7Weights[j] * y;
  }
  return Panel{a, b, half * k15, half * std::abs(k15 - g7), id};
}

}  // namespace

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double lower, const QuadratureSpec& spec) {
  spec.validate();
  // x = lower + (1-t)/t maps t in (0,1] onto [lower, inf).
  const auto g = [&f, lower](double t) {
    const double x = lower + (1.0 - t) / t;
    return f(x) / (t * t);
  };

  std::uint64_t next_id = 0;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
  double total = 0.0;
  double total_err = 0.0;
  auto push = [&](const Panel& p) {
    total += p.value;
    total_err += p.error;
    panels.push(p);
  };
  push(evaluate_panel(g, 0.0, 1.0, next_id++));

  for (int split = 0; split < spec.max_subdivisions; ++split) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    const Panel worst = panels.top();
    panels.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      push(worst);
      break;
    }
    push(evaluate_panel(g, worst.a, mid, next_id++));
    push(evaluate_panel(g, mid, worst.b, next_id++));
  }

  // Recompute the sums in ascending interval order so the result does not
  // depend on the heap's internal layout.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  total = 0.0;
  total_err = 0.0;
  for (const Panel& p : all) {
    total += p.value;
    total_err += p.error;
  }

  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  if (!(total_err <= tol)) {
    throw ToleranceError("integrate_semi_infinite: tolerance not met", total,
                         total_err);
  }
  return total;
}

}  // namespace cipc::specfun
