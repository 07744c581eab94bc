#include "ucmbl/profiles.hpp"

#include <cmath>
#include <set>

namespace ucmbl {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Smooth wall-to-freestream ramp: 0 at xi2=0, 1 - exp(-64) at the
// default truncation height, so top compatibility holds to 1e-8.
double ramp(double xi2, double delta) {
  const double s = xi2 / delta;
  return 1.0 - std::exp(-s * s);
}

double gauss(double xi2) { return std::exp(-xi2 * xi2); }
}  // namespace

double eval_u_inf(const ProfileSpec& p, double xi1) {
  if (p.name == "zero") return 0.0;
  if (p.name == "sine") {
    const double eps = p.param("eps", 0.01);
    const double k = p.param("k", 1.0);
    return eps * std::sin(kTwoPi * k * xi1);
  }
  throw ValidationError("unknown u_inf profile: " + p.name);
}

double eval_u0(const ProfileSpec& p, const ProfileSpec& u_inf, double xi1,
               double xi2) {
  if (p.name == "zero") return 0.0;
  if (p.name == "uniform") return p.param("value", 0.0);
  if (p.name == "shear") {
    const double delta = p.param("delta", 1.0);
    return eval_u_inf(u_inf, xi1) * ramp(xi2, delta);
  }
  if (p.name == "sine_bump") {
    const double eps = p.param("eps", 0.01);
    const double k = p.param("k", 1.0);
    return eval_u_inf(u_inf, xi1) * ramp(xi2, 1.0) +
           eps * std::sin(kTwoPi * k * xi1) * (1.0 - gauss(xi2)) * gauss(xi2);
  }
  throw ValidationError("unknown u0 profile: " + p.name);
}

SymTensor2 eval_C(const ProfileSpec& p, double xi1, double xi2) {
  if (p.name == "identity") return SymTensor2{1.0, 0.0, 1.0};
  if (p.name == "diag") {
    return SymTensor2{p.param("c11", 1.0), 0.0, p.param("c22", 1.0)};
  }
  if (p.name == "stratified") {
    const double c11 =
        p.param("base", 2.0) + p.param("amp", 0.5) * std::sin(kTwoPi * xi1);
    return SymTensor2{c11, 0.0, p.param("c22", 1.0)};
  }
  if (p.name == "bump") {
    const double c11 = p.param("base", 2.0) +
                       p.param("amp", 0.5) * std::sin(kTwoPi * xi1) +
                       p.param("bump", 0.5) * std::cos(kTwoPi * xi1) *
                           gauss(xi2);
    return SymTensor2{c11, 0.0, p.param("c22", 1.0)};
  }
  if (p.name == "aniso") {
    const double c11 = p.param("base", 2.0) +
                       p.param("bump", 0.5) * std::sin(kTwoPi * xi1) *
                           gauss(xi2);
    const double c12 = p.param("g12", 0.3) * std::cos(kTwoPi * xi1) *
                       gauss(xi2);
    return SymTensor2{c11, c12, p.param("c22", 1.0)};
  }
  throw ValidationError("unknown C profile: " + p.name);
}

double eval_C11_inf(const ProfileSpec& p, double xi1) {
  if (p.name == "constant") return p.param("value", 1.0);
  if (p.name == "sine") {
    return p.param("base", 2.0) + p.param("amp", 0.5) * std::sin(kTwoPi * xi1);
  }
  throw ValidationError("unknown C11_inf profile: " + p.name);
}

double eval_P(const ProfileSpec& p, double x, double t) {
  if (p.name == "zero") return 0.0;
  if (p.name == "constant") return p.param("p0", 0.01);
  if (p.name == "sine") {
    const double p0 = p.param("p0", 0.01);
    const double k = p.param("k", 1.0);
    const double om = p.param("omega", 0.0);
    return p0 * std::sin(kTwoPi * k * x) * std::cos(kTwoPi * om * t);
  }
  throw ValidationError("unknown P profile: " + p.name);
}

bool p_profile_is_zero(const ProfileSpec& p) { return p.name == "zero"; }

void check_profile_name(const std::string& slot, const ProfileSpec& p) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"u0", {"zero", "uniform", "shear", "sine_bump"}},
      {"u_inf", {"zero", "sine"}},
      {"C", {"identity", "diag", "stratified", "bump", "aniso"}},
      {"C11_inf", {"constant", "sine"}},
      {"P", {"zero", "constant", "sine"}},
  };
  auto it = known.find(slot);
  if (it == known.end()) throw ValidationError("unknown profile slot: " + slot);
  if (!it->second.count(p.name)) {
    throw ValidationError("unknown " + slot + " profile: " + p.name);
  }
}

}  // namespace ucmbl
