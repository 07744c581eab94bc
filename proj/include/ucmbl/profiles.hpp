#pragma once

#include <map>
#include <string>

#include "ucmbl/sym_tensor.hpp"

namespace ucmbl {

/// A named analytic profile with numeric parameters. Keeping scenario
/// data analytic makes runs exactly reproducible.
struct ProfileSpec {
  std::string name = "zero";
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

/// Far-field streamwise velocity u_inf(xi1). Profiles: zero; sine.
double eval_u_inf(const ProfileSpec& p, double xi1);

/// Initial streamwise velocity u0(xi1, xi2). Profiles: zero; shear
/// (u_inf ramped up from the wall); sine_bump (compact interior bump).
/// All profiles vanish at xi2 = 0 and match u_inf as xi2 grows.
double eval_u0(const ProfileSpec& p, const ProfileSpec& u_inf, double xi1,
               double xi2);

/// Conformation-like tensor C(xi1, xi2). Profiles: identity; diag;
/// stratified; bump; aniso.
SymTensor2 eval_C(const ProfileSpec& p, double xi1, double xi2);

/// Limit of C11 for large xi2. Profiles: constant; sine.
double eval_C11_inf(const ProfileSpec& p, double xi1);

/// Pressure gradient P(x, t), period 1 in x. Profiles: zero; constant;
/// sine.
double eval_P(const ProfileSpec& p, double x, double t);

/// True when the pressure-gradient profile is identically zero (the
/// forcing is then independent of the running displacement).
bool p_profile_is_zero(const ProfileSpec& p);

/// Throws ValidationError on unknown profile names for the given slot.
void check_profile_name(const std::string& slot, const ProfileSpec& p);

}  // namespace ucmbl
