#include "ucmbl/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ucmbl {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, int line_no) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    std::ostringstream os;
    os << "line " << line_no << ": expected a number, got '" << v << "'";
    throw ParseError(os.str());
  }
  return x;
}

int parse_int(const std::string& v, int line_no) {
  const double x = parse_number(v, line_no);
  const int i = static_cast<int>(std::lround(x));
  if (std::abs(x - i) > 0.0) {
    std::ostringstream os;
    os << "line " << line_no << ": expected an integer, got '" << v << "'";
    throw ParseError(os.str());
  }
  return i;
}

ProfileSpec* profile_slot(Scenario& s, const std::string& which) {
  if (which == "u0") return &s.u0;
  if (which == "u_inf") return &s.u_inf;
  if (which == "C") return &s.C;
  if (which == "C11_inf") return &s.C11_inf;
  if (which == "P") return &s.P;
  return nullptr;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Scenario parse_config(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'key = value', got '" << line
         << "'";
      throw ParseError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      std::ostringstream os;
      os << "line " << line_no << ": empty key or value";
      throw ParseError(os.str());
    }

    if (key == "name") {
      s.name = value;
    } else if (key == "T") {
      s.T = parse_number(value, line_no);
    } else if (key == "grid.n1") {
      s.grid.n1 = parse_int(value, line_no);
    } else if (key == "grid.n2") {
      s.grid.n2 = parse_int(value, line_no);
    } else if (key == "grid.L") {
      s.grid.L = parse_number(value, line_no);
    } else if (key == "numerics.cfl") {
      s.numerics.cfl = parse_number(value, line_no);
    } else if (key == "numerics.sigma") {
      s.numerics.sigma = parse_number(value, line_no);
    } else if (key == "numerics.picard_iters") {
      s.numerics.picard_iters = parse_int(value, line_no);
    } else if (key == "numerics.snapshot_stride") {
      s.numerics.snapshot_stride = parse_int(value, line_no);
    } else if (key == "numerics.ko_eps") {
      s.numerics.ko_eps = parse_number(value, line_no);
    } else if (key == "numerics.dt") {
      s.numerics.dt = parse_number(value, line_no);
    } else if (key.rfind("profiles.", 0) == 0) {
      const std::string rest = key.substr(9);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) {
        ProfileSpec* p = profile_slot(s, rest);
        if (!p) {
          std::ostringstream os;
          os << "line " << line_no << ": unknown profile slot '" << rest
             << "'";
          throw ParseError(os.str());
        }
        p->name = value;
      } else {
        ProfileSpec* p = profile_slot(s, rest.substr(0, dot));
        if (!p) {
          std::ostringstream os;
          os << "line " << line_no << ": unknown profile slot '"
             << rest.substr(0, dot) << "'";
          throw ParseError(os.str());
        }
        p->params[rest.substr(dot + 1)] = parse_number(value, line_no);
      }
    } else {
      std::ostringstream os;
      os << "line " << line_no << ": unknown key '" << key << "'";
      throw ParseError(os.str());
    }
  }

  const auto failures = validation_failures(s);
  if (!failures.empty()) {
    std::ostringstream os;
    os << "scenario '" << s.name << "' failed validation:";
    for (const auto& f : failures) os << "\n  - " << f;
    throw ValidationError(os.str());
  }
  return s;
}

std::string serialize_config(const Scenario& s) {
  std::ostringstream os;
  os << "name = " << s.name << "\n";
  os << "grid.n1 = " << s.grid.n1 << "\n";
  os << "grid.n2 = " << s.grid.n2 << "\n";
  os << "grid.L = " << format_double(s.grid.L) << "\n";
  os << "T = " << format_double(s.T) << "\n";
  const std::pair<const char*, const ProfileSpec*> slots[] = {
      {"u0", &s.u0},     {"u_inf", &s.u_inf}, {"C", &s.C},
      {"C11_inf", &s.C11_inf}, {"P", &s.P},
  };
  for (const auto& [slot, p] : slots) {
    os << "profiles." << slot << " = " << p->name << "\n";
    for (const auto& [k, v] : p->params) {
      os << "profiles." << slot << "." << k << " = " << format_double(v)
         << "\n";
    }
  }
  os << "numerics.cfl = " << format_double(s.numerics.cfl) << "\n";
  os << "numerics.sigma = " << format_double(s.numerics.sigma) << "\n";
  os << "numerics.picard_iters = " << s.numerics.picard_iters << "\n";
  os << "numerics.snapshot_stride = " << s.numerics.snapshot_stride << "\n";
  os << "numerics.ko_eps = " << format_double(s.numerics.ko_eps) << "\n";
  os << "numerics.dt = " << format_double(s.numerics.dt) << "\n";
  return os.str();
}

std::vector<std::string> validation_failures(const Scenario& s) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& m) { out.push_back(m); };

  if (s.grid.n1 < 8) add("grid.n1 must be >= 8");
  if (s.grid.n2 < 8) add("grid.n2 must be >= 8");
  if (!(s.grid.L > 2.0)) add("grid.L must exceed 2");
  if (!(s.T > 0.0)) add("T must be positive");
  if (!(s.numerics.cfl > 0.0 && s.numerics.cfl <= 1.0))
    add("numerics.cfl must lie in (0, 1]");
  if (s.numerics.sigma < 0.0) add("numerics.sigma must be >= 0");
  if (s.numerics.picard_iters < 0 || s.numerics.picard_iters > 3)
    add("numerics.picard_iters must lie in [0, 3]");
  if (s.numerics.snapshot_stride < 1)
    add("numerics.snapshot_stride must be >= 1");
  if (s.numerics.ko_eps < 0.0 || s.numerics.ko_eps > 1.0)
    add("numerics.ko_eps must lie in [0, 1]");
  if (s.numerics.dt < 0.0) add("numerics.dt must be >= 0");

  for (const auto& [slot, p] :
       {std::pair<const char*, const ProfileSpec*>{"u0", &s.u0},
        {"u_inf", &s.u_inf},
        {"C", &s.C},
        {"C11_inf", &s.C11_inf},
        {"P", &s.P}}) {
    try {
      check_profile_name(slot, *p);
    } catch (const ValidationError& e) {
      add(e.what());
    }
  }
  if (!out.empty()) return out;  // field checks need valid basics

  try {
    build_fields(s);
  } catch (const Error& e) {
    add(e.what());
  }
  return out;
}

ScenarioFields build_fields(const Scenario& s) {
  ScenarioFields f;
  f.grid = s.grid.make();
  const Grid& g = f.grid;
  f.u0 = ScalarField(g);
  f.u_inf.resize(g.n1);
  f.c11_inf.resize(g.n1);
  f.C.resize(g.size());

  for (int i = 0; i < g.n1; ++i) {
    f.u_inf[i] = eval_u_inf(s.u_inf, g.xi1(i));
    f.c11_inf[i] = eval_C11_inf(s.C11_inf, g.xi1(i));
  }
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      f.u0(i, j) = eval_u0(s.u0, s.u_inf, g.xi1(i), g.xi2(j));
      f.C[g.idx(i, j)] = eval_C(s.C, g.xi1(i), g.xi2(j));
    }
  }

  std::vector<std::string> bad;
  double wall_max = 0.0, top_max = 0.0, c11_top_max = 0.0;
  double min_c22 = f.C.empty() ? 0.0 : f.C[0].a22;
  bool psd_ok = true;
  for (int i = 0; i < g.n1; ++i) {
    wall_max = std::max(wall_max, std::abs(f.u0(i, 0)));
    top_max = std::max(top_max, std::abs(f.u0(i, g.n2 - 1) - f.u_inf[i]));
    c11_top_max = std::max(
        c11_top_max, std::abs(f.C[g.idx(i, g.n2 - 1)].a11 - f.c11_inf[i]));
  }
  for (const SymTensor2& c : f.C) {
    if (!is_psd(c)) psd_ok = false;
    min_c22 = std::min(min_c22, c.a22);
  }
  f.C0 = min_c22;

  if (wall_max > 1e-10) {
    std::ostringstream os;
    os << "u0 nonzero at wall (max |u0(.,0)| = " << wall_max << ")";
    bad.push_back(os.str());
  }
  if (top_max > 1e-8) {
    std::ostringstream os;
    os << "u0 does not match u_inf at the top row (max deviation = "
       << top_max << ")";
    bad.push_back(os.str());
  }
  if (!psd_ok) bad.push_back("C field fails the PSD test");
  if (!(min_c22 > 1e-9)) {
    std::ostringstream os;
    os << "C22 floor " << min_c22 << " is not positive";
    bad.push_back(os.str());
  }
  if (c11_top_max > 1e-6) {
    std::ostringstream os;
    os << "C11 at the top row deviates from C11_inf by " << c11_top_max;
    bad.push_back(os.str());
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "invalid scenario data:";
    for (const auto& m : bad) os << "\n  - " << m;
    throw ValidationError(os.str());
  }
  return f;
}

}  // namespace ucmbl
