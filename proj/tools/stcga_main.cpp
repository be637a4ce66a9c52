#include <bit>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stcga/errors.hpp"
#include "stcga/json_io.hpp"
#include "stcga/scenario.hpp"

namespace {

using namespace stcga;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
  return out;
}

// Field expressions like "a*g1g0", "0.5*g1^g0 + a*g2g3". 'a' stands for the
// --a parameter; blades are products of distinct g0..g3 factors in any order.
Multivector parse_field_expr(const std::string& expr, double a_value) {
  const auto& model = spacetime::SpacetimeModel::instance();
  Multivector field(model.algebra());

  std::string compact;
  for (const char c : expr) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  std::size_t pos = 0;
  while (pos < compact.size()) {
    std::size_t next = compact.find('+', pos);
    if (next == std::string::npos) next = compact.size();
    const std::string term = compact.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) throw ValidationError("field expression: empty term");

    double coeff = 1.0;
    std::string blade = term;
    const std::size_t star = term.find('*');
    if (star != std::string::npos) {
      std::string coeff_str = term.substr(0, star);
      blade = term.substr(star + 1);
      double sign = 1.0;
      if (!coeff_str.empty() && (coeff_str[0] == '-' || coeff_str[0] == '+')) {
        if (coeff_str[0] == '-') sign = -1.0;
        coeff_str = coeff_str.substr(1);
      }
      if (coeff_str == "a") {
        coeff = sign * a_value;
      } else {
        try {
          std::size_t used = 0;
          coeff = sign * std::stod(coeff_str, &used);
          if (used != coeff_str.size()) throw std::invalid_argument(coeff_str);
        } catch (const std::exception&) {
          throw ValidationError("field expression: bad coefficient '" + coeff_str + "'");
        }
      }
    }

    BladeMask mask = 0;
    int sign = 1;
    std::size_t i = 0;
    while (i < blade.size()) {
      if (blade[i] == '^') {
        ++i;
        continue;
      }
      if (blade[i] != 'g' || i + 1 >= blade.size() || blade[i + 1] < '0' || blade[i + 1] > '3') {
        throw ValidationError("field expression: expected gamma factor gN (N in 0..3) in '" +
                              blade + "'");
      }
      const int index = blade[i + 1] - '0';
      const BladeMask bit = BladeMask{1} << index;
      if (mask & bit) {
        throw ValidationError("field expression: repeated factor g" + std::to_string(index));
      }
      if (std::popcount(mask >> (index + 1)) & 1) sign = -sign;
      mask |= bit;
      i += 2;
    }
    if (std::popcount(mask) != 2) {
      throw ValidationError("field expression: term '" + term + "' is not a bivector");
    }
    field.set_coeff(mask, field.coeff(mask) + sign * coeff);
  }
  return field;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_signature(const std::string& model_name, std::ostream& out) {
  io::json j;
  j["model"] = model_name;
  if (model_name == "cga5") {
    j.update(io::signature_to_json(euclid::EuclidModel::instance().algebra()->signature()));
  } else if (model_name == "cga7") {
    j.update(io::signature_to_json(spacetime::SpacetimeModel::instance().role_basis_signature()));
  } else {
    throw ValidationError("signature: unknown model '" + model_name + "' (expected cga5|cga7)");
  }
  j["convention"] = io::convention_record(model_name);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_orbit(const std::string& field_expr, double a_value, double tau, int steps,
              const std::string& form_name, const std::string& u0_str, const std::string& x0_str,
              const std::string& out_path) {
  const auto& model = spacetime::SpacetimeModel::instance();
  const auto F = dynamics::FieldBivector::from(model, parse_field_expr(field_expr, a_value));
  const auto form = dynamics::parse_rotor_form(form_name);
  const auto u0c = parse_double_list(u0_str, "--u0");
  const auto x0c = parse_double_list(x0_str, "--x0");
  if (u0c.size() != 4 || x0c.size() != 4) {
    throw ValidationError("--u0 and --x0 must have four components t,x,y,z");
  }
  const Multivector u0 =
      model.spacetime_vector(spacetime::Event{u0c[0], u0c[1], u0c[2], u0c[3]});
  const spacetime::Event x0{x0c[0], x0c[1], x0c[2], x0c[3]};
  const Multivector R0 = Multivector::scalar(model.algebra(), 1.0);
  const auto trajectory = dynamics::integrate_rotor(model, R0, u0, x0, F, tau, steps, form);

  const std::vector<BladeMask> rotor_masks = {0, 3, 5, 6, 9, 10, 12, 15};
  std::string text = "tau,t,x,y,z,u0,u1,u2,u3";
  for (const BladeMask m : rotor_masks) text += ",r_" + io::blade_key(*model.algebra(), m);
  text += "\n";
  for (const auto& state : trajectory) {
    const Multivector u = dynamics::velocity(state, u0);
    text += format_double(state.tau);
    text += "," + format_double(state.position.t) + "," + format_double(state.position.x) + "," +
            format_double(state.position.y) + "," + format_double(state.position.z);
    text += "," + format_double(u.coeff(0b0001)) + "," + format_double(u.coeff(0b0010)) + "," +
            format_double(u.coeff(0b0100)) + "," + format_double(u.coeff(0b1000));
    for (const BladeMask m : rotor_masks) text += "," + format_double(state.rotor.coeff(m));
    text += "\n";
  }

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + out_path + "'");
    file << text;
  }
  return 0;
}

int cmd_diagnostics(const std::string& deltas_str, std::ostream& out) {
  const auto deltas = parse_double_list(deltas_str, "--deltas");
  const auto report = spacetime::infinity_limit_diagnostics(deltas);
  io::json j;
  j["convention"] = io::convention_record("cga7");
  j.update(io::infinity_report_to_json(report));
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stcga: conformal geometric algebra models of Euclidean space and spacetime"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Execute a scenario file");
  std::string scenario_path;
  std::string out_dir;
  std::string format_flag;
  run->add_option("scenario", scenario_path, "Path to the scenario JSON file")->required();
  run->add_option("--out", out_dir, "Directory for output files");
  run->add_option("--format", format_flag, "Override the output format (json|csv)");

  auto* signature = app.add_subcommand("signature", "Print Gram signature counts for a model");
  std::string model_name;
  signature->add_option("--model", model_name, "cga5 or cga7")->required();

  auto* orbit = app.add_subcommand("orbit", "Integrate a charged-particle rotor trajectory");
  std::string field_expr = "a*g1g0";
  double a_value = 1.0;
  double tau = 2.0;
  int steps = 1000;
  std::string form_name = "standard";
  std::string u0_str = "1,0,0,0";
  std::string x0_str = "0,0,0,0";
  std::string orbit_out;
  orbit->add_option("--field", field_expr, "Field bivector, e.g. 'a*g1g0'");
  orbit->add_option("--a", a_value, "Value of the symbolic coefficient a");
  orbit->add_option("--tau", tau, "Proper-time span");
  orbit->add_option("--steps", steps, "Integration steps");
  orbit->add_option("--form", form_name, "Rotor equation form: standard|paper");
  orbit->add_option("--u0", u0_str, "Initial proper velocity t,x,y,z");
  orbit->add_option("--x0", x0_str, "Initial event t,x,y,z");
  orbit->add_option("--out", orbit_out, "CSV output file (default stdout)");

  auto* diagnostics = app.add_subcommand("diagnostics", "Infinity-limit diagnostics");
  std::string deltas_str = "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8";
  diagnostics->add_option("--deltas", deltas_str, "Decreasing positive regularization parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return stcga::scenario::run_scenario_file(scenario_path, out_dir, format_flag, std::cout,
                                                std::cerr);
    }
    if (signature->parsed()) return cmd_signature(model_name, std::cout);
    if (orbit->parsed()) {
      return cmd_orbit(field_expr, a_value, tau, steps, form_name, u0_str, x0_str, orbit_out);
    }
    if (diagnostics->parsed()) return cmd_diagnostics(deltas_str, std::cout);
  } catch (const stcga::DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const stcga::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
