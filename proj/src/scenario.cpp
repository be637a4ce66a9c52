#include "stcga/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "stcga/batch.hpp"
#include "stcga/errors.hpp"

namespace stcga::scenario {

using euclid::EuclidModel;
using io::json;
using spacetime::SpacetimeModel;

namespace {

void expect_fields(const json& j, const std::vector<std::string>& required,
                   const std::vector<std::string>& optional, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& key : required) {
    if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end()) {
      throw ValidationError(where + ": unknown field '" + key + "'");
    }
  }
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_string()) throw ValidationError(where + ": '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_number()) throw ValidationError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Execution-time view of a named object or intermediate result.
struct Entity {
  std::string kind;  // point | event | sphere | shell | field | result
  euclid::Point point{};
  spacetime::Event event{};
  double r_squared = 0.0;
  Multivector mv;  // IPNS representation or field bivector or stored result
};

class Executor {
public:
  explicit Executor(const Scenario& sc) : sc_(sc) {}

  json run() {
    declare_objects();
    json results = json::array();
    int index = 0;
    for (const auto& q : sc_.queries) {
      const std::string where = "query #" + std::to_string(index);
      try {
        results.push_back(execute(q, where));
      } catch (const DegeneracyError& e) {
        throw DegeneracyError(where + " (" + q.value("op", "?") + "): " + e.what());
      }
      ++index;
    }
    return results;
  }

private:
  bool is7() const { return sc_.model == ModelKind::cga7; }

  void declare_objects() {
    for (const auto& obj : sc_.objects) {
      const std::string name = obj.at("name").get<std::string>();
      const std::string kind = obj.at("kind").get<std::string>();
      const std::string where = "object '" + name + "'";
      Entity e;
      e.kind = kind;
      if (kind == "point") {
        require_model(ModelKind::cga5, where);
        e.point = io::point_from_json(obj.at("coords"));
        e.mv = EuclidModel::instance().embed_point(e.point);
      } else if (kind == "sphere") {
        require_model(ModelKind::cga5, where);
        e.point = io::point_from_json(obj.at("center"));
        e.r_squared = number_field(obj, "r_squared", where);
        e.mv = EuclidModel::instance().dual_sphere(e.point, e.r_squared);
      } else if (kind == "event") {
        require_model(ModelKind::cga7, where);
        e.event = io::event_from_json(obj.at("coords"));
        e.mv = SpacetimeModel::instance().embed_event(e.event);
      } else if (kind == "shell") {
        require_model(ModelKind::cga7, where);
        e.event = io::event_from_json(obj.at("center"));
        e.r_squared = number_field(obj, "r_squared", where);
        e.mv = SpacetimeModel::instance().shell_dual(e.event, e.r_squared);
      } else if (kind == "field") {
        require_model(ModelKind::cga7, where);
        e.mv = io::multivector_from_json(SpacetimeModel::instance().algebra(), obj.at("coeffs"));
        dynamics::FieldBivector::from(SpacetimeModel::instance(), e.mv);
      }
      table_.emplace(name, std::move(e));
    }
  }

  void require_model(ModelKind needed, const std::string& where) const {
    if (sc_.model != needed) {
      throw ValidationError(where + ": requires model " +
                            std::string(to_string(needed)) + ", scenario uses " +
                            to_string(sc_.model));
    }
  }

  const Entity& lookup(const std::string& name, const std::string& where) const {
    auto it = table_.find(name);
    if (it == table_.end()) throw ValidationError(where + ": unknown object '" + name + "'");
    return it->second;
  }

  json execute(const json& q, const std::string& where) {
    const std::string op = string_field(q, "op", where);
    if (op == "distance") return run_distance(q, where);
    if (op == "meet") return run_meet(q, where);
    if (op == "membership") return run_membership(q, where);
    if (op == "observe") return run_observe(q, where);
    if (op == "orbit") return run_orbit(q, where);
    if (op == "signature") return run_signature(q, where);
    if (op == "diagnostics") return run_diagnostics(q, where);
    throw ValidationError(where + ": unknown op '" + op + "'");
  }

  json run_distance(const json& q, const std::string& where) {
    const auto& args = q.at("args");
    const Entity& a = lookup(args.at(0).get<std::string>(), where);
    const Entity& b = lookup(args.at(1).get<std::string>(), where);
    json out;
    out["op"] = "distance";
    out["args"] = args;
    if (is7()) {
      if (a.kind != "event" || b.kind != "event") {
        throw ValidationError(where + ": distance under cga7 takes two events");
      }
      out["squared_interval"] =
          SpacetimeModel::instance().minkowski_sq_interval(a.event, b.event);
    } else {
      if (a.kind != "point" || b.kind != "point") {
        throw ValidationError(where + ": distance under cga5 takes two points");
      }
      out["distance"] = EuclidModel::instance().distance(a.point, b.point);
    }
    return out;
  }

  json run_meet(const json& q, const std::string& where) {
    const auto& args = q.at("args");
    const Entity& a = lookup(args.at(0).get<std::string>(), where);
    const Entity& b = lookup(args.at(1).get<std::string>(), where);
    if (a.kind == "field" || b.kind == "field") {
      throw ValidationError(where + ": meet is undefined for field objects");
    }
    const Multivector result = meet(a.mv, b.mv);
    if (result.norm() < 1e-10 * a.mv.norm() * b.mv.norm()) {
      throw DegeneracyError("meet operands are linearly dependent");
    }
    store_named(q, result);
    json out;
    out["op"] = "meet";
    out["args"] = args;
    out["result"] = io::multivector_to_json(result);
    out["grade"] = result.max_grade();
    return out;
  }

  json run_membership(const json& q, const std::string& where) {
    const Entity& obj = lookup(string_field(q, "object", where), where);
    const Entity& container = lookup(string_field(q, "in", where), where);
    if (obj.kind != "point" && obj.kind != "event") {
      throw ValidationError(where + ": membership object must be a point or event");
    }
    if (container.kind == "field") {
      throw ValidationError(where + ": membership container cannot be a field");
    }
    const double tol = q.contains("tolerance") ? number_field(q, "tolerance", where) : 1e-10;
    const double residual = inner_product(obj.mv, container.mv).norm();
    const double normalized = residual / (obj.mv.norm() * container.mv.norm());
    json out;
    out["op"] = "membership";
    out["object"] = string_field(q, "object", where);
    out["in"] = string_field(q, "in", where);
    out["residual"] = residual;
    out["residual_normalized"] = normalized;
    out["tolerance"] = tol;
    out["member"] = residual < tol;
    return out;
  }

  json run_observe(const json& q, const std::string& where) {
    require_model(ModelKind::cga7, where);
    const auto& model = SpacetimeModel::instance();
    const Entity& obs = lookup(string_field(q, "observer", where), where);
    const Entity& shell_ent = lookup(string_field(q, "shell", where), where);
    if (obs.kind != "event") throw ValidationError(where + ": observer must be an event");
    if (shell_ent.kind != "shell") throw ValidationError(where + ": 'shell' must name a shell");
    const spacetime::Shell shell =
        spacetime::make_shell(shell_ent.event, shell_ent.r_squared);
    const int samples = q.contains("samples")
                            ? static_cast<int>(number_field(q, "samples", where))
                            : 8;
    const std::uint64_t seed = q.contains("seed")
                                   ? static_cast<std::uint64_t>(number_field(q, "seed", where))
                                   : sc_.seed;
    const Multivector H = model.observe_intersection(obs.event, shell);
    store_named(q, H);
    json sample_rows = json::array();
    for (const auto& ev : model.sample_cone_shell_intersection(obs.event, shell, samples, seed)) {
      const Multivector X = model.embed_event(ev);
      json row;
      row["event"] = io::event_to_json(ev);
      row["residual"] = inner_product(X, H).norm();
      sample_rows.push_back(std::move(row));
    }
    json out;
    out["op"] = "observe";
    out["observer"] = string_field(q, "observer", where);
    out["shell"] = string_field(q, "shell", where);
    out["blade"] = io::multivector_to_json(H);
    out["seed"] = seed;
    out["samples"] = std::move(sample_rows);
    return out;
  }

  json run_orbit(const json& q, const std::string& where) {
    require_model(ModelKind::cga7, where);
    const auto& model = SpacetimeModel::instance();
    const Entity& field_ent = lookup(string_field(q, "field", where), where);
    if (field_ent.kind != "field") throw ValidationError(where + ": 'field' must name a field");
    const auto F = dynamics::FieldBivector::from(model, field_ent.mv);
    const spacetime::Event u0_coords = io::event_from_json(q.at("u0"));
    const spacetime::Event x0 = io::event_from_json(q.at("x0"));
    const double tau = number_field(q, "tau", where);
    const int steps = static_cast<int>(number_field(q, "steps", where));
    const auto form = dynamics::parse_rotor_form(
        q.contains("form") ? string_field(q, "form", where) : "standard");
    const Multivector u0 = model.spacetime_vector(u0_coords);
    const Multivector R0 = Multivector::scalar(model.algebra(), 1.0);
    const auto trajectory = dynamics::integrate_rotor(model, R0, u0, x0, F, tau, steps, form);
    json states = json::array();
    for (const auto& state : trajectory) {
      const Multivector u = dynamics::velocity(state, u0);
      json row;
      row["tau"] = state.tau;
      row["position"] = io::event_to_json(state.position);
      row["velocity"] = json::array(
          {u.coeff(0b0001), u.coeff(0b0010), u.coeff(0b0100), u.coeff(0b1000)});
      row["rotor"] = io::multivector_to_json(state.rotor);
      states.push_back(std::move(row));
    }
    json out;
    out["op"] = "orbit";
    out["field"] = string_field(q, "field", where);
    out["form"] = dynamics::to_string(form);
    out["steps"] = steps;
    out["tau"] = tau;
    out["states"] = std::move(states);
    return out;
  }

  json run_signature(const json&, const std::string&) {
    json out;
    out["op"] = "signature";
    out["model"] = to_string(sc_.model);
    if (is7()) {
      out.update(io::signature_to_json(SpacetimeModel::instance().role_basis_signature()));
    } else {
      out.update(io::signature_to_json(EuclidModel::instance().algebra()->signature()));
    }
    return out;
  }

  json run_diagnostics(const json& q, const std::string& where) {
    require_model(ModelKind::cga7, where);
    std::vector<double> deltas;
    for (const auto& d : q.at("deltas")) deltas.push_back(d.get<double>());
    json out;
    out["op"] = "diagnostics";
    out.update(io::infinity_report_to_json(spacetime::infinity_limit_diagnostics(deltas)));
    return out;
  }

  void store_named(const json& q, const Multivector& mv) {
    if (!q.contains("name")) return;
    Entity e;
    e.kind = "result";
    e.mv = mv;
    table_[q.at("name").get<std::string>()] = std::move(e);
  }

  const Scenario& sc_;
  std::map<std::string, Entity> table_;
};

void validate_query_structure(const json& q, ModelKind model, std::set<std::string>& names,
                              const std::string& where) {
  const std::string op = string_field(q, "op", where);
  auto check_ref = [&](const std::string& name) {
    if (!names.count(name)) throw ValidationError(where + ": unknown object '" + name + "'");
  };
  auto check_args2 = [&]() {
    if (!q.at("args").is_array() || q.at("args").size() != 2) {
      throw ValidationError(where + ": 'args' must name exactly two objects");
    }
    for (const auto& a : q.at("args")) check_ref(a.get<std::string>());
  };
  if (op == "distance") {
    expect_fields(q, {"op", "args"}, {}, where);
    check_args2();
  } else if (op == "meet") {
    expect_fields(q, {"op", "args"}, {"name"}, where);
    check_args2();
    if (q.contains("name")) names.insert(q.at("name").get<std::string>());
  } else if (op == "membership") {
    expect_fields(q, {"op", "object", "in"}, {"tolerance"}, where);
    check_ref(string_field(q, "object", where));
    check_ref(string_field(q, "in", where));
  } else if (op == "observe") {
    expect_fields(q, {"op", "observer", "shell"}, {"samples", "seed", "name"}, where);
    check_ref(string_field(q, "observer", where));
    check_ref(string_field(q, "shell", where));
    if (q.contains("name")) names.insert(q.at("name").get<std::string>());
  } else if (op == "orbit") {
    expect_fields(q, {"op", "field", "u0", "x0", "tau", "steps"}, {"form"}, where);
    check_ref(string_field(q, "field", where));
  } else if (op == "signature") {
    expect_fields(q, {"op"}, {}, where);
  } else if (op == "diagnostics") {
    expect_fields(q, {"op", "deltas"}, {}, where);
    if (model != ModelKind::cga7) {
      throw ValidationError(where + ": diagnostics requires model cga7");
    }
    if (!q.at("deltas").is_array() || q.at("deltas").empty()) {
      throw ValidationError(where + ": 'deltas' must be a non-empty array");
    }
  } else {
    throw ValidationError(where + ": unknown op '" + op + "'");
  }
}

}  // namespace

const char* to_string(ModelKind m) { return m == ModelKind::cga5 ? "cga5" : "cga7"; }

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw ValidationError("unknown output format '" + name + "' (expected json|csv)");
}

Scenario parse_scenario(const io::json& doc) {
  expect_fields(doc, {"version", "model", "queries"}, {"seed", "objects", "output"}, "scenario");
  if (!doc.at("version").is_number_integer() || doc.at("version").get<int>() != 1) {
    throw ValidationError("scenario: unsupported version (expected 1)");
  }
  Scenario sc;
  const std::string model = doc.at("model").get<std::string>();
  if (model == "cga5") {
    sc.model = ModelKind::cga5;
  } else if (model == "cga7") {
    sc.model = ModelKind::cga7;
  } else {
    throw ValidationError("scenario: unknown model '" + model + "' (expected cga5|cga7)");
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer()) {
      throw ValidationError("scenario: 'seed' must be an integer");
    }
    sc.seed = doc.at("seed").get<std::uint64_t>();
  }
  sc.objects = doc.contains("objects") ? doc.at("objects") : io::json::array();
  if (!sc.objects.is_array()) throw ValidationError("scenario: 'objects' must be an array");
  sc.queries = doc.at("queries");
  if (!sc.queries.is_array()) throw ValidationError("scenario: 'queries' must be an array");

  std::set<std::string> names;
  for (const auto& obj : sc.objects) {
    const std::string where =
        "object '" + (obj.is_object() ? obj.value("name", "?") : std::string("?")) + "'";
    const std::string kind = obj.is_object() ? obj.value("kind", "") : "";
    if (kind == "point" || kind == "event") {
      expect_fields(obj, {"name", "kind", "coords"}, {}, where);
    } else if (kind == "sphere" || kind == "shell") {
      expect_fields(obj, {"name", "kind", "center", "r_squared"}, {}, where);
    } else if (kind == "field") {
      expect_fields(obj, {"name", "kind", "coeffs"}, {}, where);
    } else {
      throw ValidationError(where + ": unknown kind '" + kind + "'");
    }
    const std::string name = obj.at("name").get<std::string>();
    if (!names.insert(name).second) {
      throw ValidationError("scenario: duplicate object name '" + name + "'");
    }
  }
  int index = 0;
  for (const auto& q : sc.queries) {
    validate_query_structure(q, sc.model, names, "query #" + std::to_string(index));
    ++index;
  }

  if (doc.contains("output")) {
    const auto& out = doc.at("output");
    expect_fields(out, {}, {"format", "path"}, "output");
    if (out.contains("format")) sc.format = parse_format(out.at("format").get<std::string>());
    if (out.contains("path")) sc.output_path = out.at("path").get<std::string>();
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  io::json doc;
  try {
    doc = io::json::parse(in);
  } catch (const std::exception& e) {
    throw ValidationError("malformed scenario JSON: " + std::string(e.what()));
  }
  return parse_scenario(doc);
}

namespace {

std::string render_csv(const io::json& document) {
  // CSV is the trajectory surface: every query must be an orbit.
  for (const auto& result : document.at("results")) {
    if (result.at("op").get<std::string>() != "orbit") {
      throw ValidationError("csv format supports orbit queries only; use json");
    }
  }
  const auto& model = SpacetimeModel::instance();
  std::string text;
  // Rotor columns: even gamma-only blades in mask order.
  const std::vector<BladeMask> rotor_masks = {0, 3, 5, 6, 9, 10, 12, 15};
  text += "tau,t,x,y,z,u0,u1,u2,u3";
  for (const BladeMask m : rotor_masks) {
    text += ",r_" + io::blade_key(*model.algebra(), m);
  }
  text += "\n";
  for (const auto& result : document.at("results")) {
    for (const auto& state : result.at("states")) {
      text += format_double(state.at("tau").get<double>());
      for (const auto& c : state.at("position")) text += "," + format_double(c.get<double>());
      for (const auto& c : state.at("velocity")) text += "," + format_double(c.get<double>());
      const auto rotor =
          io::multivector_from_json(model.algebra(), state.at("rotor"));
      for (const BladeMask m : rotor_masks) text += "," + format_double(rotor.coeff(m));
      text += "\n";
    }
  }
  return text;
}

}  // namespace

ScenarioOutput run_scenario(const Scenario& sc, std::optional<OutputFormat> format_override) {
  Executor exec(sc);
  json results = exec.run();

  ScenarioOutput out;
  out.document["version"] = 1;
  out.document["model"] = to_string(sc.model);
  out.document["convention"] = io::convention_record(to_string(sc.model));
  out.document["results"] = std::move(results);
  out.path = sc.output_path;

  const OutputFormat format = format_override.value_or(sc.format);
  if (format == OutputFormat::json) {
    out.rendered = out.document.dump(2) + "\n";
  } else {
    out.rendered = render_csv(out.document);
  }
  return out;
}

int run_scenario_file(const std::string& scenario_path, const std::string& out_dir,
                      const std::string& format_flag, std::ostream& out, std::ostream& err) {
  try {
    const Scenario sc = load_scenario(scenario_path);
    std::optional<OutputFormat> override_format;
    if (!format_flag.empty()) override_format = parse_format(format_flag);
    const ScenarioOutput result = run_scenario(sc, override_format);
    if (result.path.empty()) {
      out << result.rendered;
    } else {
      std::filesystem::path target(result.path);
      if (!out_dir.empty()) target = std::filesystem::path(out_dir) / target;
      if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
      std::ofstream file(target, std::ios::binary);
      if (!file) throw ValidationError("cannot write output file '" + target.string() + "'");
      file << result.rendered;
      out << target.string() << "\n";
    }
    return 0;
  } catch (const DegeneracyError& e) {
    err << "degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stcga::scenario
