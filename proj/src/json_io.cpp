#include "stcga/json_io.hpp"

#include <bit>
#include <cmath>

#include "stcga/errors.hpp"

namespace stcga::io {

namespace {

double number_field(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::vector<double> coord_array(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw ValidationError(std::string(what) + ": expected an array of " + std::to_string(n) +
                          " numbers");
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& v : j) out.push_back(number_field(v, what));
  return out;
}

}  // namespace

std::string blade_key(const Algebra& alg, BladeMask mask) {
  if (mask == 0) return "1";
  std::string key;
  for (BladeMask rest = mask; rest != 0; rest &= rest - 1) {
    if (!key.empty()) key += '^';
    key += alg.generator_names()[std::countr_zero(rest)];
  }
  return key;
}

std::pair<BladeMask, int> parse_blade_key(const Algebra& alg, const std::string& key) {
  if (key == "1") return {0, 1};
  BladeMask mask = 0;
  int sign = 1;
  std::size_t start = 0;
  while (start <= key.size()) {
    const std::size_t sep = key.find('^', start);
    const std::string name = key.substr(start, sep == std::string::npos ? sep : sep - start);
    int index = -1;
    for (int i = 0; i < alg.dim(); ++i) {
      if (alg.generator_names()[i] == name) {
        index = i;
        break;
      }
    }
    if (index < 0) throw ValidationError("unknown generator '" + name + "' in blade key '" + key + "'");
    const BladeMask bit = BladeMask{1} << index;
    if (mask & bit) throw ValidationError("repeated generator in blade key '" + key + "'");
    // The new factor joins on the right; sorting it in hops over every
    // already-parsed factor with a higher index.
    if (std::popcount(mask >> (index + 1)) & 1) sign = -sign;
    mask |= bit;
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return {mask, sign};
}

json multivector_to_json(const Multivector& a) {
  json j = json::object();
  if (!a.algebra()) return j;
  for (const auto& [mask, c] : a.coeffs()) j[blade_key(*a.algebra(), mask)] = c;
  return j;
}

Multivector multivector_from_json(const AlgebraPtr& alg, const json& j) {
  if (!j.is_object()) throw ValidationError("multivector: expected an object of blade keys");
  Multivector out(alg);
  for (const auto& [key, value] : j.items()) {
    const auto [mask, sign] = parse_blade_key(*alg, key);
    const double c = number_field(value, "multivector coefficient");
    out.set_coeff(mask, out.coeff(mask) + sign * c);
  }
  return out;
}

json gram_to_json(const Algebra& alg) {
  json rows = json::array();
  for (int i = 0; i < alg.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < alg.dim(); ++j) row.push_back(alg.gram(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_to_json(const euclid::Point& p) { return json::array({p.x, p.y, p.z}); }

euclid::Point point_from_json(const json& j) {
  const auto c = coord_array(j, 3, "point");
  return euclid::Point{c[0], c[1], c[2]};
}

json event_to_json(const spacetime::Event& e) { return json::array({e.t, e.x, e.y, e.z}); }

spacetime::Event event_from_json(const json& j) {
  const auto c = coord_array(j, 4, "event");
  return spacetime::Event{c[0], c[1], c[2], c[3]};
}

json shell_to_json(const spacetime::Shell& s) {
  json j;
  j["center"] = event_to_json(s.center);
  j["r_squared"] = s.r_squared;
  j["kind"] = spacetime::to_string(s.kind);
  return j;
}

json signature_to_json(const SignatureCounts& counts) {
  json j;
  j["positive"] = counts.positive;
  j["negative"] = counts.negative;
  j["zero"] = counts.zero;
  return j;
}

json infinity_report_to_json(const spacetime::InfinityLimitReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["delta"] = row.delta;
    r["d2_event_inf_plus"] = row.d2_event_inf_plus;
    r["d2_event_inf_minus"] = row.d2_event_inf_minus;
    r["d2_between_infinities"] = row.d2_between_infinities;
    rows.push_back(std::move(r));
  }
  json j;
  j["rows"] = std::move(rows);
  j["order_plus"] = report.order_plus;
  j["order_minus"] = report.order_minus;
  j["sign_plus"] = report.sign_plus;
  j["sign_minus"] = report.sign_minus;
  j["sign_between"] = report.sign_between;
  j["confirms_limits"] = report.confirms_limits;
  return j;
}

json convention_record(const std::string& model_name) {
  json j;
  j["model"] = model_name;
  if (model_name == "cga5") {
    const auto& model = euclid::EuclidModel::instance();
    j["generators"] = model.algebra()->generator_names();
    j["gram"] = gram_to_json(*model.algebra());
    j["point_embedding"] = "O + p + |p|^2/2 einf";
    j["distance"] = "-d^2/2 = (P.Q)/((P.einf)(Q.einf))";
    j["translator"] = "1 - x einf/2";
    j["prune_epsilon"] = model.algebra()->prune_epsilon();
  } else if (model_name == "cga7") {
    const auto& model = spacetime::SpacetimeModel::instance();
    j["generators"] = model.algebra()->generator_names();
    j["gram"] = gram_to_json(*model.algebra());
    j["derived"] = {{"inf_plus", "w0 - winf"}, {"inf_minus", "w0 + winf"}};
    j["event_embedding"] = "O + v + (v.v)/2 winf";
    j["interval"] = "d^2 = 2 (P.Q)/((P.inf_plus)(Q.inf_minus)); timelike positive";
    j["shell_dual"] = "C - r_squared/2 winf";
    j["translator"] = "1 - x winf/2";
    j["prune_epsilon"] = model.algebra()->prune_epsilon();
  } else {
    throw ValidationError("convention_record: unknown model '" + model_name + "'");
  }
  return j;
}

}  // namespace stcga::io
