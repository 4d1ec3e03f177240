#include "torihull/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "torihull/errors.hpp"

namespace torihull::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
  return x;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw InputError("expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t positive_int(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<double> angle_array(const json& v, std::size_t d, const char* what) {
  if (!v.is_array() || v.size() != d) {
    throw InputError(std::string(what) + " must be an array of " + std::to_string(d) + " numbers");
  }
  std::vector<double> out;
  out.reserve(d);
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

json points_json(const FinitePointSet& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back(p.angles());
  return arr;
}

FinitePointSet points_from(const json& j, std::size_t& d) {
  d = positive_int(field(j, "d"), "d");
  const json& pts = field(j, "points");
  if (!pts.is_array() || pts.empty()) throw InputError("\"points\" must be a nonempty array");
  FinitePointSet out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(angle_array(p, d, "point"));
  return out;
}

json hull_json(const ToricHull& h) {
  if (h.is_full()) return json{{"kind", "full"}, {"d", h.dim()}};
  json verts = json::array();
  for (const auto& v : h.chart().vertices()) verts.push_back(v);
  return json{{"kind", "anchored"}, {"d", h.dim()}, {"base", h.base().angles()}, {"vertices", verts}};
}

json matrix_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json r = json::array(), c = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return json{{"n", m.size()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from(const json& j) {
  const std::size_t n = positive_int(field(j, "n"), "n");
  const json& re = field(j, "re");
  const json& im = field(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n) {
    throw InputError("\"re\" and \"im\" must have n rows");
  }
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = angle_array(re[i], n, "matrix row");
    const auto c = angle_array(im[i], n, "matrix row");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = cplx(r[k], c[k]);
  }
  return m;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string point_set_to_json(const FinitePointSet& points) {
  return json{{"d", set_dimension(points)}, {"points", points_json(points)}}.dump(2);
}

FinitePointSet point_set_from_json(const std::string& text) {
  std::size_t d = 0;
  return points_from(parse(text), d);
}

std::string labeled_set_to_json(const LabeledSet& e) {
  json j{{"d", e.dim()},
         {"points", points_json(e.points)},
         {"components", e.components},
         {"epsilon_cluster", e.epsilon_cluster}};
  if (e.mesh) j["mesh"] = *e.mesh;
  return j.dump(2);
}

LabeledSet labeled_set_from_json(const std::string& text) {
  const json j = parse(text);
  std::size_t d = 0;
  FinitePointSet points = points_from(j, d);
  double eps = 0.0;
  if (j.contains("epsilon_cluster")) eps = number(j["epsilon_cluster"], "epsilon_cluster");
  if (eps < 0.0) throw InputError("epsilon_cluster must be non-negative");
  std::optional<double> mesh;
  if (j.contains("mesh") && !j["mesh"].is_null()) mesh = number(j["mesh"], "mesh");

  LabeledSet e;
  if (j.contains("components")) {
    const json& c = j["components"];
    if (!c.is_array() || c.size() != points.size()) {
      throw InputError("\"components\" must label every point");
    }
    for (const auto& v : c) {
      if (!v.is_number_integer()) throw InputError("component labels must be integers");
      e.components.push_back(v.get<int>());
    }
    e.points = std::move(points);
    e.epsilon_cluster = eps;
    e.mesh = mesh;
  } else if (eps > 0.0) {
    e = LabeledSet::clustered(std::move(points), eps, mesh);
  } else {
    e = LabeledSet::singletons(std::move(points));
    e.mesh = mesh;
  }
  e.validate();
  return e;
}

std::string hull_to_json(const ToricHull& h) { return hull_json(h).dump(2); }

ToricHull hull_from_json(const std::string& text) {
  const json j = parse(text);
  const json& kind = field(j, "kind");
  const std::size_t d = positive_int(field(j, "d"), "d");
  if (kind == "full") return ToricHull::full(d);
  if (kind != "anchored") throw InputError("hull kind must be \"full\" or \"anchored\"");
  TorusPoint base(angle_array(field(j, "base"), d, "base"));
  const json& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty()) throw InputError("\"vertices\" must be a nonempty array");
  std::vector<AngleVector> chart;
  for (const auto& v : verts) {
    chart.push_back(angle_array(v, d, "vertex"));
    for (double x : chart.back()) {
      if (!(std::abs(x) < kPi)) throw InputError("chart vertices must lie in (-pi, pi)");
    }
  }
  return ToricHull::anchored(std::move(base), Polytope::hull_of(chart));
}

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(2); }

ComplexMatrix matrix_from_json(const std::string& text) { return matrix_from(parse(text)); }

std::string family_to_json(const UnitaryFamily& family) {
  json arr = json::array();
  for (const auto& m : family) arr.push_back(matrix_json(m));
  return arr.dump(2);
}

UnitaryFamily family_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array() || j.empty()) throw InputError("a family must be a nonempty array of matrices");
  UnitaryFamily out;
  for (const auto& m : j) out.push_back(matrix_from(m));
  return out;
}

std::string joint_spectrum_to_json(const JointSpectrum& s) {
  return labeled_set_to_json(LabeledSet::singletons(s.points));
}

std::string convergence_to_csv(const ConvergenceResult& r) {
  std::ostringstream out;
  out << "k,n,hull_kind,distance_to_classical,A1_admissible_ok\n";
  for (const auto& rec : r.records) {
    out << rec.k << ',' << rec.n << ',' << (rec.hull.is_full() ? "full" : "anchored") << ','
        << format_number(rec.distance_to_classical) << ',' << (rec.a1_ok ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string convergence_to_json(const ConvergenceResult& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"k", rec.k},
                       {"n", rec.n},
                       {"hull_kind", rec.hull.is_full() ? "full" : "anchored"},
                       {"hull", hull_json(rec.hull)},
                       {"distance_to_classical", rec.distance_to_classical},
                       {"A1_admissible_ok", rec.a1_ok},
                       {"spectrum", points_json(rec.spectrum.points)}});
  }
  json j{{"classical_hull", hull_json(r.classical_hull)},
         {"classical_simple", r.classical_simple},
         {"A1_ok", r.a1_ok},
         {"A1_rotation", r.a1_rotation ? json(r.a1_rotation->angles()) : json(nullptr)},
         {"records", records}};
  return j.dump(2);
}

std::string axiom_report_to_json(const AxiomReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json defects = json::object();
    for (std::size_t a = 0; a < r.axioms.size(); ++a) defects[r.axioms[a]] = row.defects[a];
    rows.push_back({{"hbar", row.hbar}, {"n", row.n}, {"defects", defects}});
  }
  json summary = json::object();
  for (std::size_t a = 0; a < r.axioms.size(); ++a) {
    summary[r.axioms[a]] = {{"max_defect", r.max_defect[a]}, {"slope", optional_number(r.slope[a])}};
  }
  return json{{"model", r.model}, {"rows", rows}, {"summary", summary}}.dump(2);
}

std::string axiom_report_to_text(const AxiomReport& r) {
  std::ostringstream out;
  out << "model: " << r.model << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %-18s %s\n", "axiom", "max_defect", "loglog_slope");
  out << line;
  for (std::size_t a = 0; a < r.axioms.size(); ++a) {
    const std::string slope = r.slope[a] ? format_number(*r.slope[a]) : "n/a";
    std::snprintf(line, sizeof line, "%-22s %-18s %s\n", r.axioms[a].c_str(),
                  format_number(r.max_defect[a]).c_str(), slope.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace torihull::io
