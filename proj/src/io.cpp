#include "dualmink/io.hpp"

#include <fstream>
#include <sstream>

namespace dualmink {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(std::string(what) + ": expected a non-empty array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidInput(std::string(what) + ": expected numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd to_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(std::string(what) + ": expected a matrix");
  Eigen::VectorXd first = to_vector(j[0], what);
  Eigen::MatrixXd m(j.size(), first.size());
  m.row(0) = first.transpose();
  for (size_t i = 1; i < j.size(); ++i) {
    Eigen::VectorXd row = to_vector(j[i], what);
    if (row.size() != m.cols()) throw InvalidInput(std::string(what) + ": ragged rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

GridPtr grid_for(int dim, int L, GridPtr hint) {
  if (hint && hint->dim == dim && (L <= 0 || hint->resolution == L)) return hint;
  return build_grid(dim, L > 0 ? L : default_resolution(dim));
}

}  // namespace

ConvexBody parse_body(const json& j, GridPtr grid) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw InvalidInput("body: missing \"type\"");
  const std::string type = j["type"].get<std::string>();

  if (type == "ellipsoid") {
    if (!j.contains("axes")) throw InvalidInput("ellipsoid: missing \"axes\"");
    Eigen::VectorXd axes = to_vector(j["axes"], "ellipsoid axes");
    Eigen::MatrixXd rotation;
    if (j.contains("rotation")) rotation = to_matrix(j["rotation"], "ellipsoid rotation");
    return make_ellipsoid(std::move(axes), std::move(rotation));
  }
  if (type == "polytope") {
    if (!j.contains("vertices")) throw InvalidInput("polytope: missing \"vertices\"");
    return make_polytope(to_matrix(j["vertices"], "polytope vertices"));
  }
  if (type == "ball") {
    if (!j.contains("radius") || !j["radius"].is_number())
      throw InvalidInput("ball: missing \"radius\"");
    double r = j["radius"].get<double>();
    if (r <= 0.0) throw InvalidInput("ball: radius must be positive");
    Vec center;
    if (j.contains("center")) center = to_vector(j["center"], "ball center");
    if (center.size() == 0 || center.norm() == 0.0)
      return make_ball(center.size() == 0 ? 3 : static_cast<int>(center.size()), r);
    // an off-center ball is carried by its support field r + <c, v>
    const int n = static_cast<int>(center.size());
    if (center.norm() >= r) throw InvariantViolation("ball: origin is not strictly interior");
    GridPtr g = grid_for(n, j.value("L", 0), grid);
    Vec c = center;
    Eigen::VectorXd values(g->node_count());
    for (Eigen::Index i = 0; i < g->node_count(); ++i) values[i] = r + c.dot(g->node(i));
    SupportBody body{ScalarField(g, std::move(values)),
                     [r, c](const Vec& v) { return r + c.dot(v); }, r};
    return body;
  }
  if (type == "support_field") {
    if (!j.contains("L") || !j.contains("values"))
      throw InvalidInput("support_field: need \"L\" and \"values\"");
    int L = j["L"].get<int>();
    Eigen::VectorXd values = to_vector(j["values"], "support_field values");
    int n = j.value("n", 0);
    if (n == 0) n = values.size() == L ? 2 : 3;
    GridPtr g = grid_for(n, L, grid);
    if (values.size() != g->node_count())
      throw InvalidInput("support_field: value count does not match the grid");
    return support_body_from_values(g, std::move(values));
  }
  throw InvalidInput("body: unknown type " + type);
}

ConvexBody load_body(const std::string& path, GridPtr grid) {
  return parse_body(load_json(path), std::move(grid));
}

ProblemSpec parse_problem(const json& j) {
  if (!j.is_object()) throw InvalidInput("problem: expected an object");
  ProblemSpec spec;
  spec.dim = j.value("n", 3);
  if (!j.contains("p") || !j.contains("q")) throw InvalidInput("problem: need \"p\" and \"q\"");
  spec.p = j["p"].get<double>();
  spec.q = j["q"].get<double>();
  if (!j.contains("f")) return spec;  // f defaults to 1

  const json& f = j["f"];
  if (f.is_number()) {
    spec.f_constant = f.get<double>();
  } else if (f.is_object()) {
    if (f.contains("values")) {
      spec.f_values = to_vector(f["values"], "problem f values");
      return spec;
    }
    spec.f_constant = f.value("constant", 1.0);
    if (f.contains("harmonics")) {
      for (const auto& term : f["harmonics"]) {
        HarmonicTerm t;
        t.k = term.at("k").get<int>();
        if (term.contains("m") && term["m"].is_string()) {
          const std::string ms = term["m"].get<std::string>();
          if (ms != "cos" && ms != "sin") throw InvalidInput("harmonic: m must be cos or sin");
          t.m = ms == "sin" ? 1 : 0;
        } else {
          t.m = term.value("m", 0);
        }
        t.coefficient = term.at("coef").get<double>();
        spec.f_harmonics.push_back(t);
      }
    }
  } else {
    throw InvalidInput("problem: \"f\" must be a number or an object");
  }
  return spec;
}

ProblemSpec load_problem(const std::string& path) { return parse_problem(load_json(path)); }

json report_to_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"label", row.label},
                    {"lhs", row.lhs},
                    {"relation", row.relation},
                    {"rhs", row.rhs},
                    {"pass", row.pass},
                    {"margin", row.margin}});
  }
  return {{"name", report.name},
          {"all_pass", report.all_pass()},
          {"rows", rows},
          {"metadata", report.metadata}};
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os.precision(17);
  os << "name,label,lhs,relation,rhs,pass,margin\n";
  for (const auto& row : report.rows) {
    std::string label = row.label;
    for (char& ch : label)
      if (ch == ',') ch = ';';
    os << report.name << "," << label << "," << row.lhs << "," << row.relation << "," << row.rhs
       << "," << (row.pass ? 1 : 0) << "," << row.margin << "\n";
  }
  return os.str();
}

json solution_to_json(const Solution& sol, const ProblemSpec& spec) {
  return {{"n", spec.dim},
          {"p", spec.p},
          {"q", spec.q},
          {"L", sol.u.grid ? sol.u.grid->resolution : 0},
          {"converged", sol.converged},
          {"iterations", sol.iterations},
          {"residual_sup", sol.residual_sup},
          {"used_fd_jacobian", sol.used_fd_jacobian},
          {"diagnostics",
           {{"min_u", sol.min_u},
            {"convexity_margin", sol.convexity_margin},
            {"diameter_bound", sol.diameter_bound},
            {"volume", sol.volume},
            {"total_measure", sol.total_measure}}}};
}

json probe_to_json(const ProbeReport& report) {
  json starts = json::array();
  for (const auto& s : report.starts)
    starts.push_back({{"converged", s.converged},
                      {"iterations", s.iterations},
                      {"residual_sup", s.residual_sup}});
  return {{"num_starts", report.num_starts},
          {"converged_count", report.converged_count},
          {"max_spread", report.max_spread},
          {"starts", starts}};
}

std::string field_to_csv(const ScalarField& field) {
  const auto& g = *field.grid;
  std::ostringstream os;
  os.precision(17);
  os << (g.dim == 2 ? "index,x,y,value\n" : "index,x,y,z,value\n");
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    os << i;
    for (int d = 0; d < g.dim; ++d) os << "," << g.nodes(i, d);
    os << "," << field.values[i] << "\n";
  }
  return os.str();
}

json density_summary(const DensityMeasure& m) {
  return {{"total", total(m)}, {"min", m.density.min()}, {"max", m.density.max()}};
}

json atoms_summary(const AtomicMeasure& m) {
  return {{"total", total(m)}, {"min", m.masses.minCoeff()}, {"max", m.masses.maxCoeff()}};
}

std::string atoms_to_csv(const AtomicMeasure& m) {
  std::ostringstream os;
  os.precision(17);
  const int n = static_cast<int>(m.directions.cols());
  os << (n == 2 ? "index,x,y,mass\n" : "index,x,y,z,mass\n");
  for (Eigen::Index i = 0; i < m.masses.size(); ++i) {
    os << i;
    for (int d = 0; d < n; ++d) os << "," << m.directions(i, d);
    os << "," << m.masses[i] << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << content;
  if (!out) throw InvalidInput("failed writing: " + path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace dualmink
