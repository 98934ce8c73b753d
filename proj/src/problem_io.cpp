#include "dsing/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dsing {

using json = nlohmann::ordered_json;

const char* const kToolVersion = "dsing 0.1.0";

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex values are [re, im] pairs");
  return Complex(j[0].get<Real>(), j[1].get<Real>());
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw ParseError(where + ": expected " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " +
                       std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  where + "[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "]");
  }
  return m;
}

json term_to_json(const ScalarTerm& t) {
  json out;
  switch (t.kind) {
    case ScalarTerm::Kind::Monomial:
      out["kind"] = "monomial";
      out["power"] = t.power;
      break;
    case ScalarTerm::Kind::Exponential:
      out["kind"] = "exp";
      out["rate"] = complex_to_json(t.rate);
      break;
    case ScalarTerm::Kind::MonomialExp:
      out["kind"] = "monexp";
      out["power"] = t.power;
      out["rate"] = complex_to_json(t.rate);
      break;
  }
  return out;
}

ScalarTerm term_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError(where + ": scalar term needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "monomial") {
    if (!j.contains("power")) throw ParseError(where + ": monomial needs power");
    return ScalarTerm::monomial(j.at("power").get<int>());
  }
  if (kind == "exp") {
    if (!j.contains("rate")) throw ParseError(where + ": exp needs rate");
    return ScalarTerm::exponential(complex_from_json(j.at("rate"), where + ".rate"));
  }
  if (kind == "monexp") {
    if (!j.contains("power") || !j.contains("rate"))
      throw ParseError(where + ": monexp needs power and rate");
    return ScalarTerm::monomial_exp(j.at("power").get<int>(),
                                    complex_from_json(j.at("rate"), where + ".rate"));
  }
  throw ParseError(where + ": unknown scalar kind '" + kind + "'");
}

json options_to_json(const OuterOptions& o) {
  json out;
  if (o.tol1) out["tol1"] = *o.tol1;
  out["tol2"] = o.tol2;
  out["tol3"] = o.tol3;
  out["beta"] = o.beta;
  if (o.eps0) out["eps0"] = *o.eps0;
  out["eps_low"] = o.eps_low;
  if (o.eps_up) out["eps_up"] = *o.eps_up;
  out["k_max"] = o.k_max;
  out["scaled"] = o.scaled_functional;
  out["m_min"] = o.m_min;
  out["m_max"] = o.m_max;
  out["norm_points"] = o.norm_points;
  out["seed"] = o.seed;
  return out;
}

OuterOptions options_from_json(const json& j) {
  OuterOptions o;
  if (!j.is_object()) throw ParseError("options must be an object");
  if (j.contains("tol1")) o.tol1 = j.at("tol1").get<Real>();
  if (j.contains("tol2")) o.tol2 = j.at("tol2").get<Real>();
  if (j.contains("tol3")) o.tol3 = j.at("tol3").get<Real>();
  if (j.contains("beta")) o.beta = j.at("beta").get<Real>();
  if (j.contains("eps0")) o.eps0 = j.at("eps0").get<Real>();
  if (j.contains("eps_low")) o.eps_low = j.at("eps_low").get<Real>();
  if (j.contains("eps_up")) o.eps_up = j.at("eps_up").get<Real>();
  if (j.contains("k_max")) o.k_max = j.at("k_max").get<int>();
  if (j.contains("scaled")) o.scaled_functional = j.at("scaled").get<bool>();
  if (j.contains("m_min")) o.m_min = j.at("m_min").get<int>();
  if (j.contains("m_max")) o.m_max = j.at("m_max").get<int>();
  if (j.contains("norm_points")) o.norm_points = j.at("norm_points").get<int>();
  if (j.contains("seed")) o.seed = j.at("seed").get<unsigned>();
  return o;
}

json block_to_json(const MatrixBlock& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back(matrix_to_json(b));
  return out;
}

MatrixBlock block_from_json(const json& j, Eigen::Index n, const std::string& where) {
  MatrixBlock out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(matrix_from_json(j[i], n, where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }

  Problem p;
  p.name = j.value("name", std::string{});
  if (!j.contains("n") || !j.contains("terms"))
    throw ParseError("problem file needs fields 'n' and 'terms'");
  const Eigen::Index n = j.at("n").get<Eigen::Index>();
  const json& terms = j.at("terms");
  if (!terms.is_array() || terms.empty())
    throw ParseError("'terms' must be a non-empty array");
  if (j.contains("d") && j.at("d").get<int>() != static_cast<int>(terms.size()))
    throw ParseError("'d' disagrees with the number of terms");

  std::vector<std::pair<ScalarTerm, CMatrix>> list;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    if (!t.contains("scalar") || !t.contains("matrix"))
      throw ParseError(where + ": needs 'scalar' and 'matrix'");
    list.emplace_back(term_from_json(t.at("scalar"), where + ".scalar"),
                      matrix_from_json(t.at("matrix"), n, where + ".matrix"));
  }
  try {
    p.function = make_function(std::move(list));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid function: ") + e.what());
  }

  if (j.contains("structure")) {
    const json& s = j.at("structure");
    p.structure.real = s.value("real", false);
    if (s.contains("frozen")) {
      for (const auto& idx : s.at("frozen")) p.structure.frozen.push_back(idx.get<int>());
    }
    if (s.contains("masks") && !s.at("masks").is_null()) {
      const json& masks = s.at("masks");
      if (masks.size() != terms.size())
        throw ParseError("structure.masks must list one mask per term");
      for (std::size_t i = 0; i < masks.size(); ++i) {
        Eigen::MatrixXi mask = Eigen::MatrixXi::Zero(n, n);
        for (const auto& pos : masks[i]) {
          if (!pos.is_array() || pos.size() != 2)
            throw ParseError("mask entries are [row, col] pairs");
          const Eigen::Index r = pos[0].get<Eigen::Index>();
          const Eigen::Index c = pos[1].get<Eigen::Index>();
          if (r < 0 || r >= n || c < 0 || c >= n)
            throw ParseError("mask position out of range in structure.masks[" +
                             std::to_string(i) + "]");
          mask(r, c) = 1;
        }
        p.structure.masks.push_back(std::move(mask));
      }
    }
  }
  try {
    p.structure.validate(n, p.function.num_terms());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid structure: ") + e.what());
  }

  if (j.contains("options")) p.options = options_from_json(j.at("options"));
  return p;
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string serialize_problem(const Problem& p) {
  json j;
  j["name"] = p.name;
  j["n"] = p.function.size();
  j["d"] = p.function.num_terms();
  json terms = json::array();
  for (const auto& [t, a] : p.function.terms) {
    json entry;
    entry["scalar"] = term_to_json(t);
    entry["matrix"] = matrix_to_json(a);
    terms.push_back(std::move(entry));
  }
  j["terms"] = std::move(terms);

  json s;
  s["real"] = p.structure.real;
  if (!p.structure.frozen.empty()) s["frozen"] = p.structure.frozen;
  if (!p.structure.masks.empty()) {
    json masks = json::array();
    for (const auto& m : p.structure.masks) {
      json positions = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          if (m(r, c)) positions.push_back(json::array({r, c}));
      masks.push_back(std::move(positions));
    }
    s["masks"] = std::move(masks);
  }
  j["structure"] = std::move(s);
  j["options"] = options_to_json(p.options);
  return j.dump(2) + "\n";
}

std::string serialize_report(const ReportFile& rf) {
  const DistanceReport& r = rf.report;
  json j;
  j["tool_version"] = rf.tool_version;
  j["wall_seconds"] = rf.wall_seconds;
  j["eps_star"] = r.eps_star;
  j["eps_star_original"] = r.eps_star_original;
  j["converged"] = r.converged;
  j["normalization"] = {{"alpha", r.normalization.alpha},
                        {"points", r.normalization.points},
                        {"max_abs_det_before", r.normalization.max_abs_det_before}};
  j["delta_star"] = block_to_json(r.delta_star);
  json iters = json::array();
  for (const auto& it : r.iterations)
    iters.push_back({{"k", it.k},
                     {"eps", it.eps},
                     {"g", it.g},
                     {"g_prime", it.g_prime},
                     {"m", it.m},
                     {"kind", std::string(1, it.kind)},
                     {"recomputed_m", it.recomputed_m}});
  j["iterations"] = std::move(iters);
  j["m_history"] = r.m_history;
  j["m_frozen"] = r.m_frozen;
  j["eps_low_final"] = r.eps_low_final;
  j["eps_up_final"] = r.eps_up_final;
  j["g_final"] = r.g_final;
  j["final_m"] = r.final_m;
  j["svd_count"] = r.svd_count;
  j["circle_max_det"] = r.circle_max_det;
  j["circle_min_det"] = r.circle_min_det;
  if (r.has_grid) {
    j["grid"] = {{"max_sigma_min", r.grid_max_sigma},
                 {"min_sigma_min", r.grid_min_sigma},
                 {"count", r.grid_count}};
  }
  return j.dump(2) + "\n";
}

ReportFile parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report file: ") + e.what());
  }
  ReportFile rf;
  rf.tool_version = j.value("tool_version", std::string{});
  rf.wall_seconds = j.value("wall_seconds", 0.0);
  DistanceReport& r = rf.report;
  r.eps_star = j.at("eps_star").get<Real>();
  r.eps_star_original = j.at("eps_star_original").get<Real>();
  r.converged = j.at("converged").get<bool>();
  const json& nrm = j.at("normalization");
  r.normalization.alpha = nrm.at("alpha").get<Real>();
  r.normalization.points = nrm.at("points").get<int>();
  r.normalization.max_abs_det_before = nrm.at("max_abs_det_before").get<Real>();
  const json& blocks = j.at("delta_star");
  if (!blocks.empty()) {
    const Eigen::Index n = static_cast<Eigen::Index>(blocks[0].size());
    r.delta_star = block_from_json(blocks, n, "delta_star");
  }
  for (const auto& it : j.at("iterations")) {
    IterationRecord rec;
    rec.k = it.at("k").get<int>();
    rec.eps = it.at("eps").get<Real>();
    rec.g = it.at("g").get<Real>();
    rec.g_prime = it.at("g_prime").get<Real>();
    rec.m = it.at("m").get<int>();
    rec.kind = it.at("kind").get<std::string>().at(0);
    rec.recomputed_m = it.at("recomputed_m").get<bool>();
    r.iterations.push_back(rec);
  }
  r.m_history = j.at("m_history").get<std::vector<int>>();
  r.m_frozen = j.at("m_frozen").get<bool>();
  r.eps_low_final = j.at("eps_low_final").get<Real>();
  r.eps_up_final = j.at("eps_up_final").get<Real>();
  r.g_final = j.at("g_final").get<Real>();
  r.final_m = j.at("final_m").get<int>();
  r.svd_count = j.at("svd_count").get<std::size_t>();
  r.circle_max_det = j.at("circle_max_det").get<Real>();
  r.circle_min_det = j.at("circle_min_det").get<Real>();
  if (j.contains("grid")) {
    r.has_grid = true;
    r.grid_max_sigma = j.at("grid").at("max_sigma_min").get<Real>();
    r.grid_min_sigma = j.at("grid").at("min_sigma_min").get<Real>();
    r.grid_count = j.at("grid").at("count").get<long>();
  }
  return rf;
}

ReportFile load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

}  // namespace dsing
