// Copyright 2026 The matorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matorder/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace matorder {

namespace {

bool is_scalar(const Json& j) {
  return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number());
}

bool is_square_matrix(const Json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d) return false;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != d) return false;
    for (const Json& e : row) {
      if (!is_scalar(e)) return false;
    }
  }
  return true;
}

Json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double number_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParseError, what);
}

Json table_to_json(const std::vector<double>& v, int n, int m) {
  Json out = Json::array();
  for (int x = 0; x < n; ++x) {
    Json jx = Json::array();
    for (int y = 0; y < n; ++y) {
      Json jy = Json::array();
      for (int a = 0; a < m; ++a) {
        Json ja = Json::array();
        for (int b = 0; b < m; ++b) ja.push_back(v[((static_cast<std::size_t>(x) * n + y) * m + a) * m + b]);
        jy.push_back(ja);
      }
      jx.push_back(jy);
    }
    out.push_back(jx);
  }
  return out;
}

std::vector<double> table_from_json(const Json& j, int n, int m) {
  std::vector<double> out;
  require(j.is_array() && j.size() == static_cast<std::size_t>(n), "table must be indexed [x][y][a][b]");
  for (int x = 0; x < n; ++x) {
    require(j[x].is_array() && j[x].size() == static_cast<std::size_t>(n), "table has the wrong y extent");
    for (int y = 0; y < n; ++y) {
      require(j[x][y].is_array() && j[x][y].size() == static_cast<std::size_t>(m), "table has the wrong a extent");
      for (int a = 0; a < m; ++a) {
        require(j[x][y][a].is_array() && j[x][y][a].size() == static_cast<std::size_t>(m),
                "table has the wrong b extent");
        for (int b = 0; b < m; ++b) out.push_back(j[x][y][a][b].get<double>());
      }
    }
  }
  return out;
}

Json pvms_to_json(const std::vector<std::vector<Matrix>>& fam) {
  Json out = Json::array();
  for (const auto& pv : fam) {
    Json row = Json::array();
    for (const Matrix& p : pv) row.push_back(to_json(p));
    out.push_back(row);
  }
  return out;
}

std::vector<std::vector<Matrix>> pvms_from_json(const Json& j) {
  require(j.is_array(), "measurement family must be an array");
  std::vector<std::vector<Matrix>> out;
  for (const Json& row : j) {
    require(row.is_array(), "measurement must be an array of matrices");
    out.emplace_back();
    for (const Json& p : row) out.back().push_back(matrix_from_json(p));
  }
  return out;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2, "complex scalar must be a number or [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  require(cols > 0, "matrix rows must be nonempty arrays");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    require(j[r].is_array() && j[r].size() == cols, "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "vector must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json to_json(const BlockSpace& s) { return Json{{"blocks", s.block_dims()}}; }

BlockSpace block_space_from_json(const Json& j) {
  const Json& b = j.is_object() ? j.at("blocks") : j;
  require(b.is_array() && !b.empty(), "blocks must be a nonempty array of sizes");
  std::vector<int> dims;
  for (const Json& d : b) dims.push_back(d.get<int>());
  return BlockSpace(dims);
}

Json to_json(const HermitianElement& x) {
  Json blocks = Json::array();
  for (const Matrix& b : x.blocks()) blocks.push_back(to_json(b));
  return Json{{"blocks", blocks}};
}

HermitianElement element_from_json(const BlockSpace& space, const Json& j) {
  if (j.is_object()) {
    if (j.contains("dense")) return HermitianElement::from_dense(space, matrix_from_json(j.at("dense")));
    return element_from_json(space, j.at("blocks"));
  }
  require(j.is_array(), "element must be an array or an object");
  bool as_blocks = j.size() == static_cast<std::size_t>(space.num_blocks());
  for (int b = 0; as_blocks && b < space.num_blocks(); ++b) {
    as_blocks = is_square_matrix(j[b], static_cast<std::size_t>(space.block_dims()[b]));
  }
  if (as_blocks) {
    std::vector<Matrix> blocks;
    for (const Json& b : j) blocks.push_back(matrix_from_json(b));
    return HermitianElement(space, blocks);
  }
  require(is_square_matrix(j, static_cast<std::size_t>(space.total_dim())),
          "element is neither a block list nor a dense ambient matrix");
  return HermitianElement::from_dense(space, matrix_from_json(j));
}

Json to_json(const ConcreteSystem& v) {
  Json basis = Json::array();
  for (const HermitianElement& b : v.basis()) basis.push_back(to_json(b).at("blocks"));
  return Json{{"blocks", v.ambient().block_dims()}, {"k", v.k()}, {"basis", basis}};
}

ConcreteSystem system_from_json(const Json& j) {
  require(j.is_object(), "system must be an object");
  const BlockSpace space = block_space_from_json(j);
  const int k = j.value("k", space.max_block_dim());
  if (!j.contains("basis")) return ConcreteSystem::full(space, k);
  std::vector<HermitianElement> basis;
  for (const Json& e : j.at("basis")) basis.push_back(element_from_json(space, e));
  return ConcreteSystem(space, basis, k);
}

Json to_json(const LevelElement& x) { return Json{{"n", x.level()}, {"flat", to_json(x.flat())}}; }

LevelElement level_element_from_json(SystemPtr system, const Json& j) {
  require(j.is_object(), "level element must be an object");
  if (j.contains("flat")) {
    const Matrix flat = matrix_from_json(j.at("flat"));
    const int d = system->ambient().total_dim();
    require(flat.rows() % d == 0, "flat matrix size is not a multiple of the ambient size");
    const int n = j.value("n", static_cast<int>(flat.rows() / d));
    return LevelElement(std::move(system), n, flat);
  }
  const Json& entries = j.at("entries");
  require(entries.is_array() && !entries.empty(), "entries must be an n x n array");
  std::vector<std::vector<Matrix>> rows;
  for (const Json& row : entries) {
    rows.emplace_back();
    for (const Json& e : row) {
      if (e.is_object()) rows.back().push_back(element_from_json(system->ambient(), e).dense());
      else rows.back().push_back(system->ambient().mask(matrix_from_json(e)));
    }
  }
  return LevelElement::from_entries(std::move(system), rows);
}

Json to_json(const Certificate& c) {
  struct Visitor {
    Json operator()(const std::monostate&) const { return nullptr; }
    Json operator()(const SpectralProof& p) const {
      return {{"kind", "spectral_proof"}, {"regime", p.regime}, {"min_eigenvalue", p.min_eigenvalue}};
    }
    Json operator()(const KMinWitness& w) const {
      return {{"kind", "kmin_witness"}, {"left", to_json(w.left)}, {"right", to_json(w.right)},
              {"vector", vector_to_json(w.vector)}, {"value", w.value}};
    }
    Json operator()(const KStateWitness& w) const {
      return {{"kind", "kstate_witness"}, {"choi", to_json(w.choi)},
              {"vector", vector_to_json(w.vector)}, {"value", w.value}, {"k", w.k}};
    }
    Json operator()(const KMaxDecomposition& d) const {
      Json terms = Json::array();
      for (const auto& t : d.terms) terms.push_back({{"beta", to_json(t.beta)}, {"s", to_json(t.s)}});
      return {{"kind", "kmax_decomposition"}, {"terms", terms}, {"slack", d.slack}};
    }
    Json operator()(const DualWitness& w) const {
      return {{"kind", "dual_witness"}, {"family", w.kind}, {"y", to_json(w.y)},
              {"psi", vector_to_json(w.psi)}, {"schmidt_weight", w.schmidt_weight},
              {"pairing", w.pairing}};
    }
    Json operator()(const MapRefutation& r) const {
      return {{"kind", "map_refutation"}, {"input", to_json(r.input)},
              {"vector", vector_to_json(r.vector)}, {"value", r.value}};
    }
    Json operator()(const CpConeCertificate& c) const {
      Json out = {{"kind", "cp_cone"}, {"eps", c.eps}, {"t", c.t},
                  {"min_eigenvalue", c.min_eigenvalue}, {"exhausted", c.exhausted},
                  {"kernel_value", c.kernel_value}};
      out["kernel_witness"] = c.kernel_witness.size() ? vector_to_json(c.kernel_witness) : Json(nullptr);
      return out;
    }
    Json operator()(const ProjectionRefutation& r) const {
      Json eps_t = Json::array();
      for (const auto& [e, t] : r.eps_t) eps_t.push_back({e, t});
      return {{"kind", "projection_refutation"}, {"x", to_json(r.x)},
              {"x_min_eigenvalue", r.x_min_eigenvalue}, {"eps_t", eps_t},
              {"feasible_at_zero_eps", r.feasible_at_zero_eps}, {"t_at_zero_eps", r.t_at_zero_eps}};
    }
  };
  return std::visit(Visitor{}, c);
}

Certificate certificate_from_json(const Json& j) {
  if (j.is_null()) return std::monostate{};
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "spectral_proof") {
    return SpectralProof{j.at("regime").get<std::string>(), j.at("min_eigenvalue").get<double>()};
  }
  if (kind == "kmin_witness") {
    return KMinWitness{matrix_from_json(j.at("left")), matrix_from_json(j.at("right")),
                       vector_from_json(j.at("vector")), j.at("value").get<double>()};
  }
  if (kind == "kstate_witness") {
    return KStateWitness{matrix_from_json(j.at("choi")), vector_from_json(j.at("vector")),
                         j.at("value").get<double>(), j.at("k").get<int>()};
  }
  if (kind == "kmax_decomposition") {
    KMaxDecomposition d;
    for (const Json& t : j.at("terms")) d.terms.push_back({matrix_from_json(t.at("beta")), matrix_from_json(t.at("s"))});
    d.slack = j.at("slack").get<double>();
    return d;
  }
  if (kind == "dual_witness") {
    return DualWitness{j.at("family").get<std::string>(), matrix_from_json(j.at("y")),
                       vector_from_json(j.at("psi")), j.at("schmidt_weight").get<double>(),
                       j.at("pairing").get<double>()};
  }
  if (kind == "map_refutation") {
    return MapRefutation{matrix_from_json(j.at("input")), vector_from_json(j.at("vector")),
                         j.at("value").get<double>()};
  }
  if (kind == "cp_cone") {
    CpConeCertificate c;
    c.eps = j.at("eps").get<double>();
    c.t = j.at("t").get<double>();
    c.min_eigenvalue = j.at("min_eigenvalue").get<double>();
    c.exhausted = j.at("exhausted").get<bool>();
    if (!j.at("kernel_witness").is_null()) c.kernel_witness = vector_from_json(j.at("kernel_witness"));
    c.kernel_value = j.at("kernel_value").get<double>();
    return c;
  }
  if (kind == "projection_refutation") {
    ProjectionRefutation r;
    r.x = matrix_from_json(j.at("x"));
    r.x_min_eigenvalue = j.at("x_min_eigenvalue").get<double>();
    for (const Json& p : j.at("eps_t")) r.eps_t.emplace_back(p[0].get<double>(), p[1].get<double>());
    r.feasible_at_zero_eps = j.at("feasible_at_zero_eps").get<bool>();
    r.t_at_zero_eps = j.at("t_at_zero_eps").get<double>();
    return r;
  }
  throw Error(ErrorCode::kParseError, "unknown certificate kind '" + kind + "'");
}

Json to_json(const Verdict& v, VerdictContext ctx) {
  Json values = Json::array();
  for (const auto& [name, val] : v.diagnostics.values) values.push_back({name, number_or_null(val)});
  return {{"status", status_label(v.status, ctx)},
          {"objective", number_or_null(v.diagnostics.best_objective)},
          {"certificate", to_json(v.certificate)},
          {"diagnostics",
           {{"restarts", v.diagnostics.restarts},
            {"iterations", v.diagnostics.iterations},
            {"best_objective", number_or_null(v.diagnostics.best_objective)},
            {"values", values}}}};
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  const std::string s = j.at("status").get<std::string>();
  if (s == "MEMBER" || s == "K_POSITIVE") v.status = Status::kMember;
  else if (s == "NOT_MEMBER" || s == "NOT_K_POSITIVE" || s == "NOT_PROJECTION") v.status = Status::kNotMember;
  else if (s == "UNDECIDED") v.status = Status::kUndecided;
  else throw Error(ErrorCode::kParseError, "unknown status '" + s + "'");
  v.certificate = certificate_from_json(j.at("certificate"));
  const Json& d = j.at("diagnostics");
  v.diagnostics.restarts = d.at("restarts").get<int>();
  v.diagnostics.iterations = d.at("iterations").get<long>();
  v.diagnostics.best_objective = number_from(d.at("best_objective"));
  for (const Json& p : d.at("values")) v.diagnostics.values.emplace_back(p[0].get<std::string>(), number_from(p[1]));
  return v;
}

Json to_json(const Correlation& c) { return {{"n", c.n}, {"m", c.m}, {"p", table_to_json(c.p, c.n, c.m)}}; }

Correlation correlation_from_json(const Json& j) {
  require(j.is_object(), "correlation must be an object");
  Correlation c;
  c.n = j.at("n").get<int>();
  c.m = j.at("m").get<int>();
  require(c.n > 0 && c.m > 0, "n and m must be positive");
  c.p = table_from_json(j.at("p"), c.n, c.m);
  return c;
}

Json to_json(const BellFunctional& f) { return {{"n", f.n}, {"m", f.m}, {"c", table_to_json(f.c, f.n, f.m)}}; }

BellFunctional functional_from_json(const Json& j) {
  require(j.is_object(), "functional must be an object");
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "chsh") return chsh_functional();
    throw Error(ErrorCode::kParseError, "unknown functional '" + name + "'");
  }
  BellFunctional f;
  f.n = j.at("n").get<int>();
  f.m = j.at("m").get<int>();
  require(f.n > 0 && f.m > 0, "n and m must be positive");
  f.c = table_from_json(j.at("c"), f.n, f.m);
  return f;
}

Json to_json(const Strategy& s) {
  return {{"blocks", s.ambient.block_dims()}, {"k", s.k}, {"eta", vector_to_json(s.eta)},
          {"E", pvms_to_json(s.e)}, {"F", pvms_to_json(s.f)}};
}

Strategy strategy_from_json(const Json& j) {
  require(j.is_object(), "strategy must be an object");
  Strategy s;
  s.ambient = block_space_from_json(j);
  s.k = j.value("k", s.ambient.max_block_dim());
  s.eta = vector_from_json(j.at("eta"));
  s.e = pvms_from_json(j.at("E"));
  s.f = pvms_from_json(j.at("F"));
  return s;
}

Json to_json(const GeneratedAlgebra& a) {
  Json basis = Json::array();
  for (const Matrix& b : a.basis) basis.push_back(to_json(b));
  return {{"blocks", a.ambient.block_dims()}, {"dim", a.dim()}, {"basis", basis}};
}

Json to_json(const BlockDecomposition& d) {
  Json blocks = Json::array();
  for (const auto& b : d.blocks) blocks.push_back({{"dim", b.dim}, {"multiplicity", b.multiplicity}});
  return {{"blocks", blocks}, {"change_of_basis", to_json(d.change_of_basis)},
          {"round_trip_error", d.round_trip_error}, {"k", d.k}, {"exceeds_k", d.exceeds_k}};
}

Json to_json(const GNSRep& g) {
  Json reps = Json::array();
  for (const Matrix& r : g.rep_matrices) reps.push_back(to_json(r));
  return {{"dimension", g.dimension}, {"cyclic_vector", vector_to_json(g.cyclic_vector)},
          {"rep_matrices", reps}, {"multiplicativity_error", g.multiplicativity_error},
          {"state_error", g.state_error}};
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON";
    throw Error(ErrorCode::kParseError, os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace matorder
