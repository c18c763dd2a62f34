#include "persist/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace persist {

using nlohmann::json;

std::string format_number(double x) {
  if (x == kInf) return "\"inf\"";
  if (x == -kInf) return "\"-inf\"";
  if (std::isnan(x)) fail_input("cannot serialise NaN");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string barcode_to_json(const Barcode& B) {
  std::string s = "{\"bars\":[";
  for (std::size_t i = 0; i < B.size(); ++i) {
    const Bar& b = B[i];
    if (i) s += ',';
    s += "{\"birth\":" + format_number(b.birth) + ",\"death\":" + format_number(b.death) + ",\"degree\":";
    s += b.degree ? std::to_string(*b.degree) : "null";
    s += '}';
  }
  return s + "]}";
}

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail_input(std::string(what) + ": " + e.what());
  }
}

double endpoint(const json& v, const char* name) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail_input(std::string("barcode JSON: field '") + name + "' must be a number, \"inf\" or \"-inf\"");
}

}  // namespace

Barcode barcode_from_json(const std::string& text) {
  json j = parse_json(text, "barcode JSON");
  if (!j.is_object() || !j.contains("bars") || !j["bars"].is_array()) fail_input("barcode JSON: expected {\"bars\": [...]}");
  Barcode B;
  for (const auto& b : j["bars"]) {
    if (!b.is_object() || !b.contains("birth") || !b.contains("death")) fail_input("barcode JSON: each bar needs birth and death");
    std::optional<int> deg;
    if (b.contains("degree") && !b["degree"].is_null()) {
      if (!b["degree"].is_number_integer()) fail_input("barcode JSON: degree must be an integer or null");
      deg = b["degree"].get<int>();
    }
    B.bars.push_back(Bar::make(endpoint(b["birth"], "birth"), endpoint(b["death"], "death"), deg));
  }
  return B;
}

std::string module_to_json(const ModuleRep& V) {
  std::string s = "{\"spectrum\":[";
  for (std::size_t i = 0; i < V.spectrum().size(); ++i) s += (i ? "," : "") + format_number(V.spectrum()[i]);
  s += "],\"dims\":[";
  for (std::size_t i = 0; i < V.dims().size(); ++i) s += (i ? "," : "") + std::to_string(V.dims()[i]);
  s += "],\"maps\":[";
  for (std::size_t i = 0; i < V.maps().size(); ++i) {
    s += i ? ",[" : "[";
    const auto& d = V.maps()[i].data();
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    s += ']';
  }
  return s + "]}";
}

namespace {

ModuleRep module_from(const json& j, Field f) {
  if (!j.is_object() || !j.contains("spectrum") || !j.contains("dims") || !j.contains("maps"))
    fail_input("module JSON: expected spectrum, dims and maps");
  std::vector<double> spec;
  for (const auto& v : j["spectrum"]) spec.push_back(endpoint(v, "spectrum"));
  auto dims = j["dims"].get<std::vector<std::size_t>>();
  std::vector<Matrix> maps;
  const auto& jm = j["maps"];
  if (!jm.is_array() || jm.size() + 1 != dims.size()) fail_input("module JSON: need one map between consecutive cells");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    auto entries = jm[i].get<std::vector<long long>>();
    std::size_t r = dims[i + 1], c = dims[i];
    if (entries.size() != r * c) fail_input("module JSON: map " + std::to_string(i) + " has the wrong size");
    Matrix m(r, c, f);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) m(a, b) = f.from_int(entries[a * c + b]);
    maps.push_back(m);
  }
  return ModuleRep(spec, dims, std::move(maps), f);
}

}  // namespace

ModuleRep module_from_json(const std::string& text, Field f) {
  try {
    return module_from(parse_json(text, "module JSON"), f);
  } catch (const json::exception& e) {
    fail_input(std::string("module JSON: ") + e.what());
  }
}

namespace {

double parse_value(const std::string& tok, const std::string& where) {
  if (tok == "inf" || tok == "+inf") return kInf;
  if (tok == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  fail_input(where + ": '" + tok + "' is not a number");
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

FilteredComplex parse_complex(std::istream& in, const std::string& source) {
  FilteredComplex C;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    auto colon = t.find(" :");
    std::string head = t.substr(0, colon == std::string::npos ? t.size() : colon);
    std::string tail = colon == std::string::npos ? "" : t.substr(colon + 2);
    std::istringstream hs(head);
    std::string id, deg, val, extra;
    if (!(hs >> id >> deg >> val) || (hs >> extra)) fail_input(where + ": expected `id degree u : boundary...`");
    int degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoi(deg, &used);
      if (used != deg.size() || degree < 0) throw std::invalid_argument(deg);
    } catch (const std::exception&) {
      fail_input(where + ": degree must be a non-negative integer");
    }
    double u = parse_value(val, where);
    std::vector<std::pair<std::size_t, long long>> bd;
    std::istringstream ts(tail);
    std::string tok;
    while (ts >> tok) {
      std::string bid = tok;
      long long coeff = 1;
      auto c = tok.rfind(':');
      if (c != std::string::npos) {
        bid = tok.substr(0, c);
        try {
          std::size_t used = 0;
          coeff = std::stoll(tok.substr(c + 1), &used);
          if (used != tok.size() - c - 1) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail_input(where + ": bad coefficient in '" + tok + "'");
        }
      }
      if (!C.has_id(bid)) fail_input(where + ": boundary cell '" + bid + "' is not defined above");
      bd.emplace_back(C.index_of(bid), coeff);
    }
    try {
      C.add_cell(id, degree, u, std::move(bd));
    } catch (const Error& e) {
      fail_input(where + ": " + e.what());
    }
  }
  return C;
}

std::string complex_to_text(const FilteredComplex& C) {
  std::string s;
  for (const auto& c : C.cells()) {
    std::string v = format_number(c.value);
    if (v.front() == '"') v = v.substr(1, v.size() - 2);
    s += c.id + " " + std::to_string(c.degree) + " " + v + " :";
    for (auto [b, k] : c.boundary) s += " " + C.cell(b).id + ":" + std::to_string(k);
    s += '\n';
  }
  return s;
}

std::vector<std::vector<double>> read_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::vector<double> row;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      if (cell.empty()) fail_input(where + ": empty field");
      row.push_back(parse_value(cell, where));
    }
    if (!t.empty() && t.back() == ',') fail_input(where + ": trailing comma");
    if (!rows.empty() && row.size() != rows.front().size())
      fail_input(where + ": expected " + std::to_string(rows.front().size()) + " fields, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail_input(source + ": no data rows");
  return rows;
}

PointCloud point_cloud_from_csv(std::istream& in, const std::string& source) {
  PointCloud P{read_csv(in, source)};
  for (const auto& p : P.points)
    for (double x : p)
      if (!std::isfinite(x)) fail_input(source + ": coordinates must be finite");
  return P;
}

FiniteMetricSpace distance_matrix_from_csv(std::istream& in, const std::string& source) {
  auto rows = read_csv(in, source);
  if (rows.size() != rows.front().size()) fail_input(source + ": distance matrix must be square");
  try {
    return FiniteMetricSpace(std::move(rows));
  } catch (const Error& e) {
    fail_input(source + ": " + e.what());
  }
}

GridFunction grid_from_csv(std::istream& in, double period, const std::string& source) {
  auto rows = read_csv(in, source);
  if (!(period > 0)) fail_input("grid period must be positive");
  GridFunction g;
  g.ny = rows.size();
  g.nx = rows.front().size();
  g.period = period;
  for (const auto& r : rows)
    for (double v : r) {
      if (!std::isfinite(v)) fail_input(source + ": grid values must be finite");
      g.values.push_back(v);
    }
  return g;
}

ComplexActionSpec action_spec_from_json(const std::string& text, const FilteredComplex& C) {
  json j = parse_json(text, "action JSON");
  ComplexActionSpec s;
  try {
    s.order = j.value("order", std::size_t{2});
    s.degree = j.value("degree", 0);
    for (std::size_t i = 0; i < C.size(); ++i) s.action.emplace_back(i, 1);
    if (j.contains("cells")) {
      for (const auto& [from, to] : j["cells"].items()) {
        if (!C.has_id(from)) fail_input("action JSON: unknown cell '" + from + "'");
        auto t = to.get<std::string>();
        long long sign = 1;
        if (!t.empty() && t[0] == '-') { sign = -1; t = t.substr(1); }
        if (!C.has_id(t)) fail_input("action JSON: unknown cell '" + t + "'");
        s.action[C.index_of(from)] = {C.index_of(t), sign};
      }
    }
  } catch (const json::exception& e) {
    fail_input(std::string("action JSON: ") + e.what());
  }
  return s;
}

ModuleRepWithAction slice_action_from_json(const std::string& text, Field f) {
  json j = parse_json(text, "action JSON");
  try {
    if (!j.contains("module") || !j.contains("action")) fail_input("action JSON: expected module and action");
    ModuleRepWithAction R{module_from(j["module"], f), j.value("order", std::size_t{2}), {}};
    const auto& ja = j["action"];
    if (!ja.is_array() || ja.size() != R.rep.num_cells()) fail_input("action JSON: one matrix per cell is required");
    for (std::size_t c = 0; c < ja.size(); ++c) {
      auto e = ja[c].get<std::vector<long long>>();
      std::size_t d = R.rep.dims()[c];
      if (e.size() != d * d) fail_input("action JSON: matrix " + std::to_string(c) + " has the wrong size");
      Matrix m(d, d, f);
      for (std::size_t a = 0; a < d * d; ++a) m(a / d, a % d) = f.from_int(e[a]);
      R.action.push_back(m);
    }
    return R;
  } catch (const json::exception& e) {
    fail_input(std::string("action JSON: ") + e.what());
  }
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j = parse_json(text, "experiment config");
  ExperimentConfig c;
  try {
    c.grid = j.value("grid", c.grid);
    c.lambda = j.value("lambda", c.lambda);
    c.count = j.value("count", c.count);
    c.seed = j.value("seed", c.seed);
    c.slack_pct = j.value("slack_pct", c.slack_pct);
  } catch (const json::exception& e) {
    fail_input(std::string("experiment config: ") + e.what());
  }
  if (c.grid < 4) fail_input("experiment config: grid must be at least 4");
  if (c.lambda < 1) fail_input("experiment config: lambda must be at least 1");
  if (!(c.slack_pct >= 0)) fail_input("experiment config: slack_pct must be non-negative");
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot write " + path);
  out << text;
  if (!out) fail_input("write failed for " + path);
}

}  // namespace persist
