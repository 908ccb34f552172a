#include "aphj/serialize.hpp"

#include "aphj/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace aphj {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // trim to the shortest representation that still round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
  }
}

json parse(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(where + ": malformed JSON");
  return j;
}

long long rat_part(const Int& v, const std::string& where) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v < lo || v > hi)
    throw ConfigError(where + ": rational exceeds 64-bit serialization range");
  return v.convert_to<long long>();
}

json rat_to_json(const Rat& r) {
  return json{{"num", rat_part(rat_num(r), "rational")},
              {"den", rat_part(rat_den(r), "rational")}};
}

Rat rat_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": rational must be {num, den}");
  reject_unknown_keys(j, {"num", "den"}, where);
  if (!j.contains("num") || !j.contains("den") ||
      !j["num"].is_number_integer() || !j["den"].is_number_integer())
    throw ConfigError(where + ": rational must carry integer num and den");
  const long long den = j["den"].get<long long>();
  if (den == 0) throw ConfigError(where + ": zero denominator");
  return Rat(Int(j["num"].get<long long>()), Int(den));
}

json basis_to_json(const std::vector<std::vector<double>>& rows) {
  const bool flat = !rows.empty() && rows[0].size() == 1;
  json b = json::array();
  for (const auto& row : rows) {
    if (flat) {
      b.push_back(row[0]);
    } else {
      json r = json::array();
      for (double x : row) r.push_back(x);
      b.push_back(r);
    }
  }
  return b;
}

std::vector<std::vector<double>> basis_from_json(const json& b, int dim,
                                                 const std::string& where) {
  if (!b.is_array() || b.empty())
    throw ConfigError(where + ": basis must be a nonempty array");
  std::vector<std::vector<double>> rows;
  for (const auto& e : b) {
    if (e.is_number()) {
      if (dim != 1)
        throw ConfigError(where + ": scalar basis entry requires dim 1");
      rows.push_back({e.get<double>()});
    } else if (e.is_array()) {
      if (static_cast<int>(e.size()) != dim)
        throw ConfigError(where + ": basis row length != dim");
      std::vector<double> row;
      for (const auto& x : e) {
        if (!x.is_number()) throw ConfigError(where + ": basis entries must be numbers");
        row.push_back(x.get<double>());
      }
      rows.push_back(std::move(row));
    } else {
      throw ConfigError(where + ": basis rows must be numbers or arrays");
    }
  }
  return rows;
}

} // namespace

std::string trigpoly_to_json(const TrigPoly& p) {
  json j;
  j["dim"] = p.dim();
  if (!p.basis().empty()) j["basis"] = basis_to_json(p.basis());
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json term;
    term["re"] = t.a.real();
    term["im"] = t.a.imag();
    if (t.freq.regime() == FreqRegime::rational) {
      json f = json::array();
      for (const auto& c : t.freq.coords()) f.push_back(rat_to_json(c));
      term["freq"] = f;
    } else {
      json k = json::array();
      for (const auto& c : t.freq.lattice_coords())
        k.push_back(rat_part(c, "lattice coefficient"));
      term["k"] = k;
    }
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

TrigPoly trigpoly_from_json(const std::string& text) {
  const json j = parse(text, "trig polynomial");
  if (!j.is_object()) throw ConfigError("trig polynomial: expected an object");
  reject_unknown_keys(j, {"dim", "basis", "terms"}, "trig polynomial");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ConfigError("trig polynomial: integer dim required");
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ConfigError("trig polynomial: dim must be >= 1");

  std::vector<std::vector<double>> basis;
  if (j.contains("basis")) basis = basis_from_json(j["basis"], dim, "trig polynomial");

  TrigPoly p(dim, basis);
  if (!j.contains("terms") || !j["terms"].is_array())
    throw ConfigError("trig polynomial: terms array required");
  for (const auto& term : j["terms"]) {
    if (!term.is_object()) throw ConfigError("trig polynomial: term must be an object");
    reject_unknown_keys(term, {"re", "im", "freq", "k"}, "trig polynomial term");
    if (!term.contains("re") || !term.contains("im") ||
        !term["re"].is_number() || !term["im"].is_number())
      throw ConfigError("trig polynomial term: numeric re and im required");
    const std::complex<double> a{term["re"].get<double>(), term["im"].get<double>()};
    if (term.contains("freq") == term.contains("k"))
      throw ConfigError("trig polynomial term: exactly one of freq or k required");
    if (term.contains("freq")) {
      const auto& f = term["freq"];
      if (!f.is_array() || static_cast<int>(f.size()) != dim)
        throw ConfigError("trig polynomial term: freq length != dim");
      std::vector<Rat> coords;
      for (const auto& c : f) coords.push_back(rat_from_json(c, "trig polynomial term"));
      p.add_term(a, FrequencyVector::rational(std::move(coords)));
    } else {
      const auto& k = term["k"];
      if (!k.is_array() || k.empty())
        throw ConfigError("trig polynomial term: k must be a nonempty array");
      if (basis.empty())
        throw ConfigError("trig polynomial term: k coefficients need a declared basis");
      if (k.size() != basis.size())
        throw ConfigError("trig polynomial term: k length != basis row count");
      std::vector<Int> kk;
      for (const auto& c : k) {
        if (!c.is_number_integer())
          throw ConfigError("trig polynomial term: k entries must be integers");
        kk.push_back(Int(c.get<long long>()));
      }
      p.add_term(a, FrequencyVector::lattice(std::move(kk), dim));
    }
  }
  p.set_real_valued(p.conjugate_paired());
  return p;
}

std::string module_to_json(const SpectrumModule& m) {
  json j;
  j["rank"] = m.rank();
  j["dim"] = m.dim();
  j["provenance"] = m.provenance();
  if (m.is_declared()) {
    j["regime"] = "declared";
    j["basis"] = basis_to_json(m.real_basis());
  } else {
    j["regime"] = "rational";
    json b = json::array();
    for (const auto& row : m.basis()) {
      json r = json::array();
      for (const auto& c : row.coords()) r.push_back(rat_to_json(c));
      b.push_back(std::move(r));
    }
    j["basis"] = std::move(b);
  }
  return j.dump();
}

SpectrumModule module_from_json(const std::string& text) {
  const json j = parse(text, "spectrum module");
  if (!j.is_object()) throw ConfigError("spectrum module: expected an object");
  reject_unknown_keys(j, {"rank", "dim", "regime", "basis", "provenance"},
                      "spectrum module");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ConfigError("spectrum module: integer dim required");
  const int dim = j["dim"].get<int>();
  if (!j.contains("regime") || !j["regime"].is_string())
    throw ConfigError("spectrum module: regime string required");
  const std::string regime = j["regime"].get<std::string>();
  if (!j.contains("basis")) throw ConfigError("spectrum module: basis required");

  SpectrumModule m;
  if (regime == "declared") {
    m = SpectrumModule::declared(basis_from_json(j["basis"], dim, "spectrum module"), dim);
  } else if (regime == "rational") {
    const auto& b = j["basis"];
    if (!b.is_array() || b.empty())
      throw ConfigError("spectrum module: basis must be a nonempty array");
    std::vector<FrequencyVector> gens;
    for (const auto& row : b) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw ConfigError("spectrum module: basis row length != dim");
      std::vector<Rat> coords;
      for (const auto& c : row) coords.push_back(rat_from_json(c, "spectrum module"));
      gens.push_back(FrequencyVector::rational(std::move(coords)));
    }
    m = module_basis_rational(gens);
  } else {
    throw ConfigError("spectrum module: regime must be rational or declared");
  }
  if (j.contains("rank") &&
      (!j["rank"].is_number_integer() || j["rank"].get<int>() != m.rank()))
    throw ConfigError("spectrum module: declared rank does not match the basis");
  return m;
}

std::string line_to_csv(const SampledLine& u) {
  std::string out = "x,value\n";
  const std::size_t n = u.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    out += format_double(u.x(i));
    out += ',';
    out += format_double(u.values[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError(where + ": malformed number \"" + s + "\"");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> f;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      f.push_back(line.substr(start));
      break;
    }
    f.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return f;
}

} // namespace

SampledLine line_from_csv(const std::string& text, bool periodic) {
  const auto lines = split_lines(text);
  if (lines.size() < 3 || lines[0] != "x,value")
    throw ConfigError("sampled line: expected header \"x,value\" and >= 2 rows");
  SampledLine u;
  u.periodic = periodic;
  std::vector<double> xs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    if (f.size() != 2) throw ConfigError("sampled line: row needs two fields");
    xs.push_back(parse_double(f[0], "sampled line"));
    u.values.push_back(parse_double(f[1], "sampled line"));
  }
  const std::size_t n = xs.size();
  const double h = xs[1] - xs[0];
  if (!(h > 0)) throw ConfigError("sampled line: x must increase");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(xs[i] - (xs[0] + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(xs.back())))
      throw ConfigError("sampled line: x grid is not uniform");
  if (xs[0] != 0.0) throw ConfigError("sampled line: x must start at 0");
  u.length = periodic ? h * static_cast<double>(n) : h * static_cast<double>(n - 1);
  return u;
}

std::string field_to_csv(const TorusField& f) {
  std::string out = "rank,gridN,time\n";
  out += std::to_string(f.rank);
  out += ',';
  out += std::to_string(f.gridN);
  out += ',';
  out += format_double(f.time);
  out += '\n';
  for (double v : f.data) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

TorusField field_from_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.size() < 2 || lines[0] != "rank,gridN,time")
    throw ConfigError("torus field: expected header \"rank,gridN,time\"");
  const auto dims = split_csv(lines[1]);
  if (dims.size() != 3) throw ConfigError("torus field: header row needs three fields");
  TorusField f;
  f.rank = static_cast<int>(parse_double(dims[0], "torus field"));
  f.gridN = static_cast<int>(parse_double(dims[1], "torus field"));
  f.time = parse_double(dims[2], "torus field");
  if (f.rank < 1 || f.gridN < 2) throw ConfigError("torus field: bad dimensions");
  const std::size_t expect = TorusField::total_cells(f.rank, f.gridN);
  if (lines.size() != 2 + expect)
    throw ConfigError("torus field: value count does not match rank/gridN");
  f.data.reserve(expect);
  for (std::size_t i = 2; i < lines.size(); ++i)
    f.data.push_back(parse_double(lines[i], "torus field"));
  return f;
}

std::string cellfield_to_csv(const CellField1D& v) {
  TorusField f;
  f.rank = 1;
  f.gridN = v.gridN;
  f.time = v.time;
  f.data = v.values;
  return field_to_csv(f);
}

std::string series_to_csv(const DiagnosticsSeries& s) {
  std::string out = "t,min,max,osc";
  if (!s.l1ref.empty()) out += ",l1ref";
  for (const auto& label : s.probeLabels) out += ",probe_" + label;
  out += '\n';
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    out += format_double(s.times[k]);
    out += ',';
    out += format_double(s.minSeries[k]);
    out += ',';
    out += format_double(s.maxSeries[k]);
    out += ',';
    out += format_double(s.oscillation[k]);
    if (!s.l1ref.empty()) {
      out += ',';
      out += format_double(s.l1ref[k]);
    }
    for (const auto& col : s.probeSeries) {
      out += ',';
      out += format_double(col[k]);
    }
    out += '\n';
  }
  return out;
}

} // namespace aphj
