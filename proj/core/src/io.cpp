#include "regime_split/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "regime_split/errors.hpp"

namespace regime_split {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) {
    return "";
  }
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) {
      break;
    }
    start = p + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& text) {
  std::string t = trim(text);
  std::uint64_t v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw error(errc::parse_error, "cannot parse integer '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text) {
  std::string t = trim(text);
  int v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw error(errc::parse_error, "cannot parse integer '" + text + "'");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) {
    return out;
  }
  for (const std::string& part : split(text, ',')) {
    out.push_back(parse_double(part));
  }
  return out;
}

struct csv_file {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

csv_file read_csv(const std::string& path) {
  std::string text = read_text_file(path);
  csv_file f;
  bool have_header = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> fields = split(line, ',');
    if (!have_header) {
      f.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != f.header.size()) {
        throw error(errc::parse_error, "'" + path + "' line " + std::to_string(line_no) +
                                           ": expected " + std::to_string(f.header.size()) +
                                           " fields, got " + std::to_string(fields.size()));
      }
      f.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) {
    throw error(errc::parse_error, "'" + path + "' has no header row");
  }
  return f;
}

void require_index_header(const csv_file& f, const std::string& path) {
  if (f.header.empty() || trim(f.header[0]) != "index") {
    throw error(errc::parse_error, "'" + path + "' must start with an 'index' column");
  }
}

// Commas and newlines would break the unquoted CSV layout.
std::string sanitize_field(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') {
      ch = ' ';
    }
  }
  return text;
}

void append_optional(std::string& out, double v) {
  if (std::isfinite(v)) {
    out += format_double(v);
  }
}

json detection_json(const detection_report& r) {
  json j;
  j["switches"] = r.switches;
  j["j"] = r.j;
  j["c"] = r.c;
  j["b_star"] = r.b_star;
  j["epsilon_hat"] = r.epsilon_hat ? json(*r.epsilon_hat) : json(nullptr);
  j["h_hat"] = r.h_hat ? json(*r.h_hat) : json(nullptr);
  j["a_hat"] = r.a_hat ? json(*r.a_hat) : json(nullptr);
  j["partition_at_b_star"] = {{"center", r.partition_at_b_star.center},
                              {"b", r.partition_at_b_star.b},
                              {"n1", r.partition_at_b_star.n1()},
                              {"n2", r.partition_at_b_star.n2()}};
  j["scan"] = {{"grid", r.scan.grid},
               {"psi_values", r.scan.psi_values},
               {"j", r.scan.j},
               {"b_star", r.scan.b_star},
               {"n2_at_b_star", r.scan.n2_at_b_star}};
  j["diagnostic"] = r.diagnostic;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

generator_spec::kind_t kind_from_name(const std::string& name) {
  if (name == "shift_mixture") return generator_spec::kind_t::shift_mixture;
  if (name == "variance_mixture") return generator_spec::kind_t::variance_mixture;
  if (name == "multiclass_mixture") return generator_spec::kind_t::multiclass_mixture;
  if (name == "ar1") return generator_spec::kind_t::ar1;
  if (name == "mv_gaussian_mixture") return generator_spec::kind_t::mv_gaussian_mixture;
  if (name == "switching_regression") return generator_spec::kind_t::switching_regression;
  throw error(errc::parse_error, "unknown generator kind '" + name + "'");
}

experiment_row::mode_t mode_from_name(const std::string& name) {
  using mode_t = experiment_row::mode_t;
  if (name == "calibrate_symmetric") return mode_t::calibrate_symmetric;
  if (name == "calibrate_variance") return mode_t::calibrate_variance;
  if (name == "detect_shift") return mode_t::detect_shift;
  if (name == "detect_variance") return mode_t::detect_variance;
  if (name == "multiclass") return mode_t::multiclass;
  if (name == "multiclass_norms") return mode_t::multiclass_norms;
  if (name == "regression") return mode_t::regression;
  throw error(errc::parse_error, "unknown experiment mode '" + name + "'");
}

bool set_generator_key(generator_spec& g, const std::string& key, const std::string& value) {
  if (key == "kind") {
    g.kind = kind_from_name(value);
  } else if (key == "n") {
    g.n = static_cast<std::size_t>(parse_u64(value));
  } else if (key == "seed") {
    g.seed = parse_u64(value);
  } else if (key == "mu0") {
    g.mu0 = parse_double(value);
  } else if (key == "sigma0") {
    g.sigma0 = parse_double(value);
  } else if (key == "epsilon") {
    g.epsilon = parse_double(value);
  } else if (key == "h") {
    g.h = parse_double(value);
  } else if (key == "lambda") {
    g.lambda = parse_double(value);
  } else if (key == "epsilons") {
    g.epsilons = parse_double_list(value);
  } else if (key == "shifts") {
    g.shifts = parse_double_list(value);
  } else if (key == "rho") {
    g.rho = parse_double(value);
  } else if (key == "dim") {
    g.dim = static_cast<std::size_t>(parse_u64(value));
  } else if (key == "covariance") {
    g.covariance = parse_double_list(value);
  } else if (key == "shift_vectors") {
    g.shift_vectors.clear();
    for (const std::string& part : split(value, ';')) {
      g.shift_vectors.push_back(parse_double_list(part));
    }
  } else if (key == "beta0") {
    g.beta0 = parse_double_list(value);
  } else if (key == "beta1") {
    g.beta1 = parse_double_list(value);
  } else if (key == "noise_sigma") {
    g.noise_sigma = parse_double(value);
  } else {
    return false;
  }
  return true;
}

struct kv_line {
  bool section = false;
  std::string key;
  std::string value;
};

std::vector<kv_line> read_kv_file(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<kv_line> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      out.push_back({true, trim(line.substr(1, line.size() - 2)), ""});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw error(errc::parse_error, "'" + path + "' line " + std::to_string(line_no) +
                                         ": expected key=value");
    }
    out.push_back({false, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::string t = trim(text);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw error(errc::parse_error, "cannot parse number '" + text + "'");
  }
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw error(errc::io_error, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw error(errc::io_error, "cannot read '" + path + "'");
  }
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw error(errc::io_error, "cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw error(errc::io_error, "cannot write '" + path + "'");
  }
}

void write_values_csv(const std::string& path, const sample& values) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_double(values[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_vectors_csv(const std::string& path, const vector_sample& rows) {
  std::string out = "index";
  for (std::size_t j = 0; j < rows.dim; ++j) {
    out += ",x" + std::to_string(j + 1);
  }
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += std::to_string(i + 1);
    const double* row = rows.row(i);
    for (std::size_t j = 0; j < rows.dim; ++j) {
      out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_regression_csv(const std::string& path, const regression_data& data) {
  std::string out = "index,y";
  for (std::size_t j = 0; j < data.k; ++j) {
    out += ",x" + std::to_string(j + 1);
  }
  out += '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_double(data.y[i]);
    const double* row = data.row(i);
    for (std::size_t j = 0; j < data.k; ++j) {
      out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  std::string out = "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += std::to_string(labels[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_data_csv(const std::string& path, const generated_data& data) {
  if (data.regression.size() > 0) {
    write_regression_csv(path, data.regression);
  } else if (data.vectors.size() > 0) {
    write_vectors_csv(path, data.vectors);
  } else {
    write_values_csv(path, data.values);
  }
}

sample read_values_csv(const std::string& path) {
  csv_file f = read_csv(path);
  require_index_header(f, path);
  if (f.header.size() != 2) {
    throw error(errc::parse_error, "'" + path + "': expected header index,value");
  }
  sample out;
  out.reserve(f.rows.size());
  for (const auto& row : f.rows) {
    out.push_back(parse_double(row[1]));
  }
  return out;
}

vector_sample read_vectors_csv(const std::string& path) {
  csv_file f = read_csv(path);
  require_index_header(f, path);
  if (f.header.size() < 2) {
    throw error(errc::parse_error, "'" + path + "': expected header index,x1,...");
  }
  vector_sample vs;
  vs.dim = f.header.size() - 1;
  vs.data.reserve(f.rows.size() * vs.dim);
  for (const auto& row : f.rows) {
    for (std::size_t j = 1; j < row.size(); ++j) {
      vs.data.push_back(parse_double(row[j]));
    }
  }
  return vs;
}

regression_data read_regression_csv(const std::string& path) {
  csv_file f = read_csv(path);
  require_index_header(f, path);
  if (f.header.size() < 3 || trim(f.header[1]) != "y") {
    throw error(errc::parse_error, "'" + path + "': expected header index,y,x1,...");
  }
  regression_data d;
  d.k = f.header.size() - 2;
  d.y.reserve(f.rows.size());
  d.x.reserve(f.rows.size() * d.k);
  for (const auto& row : f.rows) {
    d.y.push_back(parse_double(row[1]));
    for (std::size_t j = 2; j < row.size(); ++j) {
      d.x.push_back(parse_double(row[j]));
    }
  }
  return d;
}

generator_spec generator_from_file(const std::string& path) {
  generator_spec g;
  for (const kv_line& line : read_kv_file(path)) {
    if (line.section) {
      throw error(errc::parse_error,
                  "'" + path + "': generator specs have no [" + line.key + "] sections");
    }
    if (!set_generator_key(g, line.key, line.value)) {
      throw error(errc::parse_error, "'" + path + "': unknown generator key '" + line.key + "'");
    }
  }
  return g;
}

experiment_plan plan_from_file(const std::string& path) {
  experiment_plan plan;
  bool in_row = false;
  for (const kv_line& line : read_kv_file(path)) {
    if (line.section) {
      if (line.key != "row") {
        throw error(errc::parse_error, "'" + path + "': unknown section [" + line.key + "]");
      }
      plan.rows.emplace_back();
      in_row = true;
      continue;
    }
    if (!in_row) {
      if (line.key == "name") {
        plan.name = line.value;
      } else if (line.key == "seed") {
        plan.seed = parse_u64(line.value);
      } else if (line.key == "calibration_sizes") {
        plan.calibration_sizes.clear();
        for (const std::string& part : split(line.value, ',')) {
          plan.calibration_sizes.push_back(static_cast<std::size_t>(parse_u64(part)));
        }
      } else if (line.key == "calibration_trials") {
        plan.calibration_trials = parse_int(line.value);
      } else if (line.key == "calibration_seed") {
        plan.calibration_seed = parse_u64(line.value);
      } else if (line.key == "calibration_alpha0") {
        plan.calibration_alpha0 = parse_double(line.value);
      } else if (line.key == "calibration_ratio") {
        plan.calibration_ratio = parse_double(line.value);
      } else if (line.key == "max_classes") {
        plan.max_classes = parse_int(line.value);
      } else {
        throw error(errc::parse_error, "'" + path + "': unknown plan key '" + line.key + "'");
      }
      continue;
    }
    experiment_row& row = plan.rows.back();
    if (line.key == "mode") {
      row.mode = mode_from_name(line.value);
    } else if (line.key == "scenario") {
      row.scenario = line.value;
    } else if (line.key == "trials") {
      row.trials = parse_int(line.value);
    } else if (line.key == "c") {
      row.c = parse_double(line.value);
    } else if (line.key == "alpha") {
      row.alpha = parse_double(line.value);
    } else if (line.key == "b_max") {
      row.b_max = parse_double(line.value);
    } else if (line.key == "true_k") {
      row.true_k = parse_int(line.value);
    } else if (line.key == "coefficient") {
      row.coefficient = parse_int(line.value);
    } else if (set_generator_key(row.generator, line.key, line.value)) {
    } else {
      throw error(errc::parse_error, "'" + path + "': unknown row key '" + line.key + "'");
    }
  }
  if (plan.rows.empty()) {
    throw error(errc::parse_error, "'" + path + "': plan has no [row] sections");
  }
  return plan;
}

std::string to_json(const calibration_result& r) {
  json j;
  j["method"] = r.method;
  j["C"] = r.c;
  j["alpha"] = r.alpha;
  j["N"] = r.n;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["C_se"] = r.c_se;
  j["note"] = r.note;
  return dump(j);
}

std::string to_json(const detection_report& r) { return dump(detection_json(r)); }

std::string to_json(const multiclass_report& r) {
  json j;
  j["k_hat"] = r.k_hat;
  j["class_fractions"] = r.class_fractions;
  j["class_centers"] = r.class_centers;
  j["termination"] = termination_name(r.termination);
  json trace = json::array();
  for (const detection_report& step : r.peel_trace) {
    trace.push_back(detection_json(step));
  }
  j["peel_trace"] = std::move(trace);
  return dump(j);
}

std::string to_json(const regression_switch_report& r) {
  json j;
  j["any_switch"] = r.any_switch;
  j["epsilon_hat"] = r.epsilon_hat ? json(*r.epsilon_hat) : json(nullptr);
  j["strongest_coefficient"] = r.strongest_coefficient;
  json coeffs = json::array();
  for (const detection_report& rep : r.per_coefficient) {
    coeffs.push_back(detection_json(rep));
  }
  j["per_coefficient"] = std::move(coeffs);
  return dump(j);
}

std::string to_json(const experiment_table& t) {
  json j;
  j["name"] = t.name;
  j["seed"] = t.seed;
  json cells = json::array();
  for (const experiment_cell& cell : t.cells) {
    json c;
    c["scenario"] = cell.scenario;
    c["n"] = cell.n;
    c["trials"] = cell.trials;
    c["c"] = cell.c;
    c["c_se"] = cell.c_se;
    c["w2"] = cell.w2;
    c["w2_se"] = cell.w2_se;
    c["epsilon_hat"] = cell.epsilon_hat;
    c["epsilon_se"] = cell.epsilon_se;
    c["k_error"] = cell.k_error;
    c["k_error_se"] = cell.k_error_se;
    c["error"] = cell.error;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return dump(j);
}

calibration_result calibration_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("C") || !j["C"].is_number()) {
    throw error(errc::parse_error, "calibration JSON needs a numeric \"C\" field");
  }
  calibration_result r;
  r.c = j["C"].get<double>();
  r.method = j.value("method", std::string("mc_quantile"));
  r.alpha = j.value("alpha", 0.0);
  r.n = j.value("N", std::size_t{0});
  r.trials = j.value("trials", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.c_se = j.value("C_se", 0.0);
  r.note = j.value("note", std::string());
  return r;
}

std::string to_csv(const experiment_table& t) {
  std::string out =
      "scenario,n,trials,c,c_se,w2,w2_se,epsilon_hat,epsilon_se,k_error,k_error_se,error\n";
  for (const experiment_cell& cell : t.cells) {
    out += sanitize_field(cell.scenario);
    out += ',';
    out += std::to_string(cell.n);
    out += ',';
    out += std::to_string(cell.trials);
    out += ',';
    append_optional(out, cell.c);
    out += ',';
    append_optional(out, cell.c_se);
    out += ',';
    append_optional(out, cell.w2);
    out += ',';
    append_optional(out, cell.w2_se);
    out += ',';
    append_optional(out, cell.epsilon_hat);
    out += ',';
    append_optional(out, cell.epsilon_se);
    out += ',';
    append_optional(out, cell.k_error);
    out += ',';
    append_optional(out, cell.k_error_se);
    out += ',';
    out += sanitize_field(cell.error);
    out += '\n';
  }
  return out;
}

}  // namespace regime_split
