#include "gnd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "gnd/error.hpp"

namespace gnd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

class Reader {
 public:
  Reader(const std::map<std::string, Section>& sections) : sections_(sections) {}

  std::optional<Entry> get(const std::string& section, const std::string& key) {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto e = s->second.find(key);
    if (e == s->second.end()) return std::nullopt;
    used_.insert(section + "." + key);
    return e->second;
  }

  std::optional<double> number(const std::string& section, const std::string& key) {
    const auto e = get(section, key);
    if (!e) return std::nullopt;
    return parse_number(*e, key);
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key) {
    const auto v = number(section, key);
    if (!v) return std::nullopt;
    if (*v < 0 || *v != std::floor(*v) || *v > 1e15)
      throw ParameterError("key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(*v);
  }

  static double parse_number(const Entry& e, const std::string& key) {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
      throw ParameterError("line " + std::to_string(e.line) + ": key '" + key +
                           "' expects a number, got '" + e.value + "'");
    return v;
  }

  void reject_unused() const {
    for (const auto& [name, section] : sections_)
      for (const auto& [key, entry] : section)
        if (!used_.count(name + "." + key))
          throw ParameterError("line " + std::to_string(entry.line) + ": unknown key '" + key +
                               "' in section [" + name + "]");
  }

 private:
  const std::map<std::string, Section>& sections_;
  std::set<std::string> used_;
};

Point parse_bounds(const Entry& e, const std::string& key) {
  Point out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string item(trim(rest.substr(0, comma)));
    out.push_back(Reader::parse_number({item, e.line}, key));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ParameterError("line " + std::to_string(e.line) + ": key '" + key +
                       "' expects true or false");
}

std::uint64_t parse_seed(const Entry& e) {
  std::uint64_t v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw ParameterError("line " + std::to_string(e.line) +
                         ": seed must be an unsigned 64-bit integer");
  return v;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParameterError("line " + std::to_string(line_no) + ": malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "experiment" && current != "objective" && current != "algorithm")
        throw ParameterError("line " + std::to_string(line_no) + ": unknown section [" +
                             current + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || current.empty())
      throw ParameterError("line " + std::to_string(line_no) +
                           ": expected key = value inside a section");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (!sections[current].emplace(key, Entry{std::string(value), line_no}).second)
      throw ParameterError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }

  Reader rd(sections);
  ExperimentConfig cfg;

  const auto function = rd.get("objective", "function");
  if (!function) throw ParameterError("[objective] function is required");
  cfg.objective.function = function->value;
  for (const char* key : {"n", "k", "eps", "R", "a", "b", "c", "alpha", "dim"})
    if (const auto v = rd.number("objective", key)) cfg.objective.params[key] = *v;

  if (const auto v = rd.count("experiment", "trials")) cfg.trials = *v;
  if (const auto e = rd.get("experiment", "seed")) cfg.seed = parse_seed(*e);
  if (const auto v = rd.number("experiment", "threshold")) cfg.threshold = *v;
  if (const auto v = rd.count("experiment", "workers")) {
    if (*v < 1 || *v > 4096) throw ParameterError("workers must lie in [1, 4096]");
    cfg.workers = static_cast<unsigned>(*v);
  }
  for (const char* section : {"experiment", "algorithm"})
    if (const auto v = rd.number(section, "sg_noise_r")) cfg.r = *v;

  std::optional<std::size_t> T = rd.count("experiment", "T");
  if (const auto v = rd.count("algorithm", "T")) T = v;

  const Objective obj = make_objective(cfg.objective);
  const std::size_t dim = obj.dim();
  auto bounds = [&](const char* key) -> Point {
    const auto e = rd.get("experiment", key);
    if (!e) throw ParameterError(std::string("[experiment] ") + key + " is required");
    Point p = parse_bounds(*e, key);
    if (p.size() == 1) p.assign(dim, p[0]);
    return p;
  };
  cfg.init_box = {bounds("init_low"), bounds("init_high")};

  const auto algo = rd.get("algorithm", "algorithm");
  const std::string name = algo ? algo->value : "gnd";
  const double eta = rd.number("algorithm", "eta").value_or(0.1);
  const bool record_y =
      rd.get("algorithm", "record_y") ? parse_bool(*rd.get("algorithm", "record_y"), "record_y")
                                      : false;
  if (name == "gnd") {
    cfg.algorithm = GndConfig{eta, rd.number("algorithm", "s").value_or(0.0),
                              rd.number("algorithm", "f_lb").value_or(0.0), T.value_or(0),
                              record_y};
  } else if (name == "gd") {
    cfg.algorithm = GdConfig{eta, T.value_or(0)};
  } else if (name == "dlgnd") {
    DlGndConfig dl;
    dl.eta = eta;
    dl.s = rd.number("algorithm", "s").value_or(0.0);
    dl.f_lb0 = rd.number("algorithm", "f_lb0").value_or(0.0);
    dl.gamma = rd.number("algorithm", "gamma").value_or(0.5);
    dl.T1 = rd.count("algorithm", "T1").value_or(1);
    dl.T2 = rd.count("algorithm", "T2").value_or(1);
    dl.record_y = record_y;
    if (const auto N = rd.count("algorithm", "N")) {
      dl.N = *N;
    } else if (T && *T > dl.T1 && dl.T2 > 0) {
      dl.N = (*T - dl.T1 + dl.T2 - 1) / dl.T2;
    } else {
      throw ParameterError("dlgnd requires N (or T > T1)");
    }
    cfg.algorithm = dl;
  } else {
    throw ParameterError("unknown algorithm '" + name + "' (expected gnd, dlgnd or gd)");
  }

  rd.reject_unused();
  cfg.validate(obj);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config '" + path.string() + "'");
  return parse_config(text.str());
}

std::string render_config(const ExperimentConfig& cfg) {
  auto list = [](const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_double(p[i]);
    return s;
  };
  std::ostringstream os;
  os << "[experiment]\n"
     << "trials = " << cfg.trials << "\n"
     << "seed = " << cfg.seed << "\n"
     << "threshold = " << format_double(cfg.threshold) << "\n"
     << "workers = " << cfg.workers << "\n"
     << "T = " << algorithm_iterations(cfg.algorithm) << "\n"
     << "init_low = " << list(cfg.init_box.low) << "\n"
     << "init_high = " << list(cfg.init_box.high) << "\n"
     << "sg_noise_r = " << format_double(cfg.r) << "\n\n"
     << "[objective]\n"
     << "function = \"" << cfg.objective.function << "\"\n";
  for (const auto& [key, value] : cfg.objective.params)
    os << key << " = " << format_double(value) << "\n";
  os << "\n[algorithm]\n"
     << "algorithm = \"" << algorithm_name(cfg.algorithm) << "\"\n";
  if (const auto* g = std::get_if<GndConfig>(&cfg.algorithm)) {
    os << "eta = " << format_double(g->eta) << "\n"
       << "s = " << format_double(g->s) << "\n"
       << "f_lb = " << format_double(g->f_lb) << "\n"
       << "record_y = " << (g->record_y ? "true" : "false") << "\n";
  } else if (const auto* gd = std::get_if<GdConfig>(&cfg.algorithm)) {
    os << "eta = " << format_double(gd->eta) << "\n";
  } else {
    const auto& dl = std::get<DlGndConfig>(cfg.algorithm);
    os << "eta = " << format_double(dl.eta) << "\n"
       << "s = " << format_double(dl.s) << "\n"
       << "f_lb0 = " << format_double(dl.f_lb0) << "\n"
       << "gamma = " << format_double(dl.gamma) << "\n"
       << "N = " << dl.N << "\n"
       << "T1 = " << dl.T1 << "\n"
       << "T2 = " << dl.T2 << "\n"
       << "record_y = " << (dl.record_y ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace gnd
