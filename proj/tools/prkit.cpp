// prkit command-line front end. Talks to the library only through prkit.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "prkit/prkit.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitError = 2;

struct Options {
  std::string command;
  std::string system;
  std::string matrix_file;
  std::string coloring;
  std::string property;
  std::string cert_file;
  std::string solution;
  std::string demo = "truncation";
  std::vector<std::string> values;
  std::vector<std::int64_t> cls;
  std::uint64_t cols = 64;
  std::size_t max_size = 0;
  std::size_t max_columns = 0;
  unsigned k = 2;
  std::uint64_t cap = 100;
  std::int64_t N = 100;
  std::int64_t H = 64;
  std::uint64_t B = 7;
  unsigned M = 0;
  std::uint64_t q = 5;
  std::uint64_t t_max = 64;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = 0;
  unsigned threads = 1;
  bool distinct = false;
  bool pretty = false;
  bool timing = false;
  std::string out;
};

struct Failure {
  prk_status status;
  std::string message;
};

void check(prk_status s) {
  if (s != PRK_OK && s != PRK_NOT_FOUND) {
    const char* msg = prk_last_error();
    throw Failure{s, std::string(prk_status_name(s)) + (msg && *msg ? std::string(": ") + msg : "")};
  }
}

struct CString {
  char* p = nullptr;
  ~CString() { prk_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct SystemHandle {
  prk_system* p = nullptr;
  ~SystemHandle() { prk_system_close(p); }
};

struct ColoringHandle {
  prk_coloring* p = nullptr;
  ~ColoringHandle() { prk_coloring_close(p); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{PRK_ERR_INVALID_ARGUMENT, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void open_system(const Options& o, SystemHandle& h) {
  if (!o.matrix_file.empty()) {
    check(prk_system_from_json(read_file(o.matrix_file).c_str(), &h.p));
  } else if (!o.system.empty()) {
    check(prk_system_open(o.system.c_str(), &h.p));
  } else {
    throw Failure{PRK_ERR_INVALID_ARGUMENT, "a system id or --matrix FILE is required"};
  }
}

// Output sink: JSON by default, a plain key/value table with --pretty.
class Printer {
 public:
  explicit Printer(const Options& o) : pretty_(o.pretty), path_(o.out) {}

  void json(const Json& j) {
    if (pretty_)
      table(j, "");
    else
      buf_ << j.dump() << '\n';
  }
  void line(const std::string& s) { buf_ << s << '\n'; }
  bool pretty() const { return pretty_; }

  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Failure{PRK_ERR_INVALID_ARGUMENT, "cannot write " + path_};
    f << buf_.str();
  }

 private:
  static std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static bool flat(const Json& a) {
    for (const auto& v : a)
      if (v.is_structured()) return false;
    return true;
  }

  void table(const Json& j, const std::string& prefix) {
    if (j.is_object()) {
      for (const auto& [key, v] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (v.is_object() && !v.empty()) {
          table(v, name);
        } else if (v.is_array() && !flat(v)) {
          for (std::size_t i = 0; i < v.size(); ++i) table(v[i], name + "[" + std::to_string(i) + "]");
        } else {
          buf_ << name << ":" << std::string(name.size() < 22 ? 22 - name.size() : 1, ' ') << render(v) << '\n';
        }
      }
    } else if (j.is_array() && !flat(j)) {
      for (std::size_t i = 0; i < j.size(); ++i) table(j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
      buf_ << (prefix.empty() ? "" : prefix + ": ") << render(j) << '\n';
    }
  }

  static std::string render(const Json& v) {
    if (!v.is_array()) return scalar(v);
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + scalar(e);
    return s;
  }

  bool pretty_;
  std::string path_;
  std::ostringstream buf_;
};

int cmd_systems(const Options&, Printer& p) {
  CString s;
  check(prk_system_ids(&s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_describe(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  check(prk_system_describe(h.p, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_check_cp(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  const prk_status st = prk_check_cp(h.p, o.max_columns, &s.p);
  check(st);
  if (st == PRK_NOT_FOUND) {
    p.line("none");
    return 1;
  }
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_verify(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  if (o.cert_file.empty()) throw Failure{PRK_ERR_INVALID_ARGUMENT, "--cert FILE is required"};
  const prk_status st = prk_verify_certificate(h.p, read_file(o.cert_file).c_str());
  check(st);
  p.json(Json{{"valid", st == PRK_OK}});
  return st == PRK_OK ? 0 : 1;
}

int cmd_zero_subset(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  const prk_status st = prk_zero_subset(h.p, o.cols, o.max_size, &s.p);
  check(st);
  if (st == PRK_NOT_FOUND) {
    p.line("none");
    return 1;
  }
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_row_sums(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  check(prk_row_sums(h.p, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_extract(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  check(prk_extract_zero_subset(h.p, o.q, o.solution.c_str(), &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_color(const Options& o, Printer& p) {
  ColoringHandle c;
  check(prk_coloring_open(o.coloring.c_str(), &c.p));
  Json rows = Json::array();
  for (const auto& v : o.values) {
    std::uint64_t color = 0;
    check(prk_coloring_eval(c.p, v.c_str(), &color));
    rows.push_back(Json{{"value", v}, {"color", color}});
  }
  if (p.pretty()) {
    for (const auto& r : rows) p.line(r["value"].get<std::string>() + "\t" + std::to_string(r["color"].get<std::uint64_t>()));
  } else {
    p.json(Json{{"coloring", o.coloring}, {"colors", rows}});
  }
  return 0;
}

int cmd_search(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  ColoringHandle c;
  check(prk_coloring_open(o.coloring.c_str(), &c.p));
  prk_budget b = prk_default_budget();
  b.n = o.N;
  b.height = o.H;
  if (o.max_nodes) b.max_nodes = o.max_nodes;
  CString s;
  check(prk_find_mono_solution(h.p, c.p, &b, o.timing, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_forcing(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  CString s;
  check(prk_forcing_number(h.p, o.k, o.cap, o.threads, o.timing, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_in_class(const Options& o, Printer& p) {
  SystemHandle h;
  open_system(o, h);
  if (o.cls.empty()) throw Failure{PRK_ERR_INVALID_ARGUMENT, "--class needs at least one value"};
  CString s;
  const prk_status st = prk_solution_in_class(h.p, o.cls.data(), o.cls.size(), o.distinct, &s.p);
  check(st);
  if (st == PRK_NOT_FOUND) {
    p.line("none");
    return 1;
  }
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_demo(const Options& o, Printer& p) {
  if (o.demo != "truncation") throw Failure{PRK_ERR_UNKNOWN_ID, "unknown demo: " + o.demo};
  CString s;
  check(prk_truncation_demo(o.M, o.k, o.cap, o.threads, o.timing, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_blocking(const Options& o, Printer& p) {
  const std::uint64_t bound = o.property == "carry-blocking" ? o.B : static_cast<std::uint64_t>(o.H);
  CString s;
  check(prk_blocking_search(o.property.c_str(), bound, &s.p));
  p.json(Json::parse(s.str()));
  return 0;
}

int cmd_sample(const Options& o, Printer& p) {
  CString s;
  check(prk_sample_property(o.property.c_str(), o.samples, o.seed, &s.p));
  const Json j = Json::parse(s.str());
  p.json(j);
  return j["failures"].get<std::uint64_t>() == 0 ? 0 : 1;
}

int cmd_nu_csv(const Options& o, Printer& p) {
  CString s;
  check(prk_nu_csv(o.t_max, &s.p));
  std::string csv = s.str();
  if (!csv.empty() && csv.back() == '\n') csv.pop_back();
  p.line(csv);
  return 0;
}

int dispatch(const Options& o, Printer& p);

// Experiment config: {"command": "...", "system": "...", ...} with the same
// field names as the long flags.
Options load_config(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Failure{PRK_ERR_PARSE, "config " + path + ": " + e.what()};
  }
  if (!j.is_object()) throw Failure{PRK_ERR_PARSE, "config must be a JSON object"};
  Options o;
  const auto positive = [&](const char* key) {
    if (j.contains(key) && !(j[key].is_number_integer() && j[key].get<long long>() > 0))
      throw Failure{PRK_ERR_INVALID_ARGUMENT, std::string("config field '") + key + "' must be a positive integer"};
  };
  for (const char* key : {"cols", "k", "cap", "N", "H", "B", "q", "t_max", "samples", "threads", "max_nodes"})
    positive(key);
  try {
    o.command = j.at("command").get<std::string>();
    o.system = j.value("system", "");
    o.matrix_file = j.value("matrix", "");
    o.coloring = j.value("coloring", "");
    o.property = j.value("property", "");
    o.cert_file = j.value("cert", "");
    o.demo = j.value("demo", "truncation");
    o.solution = j.contains("solution") ? j["solution"].dump() : "";
    o.values = j.value("values", std::vector<std::string>{});
    o.cls = j.value("class", std::vector<std::int64_t>{});
    o.cols = j.value("cols", o.cols);
    o.max_size = j.value("max_size", o.max_size);
    o.max_columns = j.value("max_columns", o.max_columns);
    o.k = j.value("k", o.k);
    o.cap = j.value("cap", o.cap);
    o.N = j.value("N", o.N);
    o.H = j.value("H", o.H);
    o.B = j.value("B", o.B);
    o.M = j.value("M", o.M);
    o.q = j.value("q", o.q);
    o.t_max = j.value("t_max", o.t_max);
    o.samples = j.value("samples", o.samples);
    o.seed = j.value("seed", o.seed);
    o.max_nodes = j.value("max_nodes", o.max_nodes);
    o.threads = j.value("threads", o.threads);
    o.distinct = j.value("distinct", false);
    o.pretty = j.value("pretty", false);
    o.timing = j.value("timing", false);
    o.out = j.value("out", "");
  } catch (const Json::exception& e) {
    throw Failure{PRK_ERR_PARSE, std::string("config: ") + e.what()};
  }
  if (o.command == "run") throw Failure{PRK_ERR_INVALID_ARGUMENT, "config cannot run another config"};
  // Resolve referenced ids up front so a bad config fails before any work.
  if (!o.system.empty()) {
    SystemHandle h;
    check(prk_system_open(o.system.c_str(), &h.p));
  }
  if (!o.coloring.empty()) {
    ColoringHandle c;
    check(prk_coloring_open(o.coloring.c_str(), &c.p));
  }
  return o;
}

int dispatch(const Options& o, Printer& p) {
  const std::string& c = o.command;
  if (c == "systems") return cmd_systems(o, p);
  if (c == "describe") return cmd_describe(o, p);
  if (c == "check-cp") return cmd_check_cp(o, p);
  if (c == "verify") return cmd_verify(o, p);
  if (c == "zero-subset") return cmd_zero_subset(o, p);
  if (c == "row-sums") return cmd_row_sums(o, p);
  if (c == "extract") return cmd_extract(o, p);
  if (c == "color") return cmd_color(o, p);
  if (c == "search") return cmd_search(o, p);
  if (c == "forcing") return cmd_forcing(o, p);
  if (c == "in-class") return cmd_in_class(o, p);
  if (c == "demo") return cmd_demo(o, p);
  if (c == "blocking") return cmd_blocking(o, p);
  if (c == "sample") return cmd_sample(o, p);
  if (c == "nu-csv") return cmd_nu_csv(o, p);
  throw Failure{PRK_ERR_UNKNOWN_ID, "unknown command: " + c};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prkit: partition regularity toolkit"};
  app.require_subcommand(1);
  Options o;
  std::string config;

  app.add_flag("--pretty", o.pretty, "Human-readable tables instead of JSON");
  app.add_option("--out", o.out, "Write output to FILE");
  app.add_flag("--timing", o.timing, "Include wall time (ms) in search outcomes");

  const auto system_arg = [&](CLI::App* sub, bool required = false) {
    auto* opt = sub->add_option("system", o.system, "System id (see `prkit systems`)");
    auto* mat = sub->add_option("--matrix", o.matrix_file, "Matrix JSON file");
    opt->excludes(mat);
    if (required) opt->required();
  };

  app.add_subcommand("systems", "List system ids");
  system_arg(app.add_subcommand("describe", "Show a system"));

  auto* cp = app.add_subcommand("check-cp", "Columns-property certificate (exit 0 holds, 1 fails)");
  system_arg(cp);
  cp->add_option("--max-columns", o.max_columns, "Column cap for the search");

  auto* ver = app.add_subcommand("verify", "Check a certificate file against a system");
  system_arg(ver);
  ver->add_option("--cert", o.cert_file, "Certificate JSON file")->required();

  auto* zs = app.add_subcommand("zero-subset", "Non-empty set of columns summing to zero (exit 0 found, 1 none)");
  system_arg(zs);
  zs->add_option("--cols", o.cols, "Columns per block for infinite systems")->check(CLI::PositiveNumber);
  zs->add_option("--max-size", o.max_size, "Largest subset size (0 = unlimited)");

  system_arg(app.add_subcommand("row-sums", "Row sums of absolute values and admissible prime"));

  auto* ex = app.add_subcommand("extract", "Zero-sum columns from a digit-monochromatic solution");
  system_arg(ex);
  ex->add_option("-q", o.q, "Prime base")->required();
  ex->add_option("--solution", o.solution, "Solution as a JSON array")->required();

  auto* col = app.add_subcommand("color", "Evaluate a coloring");
  col->add_option("coloring", o.coloring, "Coloring id")->required();
  col->add_option("values", o.values, "Rationals to color")->required();

  auto* se = app.add_subcommand("search", "Monochromatic solution under a coloring");
  system_arg(se);
  se->add_option("--coloring,-c", o.coloring, "Coloring id")->required();
  se->add_option("-N", o.N, "Integer domain bound")->check(CLI::PositiveNumber);
  se->add_option("-H", o.H, "Rational height bound")->check(CLI::PositiveNumber);
  se->add_option("--max-nodes", o.max_nodes, "Node budget");

  auto* fo = app.add_subcommand("forcing", "Forcing number for k-colorings of [1, N]");
  system_arg(fo);
  fo->add_option("-k", o.k, "Number of colors")->check(CLI::PositiveNumber);
  fo->add_option("--cap", o.cap, "Largest N tried")->check(CLI::PositiveNumber);
  fo->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* ic = app.add_subcommand("in-class", "Solution with every variable in a given set");
  system_arg(ic);
  ic->add_option("--class", o.cls, "Allowed values")->required();
  ic->add_flag("--distinct", o.distinct, "Require pairwise distinct entries");

  auto* de = app.add_subcommand("demo", "Forcing experiments on truncated systems");
  de->add_option("name", o.demo, "Demo name (truncation)");
  de->add_option("-M", o.M, "Last equation index");
  de->add_option("-k", o.k, "Number of colors")->check(CLI::PositiveNumber);
  de->add_option("--cap", o.cap, "Largest N tried")->check(CLI::PositiveNumber);
  de->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* bl = app.add_subcommand("blocking", "Exhaustive scan for a blocking-property counterexample");
  bl->add_option("property", o.property, "tau-gap | chain-step | carry-blocking")->required();
  bl->add_option("-H", o.H, "Height bound")->check(CLI::PositiveNumber);
  bl->add_option("-B", o.B, "Factorial bound for carry-blocking")->check(CLI::PositiveNumber);

  auto* sa = app.add_subcommand("sample", "Randomized check of a coloring property");
  sa->add_option("property", o.property, "digit-roundtrip | tau-gap | psi-doubling | phi-soundness")->required();
  sa->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
  sa->add_option("--seed", o.seed, "Generator seed");

  auto* nu = app.add_subcommand("nu-csv", "Tables of the doubling-map colorings");
  nu->add_option("--t-max", o.t_max, "Largest t")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run an experiment config file");
  run->add_option("config", config, "Config JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (!app.get_subcommands().empty()) o.command = app.get_subcommands().front()->get_name();
    if (o.command == "run") {
      Options loaded = load_config(config);
      if (o.pretty) loaded.pretty = true;
      if (o.timing) loaded.timing = true;
      if (!o.out.empty()) loaded.out = o.out;
      o = loaded;
    }
    Printer printer(o);
    const int code = dispatch(o, printer);
    printer.flush();
    return code;
  } catch (const Failure& f) {
    std::cerr << "prkit: " << f.message << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "prkit: " << e.what() << '\n';
    return kExitError;
  }
}
