#include "cli.hpp"

#include "sbseries/order_conditions.hpp"
#include "sbseries/problems.hpp"
#include "sbseries/sde_lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace sbs::cli {

namespace {

using Json = nlohmann::ordered_json;

Tree label_preorder(const Tree& shape, int& next) {
  const int color = next++;
  std::vector<Tree> kids;
  for (const auto& c : shape.children()) kids.push_back(label_preorder(c, next));
  return Tree::node(color, std::move(kids));
}

std::string letter_for(int color) {
  static const std::string letters = "ijklmnopqrstuvwxyzabcdefgh";
  if (color >= 1 && color <= static_cast<int>(letters.size())) return std::string(1, letters[color - 1]);
  return "c" + std::to_string(color);
}

std::string letter_word(const Word& w, Calculus c) {
  std::string s = c == Calculus::ito ? "I(" : "J(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + (w[i] == 0 ? std::string("0") : letter_for(w[i]));
  return s + ')';
}

// IntegralExpr::to_string with letters in place of channel numbers.
std::string letter_expr(const IntegralExpr& e, bool latex) {
  if (e.is_zero()) return "0";
  std::vector<std::pair<Word, Rational>> sorted(e.terms().begin(), e.terms().end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first > b.first;
  });
  std::string s;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& [w, c] = sorted[i];
    const Rational mag = c < 0 ? -c : c;
    s += i == 0 ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mag != 1) s += to_string(mag) + (latex ? "\\," : "*");
    if (latex) {
      std::string body;
      for (std::size_t k = 0; k < w.size(); ++k) body += (k ? "," : "") + (w[k] == 0 ? std::string("0") : letter_for(w[k]));
      s += (e.calculus() == Calculus::ito ? "I_{(" : "J_{(") + body + ")}";
    } else {
      s += letter_word(w, e.calculus());
    }
  }
  return s;
}

std::string latex_tree(const Tree& t) {
  if (t.children().empty()) return "\\bullet_{" + letter_for(t.color()) + "}";
  std::string s = "[";
  for (std::size_t i = 0; i < t.children().size(); ++i) s += (i ? "," : "") + latex_tree(t.children()[i]);
  return s + "]_{" + letter_for(t.color()) + "}";
}

std::string term_text(const CorrectionTerm& term) {
  std::string s = "Phi_im(" + letter_labels(term.theta.encoding()) + ")";
  for (const auto& d : term.omega) s += " Phi(" + letter_labels(d.encoding()) + ")";
  return s;
}

std::string term_latex(const CorrectionTerm& term) {
  std::string s = "\\Phi_{im}\\left(" + latex_tree(term.theta) + "\\right)";
  for (const auto& d : term.omega) s += "\\Phi\\left(" + latex_tree(d) + "\\right)";
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json double_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

FamilyCoefficients parse_family_params(const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 6) {
    throw std::invalid_argument("--params needs six comma-separated values c1..c6, got " + std::to_string(parts.size()));
  }
  FamilyCoefficients c;
  for (std::size_t i = 0; i < 6; ++i) c[i] = parse_rational(parts[i]);
  return c;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads flat `key = value` lines into flag arguments; `#` starts a comment.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key == "config") throw std::runtime_error(path + ": nested config files are not supported");
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value != "false") {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

// Splices config-file flags in front of the command-line flags of
// `converge`, so later (command-line) values win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.empty() || args[0] != "converge") return args;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t erase = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      erase = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      erase = 1;
    }
    if (erase) {
      args.erase(args.begin() + i, args.begin() + i + erase);
      auto extra = config_arguments(path);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
      break;
    }
  }
  return args;
}

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- trees -----------------------------------------------------------------

struct TreesArgs {
  int m = 1;
  std::string max_rho = "2";
  bool details = false;
};

int cmd_trees(const TreesArgs& a, std::ostream& out) {
  if (a.m < 0) throw UsageError("--m must be >= 0");
  const HalfInt r = parse_half_int(a.max_rho);
  for (const auto& t : enumerate_trees(a.m, r)) {
    out << t.encoding();
    if (a.details) out << '\t' << rho(t).to_string() << '\t' << to_string(alpha(t)) << '\t' << t.node_count();
    out << '\n';
  }
  return kOk;
}

// ---- expand ----------------------------------------------------------------

struct ExpandArgs {
  std::string tree;
  std::string calculus = "ito";
  bool details = false;
};

int cmd_expand(const ExpandArgs& a, std::ostream& out) {
  const Tree t = parse_tree(a.tree);
  const Calculus c = parse_calculus(a.calculus);
  if (a.details) {
    out << "tree  " << t.encoding() << "\nrho   " << rho(t).to_string() << "\nalpha " << to_string(alpha(t))
        << "\nphi   ";
  }
  out << exact_weight(t, c).to_string() << '\n';
  return kOk;
}

// ---- table -----------------------------------------------------------------

struct TableArgs {
  std::size_t max_nodes = 4;
  std::string format = "txt";
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  if (a.max_nodes < 1) throw UsageError("--max-nodes must be >= 1");
  if (a.max_nodes > 7) throw UsageError("--max-nodes above 7 is not supported");
  const auto rows = correction_table(a.max_nodes);
  if (a.format == "json") {
    Json j;
    j["schema"] = "correction-table/1";
    j["max_nodes"] = a.max_nodes;
    auto& jr = j["rows"] = Json::array();
    for (const auto& row : rows) {
      Json r;
      r["shape"] = row.shape.encoding();
      r["tree"] = row.labeled.encoding();
      r["label"] = letter_labels(row.labeled.encoding());
      auto& terms = r["terms"] = Json::array();
      for (const auto& term : row.terms) {
        Json jt;
        jt["theta"] = term.theta.encoding();
        auto& om = jt["omega"] = Json::array();
        for (const auto& d : term.omega) om.push_back(d.encoding());
        jt["text"] = term_text(term);
        terms.push_back(std::move(jt));
      }
      auto& decs = r["decompositions"] = Json::array();
      for (const auto& d : row.shape_decompositions) {
        Json jd;
        jd["theta"] = d.theta.encoding();
        auto& om = jd["omega"] = Json::array();
        for (const auto& w : d.omega) om.push_back(w.encoding());
        jd["gamma"] = d.gamma;
        decs.push_back(std::move(jd));
      }
      r["phi"] = row.phi.to_string();
      jr.push_back(std::move(r));
    }
    out << j.dump(2) << '\n';
  } else if (a.format == "latex") {
    out << "\\begin{array}{ccc}\n\\tau & \\mathcal{R}(\\tau) & \\varphi(\\tau) \\\\ \\hline\n";
    for (const auto& row : rows) {
      out << latex_tree(row.labeled) << " & ";
      if (row.terms.empty()) out << "0";
      for (std::size_t i = 0; i < row.terms.size(); ++i) out << (i ? " + " : "") << term_latex(row.terms[i]);
      out << " & " << letter_expr(row.phi, true) << " \\\\\n";
    }
    out << "\\end{array}\n";
  } else if (a.format == "txt") {
    for (const auto& row : rows) {
      out << letter_labels(row.labeled.encoding()) << "\n  R   = ";
      if (row.terms.empty()) out << "0";
      for (std::size_t i = 0; i < row.terms.size(); ++i) out << (i ? " + " : "") << term_text(row.terms[i]);
      out << "\n  phi = " << letter_expr(row.phi, false) << '\n';
    }
  } else {
    throw UsageError("unknown --format '" + a.format + "' (expected txt, json or latex)");
  }
  return kOk;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string method;
  std::string order;
  std::string params;
  std::string kind = "strong";
  std::string format = "txt";
  std::string calculus = "ito";
  bool no_mean = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  std::optional<FamilyCoefficients> params;
  if (!a.params.empty()) params = parse_family_params(a.params);
  if (a.method == "family" && !params) throw UsageError("method 'family' needs --params c1,c2,c3,c4,c5,c6");
  const HalfInt p = parse_half_int(a.order);
  if (p < HalfInt{}) throw UsageError("--order must be non-negative");
  const Calculus calc = parse_calculus(a.calculus);

  MethodSpec spec;
  if (a.method == "exact") {
    spec = exact_spec(1, p + HalfInt::whole(1), calc);
  } else {
    if (calc != Calculus::ito) throw UnsupportedError("method '" + a.method + "' is defined for Ito calculus only");
    spec = method_by_name(a.method, params);
  }

  OrderReport report;
  if (a.kind == "strong") {
    report = check_strong(spec, p, !a.no_mean);
  } else if (a.kind == "weak") {
    if (!p.is_integer()) throw UsageError("weak order must be an integer");
    report = check_weak(spec, p.floor());
  } else {
    throw UsageError("unknown --kind '" + a.kind + "' (expected strong or weak)");
  }

  if (a.format == "json") {
    out << report_to_json(report) << '\n';
  } else if (a.format == "txt") {
    out << report_to_text(report);
  } else {
    throw UsageError("unknown --format '" + a.format + "' (expected txt or json)");
  }
  return report.pass() ? kOk : kOrderFailure;
}

// ---- converge --------------------------------------------------------------

struct ConvergeArgs {
  std::string problem = "sinh";
  std::string method = "family";
  std::string params = "0.5,0.5,0.5,0.5,0.5,0.5";
  int level_min = 4;
  int level_max = 9;
  long long paths = 500;
  std::uint64_t seed = 42;
  double horizon = 1.0;
  unsigned threads = 0;
  std::string solver = "newton";
  double tolerance = 1e-12;
  int max_iterations = 50;
  double damping = 0.5;
  std::string reference = "auto";
  int reference_subdivision = 10;
  std::string output = "-";
  std::string summary;
  bool no_timing = false;
};

int cmd_converge(const ConvergeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.paths <= 0) throw UsageError("--paths must be positive");
  if (a.level_min < 0 || a.level_max < a.level_min) throw UsageError("need 0 <= --level-min <= --level-max");
  if (a.level_max > 20) throw UsageError("--level-max above 20 is not supported");
  if (!(a.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  if (a.max_iterations < 1) throw UsageError("--max-iterations must be >= 1");
  if (!(a.damping > 0.0 && a.damping < 1.0)) throw UsageError("--damping must be in (0, 1)");
  if (!(a.horizon > 0.0)) throw UsageError("--horizon must be positive");
  if (a.reference_subdivision < 1) throw UsageError("--reference-subdivision must be >= 1");

  const SdeProblem problem = problems::by_name(a.problem);
  lab::FamilyParams c{};
  if (a.method == "family") {
    const auto rc = parse_family_params(a.params);
    for (std::size_t i = 0; i < 6; ++i) c[i] = to_double(rc[i]);
  }

  lab::StudyConfig cfg;
  cfg.scheme = lab::scheme_by_name(a.method, c);
  cfg.level_min = a.level_min;
  cfg.level_max = a.level_max;
  cfg.paths = static_cast<std::size_t>(a.paths);
  cfg.seed = a.seed;
  cfg.horizon = a.horizon;
  cfg.threads = a.threads;
  cfg.reference_subdivision = a.reference_subdivision;
  cfg.stepper.tolerance = a.tolerance;
  cfg.stepper.max_iterations = a.max_iterations;
  cfg.stepper.damping = a.damping;
  if (a.solver == "newton") {
    cfg.stepper.solver = lab::SolverKind::newton;
  } else if (a.solver == "fixed-point") {
    cfg.stepper.solver = lab::SolverKind::fixed_point;
  } else {
    throw UsageError("unknown --solver '" + a.solver + "' (expected newton or fixed-point)");
  }
  if (a.reference == "auto") {
    cfg.reference = lab::ReferenceKind::automatic;
  } else if (a.reference == "exact") {
    cfg.reference = lab::ReferenceKind::exact;
  } else if (a.reference == "fine") {
    cfg.reference = lab::ReferenceKind::fine_explicit;
  } else {
    throw UsageError("unknown --reference '" + a.reference + "' (expected auto, exact or fine)");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const lab::StudyResult result = lab::strong_error_study(cfg, problem, problem.initial_state);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream csv;
  csv << "level,h,mean_error,stderr_of_mean,failed_paths\r\n";
  for (const auto& l : result.levels) {
    csv << l.level << ',' << format_double(l.h) << ',' << format_double(l.mean_error) << ','
        << format_double(l.stderr_of_mean) << ',' << l.failed_paths << "\r\n";
  }
  if (a.output == "-") {
    out << csv.str();
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + a.output + "'");
    f << csv.str();
  }

  Json s;
  s["schema"] = "convergence-summary/1";
  s["csv_schema"] = "convergence-csv/1";
  Json& jc = s["config"];
  jc["problem"] = problem.name;
  jc["method"] = a.method;
  jc["scheme"] = cfg.scheme.name();
  if (a.method == "family") jc["params"] = split_list(a.params);
  jc["level_min"] = a.level_min;
  jc["level_max"] = a.level_max;
  jc["paths"] = a.paths;
  jc["seed"] = a.seed;
  jc["horizon"] = a.horizon;
  jc["solver"] = a.solver;
  jc["tolerance"] = a.tolerance;
  jc["max_iterations"] = a.max_iterations;
  jc["damping"] = a.damping;
  jc["reference"] = a.reference;
  jc["reference_subdivision"] = a.reference_subdivision;
  jc["threads"] = a.threads;
  jc["output"] = a.output;
  jc["error_norm"] = "euclidean";
  s["reference"] = result.reference;
  auto& lv = s["levels"] = Json::array();
  for (const auto& l : result.levels) {
    lv.push_back(Json{{"level", l.level},
                      {"h", l.h},
                      {"mean_error", l.mean_error},
                      {"stderr_of_mean", l.stderr_of_mean},
                      {"failed_paths", l.failed_paths}});
  }
  s["slope"] = double_or_null(result.slope);
  s["intercept"] = double_or_null(result.intercept);
  s["seed"] = a.seed;
  if (!a.no_timing) s["wall_time_seconds"] = wall;

  if (!a.summary.empty()) {
    std::ofstream f(a.summary);
    if (!f) throw std::runtime_error("cannot write '" + a.summary + "'");
    f << s.dump(2) << '\n';
  } else {
    err << "slope " << format_double(result.slope) << " (" << result.reference << ")\n";
  }
  return kOk;
}

}  // namespace

std::string letter_labels(const std::string& encoding) {
  std::string out;
  for (std::size_t i = 0; i < encoding.size();) {
    if (std::isdigit(static_cast<unsigned char>(encoding[i]))) {
      std::size_t j = i;
      while (j < encoding.size() && std::isdigit(static_cast<unsigned char>(encoding[j]))) ++j;
      const int color = std::stoi(encoding.substr(i, j - i));
      out += color == 0 ? "0" : letter_for(color);
      i = j;
    } else {
      out += encoding[i++];
    }
  }
  return out;
}

std::vector<CorrectionRow> correction_table(std::size_t max_nodes) {
  std::vector<CorrectionRow> rows;
  for (const auto& t : enumerate_trees_by_nodes(1, max_nodes)) {
    const auto colors = color_multiset(t);
    if (std::any_of(colors.begin(), colors.end(), [](Color c) { return c != 1; })) continue;
    CorrectionRow row;
    row.shape = t;
    int next = 1;
    row.labeled = label_preorder(t, next);
    for (const auto& d : correction_decompositions(row.labeled)) {
      if (d.gamma != 1) throw std::logic_error("labeled tree with a repeated decomposition");
      row.terms.push_back({d.theta, d.omega});
    }
    row.shape_decompositions = correction_decompositions(t);
    row.phi = exact_weight(row.labeled, Calculus::stratonovich);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic B-series toolkit: trees, iterated integrals, order conditions, convergence studies", "sbs"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  TreesArgs trees;
  auto* sc_trees = app.add_subcommand("trees", "List canonical colored trees up to a given order");
  sc_trees->add_option("--m", trees.m, "Number of Wiener channels (colors 0..m)")->capture_default_str();
  sc_trees->add_option("--max-rho", trees.max_rho, "Largest order, e.g. 3/2 or 1.5")->capture_default_str();
  sc_trees->add_flag("--details", trees.details, "Also print rho, alpha and node count");

  ExpandArgs expand;
  auto* sc_expand = app.add_subcommand("expand", "Exact-solution weight of a tree as iterated integrals");
  sc_expand->add_option("--tree", expand.tree, "Tree such as 0[1,1[2,2]]")->required();
  sc_expand->add_option("--calculus", expand.calculus, "ito or strat")->capture_default_str();
  sc_expand->add_flag("--details", expand.details, "Also print rho and alpha");

  TableArgs table;
  auto* sc_table = app.add_subcommand("table", "Correction terms of implicit Taylor methods per tree shape");
  sc_table->add_option("--max-nodes", table.max_nodes, "Largest number of nodes")->capture_default_str();
  sc_table->add_option("--format", table.format, "txt, json or latex")->capture_default_str();

  CheckArgs check;
  auto* sc_check = app.add_subcommand("check", "Check strong or weak order conditions of a method");
  sc_check->add_option("--method", check.method, "euler, milstein, family, explicit15 or exact")->required();
  sc_check->add_option("--order", check.order, "Order p, e.g. 1.5")->required();
  sc_check->add_option("--params", check.params, "c1,...,c6 for the family (decimals or p/q)");
  sc_check->add_option("--kind", check.kind, "strong or weak")->capture_default_str();
  sc_check->add_option("--format", check.format, "txt or json")->capture_default_str();
  sc_check->add_option("--calculus", check.calculus, "ito or strat (exact method only)")->capture_default_str();
  sc_check->add_flag("--no-mean", check.no_mean, "Skip the mean-value strong condition");

  ConvergeArgs conv;
  auto* sc_conv = app.add_subcommand("converge", "Monte Carlo strong convergence study");
  sc_conv->add_option("--problem", conv.problem, "sinh or planar")->capture_default_str();
  sc_conv->add_option("--method", conv.method, "euler, milstein, family, explicit15 or exact")->capture_default_str();
  sc_conv->add_option("--params", conv.params, "c1,...,c6 for the family")->capture_default_str();
  sc_conv->add_option("--level-min", conv.level_min, "Coarsest level, h = T 2^-level")->capture_default_str();
  sc_conv->add_option("--level-max", conv.level_max, "Finest level")->capture_default_str();
  sc_conv->add_option("--paths", conv.paths, "Number of sample paths")->capture_default_str();
  sc_conv->add_option("--seed", conv.seed, "Base seed")->capture_default_str();
  sc_conv->add_option("--horizon", conv.horizon, "End time T")->capture_default_str();
  sc_conv->add_option("--threads", conv.threads, "Worker threads, 0 for all cores")->capture_default_str();
  sc_conv->add_option("--solver", conv.solver, "newton or fixed-point")->capture_default_str();
  sc_conv->add_option("--tolerance", conv.tolerance, "Implicit solve tolerance (max norm)")->capture_default_str();
  sc_conv->add_option("--max-iterations", conv.max_iterations, "Implicit solve iteration cap")->capture_default_str();
  sc_conv->add_option("--damping", conv.damping, "Newton step reduction on residual increase")->capture_default_str();
  sc_conv->add_option("--reference", conv.reference, "auto, exact or fine")->capture_default_str();
  sc_conv->add_option("--reference-subdivision", conv.reference_subdivision,
                      "Fine reference: substeps per finest-level step")
      ->capture_default_str();
  sc_conv->add_option("--output", conv.output, "CSV path, - for stdout")->capture_default_str();
  sc_conv->add_option("--summary", conv.summary, "JSON summary path");
  sc_conv->add_flag("--no-timing", conv.no_timing, "Leave wall time out of the summary");
  sc_conv->add_option("--config", "Flat key = value file; command-line flags take precedence");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (sc_trees->parsed()) return cmd_trees(trees, out);
    if (sc_expand->parsed()) return cmd_expand(expand, out);
    if (sc_table->parsed()) return cmd_table(table, out);
    if (sc_check->parsed()) return cmd_check(check, out);
    if (sc_conv->parsed()) return cmd_converge(conv, out, err);
  } catch (const TreeParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const lab::StudyAborted& e) {
    err << "error: study aborted: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sbs::cli
