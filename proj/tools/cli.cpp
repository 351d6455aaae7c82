#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shedkit/commands.hpp"
#include "shedkit/errors.hpp"
#include "shedkit/io.hpp"

namespace shedkit::cli {

namespace {

namespace dr = shedkit::drinfeld;
namespace cmd = shedkit::commands;

struct Options {
  std::string q;
  std::string q_range;
  std::string theorem = "all";
  std::string fan_file;
  std::string construction;
  std::string props;
  std::string format = "json";
  std::string projection;
  std::string out;
  std::string report;
  std::string what;
  std::string kind;
  std::string delta4;
  std::string method = "g";
  std::size_t max_steps = 1000;
  unsigned jobs = 1;
  bool timing = false;
};

Integer parse_integer(const std::string& text, const std::string& flag) {
  Integer z;
  if (text.empty() || z.set_str(text, 10) != 0) {
    throw UsageError(flag + " expects an integer, got '" + text + "'");
  }
  return z;
}

dr::ModuliParams require_q(const Options& o) {
  if (o.q.empty()) throw UsageError("--q is required");
  return dr::ModuliParams(parse_integer(o.q, "--q"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw UsageError("cannot write '" + path + "'");
  o << text;
}

// Fan from --fan FILE, or from --construction NAME with --q.
std::pair<Fan, std::string> load_fan(const Options& o) {
  if (!o.fan_file.empty()) {
    if (!o.construction.empty()) {
      throw UsageError("give either --fan or --construction, not both");
    }
    return {io::fan_from_json(read_file(o.fan_file)), o.fan_file};
  }
  if (o.construction.empty()) throw UsageError("--fan or --construction is required");
  auto nc = dr::build_construction(o.construction, require_q(o));
  return {nc.fan, o.construction};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

int do_replay(const Options& o, std::ostream& out) {
  if (o.theorem == "all") throw UsageError("replay needs a single --theorem");
  auto t = cmd::parse_theorem(o.theorem);
  auto p = require_q(o);
  auto start = std::chrono::steady_clock::now();
  auto r = cmd::replay(t, p);
  if (o.timing) {
    r.report.elapsed_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  }
  if (!o.out.empty()) write_file(o.out, io::fan_to_json(r.fan));
  std::string report = io::report_to_json(r.report);
  if (!o.report.empty()) write_file(o.report, report);
  out << report;
  return r.report.pass() ? kOk : kCheckFailed;
}

int do_check(const Options& o, std::ostream& out) {
  auto [fan, name] = load_fan(o);
  auto props = split(o.props, ',');
  if (props.empty()) throw UsageError("--props is required");
  fan.validate();
  auto r = cmd::check_props(fan, props, name);
  if (!o.q.empty()) r.q = parse_integer(o.q, "--q");
  std::string report = io::report_to_json(r);
  if (!o.report.empty()) write_file(o.report, report);
  out << report;
  return r.pass() ? kOk : kCheckFailed;
}

int do_desing(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.method != "g") throw UsageError("unknown method '" + o.method + "'");
  auto [fan, name] = load_fan(o);
  fan.validate();
  io::RunReport report;
  report.construction = name;
  if (!o.q.empty()) report.q = parse_integer(o.q, "--q");
  try {
    auto g = g_desingularize(fan, o.max_steps);
    out << io::step_log_jsonl(g.steps);
    if (!o.out.empty()) write_file(o.out, io::fan_to_json(g.fan));
    report.add("regular", g.status == GStatus::regular, g.diagnostic);
    report.notes.push_back(std::to_string(g.steps.size()) + " steps");
  } catch (const NonTerminationError& e) {
    out << io::step_log_jsonl(e.steps());
    if (!o.out.empty()) write_file(o.out, io::fan_to_json(e.residual()));
    report.add("terminated", false, e.what());
    if (!o.report.empty()) write_file(o.report, io::report_to_json(report));
    err << "shedkit: " << e.what() << "\n";
    return kResource;
  }
  if (!o.report.empty()) write_file(o.report, io::report_to_json(report));
  if (!report.pass()) err << "shedkit: " << report.checks.front().witness << "\n";
  return report.pass() ? kOk : kCheckFailed;
}

int do_enumerate(const Options& o, std::ostream& out) {
  if (o.what == "basic-invariants") {
    std::optional<dr::InvariantKind> kind;
    if (!o.kind.empty()) kind = dr::parse_invariant_kind(o.kind);
    std::optional<Integer> d4;
    if (!o.delta4.empty()) d4 = parse_integer(o.delta4, "--delta4");
    emit(o, out, cmd::basic_invariants_csv(require_q(o), kind, d4));
  } else if (o.what == "shed-points") {
    emit(o, out, cmd::shed_points_csv(load_fan(o).first));
  } else if (o.what == "hilbert-basis") {
    Integer bound = cmd::max_multiplicity_from_env();
    emit(o, out, cmd::hilbert_basis_csv(load_fan(o).first, bound));
  } else if (o.what == "2d-resolution") {
    emit(o, out, cmd::resolution_2d_csv(load_fan(o).first));
  } else {
    throw UsageError("--what must be basic-invariants, shed-points, "
                     "hilbert-basis or 2d-resolution");
  }
  return kOk;
}

int do_export(const Options& o, std::ostream& out) {
  auto [fan, name] = load_fan(o);
  std::string text;
  if (o.format == "json") {
    text = io::fan_to_json(fan);
  } else if (o.format == "dot") {
    text = io::fan_to_dot(fan);
  } else if (o.format == "csv") {
    text = io::fan_to_csv(fan);
  } else if (o.format == "svg") {
    std::optional<IntMatrix> proj;
    if (!o.projection.empty()) proj = io::parse_projection(o.projection);
    std::string title = name;
    if (!o.q.empty() && o.fan_file.empty()) title += " q=" + o.q;
    if (!o.projection.empty()) title += " " + o.projection;
    text = io::fan_to_svg(fan, proj, title);
  } else {
    throw UsageError("--format must be json, dot, svg or csv");
  }
  emit(o, out, text);
  return kOk;
}

int do_sweep(const Options& o, std::ostream& out) {
  auto dots = o.q_range.find("..");
  if (dots == std::string::npos) throw UsageError("--q-range expects A..B");
  Integer lo = parse_integer(o.q_range.substr(0, dots), "--q-range");
  Integer hi = parse_integer(o.q_range.substr(dots + 2), "--q-range");
  if (!lo.fits_slong_p() || !hi.fits_slong_p()) {
    throw ResourceError("q range exceeds the sweep bound");
  }
  std::vector<cmd::Theorem> theorems;
  if (o.theorem == "all") {
    theorems = cmd::all_theorems();
  } else {
    for (const auto& t : split(o.theorem, ',')) theorems.push_back(cmd::parse_theorem(t));
  }
  auto entries = cmd::sweep(lo.get_si(), hi.get_si(), theorems, o.jobs);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    for (const auto& e : entries) {
      if (!e.fan) continue;
      write_file((std::filesystem::path(o.out) /
                  (cmd::to_string(e.theorem) + "_q" + e.q.get_str() + ".json"))
                     .string(),
                 io::fan_to_json(*e.fan));
    }
  }
  std::string report = cmd::sweep_report_json(lo.get_si(), hi.get_si(), theorems, entries);
  if (!o.report.empty()) write_file(o.report, report);
  out << report;
  bool ok = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
  return ok ? kOk : kCheckFailed;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ResourceError*>(&e)) return kResource;
  if (dynamic_cast<const HypothesisViolation*>(&e) ||
      dynamic_cast<const ContradictionError*>(&e) ||
      dynamic_cast<const CorrespondenceFailure*>(&e)) {
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact toric fan toolkit for Drinfeld moduli models", "shedkit"};
  app.require_subcommand(1);

  auto add_q = [&](CLI::App* s) { s->add_option("--q", o.q, "the parameter q >= 2"); };
  auto add_fan = [&](CLI::App* s) {
    s->add_option("--fan", o.fan_file, "fan JSON file");
    s->add_option("--construction", o.construction, "named construction (with --q)");
  };

  auto* replay = app.add_subcommand("replay", "rebuild a model from its schedule and verify it");
  replay->add_option("--theorem", o.theorem,
                     "terminal | essential | compact-terminal | compact-essential")
      ->required();
  add_q(replay);
  replay->add_option("--out", o.out, "write the fan JSON here");
  replay->add_option("--report", o.report, "also write the report here");
  replay->add_flag("--timing", o.timing, "add elapsed_ms to the report");

  auto* check = app.add_subcommand("check", "evaluate fan properties");
  add_fan(check);
  add_q(check);
  check->add_option("--props", o.props,
                    "comma list of regular, terminal, concave-roof, complete, shed-volume")
      ->required();
  check->add_option("--report", o.report, "also write the report here");

  auto* desing = app.add_subcommand("desing", "G-desingularize a fan; prints the step log");
  add_fan(desing);
  add_q(desing);
  desing->add_option("--method", o.method, "only g is supported");
  desing->add_option("--max-steps", o.max_steps, "step budget");
  desing->add_option("--out", o.out, "write the resulting fan JSON here");
  desing->add_option("--report", o.report, "write the report here");

  auto* enumerate = app.add_subcommand("enumerate", "list lattice data as CSV");
  enumerate
      ->add_option("--what", o.what,
                   "basic-invariants | shed-points | hilbert-basis | 2d-resolution")
      ->required();
  add_fan(enumerate);
  add_q(enumerate);
  enumerate->add_option("--kind", o.kind, "basic-invariants: j1 j2 j3 j12 j13 j23 j123");
  enumerate->add_option("--delta4", o.delta4, "basic-invariants: only this delta4");
  enumerate->add_option("--out", o.out, "output file");

  auto* exp = app.add_subcommand("export", "write a fan as json, dot, svg or csv");
  add_fan(exp);
  add_q(exp);
  exp->add_option("--format", o.format, "json | dot | svg | csv");
  exp->add_option("--projection", o.projection, "x1x3 | -x3x2 | \"a,b,c;d,e,f\"");
  exp->add_option("--out", o.out, "output file");

  auto* sweep = app.add_subcommand("sweep", "replay theorems over a range of q");
  sweep->add_option("--q-range", o.q_range, "A..B")->required();
  sweep->add_option("--theorem", o.theorem, "all or a comma list");
  sweep->add_option("--jobs", o.jobs, "worker threads");
  sweep->add_option("--out", o.out, "directory for the fan files");
  sweep->add_option("--report", o.report, "also write the report here");

  auto* list = app.add_subcommand("constructions", "list named constructions");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (replay->parsed()) return do_replay(o, out);
    if (check->parsed()) return do_check(o, out);
    if (desing->parsed()) return do_desing(o, out, err);
    if (enumerate->parsed()) return do_enumerate(o, out);
    if (exp->parsed()) return do_export(o, out);
    if (sweep->parsed()) return do_sweep(o, out);
    if (list->parsed()) {
      for (const auto& n : dr::construction_names()) out << n << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "shedkit: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace shedkit::cli
