// momentcurve: decide bivariate truncated moment problems on circular and
// parabolic type cubic curves, from JSON moment data.
//
// Exit codes: 0 decided (either verdict), 2 input or precondition error,
// 3 numeric extraction failure.  The JSON result always goes to stdout.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "momentcurve/blocks.hpp"
#include "momentcurve/cubic_circular.hpp"
#include "momentcurve/cubic_parabolic.hpp"
#include "momentcurve/json_io.hpp"
#include "momentcurve/measures.hpp"
#include "momentcurve/transforms.hpp"

namespace fs = std::filesystem;
using namespace mc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Outcome {
  json body;
  int code = kExitOk;
};

struct Options {
  bool verbose = false;
  double tol = 1e-8;

  // solve
  std::string type = "auto";
  std::string a_text;
  std::string relation_text;
  bool extract_measure = false;
  bool strict_rational = false;

  // synth
  std::string curve;
  std::string params_text;
  std::string atoms_file;
  int synth_k = 3;

  // verify
  std::string measure_file;

  // matrix
  bool print_blocks = false;

  std::string input_file;
  std::string batch_dir;
  unsigned jobs = 1;
};

// Each batch worker writes its trace into its own buffer.
void trace(const Options& opt, std::ostream& log, const std::string& line) {
  if (opt.verbose) log << "[momentcurve] " << line << "\n";
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return read_all(f);
}

std::string read_input(const Options& opt) {
  if (!opt.input_file.empty()) return read_file(opt.input_file);
  return read_all(std::cin);
}

// The unique cubic relation among the columns 1, X, Y, ..., Y^3 of M(k).
Poly2 find_cubic_relation(const MomentSequence& beta) {
  const SymMat M = moment_matrix(beta);
  std::vector<std::size_t> rows(M.rows()), cols(monomial_count(3));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  const Echelon<Rat> e = rref(M.sub(rows, cols));
  std::vector<bool> is_pivot(cols.size(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  if (free.empty()) throw InputError("M(k) has no column relation of degree <= 3; pass --relation");
  if (free.front() < monomial_count(2))
    throw InputError("M(k) has a column relation of degree <= 2; the cubic solvers do not apply");
  if (free.size() > 1) throw InputError("M(k) has several cubic column relations; pass --relation to pick one");
  const MonomialIndex idx(3);
  const std::size_t f = free.front();
  Poly2 p = Poly2::monomial(idx[f].i, idx[f].j);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t c = e.pivots[r];
    p.set(idx[c].i, idx[c].j, -e.R(r, f));
  }
  return p;
}

Rat parse_rat_arg(const std::string& text, const std::string& flag) {
  try {
    return parse_rat(text);
  } catch (const std::exception& ex) {
    throw InputError(flag + ": " + ex.what());
  }
}

// Maps atoms found in canonical coordinates back through the inverse of the
// canonicalizing map.
AtomicMeasure pull_back(const AtomicMeasure& mu, const AffineMap& phi) {
  const AffineMap inv = phi.inverse();
  AtomicMeasure out;
  for (const auto& at : mu.atoms) {
    const Real x = to_real(inv.a) + to_real(inv.b) * at.x + to_real(inv.c) * at.y;
    const Real y = to_real(inv.d) + to_real(inv.e) * at.x + to_real(inv.f) * at.y;
    out.atoms.push_back(Atom::numeric(x, y, at.w));
  }
  return out;
}

void trace_report(const Options& opt, std::ostream& log, const SolveReport& r) {
  if (!opt.verbose) return;
  for (const auto& [key, value] : r.diagnostics) trace(opt, log, key + " = " + value);
  trace(opt, log, std::string("verdict: ") + (r.exists ? "exists" : "no measure") + " (" + r.clause + ")");
}

Outcome run_solve(const Options& opt, const std::string& text, std::ostream& log) {
  const MomentInput in = moments_from_json(parse_json_text(text, "moment input"));
  std::string type = opt.type;
  MomentSequence beta = in.beta;
  Rat a = 0;
  std::optional<CanonResult> canon;
  json out;

  if (type == "auto") {
    Poly2 p;
    if (!opt.relation_text.empty()) p = Poly2::parse(opt.relation_text);
    else if (in.relation) p = Poly2::parse(*in.relation);
    else p = find_cubic_relation(beta);
    trace(opt, log, "cubic relation: " + p.str());
    CanonicalizeOptions copt;
    copt.strict_rational = opt.strict_rational;
    canon = canonicalize(beta, p, copt);
    for (const auto& s : canon->steps) trace(opt, log, "canonicalize: " + s);
    const std::string tag = tag_name(canon->form.tag);
    out["canonical"] = canon_to_json(*canon);
    if (canon->form.tag != CurveTag::Circular && canon->form.tag != CurveTag::Parabolic)
      throw InputError("canonical type " + tag + " is outside the supported circular and parabolic types");
    if (!canon->rational)
      throw InputError("canonical type " + tag + " needs an irrational scaling; rerun with rational-square data");
    type = tag;
    beta = canon->beta;
    if (canon->form.tag == CurveTag::Circular) a = canon->form.params.at(0).a();
  } else if (type == "circular") {
    if (opt.a_text.empty()) throw InputError("--type circular needs --a");
    a = parse_rat_arg(opt.a_text, "--a");
  } else if (type != "parabolic") {
    throw InputError("unknown --type " + type);
  }

  trace(opt, log, "solving as " + type + (type == "circular" ? " with a = " + to_string(a) : ""));
  const bool circ = type == "circular";
  const SolveReport report = circ ? solve_circular(beta, a) : solve_parabolic_cubic(beta);
  trace_report(opt, log, report);
  json rep = report_to_json(report);
  for (auto& [key, value] : out.items()) rep[key] = value;
  rep["type"] = type;
  if (circ) rep["a"] = to_string(a);

  Outcome res{rep, kExitOk};
  if (opt.extract_measure && report.exists) {
    try {
      AtomicMeasure mu = extract(beta, circ ? CubicType::Circular : CubicType::Parabolic, a, report, opt.tol);
      if (canon) mu = pull_back(mu, canon->map);
      const Real resid = max_relative_residual(in.beta, mu);
      if (resid > Real(opt.tol))
        throw NumericFailure("measure misses the input moments after mapping back: residual " + real_to_string(resid));
      res.body["measure"] = measure_to_json(mu);
      res.body["max_relative_residual"] = real_to_string(resid);
      trace(opt, log, "extracted " + std::to_string(mu.atoms.size()) + " atoms");
    } catch (const NumericFailure& e) {
      res.body["extraction_error"] = e.what();
      res.code = kExitNumeric;
    }
  }
  return res;
}

Outcome run_classify(const Options& opt, const std::string& text, std::ostream& log) {
  const MomentInput in = moments_from_json(parse_json_text(text, "moment input"));
  Poly2 p;
  if (!opt.relation_text.empty()) p = Poly2::parse(opt.relation_text);
  else if (in.relation) p = Poly2::parse(*in.relation);
  else p = find_cubic_relation(in.beta);
  trace(opt, log, "cubic relation: " + p.str());
  CanonicalizeOptions copt;
  copt.strict_rational = opt.strict_rational;
  const CanonResult c = canonicalize(in.beta, p, copt);
  for (const auto& s : c.steps) trace(opt, log, "canonicalize: " + s);
  return {canon_to_json(c), kExitOk};
}

CanonicalForm curve_from_args(const Options& opt) {
  const auto tag = parse_tag(opt.curve);
  if (!tag) throw InputError("unknown --curve " + opt.curve);
  CanonicalForm form;
  form.tag = *tag;
  std::string params = opt.params_text;
  if (params.empty() && !opt.a_text.empty()) params = opt.a_text;
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) form.params.push_back(QuadScalar(parse_rat_arg(item, "--params")));
  std::size_t want = 0;
  switch (*tag) {
    case CurveTag::ParallelLines: want = 2; break;
    case CurveTag::Circular:
    case CurveTag::Hyperbolic2:
    case CurveTag::Hyperbolic3: want = 1; break;
    case CurveTag::Mixed: want = 3; break;
    default: want = 0;
  }
  if (form.params.size() != want)
    throw InputError("--curve " + opt.curve + " takes " + std::to_string(want) + " parameter(s), got " +
                     std::to_string(form.params.size()));
  return form;
}

Outcome run_synth(const Options& opt, std::ostream& log) {
  const CanonicalForm form = curve_from_args(opt);
  const AtomicMeasure mu = measure_from_json(parse_json_text(read_file(opt.atoms_file), opt.atoms_file));
  trace(opt, log, "synthesizing " + std::to_string(mu.atoms.size()) + " atoms on " + form.str());
  return {moments_to_json(synthesize(form, mu, opt.synth_k)), kExitOk};
}

Outcome run_verify(const Options& opt, const std::string& text, std::ostream& log) {
  const MomentInput in = moments_from_json(parse_json_text(text, "moment input"));
  const AtomicMeasure mu = measure_from_json(parse_json_text(read_file(opt.measure_file), opt.measure_file));
  const Real resid = max_relative_residual(in.beta, mu);
  const bool ok = verify(in.beta, mu, opt.tol);
  trace(opt, log, "max relative residual " + real_to_string(resid));
  return {json{{"ok", ok}, {"max_relative_residual", real_to_string(resid)}, {"tol", opt.tol},
               {"atoms", mu.atoms.size()}},
          kExitOk};
}

template <class F>
json matrix_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Outcome run_matrix(const Options& opt, const std::string& text, std::ostream& log) {
  const MomentInput in = moments_from_json(parse_json_text(text, "moment input"));
  const SymMat M = moment_matrix(in.beta);
  json out;
  const MonomialIndex idx(in.beta.k());
  json names = json::array();
  for (const auto& m : idx.list()) names.push_back(monomial_name(m));
  out["columns"] = names;
  out["moment_matrix"] = matrix_json(M);
  out["rank"] = rank(M);
  out["psd"] = is_psd(M);
  trace(opt, log, "rank M(k) = " + std::to_string(rank(M)));
  if (opt.print_blocks) {
    const BlockDecomp b = assemble_blocks(in.beta);
    json order = json::array();
    for (auto n : b.order) order.push_back(monomial_name(idx[n]));
    out["blocks"] = json{{"order", order},
                         {"A11", matrix_json(b.A11)},
                         {"A12", matrix_json(b.A12)},
                         {"A22", matrix_json(b.A22)},
                         {"A_min", matrix_json(b.A_min)}};
  }
  return {out, kExitOk};
}

Outcome dispatch(const std::string& cmd, const Options& opt, const std::string& text, std::ostream& log) {
  try {
    if (cmd == "solve") return run_solve(opt, text, log);
    if (cmd == "classify") return run_classify(opt, text, log);
    if (cmd == "verify") return run_verify(opt, text, log);
    if (cmd == "matrix") return run_matrix(opt, text, log);
    return run_synth(opt, log);
  } catch (const InputError& e) {
    return {json{{"error", e.what()}}, kExitInput};
  } catch (const NumericFailure& e) {
    return {json{{"error", e.what()}}, kExitNumeric};
  } catch (const std::invalid_argument& e) {
    return {json{{"error", e.what()}}, kExitInput};
  } catch (const std::domain_error& e) {
    return {json{{"error", e.what()}}, kExitInput};
  }
}

// Runs `cmd` over every *.json file of a directory with a pool of threads;
// results are keyed by file name.
int run_batch(const std::string& cmd, const Options& opt) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.batch_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Outcome> results(files.size());
  std::vector<std::string> logs(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n; (n = next++) < files.size();) {
      std::ostringstream log;
      try {
        results[n] = dispatch(cmd, opt, read_file(files[n].string()), log);
      } catch (const InputError& e) {
        results[n] = {json{{"error", e.what()}}, kExitInput};
      }
      logs[n] = log.str();
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  json out = json::object();
  int code = kExitOk;
  for (std::size_t n = 0; n < files.size(); ++n) {
    json entry = results[n].body;
    entry["exit_code"] = results[n].code;
    out[files[n].filename().string()] = entry;
    code = std::max(code, results[n].code);
    std::cerr << logs[n];
  }
  std::cout << out.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("MOMENTCURVE_TOL")) {
    try {
      opt.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cout << json{{"error", std::string("MOMENTCURVE_TOL is not a number: ") + env}}.dump(2) << "\n";
      return kExitInput;
    }
  }

  CLI::App app{"Truncated moment problems on circular and parabolic type cubic curves"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", opt.verbose, "Trace the computation on stderr");

  auto* solve = app.add_subcommand("solve", "Decide existence of a representing measure");
  solve->add_option("--type", opt.type, "circular, parabolic or auto")
      ->check(CLI::IsMember({"circular", "parabolic", "auto"}));
  solve->add_option("--a", opt.a_text, "Parameter a of a y + x^2 + y^2 = 0 (circular type)");
  solve->add_option("--relation", opt.relation_text, "Cubic column relation for --type auto");
  solve->add_flag("--extract", opt.extract_measure, "Also recover a representing measure numerically");
  solve->add_option("--tol", opt.tol, "Relative tolerance for --extract");
  solve->add_flag("--strict-rational", opt.strict_rational, "Reject canonical maps with irrational scalings");
  solve->add_option("--dir", opt.batch_dir, "Solve every *.json file in a directory");
  solve->add_option("--jobs", opt.jobs, "Worker threads for --dir")->check(CLI::PositiveNumber);
  solve->add_option("--input", opt.input_file, "Moment JSON file (default: stdin)");

  auto* classify = app.add_subcommand("classify", "Bring the cubic column relation to canonical form");
  classify->add_option("--relation", opt.relation_text, "Cubic column relation (default: read from M(k))");
  classify->add_flag("--strict-rational", opt.strict_rational, "Reject irrational scalings");
  classify->add_option("--input", opt.input_file, "Moment JSON file (default: stdin)");

  auto* synth = app.add_subcommand("synth", "Moments of rational atoms on a canonical curve");
  synth->add_option("--curve", opt.curve, "Canonical curve name, e.g. parabolic or circular")->required();
  synth->add_option("--a", opt.a_text, "Parameter of the circular type");
  synth->add_option("--params", opt.params_text, "Comma separated curve parameters");
  synth->add_option("--atoms-file", opt.atoms_file, "Measure JSON with rational atoms")->required();
  synth->add_option("--k", opt.synth_k, "Moment matrix degree k")->check(CLI::Range(1, 64));

  auto* verify_cmd = app.add_subcommand("verify", "Check a measure against moment data");
  verify_cmd->add_option("--measure-file", opt.measure_file, "Measure JSON")->required();
  verify_cmd->add_option("--tol", opt.tol, "Relative tolerance");
  verify_cmd->add_option("--input", opt.input_file, "Moment JSON file (default: stdin)");

  auto* matrix = app.add_subcommand("matrix", "Print the moment matrix");
  matrix->add_flag("--print-blocks", opt.print_blocks, "Also print the reordered blocks and A_min");
  matrix->add_option("--input", opt.input_file, "Moment JSON file (default: stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    std::cerr << app.help();
    return kExitInput;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "solve" && !opt.batch_dir.empty()) return run_batch(cmd, opt);

  std::string text;
  if (cmd != "synth") {
    try {
      text = read_input(opt);
    } catch (const InputError& e) {
      std::cout << json{{"error", e.what()}}.dump(2) << "\n";
      return kExitInput;
    }
  }
  const Outcome res = dispatch(cmd, opt, text, std::cerr);
  std::cout << res.body.dump(2) << "\n";
  return res.code;
}
