#include "vpbridge/bounds.hpp"
#include "vpbridge/builders.hpp"
#include "vpbridge/invariants.hpp"
#include "vpbridge/moves.hpp"
#include "vpbridge/search.hpp"
#include "vpbridge/sums.hpp"
#include "vpbridge/text_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace vpb;

namespace {

bool quiet = false;
bool trace = false;

// Validation failures and bad input files both exit 1; CLI misuse exits 2.
struct Failure {
  std::string message;
};

Diagram load_valid(const std::string &path) {
  Diagram d = load_diagram(path);
  Report r = validate_diagram(d);
  if (!r.ok())
    throw Failure{path + ": invalid: " + r.issues.front()};
  return d;
}

void emit(const Diagram &d, const std::string &out) {
  if (out.empty())
    std::cout << print_diagram(d);
  else
    save_diagram(d, out);
}

void write_script(const std::vector<MoveSpec> &script, const std::string &path) {
  std::ofstream f(path);
  if (!f)
    throw Failure{"cannot write " + path};
  for (auto &m : script)
    f << print_move(m) << '\n';
}

Diagram build_named(const std::string &name) {
  auto arg = [&](const std::string &prefix) -> std::optional<int> {
    if (name.rfind(prefix + ":", 0) != 0)
      return std::nullopt;
    return std::stoi(name.substr(prefix.size() + 1));
  };
  if (name == "width92")
    return width92_diagram();
  if (name == "width74")
    return width74_diagram();
  if (name == "unknot")
    return unknot();
  if (auto b = arg("bridge"))
    return bridge_position(*b);
  if (auto n = arg("closure"))
    return s1xs2_closure(*n);
  if (auto e = arg("theta"))
    return theta_diagram(*e);
  throw Failure{"unknown diagram name '" + name +
                "' (width92, width74, unknot, bridge:N, closure:N, theta:N)"};
}

int cmd_validate(const std::string &file) {
  Diagram d = load_diagram(file);
  Report r = validate_diagram(d);
  if (r.ok()) {
    if (!quiet)
      std::cout << "valid\n";
    return 0;
  }
  std::cout << "invalid: " << r.issues.front() << '\n';
  if (trace)
    for (size_t k = 1; k < r.issues.size(); ++k)
      std::cout << "also: " << r.issues[k] << '\n';
  return 1;
}

int cmd_invariants(const std::string &file, bool identities) {
  Diagram d = load_valid(file);
  InvariantReport r = invariants(d, identities);
  std::cout << format_report(r, d);
  for (auto &c : r.identity_checks)
    if (!c.holds)
      return 1;
  return 0;
}

void print_step(std::size_t k, const MoveSpec &m, const Diagram &d) {
  std::cout << "step " << k << ' ' << print_move(m) << " : netext=" << fmt_q(netext(d))
            << " width=" << fmt_q(width(d)) << " netchi=" << netchi(d) << '\n';
}

int cmd_apply(const std::string &file, const std::string &moves, const std::string &out,
              bool track_width) {
  Diagram d = load_valid(file);
  auto script = load_moves(moves);
  MoveOptions o{track_width};
  if (trace)
    std::cout << "start : netext=" << fmt_q(netext(d)) << " width=" << fmt_q(width(d))
              << " netchi=" << netchi(d) << '\n';
  if (!script.empty() && std::holds_alternative<ThinSpec>(script.front())) {
    ThinningRun run = extended_thinning(d, script, o);
    if (trace) {
      for (size_t k = 0; k < run.steps.size(); ++k)
        std::cout << "step " << k + 1 << ' ' << print_move(run.steps[k].move)
                  << " : netext=" << fmt_q(run.steps[k].netext)
                  << " width=" << fmt_q(run.steps[k].width) << " netchi=" << run.steps[k].netchi
                  << '\n';
    }
    d = run.result;
  } else {
    for (size_t k = 0; k < script.size(); ++k) {
      d = apply_move(d, script[k], o);
      if (trace)
        print_step(k + 1, script[k], d);
    }
  }
  emit(d, out);
  return 0;
}

int cmd_glue(const std::string &f1, const std::string &p1, const std::string &f2,
             const std::string &p2, int kind, const std::string &out) {
  Diagram a = load_valid(f1), b = load_valid(f2);
  GlueResult g = glue(a, parse_sum_point(p1, kind), b, parse_sum_point(p2, kind));
  if (!quiet)
    std::cerr << "sphere=" << g.sphere << " flipped=" << (g.flipped ? "yes" : "no") << '\n';
  emit(g.diagram, out);
  return 0;
}

int cmd_factor(const std::string &file, const std::string &dir) {
  Diagram d = load_valid(file);
  FactorizationResult f = split_prime(d);
  std::filesystem::path base = dir.empty() ? std::filesystem::path(".") : std::filesystem::path(dir);
  std::filesystem::create_directories(base);
  std::string stem = std::filesystem::path(file).stem().string();
  for (size_t k = 0; k < f.factors.size(); ++k) {
    auto p = base / (stem + ".factor" + std::to_string(k) + ".diag");
    save_diagram(f.factors[k], p.string());
    if (!quiet)
      std::cout << "factor " << k << ' ' << p.string() << " netext=" << fmt_q(netext(f.factors[k]))
                << '\n';
  }
  if (trace)
    for (auto &e : f.dual_tree)
      std::cout << "dual " << e.a << '-' << e.b << " kind=" << e.kind << " sphere=" << e.sphere
                << '\n';
  std::cout << "factors=" << f.factors.size() << " p2=" << f.p2 << " p3=" << f.p3 << '\n';
  return 0;
}

int cmd_search(const std::string &file, const SearchBudget &b, const std::string &prefix) {
  Diagram d = load_valid(file);
  SearchResult r = minimize(d, b);
  std::string stem = prefix.empty() ? std::filesystem::path(file).stem().string() + ".best" : prefix;
  save_diagram(r.best, stem + ".diag");
  write_script(r.script, stem + ".moves");
  std::cout << format_report(r.upper_bounds, r.best);
  std::cout << "moves         " << r.script.size() << '\n';
  std::cout << "explored      " << r.explored << '\n';
  std::cout << "exhausted     " << (r.exhausted ? "yes" : "no") << '\n';
  std::cout << "note          upper bounds only\n";
  if (!quiet)
    std::cout << "wrote " << stem << ".diag " << stem << ".moves\n";
  return 0;
}

int cmd_demo(const std::string &name) {
  if (name != "section7")
    throw Failure{"unknown demo '" + name + "' (section7)"};
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  Diagram d = width92_diagram();
  Q w0 = width(d);
  std::cout << "width before  " << fmt_q(w0) << '\n';
  ThinningRun run = extended_thinning(d, width92_to_74_script());
  Q w1 = width(run.result);
  std::cout << "width after   " << fmt_q(w1) << '\n';
  Q w2 = width(width74_diagram());
  auto check = [&](const std::string &what, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
    pass = pass && ok;
  };
  check("width 92", w0 == Q(92));
  check("width 74", w1 == Q(74) && w2 == Q(74));
  check("net extent 10 then 9", netext(d) == Q(10) && netext(run.result) == Q(9));
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (trace)
    std::cout << "time          " << ms << " ms\n";
  std::cout << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"vpbridge: multiple bridge surface diagrams, invariants, moves and sums"};
  app.require_subcommand(1);
  app.add_flag("--quiet", quiet, "Print only essential output");
  app.add_flag("--trace", trace, "Print intermediate steps");

  std::string file, file2, moves, out, point1, point2, dir, name;
  bool identities = false, track_width = false;
  int kind = 2;

  auto *validate = app.add_subcommand("validate", "Check a diagram file");
  validate->add_option("file", file)->required();

  auto *inv = app.add_subcommand("invariants", "Report netext, width, netchi and deltas");
  inv->add_option("file", file)->required();
  inv->add_flag("--check-identities", identities, "Append the global identity checks");

  auto *apply = app.add_subcommand("apply", "Apply a move script");
  apply->add_option("diagram", file)->required();
  apply->add_option("moves", moves)->required();
  apply->add_option("-o,--out", out, "Write the result here instead of stdout");
  apply->add_flag("--width", track_width, "Require the width hypotheses and track width");

  auto *gl = app.add_subcommand("glue", "Sum two diagrams along a 2- or 3-punctured sphere");
  gl->add_option("file1", file)->required();
  gl->add_option("point1", point1)->required();
  gl->add_option("file2", file2)->required();
  gl->add_option("point2", point2)->required();
  gl->add_option("--kind", kind, "2 or 3")->check(CLI::IsMember({2, 3}));
  gl->add_option("-o,--out", out);

  auto *fac = app.add_subcommand("factor", "Split along thin summing spheres");
  fac->add_option("file", file)->required();
  fac->add_option("--dir", dir, "Directory for the factor files");

  auto *bounds = app.add_subcommand("bounds", "Classical bound tables");
  bounds->require_subcommand(1);
  SummandProfile prof;
  auto *tun = bounds->add_subcommand("tunnel", "Tunnel number bounds of a sum");
  tun->add_option("--n", prof.n)->required();
  tun->add_option("--j", prof.j)->required();
  tun->add_option("--t", prof.tunnel)->required();
  int g = 0, b = 0;
  auto *mor = bounds->add_subcommand("morimoto", "Summand counts for (g,b)-positions");
  mor->add_option("--g", g)->required();
  mor->add_option("--b", b)->required();

  SearchBudget budget;
  int chi_cap = 0;
  auto *search = app.add_subcommand("search", "Bounded search for thinner diagrams");
  search->add_option("file", file)->required();
  search->add_option("--depth", budget.max_depth)->check(CLI::NonNegativeNumber);
  auto *cap = search->add_option("--chi-cap", chi_cap, "Cap on net Euler characteristic");
  search->add_flag("--width", budget.width_tracking, "Track width (needs the width hypotheses)");
  search->add_option("--beam", budget.beam)->check(CLI::PositiveNumber);
  search->add_option("--max-diagrams", budget.max_diagrams)->check(CLI::PositiveNumber);
  search->add_option("-o,--out", out, "Output prefix for the .diag and .moves files");

  auto *demo = app.add_subcommand("demo", "Self-checking worked examples");
  demo->add_option("name", name)->required();

  auto *build = app.add_subcommand("build", "Print a built-in diagram");
  build->add_option("name", name)->required();
  build->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate)
      return cmd_validate(file);
    if (*inv)
      return cmd_invariants(file, identities);
    if (*apply)
      return cmd_apply(file, moves, out, track_width);
    if (*gl)
      return cmd_glue(file, point1, file2, point2, kind, out);
    if (*fac)
      return cmd_factor(file, dir);
    if (*tun) {
      TunnelBounds t = tunnel_bounds(prof);
      std::cout << "lower=" << t.lower << " upper=" << t.upper << '\n';
      return 0;
    }
    if (*mor) {
      MorimotoBounds m = morimoto_bounds(g, b);
      std::cout << "max=" << m.max_summands << " min11=" << m.min_11
                << " min2bridge=" << m.min_2bridge << '\n';
      return 0;
    }
    if (*search) {
      if (*cap)
        budget.netchi_cap = chi_cap;
      return cmd_search(file, budget, out);
    }
    if (*demo)
      return cmd_demo(name);
    if (*build) {
      emit(build_named(name), out);
      return 0;
    }
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << '\n';
    return 1;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
