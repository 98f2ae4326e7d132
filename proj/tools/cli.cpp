// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "bregman/error.hpp"
#include "bregman/sampling.hpp"
#include "bregman/verify.hpp"
#include "reproduce.hpp"

namespace bregman::cli {

namespace {

struct GridSpec {
  double lo = 0.0, hi = 0.0;
  std::size_t n = 0;
};

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  char* end = nullptr;
  auto num = [&](const std::string& p) {
    const double v = std::strtod(p.c_str(), &end);
    if (p.empty() || *end != '\0' || !std::isfinite(v)) raise(ErrorCode::InvalidArgument, "bad grid spec '" + spec + "'");
    return v;
  };
  if (parts.size() != 3) raise(ErrorCode::InvalidArgument, "grid spec must be lo:hi:n, got '" + spec + "'");
  g.lo = num(parts[0]);
  g.hi = num(parts[1]);
  const double n = num(parts[2]);
  if (n < 1 || n != std::floor(n) || n > 1e7) raise(ErrorCode::InvalidArgument, "bad grid size in '" + spec + "'");
  g.n = static_cast<std::size_t>(n);
  if (g.n > 1 && !(g.lo < g.hi)) raise(ErrorCode::InvalidArgument, "grid needs lo < hi");
  return g;
}

using Column = std::function<double(double)>;

double nan_v() { return std::numeric_limits<double>::quiet_NaN(); }

Column make_column(const std::string& what, const ProxEnv& pe) {
  const Instance& in = pe.instance();
  const Kernel& k = in.kernel;
  if (what == "f") return [&in](double x) { return in.fn(x).to_double(); };
  if (what == "env")
    return [&pe, &k](double y) { return k.in_interior(y) ? pe.left_env(y).to_double() : INFINITY; };
  if (what == "hull")
    return [&pe, &k](double x) { return k.domain().contains(x) ? pe.prox_hull(x).to_double() : INFINITY; };
  if (what == "prox")
    return [&pe, &k](double y) {
      if (!k.in_interior(y)) return nan_v();
      const ProxResult p = pe.left_prox(y);
      return p.minimizers.empty() ? nan_v() : p.minimizers.front();
    };
  if (what == "subdiff-lo" || what == "subdiff-hi") {
    std::string why;
    if (!hull_hypotheses(pe, &why)) raise(ErrorCode::HypothesesUnmet, "column " + what + ": " + why);
    const bool lo = what == "subdiff-lo";
    return [&pe, lo](double x) {
      const SubdiffSet S = left_lpsubdiff_hull(pe, x);
      if (S.empty) return nan_v();
      return lo ? S.lo.to_double() : S.hi.to_double();
    };
  }
  if (what == "h_lambda")
    return [&pe, &k](double xi) { return k.grad_range().in_interior(xi) ? pe.h_lambda(xi) : nan_v(); };
  raise(ErrorCode::InvalidArgument, "unknown quantity '" + what + "'");
}

int cmd_list(std::ostream& out) {
  for (const auto& name : instance_names()) {
    const Instance& in = get_instance(name);
    std::string tags;
    for (const auto& t : in.tags) tags += (tags.empty() ? "" : ",") + t;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", in.lambda);
    out << name << '\t' << in.kernel.name() << "\tlambda=" << buf << '\t' << (tags.empty() ? "-" : tags) << '\t'
        << in.description << '\n';
  }
  return kPass;
}

int cmd_curve(const std::string& name, const std::vector<std::string>& what, const std::string& grid,
              const std::string& format, const Settings& s, std::ostream& out) {
  const Instance& in = get_instance(name);
  const ProxEnv pe(in, s);
  std::vector<Column> cols;
  for (const auto& w : what) cols.push_back(make_column(w, pe));

  std::vector<double> xs;
  if (!grid.empty()) {
    const GridSpec g = parse_grid(grid);
    xs = g.n == 1 ? std::vector<double>{g.lo} : linspace(g.lo, g.hi, g.n);
  } else {
    // Dual abscissae when only h_lambda is requested, primal otherwise.
    const bool dual = std::all_of(what.begin(), what.end(), [](const std::string& w) { return w == "h_lambda"; });
    const Interval iv = inset_interval(dual ? in.dual_window : in.kernel_window(), s.sample_inset);
    xs = linspace(iv.lo, iv.hi, 201);
  }

  if (format == "json") {
    nlohmann::ordered_json j;
    j["instance"] = name;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double x : xs) {
      nlohmann::ordered_json row;
      row["x"] = format_number(x);
      for (std::size_t c = 0; c < cols.size(); ++c) row[what[c]] = format_number(cols[c](x));
      rows.push_back(row);
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
    return kPass;
  }
  out << "x";
  for (const auto& w : what) out << ',' << w;
  out << '\n';
  for (double x : xs) {
    out << format_number(x);
    for (const auto& c : cols) out << ',' << format_number(c(x));
    out << '\n';
  }
  return kPass;
}

int cmd_reproduce(const std::string& id, bool verbose, const Settings& s, std::ostream& out) {
  std::ostringstream detail;
  const auto lines = reproduce(id, s, detail);
  if (verbose) out << detail.str();
  bool ok = true;
  out << "example " << id << '\n';
  for (const auto& l : lines) {
    out << (l.pass ? "  PASS  " : "  FAIL  ") << l.label << ": " << l.measured << '\n';
    ok = ok && l.pass;
  }
  return ok ? kPass : kImplicationFailure;
}

void print_text(const std::vector<VerifyReport>& rs, std::ostream& out) {
  for (const auto& r : rs) {
    out << r.instance << ' ' << r.theorem;
    if (!r.skipped.empty()) {
      out << ": skipped (" << r.skipped << ")\n";
      continue;
    }
    out << ": " << r.violations() << " violated\n";
    for (const auto& c : r.conditions)
      out << "  " << c.label << " = " << (!c.holds ? "n/a" : *c.holds ? "true" : "false") << '\n';
    for (const auto& i : r.implications) {
      std::string p;
      for (const auto& x : i.premises) p += (p.empty() ? "" : " & ") + x;
      out << "  " << (p.empty() ? "." : p) << " => " << i.conclusion << ": " << to_string(i.status);
      if (!i.reason.empty()) out << " (" << i.reason << ')';
      out << '\n';
    }
  }
}

int cmd_verify(bool all, const std::vector<std::string>& names, std::uint64_t seed, const std::string& format,
               const Settings& s, std::ostream& out, std::ostream& err) {
  if (all == !names.empty()) {
    err << "error: verify needs exactly one of --all or --instance\n";
    return kUsage;
  }
  const auto rs = run_suite(all ? instance_names() : names, seed, s);
  if (format == "json")
    out << to_json(rs) << '\n';
  else
    print_text(rs, out);
  const std::size_t v = total_violations(rs);
  if (v) err << v << " asserted implication(s) violated\n";
  return v ? kImplicationFailure : kPass;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bregman proximal calculus: curves, example reproduction and the theorem harness", "bregman"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List catalog instances");

  std::string inst, grid, format = "csv";
  std::vector<std::string> what;
  auto* curve = app.add_subcommand("curve", "Tabulate quantities of an instance on a grid");
  curve->add_option("--instance", inst, "Catalog instance")->required();
  curve->add_option("--what", what, "Comma-separated: f,env,hull,prox,subdiff-lo,subdiff-hi,h_lambda")
      ->required()
      ->delimiter(',');
  curve->add_option("--grid", grid, "lo:hi:n (default: 201 points over the instance window)");
  curve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string example;
  bool verbose = false;
  auto* repro = app.add_subcommand("reproduce", "Run the checks of a catalog example");
  repro->add_option("example", example, "3.10, 4.11, 4.19, 4.20 or ln")->required();
  repro->add_flag("-v,--verbose", verbose, "Print per-point detail");

  bool all = false;
  std::vector<std::string> names;
  std::uint64_t seed = 42;
  std::string vformat = "text";
  auto* verify = app.add_subcommand("verify", "Run the theorem harness");
  verify->add_flag("--all", all, "Every catalog instance");
  verify->add_option("--instance", names, "Instance name (repeatable)");
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--format", vformat, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const Settings s = Settings::from_env();
    if (*list) return cmd_list(out);
    if (*curve) return cmd_curve(inst, what, grid, format, s, out);
    if (*repro) return cmd_reproduce(example, verbose, s, out);
    if (*verify) return cmd_verify(all, names, seed, vformat, s, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bregman::cli
