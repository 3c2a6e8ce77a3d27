#pragma once

#include <cstdlib>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "fourier.hpp"
#include "liegen.hpp"
#include "newton.hpp"
#include "parse.hpp"
#include "relideal.hpp"

namespace tautjac::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

namespace detail {

inline std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

inline std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += ',';
    s += to_string(x);
  }
  return s;
}

inline std::string params_text(const std::vector<int>& params) {
  std::string s = "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
  return s + ")";
}

// Prints reports as a table or JSON; failures go to `err`. Returns the exit code.
inline int emit_reports(const std::vector<BracketReport>& reports, const std::string& format,
                        std::ostream& out, std::ostream& err) {
  std::size_t failed = 0;
  if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    out << arr.dump(2) << '\n';
  } else {
    out << std::left << std::setw(28) << "identity" << std::setw(16) << "params" << std::setw(7)
        << "genus" << std::setw(8) << "window" << "status\n";
    for (const auto& r : reports)
      out << std::left << std::setw(28) << r.identity << std::setw(16) << params_text(r.params)
          << std::setw(7) << r.genus << std::setw(8) << r.window
          << (r.ok ? "verified" : "FAILED") << '\n';
  }
  for (const auto& r : reports) {
    if (r.ok) continue;
    if (++failed == 1)
      err << "counterexample for " << r.identity << ' ' << params_text(r.params) << ":\n"
          << r.counterexample.value_or("") << '\n';
  }
  if (format != "json")
    out << reports.size() - failed << '/' << reports.size() << " identities verified\n";
  return failed ? kFailed : kOk;
}

inline std::string relations_markdown(const RelationIdeal& I, std::optional<int> only) {
  std::ostringstream md;
  md << "# Derived relations, genus " << I.genus() << " (source cap " << I.source_cap()
     << ")\n\n| w | quotient_dim | relations |\n|---|---|---|\n";
  for (int w = 0; w <= I.source_cap(); ++w) {
    if (only && *only != w) continue;
    md << "| " << w << " | " << I.quotient_dimension(w) << " | ";
    if (w > I.genus()) {
      md << "all " << I.space(w).ambient_dimension() << " monomials";
    } else {
      bool first = true;
      for (const Poly& r : I.relations(w)) {
        md << (first ? "" : "; ") << '`' << r.to_string() << '`';
        first = false;
      }
    }
    md << " |\n";
  }
  return md.str();
}

}  // namespace detail

// Runs one command line. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic engine for the tautological ring of a Jacobian", "tautjac"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir,
                 "Relation ideal cache directory (TAUTJAC_CACHE_DIR overrides)");

  int genus = 0;
  int source_cap = 0;
  int window = 0;
  int max_order = 0;
  int m = 0, n = 0;
  std::string format, expr, check, to_d, to_w, dump_name;
  int weight_value = -1;
  bool clear = false;

  auto* verify = app.add_subcommand("verify", "Verify operator identities");
  verify->require_subcommand(1);
  auto* lie = verify->add_subcommand("lie", "Lie bracket, sl2 and second-bracket identities");
  lie->add_option("--genus", genus)->required();
  lie->add_option("--max-order", max_order, "Bound on m+n")->required();
  lie->add_option("--window", window, "Comparison window")->required();
  lie->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->default_val("table");

  auto* rel = app.add_subcommand("relations", "Derived relation ideal");
  rel->add_option("--genus", genus)->required();
  rel->add_option("--source-cap", source_cap);
  auto* weight_opt = rel->add_option("--weight", weight_value);
  rel->add_option("--format", format)->check(CLI::IsMember({"json", "md"}))->default_val("json");

  auto* nf = app.add_subcommand("normal-form", "Normal form modulo the derived relations");
  auto* mem = app.add_subcommand("member", "Membership in the derived relations");
  for (auto* sub : {nf, mem}) {
    sub->add_option("--genus", genus)->required();
    sub->add_option("--expr", expr)->required();
    sub->add_option("--source-cap", source_cap);
  }

  auto* four = app.add_subcommand("fourier", "Fourier transform checks");
  four->add_option("--genus", genus)->required();
  four->add_option("--check", check)->check(CLI::IsMember({"s2", "conj"}));
  four->add_option("--m", m);
  four->add_option("--n", n);
  four->add_option("--expr", expr, "Print S(expr)");
  four->add_option("--source-cap", source_cap);
  four->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->default_val("table");

  auto* newt = app.add_subcommand("newton", "Convert between w_i and p_i - q_i");
  newt->add_option("--genus", genus)->required();
  auto* opt_d = newt->add_option("--to-d", to_d, "w1,w2,... -> d1,d2,...");
  auto* opt_w = newt->add_option("--to-w", to_w, "d1,d2,... -> w1,w2,...");
  opt_d->excludes(opt_w);

  auto* cache_cmd = app.add_subcommand("cache", "Manage the relation ideal cache");
  cache_cmd->add_option("--dir", cache_dir)->required();
  cache_cmd->add_flag("--clear", clear)->required();

  auto* op = app.add_subcommand("operator", "Print an operator in debug text form");
  op->add_option("--genus", genus)->required();
  op->add_option("--window", window)->required();
  op->add_option("--dump-operator", dump_name, "D, X, Y, tildeX, e, f or h")
      ->required()
      ->check(CLI::IsMember({"D", "X", "Y", "tildeX", "e", "f", "h"}));
  op->add_option("--m", m);
  op->add_option("--n", n);

  std::vector<std::string> storage{"tautjac"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << '\n';
    return kUsage;
  }

  if (const char* env = std::getenv("TAUTJAC_CACHE_DIR"); env && *env) cache_dir = env;
  std::unique_ptr<IdealCache> cache;
  if (!cache_dir.empty()) cache = std::make_unique<IdealCache>(cache_dir);

  auto ideal_for = [&]() {
    int cap = source_cap > 0 ? source_cap : genus + 3;
    return std::make_shared<const RelationIdeal>(build_cached(genus, cap, cache.get()));
  };

  try {
    if (*lie) {
      LieContext ctx(genus, window);
      return detail::emit_reports(verify_lie(max_order, ctx), format, out, err);
    }
    if (*rel) {
      auto I = ideal_for();
      std::optional<int> weight;
      if (*weight_opt) weight = weight_value;
      if (weight && (*weight < 0 || *weight > I->source_cap()))
        throw cap_exceeded("weight " + std::to_string(*weight) + " outside 0.." +
                           std::to_string(I->source_cap()));
      if (format == "md")
        out << detail::relations_markdown(*I, weight);
      else
        out << I->to_json(weight).dump(2) << '\n';
      return kOk;
    }
    if (*nf) {
      Poly f = parse_poly(expr);
      out << ideal_for()->normal_form(f).to_string() << '\n';
      return kOk;
    }
    if (*mem) {
      Poly f = parse_poly(expr);
      bool in = ideal_for()->contains(f);
      out << (in ? "true" : "false") << '\n';
      return in ? kOk : kFailed;
    }
    if (*four) {
      FourierMap F(ideal_for());
      if (!expr.empty()) out << F.transform(parse_poly(expr)).to_string() << '\n';
      if (check == "s2") return detail::emit_reports(verify_s2(F), format, out, err);
      if (check == "conj")
        return detail::emit_reports(verify_fourier_conjugation(m, n, F), format, out, err);
      if (expr.empty()) {
        err << "fourier: give --check or --expr\n";
        return kUsage;
      }
      return kOk;
    }
    if (*newt) {
      if (!*opt_d && !*opt_w) {
        err << "newton: give --to-d or --to-w\n";
        return kUsage;
      }
      if (*opt_d) {
        auto w = detail::parse_list(to_d);
        out << detail::join(w_to_d<Rational>(w, genus)) << '\n';
      } else {
        auto d = detail::parse_list(to_w);
        out << detail::join(d_to_w<Rational>(d, genus)) << '\n';
      }
      return kOk;
    }
    if (*cache_cmd) {
      std::size_t removed = IdealCache(cache_dir).clear();
      out << "removed " << removed << " cache entries from " << cache_dir << '\n';
      return kOk;
    }
    if (*op) {
      LieContext ctx(genus, window);
      Operator a(window, 0);
      if (dump_name == "D") a = make_d(ctx);
      else if (dump_name == "X") a = make_x(m, n, ctx);
      else if (dump_name == "Y") a = make_y(m, n, ctx);
      else if (dump_name == "tildeX") a = make_tilde_x(m, n, ctx);
      else if (dump_name == "e") a = make_sl2(ctx).e;
      else if (dump_name == "f") a = make_sl2(ctx).f;
      else a = make_sl2(ctx).h;
      out << to_string(a) << '\n';
      return kOk;
    }
  } catch (const verification_failure& e) {
    err << e.what() << '\n' << e.counterexample() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tautjac::cli
