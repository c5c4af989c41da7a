// Command-line surface: census tables, exact counts, asymptotic models,
// comparison tables, Tauberian demos, appendix lemma checks, and the
// verification gate. CSV and JSON outputs are deterministic; exact integers
// are serialized as decimal strings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "abelext/counting.hpp"
#include "abelext/fqcensus.hpp"
#include "abelext/lfunc.hpp"
#include "abelext/numeric.hpp"
#include "abelext/tauberian.hpp"
#include "abelext/verify.hpp"

using json = nlohmann::ordered_json;
using namespace abelext;
using fqcensus::FieldParams;
using fqcensus::PrimeCensus;

namespace {

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output path: " + path);
    os = &file;
  }
};

std::string format_exponent(double e) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9f", e);
  return buf;
}

std::string real_string(const Real& x, int digits) { return decimal_string(x, digits); }

int run_census(long q, int max_deg, bool lists, const std::string& format, OutputTarget& out) {
  PrimeCensus census = PrimeCensus::make(q, max_deg);
  if (lists) census.attach_lists(max_deg);
  if (format == "json") {
    json doc;
    doc["q"] = q;
    doc["max_deg"] = max_deg;
    json rows = json::array();
    for (int d = 1; d <= max_deg; ++d) {
      json row;
      row["d"] = d;
      row["count"] = census.count(d).str();
      if (lists) {
        json polys = json::array();
        for (const auto& f : census.lists[d]) polys.push_back(f.str());
        row["polynomials"] = polys;
      }
      rows.push_back(row);
    }
    doc["rows"] = rows;
    *out.os << doc.dump(2) << "\n";
  } else {
    *out.os << (lists ? "d,count,polynomials\n" : "d,count\n");
    for (int d = 1; d <= max_deg; ++d) {
      *out.os << d << "," << census.count(d).str();
      if (lists) {
        *out.os << ",";
        bool first = true;
        for (const auto& f : census.lists[d]) {
          if (!first) *out.os << "; ";
          *out.os << f.str();
          first = false;
        }
      }
      *out.os << "\n";
    }
  }
  return 0;
}

int run_coeffs(long q, long ell, int max_n, const std::string& format, OutputTarget& out) {
  FieldParams params = FieldParams::make(q, ell);
  PrimeCensus census = PrimeCensus::make(q, params.alpha * max_n);
  auto f = lfunc::build_f_series(params, census, max_n);
  if (format == "json") {
    json doc;
    doc["q"] = q;
    doc["ell"] = ell;
    doc["alpha"] = params.alpha;
    json rows = json::array();
    for (int n = 0; n <= max_n; ++n)
      rows.push_back({{"n", n}, {"b", boost::multiprecision::numerator(f[n]).str()}});
    doc["rows"] = rows;
    *out.os << doc.dump(2) << "\n";
  } else {
    *out.os << "n,b\n";
    for (int n = 0; n <= max_n; ++n)
      *out.os << n << "," << boost::multiprecision::numerator(f[n]).str() << "\n";
  }
  return 0;
}

int run_count(long q, long ell, int max_n, const std::string& oracle, const std::string& format,
              OutputTarget& out) {
  FieldParams params = FieldParams::make(q, ell);
  PrimeCensus census = PrimeCensus::make(q, params.alpha * max_n);
  std::vector<counting::CountTable> tables;
  std::vector<std::string> routes;
  auto want = [&](const char* name) { return oracle == "all" || oracle == name; };
  if (want("series")) {
    tables.push_back(counting::exact_counts_series(params, census, max_n));
    routes.emplace_back("series");
  }
  if (want("dp")) {
    tables.push_back(counting::exact_counts_dp(params, census, max_n));
    routes.emplace_back("dp");
  }
  if (want("enumerative")) {
    counting::CountBudget budget;
    bool feasible = params.k == 1 && params.p <= budget.max_p &&
                    params.alpha * max_n <= budget.max_total_deg;
    if (feasible || oracle == "enumerative") {
      census.attach_lists(std::max(1, params.alpha * max_n / 2));
      tables.push_back(counting::exact_counts_enumerative(params, census, max_n, budget));
      routes.emplace_back("enumerative");
    }
  }
  if (tables.empty()) throw std::invalid_argument("unknown oracle selector: " + oracle);
  bool agree = true;
  for (const auto& t : tables) agree = agree && t.values == tables.front().values;
  const bool flag = oracle == "all";
  if (format == "json") {
    json doc;
    doc["q"] = q;
    doc["ell"] = ell;
    doc["alpha"] = params.alpha;
    doc["routes"] = routes;
    if (flag) doc["routes_agree"] = agree;
    json rows = json::array();
    for (int n = 1; n <= max_n; ++n)
      rows.push_back({{"n", n}, {"a", tables.front().a(n).str()}});
    doc["rows"] = rows;
    *out.os << doc.dump(2) << "\n";
  } else {
    *out.os << (flag ? "n,a,routes_agree\n" : "n,a\n");
    for (int n = 1; n <= max_n; ++n) {
      *out.os << n << "," << tables.front().a(n).str();
      if (flag) *out.os << "," << (agree ? "true" : "false");
      *out.os << "\n";
    }
  }
  return agree ? 0 : 1;
}

json model_to_json(const tauberian::AsymptoticModel& model, int digits) {
  json doc;
  doc["q"] = model.params.q.str();
  doc["ell"] = model.params.ell;
  doc["alpha"] = model.params.alpha;
  doc["w"] = model.params.w;
  doc["r"] = {{"series", real_string(model.r_series.value, digits)},
              {"series_radius", real_string(model.r_series.radius, 3)},
              {"product", real_string(model.r_product, digits)},
              {"product_radius", real_string(model.r_product_radius, 3)}};
  json qc = json::array();
  json qr = json::array();
  for (auto it = model.series.Q.rbegin(); it != model.series.Q.rend(); ++it)
    qc.push_back(decimal_string(*it, digits));
  for (auto it = model.series.Q_radius.rbegin(); it != model.series.Q_radius.rend(); ++it)
    qr.push_back(decimal_string(*it, 3));
  doc["Q"] = qc;  // descending degree
  doc["Q_radius"] = qr;
  doc["c1"] = decimal_string(model.c1, digits);
  doc["c1_radius"] = decimal_string(model.c1_radius, 3);
  if (model.c2) {
    doc["c2"] = decimal_string(*model.c2, digits);
    doc["c2_radius"] = decimal_string(model.c2_radius, 3);
  }
  doc["second_order_shift"] = decimal_string(model.second_order_shift, digits);
  doc["secondary_radius_exponent"] = model.secondary_exponent;
  doc["order"] = model.series_order;
  doc["cutoff"] = model.cutoff;
  return doc;
}

int run_asympt(long q, long ell, int order, int cutoff, int digits, const std::string& format,
               OutputTarget& out) {
  if (format == "csv") throw std::invalid_argument("asympt emits JSON only");
  FieldParams params = FieldParams::make(q, ell);
  PrimeCensus census = PrimeCensus::make(q, std::max(params.alpha * order, cutoff));
  if (cutoff == 0)
    cutoff = lfunc::cutoff_for_precision(params, census, Real(1e-12));
  auto model = tauberian::build_field_model(params, census, order, cutoff);
  *out.os << model_to_json(model, digits).dump(2) << "\n";
  return 0;
}

int run_compare(long q, long ell, long n_from, long n_to, int order, int cutoff, int digits,
                const std::string& format, OutputTarget& out) {
  FieldParams params = FieldParams::make(q, ell);
  if (n_to > order) throw std::invalid_argument("comparison range exceeds series order");
  PrimeCensus census = PrimeCensus::make(q, std::max(params.alpha * order, cutoff));
  auto model = tauberian::build_field_model(params, census, order, cutoff);
  auto counts = counting::exact_counts_series(params, census, static_cast<int>(n_to));
  auto rows = tauberian::comparison_table(model, counts.values, n_from, n_to);
  if (format == "json") {
    json doc;
    doc["model"] = model_to_json(model, digits);
    json jrows = json::array();
    for (const auto& row : rows) {
      json r;
      r["n"] = row.n;
      r["exact"] = row.exact.str();
      r["predicted"] = decimal_string(row.predicted, digits);
      r["residual"] = decimal_string(row.residual, digits);
      if (row.residual_exponent) r["residual_exponent"] = *row.residual_exponent;
      jrows.push_back(r);
    }
    doc["rows"] = jrows;
    *out.os << doc.dump(2) << "\n";
  } else {
    *out.os << "n,exact,predicted,residual,residual_exponent\n";
    for (const auto& row : rows) {
      *out.os << row.n << "," << row.exact.str() << "," << decimal_string(row.predicted, digits)
              << "," << decimal_string(row.residual, digits) << ",";
      if (row.residual_exponent) *out.os << format_exponent(*row.residual_exponent);
      *out.os << "\n";
    }
  }
  return 0;
}

int run_tauberian(double w, int a, long q, long n, int terms, int digits,
                  const std::string& format, OutputTarget& out) {
  auto coeffs = tauberian::binomial_pole_series(Rational(a), Real(w), q, terms);
  Real scaled = tauberian::scaled_pole_coefficient(Real(w), n);
  Real inv_gamma = Real(1) / Real(tauberian::detail::gamma_lanczos(w));
  Real raw_rel = boost::multiprecision::abs(scaled / inv_gamma - 1);
  // first-order correction: -1/(8n) at w = 1/2, (w^2-w)/(2n) in general
  Real correction = w == 0.5 ? 1 - Real(1) / (8 * Real(n))
                             : 1 + Real(w * w - w) / (2 * Real(n));
  Real corrected = boost::multiprecision::abs(scaled / (inv_gamma * correction) - 1);
  if (format == "csv") {
    *out.os << "k,coefficient\n";
    for (int k = 0; k < terms; ++k)
      *out.os << k << "," << real_string(coeffs[static_cast<std::size_t>(k)], digits) << "\n";
  } else {
    json doc;
    doc["a"] = a;
    doc["w"] = w;
    doc["q"] = q;
    json cj = json::array();
    for (const auto& c : coeffs) cj.push_back(real_string(c, digits));
    doc["coefficients"] = cj;
    doc["n"] = n;
    doc["scaled_coefficient"] = real_string(scaled, digits);
    doc["inverse_gamma_w"] = real_string(inv_gamma, digits);
    doc["raw_relative_error"] = real_string(raw_rel, 6);
    doc["corrected_relative_error"] = real_string(corrected, 6);
    *out.os << doc.dump(2) << "\n";
  }
  return 0;
}

int run_lemma_check(double t, double w, double delta, long q, int digits,
                    const std::string& format, OutputTarget& out) {
  struct Row {
    std::string check;
    long n;
    Real value, prediction, error;
  };
  std::vector<Row> rows;
  for (long n : {1000L, 2000L, 4000L}) {
    auto g = tauberian::gamma_ratio_check(t, n);
    rows.push_back({"gamma-ratio", n, g.ratio, g.prediction,
                    boost::multiprecision::abs(g.residual)});
  }
  for (long n : {50L, 100L, 200L}) {
    auto k = tauberian::keyhole_integral_check(Rational(1), w, delta, q, n);
    rows.push_back({"keyhole", n, k.integral, k.prediction, k.relative_error});
  }
  if (format == "json") {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"check", r.check},
                     {"n", r.n},
                     {"value", real_string(r.value, digits)},
                     {"prediction", real_string(r.prediction, digits)},
                     {"error", real_string(r.error, 6)}});
    *out.os << doc.dump(2) << "\n";
  } else {
    *out.os << "check,n,value,prediction,error\n";
    for (const auto& r : rows)
      *out.os << r.check << "," << r.n << "," << real_string(r.value, digits) << ","
              << real_string(r.prediction, digits) << "," << real_string(r.error, 6) << "\n";
  }
  return 0;
}

int run_verify(OutputTarget& out) {
  bool failed = false;
  int failed_index = 0;
  auto results = verify::run_verification(
      [&](const verify::CheckResult& r) {
        *out.os << "check " << r.index << " " << r.name << ": " << (r.ok ? "ok" : "FAIL");
        if (!r.ok) *out.os << " -- " << r.detail;
        *out.os << "\n";
        out.os->flush();
        if (!r.ok && !failed) {
          failed = true;
          failed_index = r.index;
        }
      },
      true);
  if (failed) {
    *out.os << "verification failed at check " << failed_index << "\n";
    return 1;
  }
  *out.os << "all " << results.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counting and asymptotics of abelian ell-extensions of F_q(t)"};
  app.require_subcommand(1);

  std::string format;  // default depends on the subcommand
  std::string out_path;
  app.add_option("--format", format, "output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output path (default: stdout)");

  long q = 2, ell = 3, n_demo = 10000;
  int max_deg = 8, max_n = 10, order = 60, cutoff = 20, digits = 30, terms = 8, a_demo = 1;
  long n_from = 1, n_to = 40;
  double w_demo = 0.5, t_demo = 0.5, delta_demo = 0.5;
  bool lists = false;
  std::string oracle = "all";

  auto* census_cmd = app.add_subcommand("census", "monic irreducible counts per degree");
  census_cmd->add_option("--q", q, "prime power")->required();
  census_cmd->add_option("--max-deg", max_deg, "largest degree")->required();
  census_cmd->add_flag("--lists", lists, "include explicit polynomial lists (prime q)");

  auto* coeffs_cmd = app.add_subcommand("coeffs", "Euler-product coefficients b_{alpha n}");
  coeffs_cmd->add_option("--q", q)->required();
  coeffs_cmd->add_option("--ell", ell)->required();
  coeffs_cmd->add_option("--max-n", max_n)->required();

  auto* count_cmd = app.add_subcommand("count", "exact a_ell(n) by the chosen oracle(s)");
  count_cmd->add_option("--q", q)->required();
  count_cmd->add_option("--ell", ell)->required();
  count_cmd->add_option("--max-n", max_n)->required();
  count_cmd->add_option("--oracle", oracle, "series, dp, enumerative, or all")
      ->check(CLI::IsMember({"series", "dp", "enumerative", "all"}));

  auto* asympt_cmd = app.add_subcommand("asympt", "fitted asymptotic model (JSON)");
  asympt_cmd->add_option("--q", q)->required();
  asympt_cmd->add_option("--ell", ell)->required();
  asympt_cmd->add_option("--order", order, "series truncation order");
  asympt_cmd->add_option("--cutoff", cutoff, "Euler-product cutoff (0 = automatic)");
  asympt_cmd->add_option("--digits", digits, "significant digits in output");

  auto* compare_cmd = app.add_subcommand("compare", "exact vs predicted counts");
  compare_cmd->add_option("--q", q)->required();
  compare_cmd->add_option("--ell", ell)->required();
  compare_cmd->add_option("--n-from", n_from);
  compare_cmd->add_option("--n-to", n_to);
  compare_cmd->add_option("--order", order);
  compare_cmd->add_option("--cutoff", cutoff);
  compare_cmd->add_option("--digits", digits);

  auto* tauberian_cmd =
      app.add_subcommand("tauberian", "non-integer pole order demo (1 - q^a u)^{-w}");
  tauberian_cmd->add_option("--w", w_demo, "pole order in (0, infinity)");
  tauberian_cmd->add_option("--a", a_demo, "pole location exponent");
  tauberian_cmd->add_option("--q", q);
  tauberian_cmd->add_option("--n", n_demo, "index for the scaled-limit diagnostic");
  tauberian_cmd->add_option("--terms", terms, "number of raw coefficients to emit");
  tauberian_cmd->add_option("--digits", digits);

  auto* lemma_cmd = app.add_subcommand("lemma-check", "gamma-ratio and keyhole-integral checks");
  lemma_cmd->add_option("--t", t_demo, "gamma-ratio argument");
  lemma_cmd->add_option("--w", w_demo, "keyhole pole order in (0,1)");
  lemma_cmd->add_option("--delta", delta_demo, "keyhole outer radius exponent");
  lemma_cmd->add_option("--q", q);
  lemma_cmd->add_option("--digits", digits);

  app.add_subcommand("verify", "run every identity and oracle-equivalence suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (format.empty())
    format = (app.got_subcommand("asympt") || app.got_subcommand("tauberian")) ? "json" : "csv";

  try {
    OutputTarget out;
    out.open(out_path);
    if (app.got_subcommand("census")) return run_census(q, max_deg, lists, format, out);
    if (app.got_subcommand("coeffs")) return run_coeffs(q, ell, max_n, format, out);
    if (app.got_subcommand("count")) return run_count(q, ell, max_n, oracle, format, out);
    if (app.got_subcommand("asympt"))
      return run_asympt(q, ell, order, cutoff, digits, format, out);
    if (app.got_subcommand("compare"))
      return run_compare(q, ell, n_from, n_to, order, cutoff, digits, format, out);
    if (app.got_subcommand("tauberian"))
      return run_tauberian(w_demo, a_demo, q, n_demo, terms, digits, format, out);
    if (app.got_subcommand("lemma-check"))
      return run_lemma_check(t_demo, w_demo, delta_demo, q, digits, format, out);
    if (app.got_subcommand("verify")) return run_verify(out);
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
