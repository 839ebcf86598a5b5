#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypam/hypam.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOutsideScope = 3;
constexpr int kExitRegime = 4;

constexpr std::size_t kOrderCap = 5000;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

const char* to_string(hypam::Trichotomy t) {
  switch (t) {
    case hypam::Trichotomy::less: return "less";
    case hypam::Trichotomy::equal: return "equal";
    default: return "greater";
  }
}

const char* to_string(hypam::RootPosition p) {
  switch (p) {
    case hypam::RootPosition::below_pstar_low: return "below_pstar_low";
    case hypam::RootPosition::equals_pstar_low: return "equals_pstar_low";
    case hypam::RootPosition::strictly_between: return "strictly_between";
    case hypam::RootPosition::equals_pstar_high: return "equals_pstar_high";
    default: return "above_pstar_high";
  }
}

struct GlobalOptions {
  std::size_t order = 200;
  std::string format = "csv";
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
};

hypam::ParameterTriple parse_triple(const std::string& a, const std::string& b,
                                    const std::string& c) {
  return hypam::make_params(hypam::parse_rational(a), hypam::parse_rational(b),
                            hypam::parse_rational(c));
}

int parse_sign(const std::string& text) {
  if (text == "1" || text == "+1") return +1;
  if (text == "-1") return -1;
  throw std::invalid_argument("sign must be +1 or -1");
}

std::vector<double> parse_double_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid must be start:step:count");
  const double start = std::stod(text.substr(0, c1));
  const double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const long count = std::stol(text.substr(c2 + 1));
  if (count < 0) throw std::invalid_argument("grid count must be >= 0");
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) grid[i] = start + i * step;
  return grid;
}

std::vector<hypam::Rational> parse_rational_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {hypam::parse_rational(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid must be start:step:count");
  const hypam::Rational start = hypam::parse_rational(text.substr(0, c1));
  const hypam::Rational step = hypam::parse_rational(text.substr(c1 + 1, c2 - c1 - 1));
  const long count = std::stol(text.substr(c2 + 1));
  if (count < 0) throw std::invalid_argument("grid count must be >= 0");
  std::vector<hypam::Rational> grid(count);
  for (long i = 0; i < count; ++i) grid[i] = start + i * step;
  return grid;
}

void check_order(std::size_t order) {
  if (order > kOrderCap)
    throw std::invalid_argument("truncation order is capped at " + std::to_string(kOrderCap));
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

int run_coeffs(const GlobalOptions& global, const std::string& family, const std::string& a,
               const std::string& b, const std::string& c, const std::string& p_text) {
  check_order(global.order);
  const hypam::ParameterTriple params = parse_triple(a, b, c);
  const bool needs_p = family != "F";
  if (needs_p && p_text.empty())
    throw std::invalid_argument("family " + family + " requires --p");
  const hypam::Rational p = needs_p ? hypam::parse_rational(p_text) : hypam::Rational(0);

  hypam::TruncatedSeries series = [&] {
    if (family == "F") return hypam::hyp_coeffs(params, global.order);
    if (family == "Fp") return hypam::fp_coeffs(params, p, global.order);
    if (family == "Gp") return hypam::gp_reduced_coeffs(params, p, global.order);
    if (family == "lnFp") return hypam::lnfp_coeffs(params, p, global.order);
    throw std::invalid_argument("unknown family " + family);
  }();

  if (global.format == "json") {
    json rows = json::array();
    for (std::size_t n = 0; n <= series.order(); ++n)
      rows.push_back({{"n", n},
                      {"coefficient", hypam::render(series[n])},
                      {"float", hypam::to_double(series[n])}});
    const json out = {{"tool_version", hypam::kVersion},
                      {"family", family},
                      {"a", hypam::render(params.a())},
                      {"b", hypam::render(params.b())},
                      {"c", hypam::render(params.c())},
                      {"p", needs_p ? hypam::render(p) : ""},
                      {"order", global.order},
                      {"e_power", series.e_power()},
                      {"rows", rows}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "# hypam " << hypam::kVersion << " coeffs family=" << family
            << " a=" << hypam::render(params.a()) << " b=" << hypam::render(params.b())
            << " c=" << hypam::render(params.c()) << " p=" << (needs_p ? hypam::render(p) : "-")
            << " order=" << global.order << " e_power=" << series.e_power() << "\n";
  std::cout << "# columns: n,coefficient,float\n";
  for (std::size_t n = 0; n <= series.order(); ++n)
    std::cout << n << "," << hypam::render(series[n]) << ","
              << fmt_double(hypam::to_double(series[n])) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const GlobalOptions& global, const std::string& a, const std::string& b,
                 const std::string& c, const std::string& p_text) {
  const hypam::ParameterTriple params = parse_triple(a, b, c);
  const hypam::RegionReport reg = hypam::region(params);
  const bool roots_apply = (params.c() - params.a()) * (params.c() - params.b()) >= 0;

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("in_R1", fmt_bool(reg.in_R1));
  rows.emplace_back("in_R2", fmt_bool(reg.in_R2));
  rows.emplace_back("c_vs_ab_sum", to_string(reg.c_vs_ab_sum));
  rows.emplace_back("zero_balanced", fmt_bool(reg.zero_balanced));
  rows.emplace_back("max_ab_lt_c", fmt_bool(reg.max_ab_lt_c));
  rows.emplace_back("c_ge_abc_combined", fmt_bool(reg.c_ge_abc_combined));
  rows.emplace_back("ab_over_c", hypam::render(params.a() * params.b() / params.c()));
  rows.emplace_back("a_plus_b_plus_1_minus_c",
                    hypam::render(params.a() + params.b() + 1 - params.c()));
  for (std::size_t k = 1; k <= 5; ++k)
    rows.emplace_back("kCk_" + std::to_string(k), hypam::render(hypam::kCk(params, k)));
  rows.emplace_back("nCn_limit", hypam::render(hypam::nCn_limit(params)));
  if (roots_apply) {
    const hypam::RootEnclosures roots =
        hypam::root_enclosures(params, hypam::Rational(1, 1000000));
    rows.emplace_back("p_star_low_lo", hypam::render(roots.lower_root.lo));
    rows.emplace_back("p_star_low_hi", hypam::render(roots.lower_root.hi));
    rows.emplace_back("p_star_high_lo", hypam::render(roots.upper_root.lo));
    rows.emplace_back("p_star_high_hi", hypam::render(roots.upper_root.hi));
  } else {
    rows.emplace_back("p_star_low_lo", "n/a");
    rows.emplace_back("p_star_low_hi", "n/a");
    rows.emplace_back("p_star_high_lo", "n/a");
    rows.emplace_back("p_star_high_hi", "n/a");
  }
  if (!p_text.empty()) {
    const hypam::Rational p = hypam::parse_rational(p_text);
    rows.emplace_back("p", hypam::render(p));
    rows.emplace_back("root_position",
                      roots_apply ? to_string(hypam::classify_vs_roots(params, p)) : "n/a");
  }

  if (global.format == "json") {
    json out = {{"tool_version", hypam::kVersion},
                {"a", hypam::render(params.a())},
                {"b", hypam::render(params.b())},
                {"c", hypam::render(params.c())}};
    for (const auto& [key, value] : rows) out[key] = value;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "# hypam " << hypam::kVersion << " classify a=" << hypam::render(params.a())
            << " b=" << hypam::render(params.b()) << " c=" << hypam::render(params.c()) << "\n";
  std::cout << "# columns: key,value\n";
  for (const auto& [key, value] : rows) std::cout << key << "," << value << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const GlobalOptions& global, const std::string& id_text, const std::string& a,
               const std::string& b, const std::string& c, const std::string& p_text,
               std::size_t k, const std::string& sign_text, std::size_t cap) {
  check_order(global.order);
  if (cap > kOrderCap) throw std::invalid_argument("escalation cap exceeds the order cap");
  const auto id = hypam::theorem_id_from_string(id_text);
  if (!id) throw std::invalid_argument("unknown theorem id " + id_text);
  const hypam::ParameterTriple params = parse_triple(a, b, c);
  const hypam::Rational p = hypam::parse_rational(p_text);
  const int sign = parse_sign(sign_text);

  const hypam::ConcordanceReport rep =
      hypam::run_concordance(params, p, *id, global.order, cap, k, sign);

  if (global.format == "json") {
    const json out = {
        {"tool_version", hypam::kVersion},
        {"a", hypam::render(params.a())},
        {"b", hypam::render(params.b())},
        {"c", hypam::render(params.c())},
        {"p", hypam::render(p)},
        {"theorem", hypam::to_string(*id)},
        {"k", k},
        {"sign", sign},
        {"prediction", hypam::to_string(rep.prediction.verdict)},
        {"condition_kind", hypam::to_string(rep.prediction.condition_kind)},
        {"status", hypam::to_string(rep.verdict.status)},
        {"first_violation",
         rep.verdict.first_violation ? json(*rep.verdict.first_violation) : json(nullptr)},
        {"checked_order", rep.final_order},
        {"outcome", hypam::to_string(rep.outcome)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# hypam " << hypam::kVersion << " verify\n";
    std::cout << "# columns: "
                 "a,b,c,p,theorem,k,sign,prediction,condition_kind,status,first_violation,"
                 "checked_order,outcome\n";
    std::cout << hypam::render(params.a()) << "," << hypam::render(params.b()) << ","
              << hypam::render(params.c()) << "," << hypam::render(p) << ","
              << hypam::to_string(*id) << "," << k << "," << sign << ","
              << hypam::to_string(rep.prediction.verdict) << ","
              << hypam::to_string(rep.prediction.condition_kind) << ","
              << hypam::to_string(rep.verdict.status) << ","
              << (rep.verdict.first_violation ? std::to_string(*rep.verdict.first_violation)
                                              : std::string())
              << "," << rep.final_order << "," << hypam::to_string(rep.outcome) << "\n";
  }
  switch (rep.outcome) {
    case hypam::ConcordanceOutcome::concordant: return kExitOk;
    case hypam::ConcordanceOutcome::outside_scope: return kExitOutsideScope;
    default: return kExitCheckFailed;
  }
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int run_bounds(const GlobalOptions& global, const std::string& family, const std::string& a,
               const std::string& b, const std::string& c, const std::string& p_text,
               const std::string& q_text, std::size_t n, const std::string& x_grid,
               const std::string& r_grid, const std::string& form_text) {
  const hypam::ParameterTriple params = parse_triple(a, b, c);

  std::vector<double> grid;
  std::vector<hypam::BoundsReport> reports;
  if (family == "rational" || family == "log" || family == "exp") {
    if (p_text.empty()) throw std::invalid_argument("bounds " + family + " requires --p");
    const hypam::Rational p = hypam::parse_rational(p_text);
    grid = parse_double_grid(x_grid);
    for (double x : grid) {
      if (family == "rational")
        reports.push_back(hypam::bounds_rational(params, p, n, x));
      else if (family == "log")
        reports.push_back(hypam::bounds_log(params, p, n, x));
      else {
        if (q_text.empty()) throw std::invalid_argument("bounds exp requires --q");
        reports.push_back(hypam::bounds_exp(params, p, hypam::parse_rational(q_text), n, x));
      }
    }
  } else if (family == "ratio") {
    if (p_text.empty() || q_text.empty())
      throw std::invalid_argument("bounds ratio requires --p and --q");
    const double p = std::stod(p_text);
    const double q = std::stod(q_text);
    hypam::RatioBoundForm form;
    if (form_text == "r1") {
      form = hypam::RatioBoundForm::r1;
    } else if (form_text == "r2") {
      form = hypam::RatioBoundForm::r2;
    } else {
      const hypam::RegionReport reg = hypam::region(params);
      if (reg.in_R1)
        form = hypam::RatioBoundForm::r1;
      else if (reg.in_R2)
        form = hypam::RatioBoundForm::r2;
      else
        throw hypam::RegimeViolation("parameter triple lies in neither region");
    }
    grid = parse_double_grid(r_grid);
    for (double r : grid) reports.push_back(hypam::bounds_ratio(params, p, q, r, form));
  } else {
    throw std::invalid_argument("unknown bounds family " + family);
  }

  bool all_hold = true;
  for (const auto& rep : reports) all_hold = all_hold && rep.ordering_holds;

  if (global.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({{"x", grid[i]},
                      {"lower", reports[i].lower},
                      {"middle", reports[i].middle},
                      {"upper", reports[i].upper},
                      {"ordering_holds", reports[i].ordering_holds},
                      {"slack_lower", reports[i].slack_lower},
                      {"slack_upper", reports[i].slack_upper}});
    const json out = {{"tool_version", hypam::kVersion}, {"family", family},
                      {"a", hypam::render(params.a())},  {"b", hypam::render(params.b())},
                      {"c", hypam::render(params.c())},  {"rows", rows},
                      {"all_hold", all_hold}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# hypam " << hypam::kVersion << " bounds family=" << family << "\n";
    std::cout << "# columns: x,lower,middle,upper,ordering_holds,slack_lower,slack_upper\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      std::cout << fmt_double(grid[i]) << "," << fmt_double(reports[i].lower) << ","
                << fmt_double(reports[i].middle) << "," << fmt_double(reports[i].upper) << ","
                << fmt_bool(reports[i].ordering_holds) << ","
                << fmt_double(reports[i].slack_lower) << ","
                << fmt_double(reports[i].slack_upper) << "\n";
  }
  return all_hold ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepSpec {
  std::vector<hypam::Rational> a{hypam::Rational(1, 2)}, b{hypam::Rational(1, 2)},
      c{hypam::Rational(1)}, p{hypam::Rational(0)};
  std::size_t order = 200;
  std::size_t cap = 5000;
  std::size_t k = 0;
  int sign = +1;
  std::size_t n = 2;
  double x = 0.5;
  std::string q = "1";
  double ratio_p = 2.0, ratio_q = 2.0, ratio_r = 0.5;
  std::string ratio_form = "auto";
  std::vector<std::string> checks;
  std::vector<std::string> echo;  // raw directives, echoed into the report
};

SweepSpec parse_sweep_spec(std::istream& in) {
  SweepSpec spec;
  std::string line;
  auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad sweep directive: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    spec.echo.push_back(key + "=" + value);
    if (key == "a")
      spec.a = parse_rational_grid(value);
    else if (key == "b")
      spec.b = parse_rational_grid(value);
    else if (key == "c")
      spec.c = parse_rational_grid(value);
    else if (key == "p")
      spec.p = parse_rational_grid(value);
    else if (key == "order")
      spec.order = std::stoul(value);
    else if (key == "cap")
      spec.cap = std::stoul(value);
    else if (key == "k")
      spec.k = std::stoul(value);
    else if (key == "sign")
      spec.sign = parse_sign(value);
    else if (key == "n")
      spec.n = std::stoul(value);
    else if (key == "x")
      spec.x = std::stod(value);
    else if (key == "q")
      spec.q = value;
    else if (key == "ratio_p")
      spec.ratio_p = std::stod(value);
    else if (key == "ratio_q")
      spec.ratio_q = std::stod(value);
    else if (key == "ratio_r")
      spec.ratio_r = std::stod(value);
    else if (key == "ratio_form")
      spec.ratio_form = value;
    else if (key == "checks") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) spec.checks.push_back(item);
      }
    } else {
      throw std::invalid_argument("unknown sweep key: " + key);
    }
  }
  if (spec.checks.empty()) throw std::invalid_argument("sweep needs a checks directive");
  check_order(spec.order);
  if (spec.cap > kOrderCap) throw std::invalid_argument("sweep cap exceeds the order cap");
  return spec;
}

struct SweepRow {
  std::string a, b, c, p, check, result, detail;
};

// Detail strings may carry exception text; keep the CSV column count stable.
std::string csv_safe(std::string text) {
  for (char& ch : text)
    if (ch == ',' || ch == '\n') ch = ';';
  return text;
}

std::string bounds_detail(double x, const hypam::BoundsReport& rep) {
  std::ostringstream out;
  out << "x=" << fmt_double(x) << ";lower=" << fmt_double(rep.lower)
      << ";middle=" << fmt_double(rep.middle) << ";upper=" << fmt_double(rep.upper)
      << ";slack_lower=" << fmt_double(rep.slack_lower)
      << ";slack_upper=" << fmt_double(rep.slack_upper);
  return out.str();
}

SweepRow evaluate_check(const SweepSpec& spec, const hypam::Rational& a,
                        const hypam::Rational& b, const hypam::Rational& c,
                        const hypam::Rational& p, const std::string& check) {
  SweepRow row{hypam::render(a), hypam::render(b), hypam::render(c),
               hypam::render(p), check,            "",
               ""};
  try {
    const hypam::ParameterTriple params = hypam::make_params(a, b, c);
    if (const auto id = hypam::theorem_id_from_string(check)) {
      const hypam::ConcordanceReport rep =
          hypam::run_concordance(params, p, *id, spec.order, spec.cap, spec.k, spec.sign);
      row.result = hypam::to_string(rep.outcome);
      std::ostringstream detail;
      detail << "prediction=" << hypam::to_string(rep.prediction.verdict)
             << ";status=" << hypam::to_string(rep.verdict.status) << ";first_violation="
             << (rep.verdict.first_violation ? std::to_string(*rep.verdict.first_violation)
                                             : std::string())
             << ";order=" << rep.final_order;
      row.detail = detail.str();
    } else if (check == "region") {
      const hypam::RegionReport reg = hypam::region(params);
      row.result = "ok";
      std::ostringstream detail;
      detail << "in_R1=" << fmt_bool(reg.in_R1) << ";in_R2=" << fmt_bool(reg.in_R2)
             << ";c_vs_ab_sum=" << to_string(reg.c_vs_ab_sum)
             << ";zero_balanced=" << fmt_bool(reg.zero_balanced)
             << ";max_ab_lt_c=" << fmt_bool(reg.max_ab_lt_c)
             << ";c_ge_abc_combined=" << fmt_bool(reg.c_ge_abc_combined);
      row.detail = detail.str();
    } else if (check == "bounds_rational" || check == "bounds_log" || check == "bounds_exp" ||
               check == "bounds_ratio") {
      hypam::BoundsReport rep;
      double at = spec.x;
      if (check == "bounds_rational") {
        rep = hypam::bounds_rational(params, p, spec.n, spec.x);
      } else if (check == "bounds_log") {
        rep = hypam::bounds_log(params, p, spec.n, spec.x);
      } else if (check == "bounds_exp") {
        rep = hypam::bounds_exp(params, p, hypam::parse_rational(spec.q), spec.n, spec.x);
      } else {
        hypam::RatioBoundForm form;
        if (spec.ratio_form == "r1") {
          form = hypam::RatioBoundForm::r1;
        } else if (spec.ratio_form == "r2") {
          form = hypam::RatioBoundForm::r2;
        } else {
          const hypam::RegionReport reg = hypam::region(params);
          if (reg.in_R1)
            form = hypam::RatioBoundForm::r1;
          else if (reg.in_R2)
            form = hypam::RatioBoundForm::r2;
          else
            throw hypam::RegimeViolation("parameter triple lies in neither region");
        }
        at = spec.ratio_r;
        rep = hypam::bounds_ratio(params, spec.ratio_p, spec.ratio_q, spec.ratio_r, form);
      }
      row.result = rep.ordering_holds ? "ok" : "violated";
      row.detail = bounds_detail(at, rep);
    } else {
      row.result = "error";
      row.detail = "unknown check";
    }
  } catch (const hypam::NonPositiveParameter& e) {
    row.result = "skipped";
    row.detail = csv_safe(e.what());
  } catch (const hypam::RegimeViolation& e) {
    row.result = "regime_violation";
    row.detail = csv_safe(e.what());
  } catch (const std::exception& e) {
    row.result = "error";
    row.detail = csv_safe(e.what());
  }
  return row;
}

int run_sweep(const GlobalOptions& global, const std::string& spec_path,
              const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::invalid_argument("cannot open sweep spec " + spec_path);
  const SweepSpec spec = parse_sweep_spec(in);

  struct Point {
    hypam::Rational a, b, c, p;
  };
  std::vector<Point> points;
  points.reserve(spec.a.size() * spec.b.size() * spec.c.size() * spec.p.size());
  for (const auto& a : spec.a)
    for (const auto& b : spec.b)
      for (const auto& c : spec.c)
        for (const auto& p : spec.p) points.push_back({a, b, c, p});

  // Points fan out to a worker pool; rows are collected by point index, so
  // the artifact is identical for any worker count.
  std::vector<std::vector<SweepRow>> results(points.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(global.workers, std::max<std::size_t>(points.size(), 1)));
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      std::vector<SweepRow> rows;
      rows.reserve(spec.checks.size());
      for (const std::string& check : spec.checks)
        rows.push_back(
            evaluate_check(spec, points[i].a, points[i].b, points[i].c, points[i].p, check));
      results[i] = std::move(rows);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<std::pair<std::string, std::size_t>> summary{
      {"concordant", 0},        {"discordant", 0}, {"outside_scope", 0},
      {"undetected_at_cap", 0}, {"ok", 0},         {"violated", 0},
      {"regime_violation", 0},  {"skipped", 0},    {"error", 0}};
  std::size_t total = 0;
  for (const auto& rows : results)
    for (const auto& row : rows) {
      ++total;
      for (auto& [key, count] : summary)
        if (row.result == key) ++count;
    }

  std::ostringstream out;
  if (global.format == "json") {
    json rows = json::array();
    for (const auto& point_rows : results)
      for (const auto& row : point_rows)
        rows.push_back({{"a", row.a},
                        {"b", row.b},
                        {"c", row.c},
                        {"p", row.p},
                        {"check", row.check},
                        {"result", row.result},
                        {"detail", row.detail}});
    json counts;
    for (const auto& [key, count] : summary) counts[key] = count;
    counts["rows"] = total;
    const json report = {{"tool_version", hypam::kVersion},
                         {"input", spec.echo},
                         {"rows", rows},
                         {"summary", counts}};
    out << report.dump(2) << "\n";
  } else {
    out << "# hypam " << hypam::kVersion << " sweep\n";
    for (const auto& directive : spec.echo) out << "# input: " << directive << "\n";
    out << "# columns: a,b,c,p,check,result,detail\n";
    for (const auto& point_rows : results)
      for (const auto& row : point_rows)
        out << row.a << "," << row.b << "," << row.c << "," << row.p << "," << row.check << ","
            << row.result << "," << row.detail << "\n";
    out << "# summary: rows=" << total;
    for (const auto& [key, count] : summary) out << " " << key << "=" << count;
    out << "\n";
  }

  if (out_path.empty() || out_path == "-") {
    std::cout << out.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + out_path);
    file << out.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coefficient scans, thresholds and numeric bounds for "
               "hypergeometric-derived function families"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--order", global.order, "truncation order")->capture_default_str();
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--workers", global.workers, "worker threads for sweeps")
      ->capture_default_str();

  std::string family, id_text, a_text, b_text, c_text, p_text, q_text;
  std::string x_grid = "0.5", r_grid = "0.5";
  std::string sign_text = "+1", form_text = "auto", spec_path, out_path;
  std::size_t k = 0, n = 2, cap = kOrderCap;

  CLI::App* coeffs = app.add_subcommand("coeffs", "dump Maclaurin coefficients");
  coeffs->add_option("family", family)->required()->check(CLI::IsMember({"F", "Fp", "Gp", "lnFp"}));
  coeffs->add_option("--a", a_text)->required();
  coeffs->add_option("--b", b_text)->required();
  coeffs->add_option("--c", c_text)->required();
  coeffs->add_option("--p", p_text);

  CLI::App* classify = app.add_subcommand("classify", "regions, thresholds and root positions");
  classify->add_option("--a", a_text)->required();
  classify->add_option("--b", b_text)->required();
  classify->add_option("--c", c_text)->required();
  classify->add_option("--p", p_text);

  CLI::App* verify = app.add_subcommand("verify", "prediction-vs-scan concordance");
  verify->add_option("id", id_text)->required();
  verify->add_option("--a", a_text)->required();
  verify->add_option("--b", b_text)->required();
  verify->add_option("--c", c_text)->required();
  verify->add_option("--p", p_text)->required();
  verify->add_option("--k", k);
  verify->add_option("--sign", sign_text);
  verify->add_option("--cap", cap);

  CLI::App* bounds = app.add_subcommand("bounds", "inequality grids");
  bounds->add_option("family", family)
      ->required()
      ->check(CLI::IsMember({"rational", "log", "exp", "ratio"}));
  bounds->add_option("--a", a_text)->required();
  bounds->add_option("--b", b_text)->required();
  bounds->add_option("--c", c_text)->required();
  bounds->add_option("--p", p_text);
  bounds->add_option("--q", q_text);
  bounds->add_option("--n", n);
  bounds->add_option("--x", x_grid, "x grid value or start:step:count");
  bounds->add_option("--r", r_grid, "r grid value or start:step:count");
  bounds->add_option("--form", form_text)->check(CLI::IsMember({"auto", "r1", "r2"}));

  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep from a key=value spec file");
  sweep->add_option("spec", spec_path)->required();
  sweep->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(global, family, a_text, b_text, c_text, p_text);
    if (classify->parsed()) return run_classify(global, a_text, b_text, c_text, p_text);
    if (verify->parsed())
      return run_verify(global, id_text, a_text, b_text, c_text, p_text, k, sign_text, cap);
    if (bounds->parsed())
      return run_bounds(global, family, a_text, b_text, c_text, p_text, q_text, n, x_grid,
                        r_grid, form_text);
    if (sweep->parsed()) return run_sweep(global, spec_path, out_path);
  } catch (const hypam::RegimeViolation& e) {
    std::cerr << "regime violation: " << e.what() << "\n";
    return kExitRegime;
  } catch (const hypam::NonconvergentAtTolerance& e) {
    std::cerr << "evaluation failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
