#include "bsfs/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsfs/approx.hpp"
#include "bsfs/dist.hpp"
#include "bsfs/moments.hpp"
#include "bsfs/montecarlo.hpp"
#include "bsfs/validation.hpp"

namespace bsfs::cli {

namespace {

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) return number(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) {
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return "";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<long long>(c)) {
        obj[t.columns[i]] = std::get<long long>(c);
      } else if (std::holds_alternative<double>(c) && std::isfinite(std::get<double>(c))) {
        obj[t.columns[i]] = std::get<double>(c);
      } else if (std::holds_alternative<std::string>(c)) {
        obj[t.columns[i]] = std::get<std::string>(c);
      } else {
        obj[t.columns[i]] = nullptr;
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--out", o.path, "write to this file instead of stdout");
}

void emit(const Table& t, const Output& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "json") {
    write_json(t, buf);
  } else {
    write_csv(t, buf);
  }
  if (o.path.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + o.path);
  f << buf.str();
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  is.imbue(std::locale::classic());
  if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof()) {
    throw std::domain_error("grid must look like start:stop:step, got '" + spec + "'");
  }
  if (!(step > 0.0) || b < a) throw std::domain_error("grid needs step > 0 and stop >= start");
  std::vector<double> out;
  const long long count = static_cast<long long>(std::floor((b - a) / step + 1e-9));
  for (long long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& spec, const char* what) {
  std::vector<T> out;
  std::istringstream is(spec);
  is.imbue(std::locale::classic());
  std::string item;
  while (std::getline(is, item, ',')) {
    std::istringstream one(item);
    one.imbue(std::locale::classic());
    T v{};
    if (!(one >> v) || !(one >> std::ws).eof()) {
      throw std::domain_error(std::string(what) + ": cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::domain_error(std::string(what) + ": empty list");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments and distributions of the SFS under the Bolthausen-Sznitman coalescent", "bsfs"};
  app.require_subcommand(1);
  Output output;

  long long n = 0, b = 0, b1 = 0, b2 = 0, reps = 10000, abs_reps = 4000;
  double theta = 1.0, rel_tol = 0.0;
  bool all_b = false, minimal = false;
  std::string mode = "doubled", grid = "0:2:0.25", chain, times, ns = "5,20,35", normalization = "corrected";
  std::uint64_t seed = 0;
  int threads = 0, max_n = 7;

  auto* e = app.add_subcommand("expected-sfs", "exact and approximate E[SFS_{n,b}]");
  e->add_option("--n", n, "sample size")->required();
  e->add_option("--theta", theta, "mutation rate")->capture_default_str();
  e->add_option("--b", b, "single family size (default: all b)");
  e->add_flag("--all-b", all_b, "every b = 1..n-1");
  e->add_option("--rel-tol", rel_tol, "quadrature relative tolerance override");
  add_output(e, output);

  auto* c = app.add_subcommand("cov", "Cov(SFS_{n,b1}, SFS_{n,b2})");
  c->add_option("--n", n)->required();
  c->add_option("--theta", theta)->capture_default_str();
  c->add_option("--b1", b1)->required();
  c->add_option("--b2", b2)->required();
  c->add_option("--mode", mode, "printed or doubled")->check(CLI::IsMember({"printed", "doubled"}))->capture_default_str();
  c->add_option("--rel-tol", rel_tol, "quadrature relative tolerance override");
  add_output(c, output);

  auto* d = app.add_subcommand("dist", "P(l_{n,b} > s) for n/2 < b < n");
  d->add_option("--n", n)->required();
  d->add_option("--b", b)->required();
  d->add_option("--s-grid", grid, "start:stop:step")->capture_default_str();
  add_output(d, output);

  auto* j = app.add_subcommand("joint", "joint large-family probability");
  j->add_option("--n", n)->required();
  j->add_option("--chain", chain, "b1,b2,...")->required();
  j->add_option("--s", times, "s1,s2,... (default zeros)");
  j->add_flag("--minimal", minimal, "require no family of size in (n/2, b1)");
  j->add_option("--normalization", normalization, "corrected or printed")
      ->check(CLI::IsMember({"corrected", "printed"}))
      ->capture_default_str();
  add_output(j, output);

  auto* f1 = app.add_subcommand("figure1", "exact vs refined approximation");
  f1->add_option("--n", ns, "comma-separated sample sizes")->capture_default_str();
  f1->add_option("--theta", theta)->capture_default_str();
  add_output(f1, output);

  auto* f3 = app.add_subcommand("figure3", "exact E[SFS] and asymptotic regime curves");
  long long n3 = 1000;
  f3->add_option("--n", n3)->capture_default_str();
  f3->add_option("--theta", theta)->capture_default_str();
  add_output(f3, output);

  auto* s = app.add_subcommand("simulate", "Monte-Carlo means next to exact values");
  s->add_option("--n", n)->required();
  s->add_option("--theta", theta)->capture_default_str();
  s->add_option("--reps", reps)->capture_default_str();
  s->add_option("--seed", seed)->capture_default_str();
  s->add_option("--threads", threads, "0: BSFS_THREADS or hardware concurrency")->capture_default_str();
  add_output(s, output);

  auto* v = app.add_subcommand("validate", "run every acceptance check");
  long long vreps = 100000;
  v->add_option("--max-n", max_n, "oracle sizes 2..max-n")->capture_default_str();
  v->add_option("--reps", vreps, "Monte-Carlo replicates")->capture_default_str();
  v->add_option("--absorption-reps", abs_reps)->capture_default_str();
  v->add_option("--seed", seed)->capture_default_str();
  v->add_option("--threads", threads)->capture_default_str();
  add_output(v, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Table t;
    int status = 0;
    quad::QuadratureSpec spec = moments::default_spec();
    if (rel_tol > 0.0) spec.rel_tol = rel_tol;

    if (e->parsed()) {
      if (n < 2) throw std::domain_error("expected-sfs: n must be >= 2");
      if (all_b && e->count("--b")) throw std::domain_error("expected-sfs: use either --b or --all-b");
      long long lo = 1, hi = n - 1;
      if (e->count("--b")) lo = hi = b;
      t.columns = {"b", "exact", "basic_approx", "refined_approx", "rel_err_basic", "rel_err_refined"};
      for (long long bb = lo; bb <= hi; ++bb) {
        const double ex = moments::expected_sfs(moments::CoalescentQuery::single(n, bb, theta), spec);
        if (bb >= 2) {
          const double ba = approx::approx_sfs(n, bb, theta, approx::SfsApprox::basic);
          const double re = approx::approx_sfs(n, bb, theta, approx::SfsApprox::refined);
          t.rows.push_back({bb, ex, ba, re, std::fabs(ba - ex) / ex, std::fabs(re - ex) / ex});
        } else {
          t.rows.push_back({bb, ex, Cell{}, Cell{}, Cell{}, Cell{}});
        }
      }
    } else if (c->parsed()) {
      const auto q = moments::CoalescentQuery::pair(n, b1, b2, theta);
      const auto m = mode == "printed" ? moments::SecondMomentMode::as_printed
                                       : moments::SecondMomentMode::diagonal_doubled;
      t.columns = {"n", "theta", "b1", "b2", "mode", "cov"};
      t.rows.push_back({n, theta, q.b1, q.b2, mode, moments::cov_sfs(q, m, spec)});
    } else if (d->parsed()) {
      t.columns = {"s", "surv"};
      for (double sv : parse_grid(grid)) t.rows.push_back({sv, dist::surv_length_large_family(n, b, sv)});
    } else if (j->parsed()) {
      dist::LargeFamilyChain ch;
      ch.n = n;
      ch.b = parse_list<long long>(chain, "--chain");
      ch.s = times.empty() ? std::vector<double>(ch.b.size(), 0.0) : parse_list<double>(times, "--s");
      const auto norm = normalization == "printed" ? dist::JointNormalization::as_printed
                                                   : dist::JointNormalization::corrected;
      t.columns = {"n", "chain", "s", "minimal", "normalization", "probability"};
      std::string sj;
      for (std::size_t i = 0; i < ch.s.size(); ++i) sj += (i ? "," : "") + number(ch.s[i]);
      t.rows.push_back({n, chain, sj, std::string(minimal ? "true" : "false"), normalization,
                        dist::joint_large_family(ch, minimal, norm)});
    } else if (f1->parsed()) {
      t.columns = {"n", "b", "exact", "refined_approx", "rel_err_refined"};
      for (const auto& r : validation::figure1_dataset(parse_list<long long>(ns, "--n"), theta)) {
        t.rows.push_back({r.n, r.b, r.exact, r.refined, r.rel_err});
      }
    } else if (f3->parsed()) {
      if (n3 < 3) throw std::domain_error("figure3: n must be >= 3");
      t.columns = {"b", "exact", "small_b", "proportional", "large_b"};
      for (const auto& r : validation::figure3_dataset(n3, theta)) {
        t.rows.push_back({r.b, r.exact, r.small_b, r.proportional, r.large_b});
      }
    } else if (s->parsed()) {
      const auto sm = sim::summarize_lengths_and_sfs(n, theta, reps, seed, threads);
      t.columns = {"b", "mean_length", "se_length", "exact_length", "mean_sfs", "se_sfs", "exact_sfs"};
      for (long long bb = 1; bb < n; ++bb) {
        const double el = static_cast<double>(n) * moments::l1(n, bb);
        t.rows.push_back({bb, sm.mean_length[bb], sm.se_length[bb], el, sm.mean_sfs[bb], sm.se_sfs[bb], theta * el});
      }
    } else if (v->parsed()) {
      validation::Config cfg;
      cfg.max_n = max_n;
      cfg.reps = vreps;
      cfg.absorption_reps = abs_reps;
      cfg.seed = seed;
      cfg.threads = threads;
      t.columns = {"criterion", "status", "title", "detail"};
      for (const auto& r : validation::run_all(cfg)) {
        t.rows.push_back({static_cast<long long>(r.id), std::string(r.pass ? "PASS" : "FAIL"), r.title, r.detail});
        if (!r.pass) status = 1;
      }
    }
    emit(t, output, out);
    return status;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }
}

}  // namespace bsfs::cli
