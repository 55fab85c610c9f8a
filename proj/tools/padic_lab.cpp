#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "padiclab/constructors.hpp"
#include "padiclab/exponents.hpp"
#include "padiclab/io.hpp"
#include "padiclab/lattice.hpp"
#include "padiclab/verify.hpp"

using namespace padiclab;

namespace {

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw InputError("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad integer '" + item + "'");
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

struct ConstructOpts {
  unsigned long p = 2;
  std::string out = "-";
  std::size_t cap = kDefaultDigitCap;
  // lacunary
  std::string growth;
  std::size_t terms = 0;
  // rule
  std::string name;
  std::uint64_t seed = 0;
  std::size_t precision = 0;
  // schneider
  std::string mu_seq;
  std::size_t steps = 0;
  long g1 = 1;
  std::string epsilon = "1/2";
  std::string ledger_out;
  // surgery
  std::string t = "3/2", mu = "6";
  long c_offset = 0;
  std::string source, sigma, ledger, spikes, pairs_out;
};

void run_lacunary(const ConstructOpts& o) {
  LacunarySpec spec{o.p, parse_growth(o.growth, o.terms)};
  for (const auto& w : lacunary_warnings(spec)) std::cerr << "warning: " << w << "\n";
  write_file(o.out, digits_to_json(build_lacunary(spec, o.cap)));
}

void run_schneider(const ConstructOpts& o) {
  auto mu = parse_mu_seq(o.mu_seq, o.steps);
  auto r = schneider_exponent_driven(o.p, mu, o.steps, o.g1, parse_rational(o.epsilon), o.cap);
  for (const auto& c : schneider_sandwich(r.state))
    if (!c.lower || !c.upper) std::cerr << "warning: sandwich fails at n = " << c.n << "\n";
  PAdicNumber xi = o.precision ? schneider_xi(r.state, o.precision) : r.xi;
  if (!o.precision && static_cast<long>(xi.precision()) < r.state.L(r.state.last()))
    std::cerr << "notice: ledger precision " << r.state.L(r.state.last()) << " capped at " << xi.precision() << "\n";
  if (!o.ledger_out.empty()) write_file(o.ledger_out, schneider_ledger_csv(r.state));
  write_file(o.out, digits_to_json(xi));
}

void run_surgery(const ConstructOpts& o) {
  PAdicNumber zeta = digits_from_json(read_file(o.source));
  if (zeta.p() != o.p) throw InputError("--p does not match the source file");
  SurgerySpec spec;
  spec.t = parse_rational(o.t);
  spec.mu = parse_rational(o.mu);
  spec.C = o.c_offset;
  std::vector<ApproxPair> x_pairs;
  if (!o.sigma.empty()) {
    if (!o.ledger.empty()) throw InputError("give either --sigma or --ledger with --spikes");
    spec.sigma = parse_long_list(o.sigma);
  } else {
    if (o.ledger.empty() || o.spikes.empty()) throw InputError("surgery needs --sigma, or --ledger with --spikes");
    SchneiderState s = schneider_from_ledger_csv(read_file(o.ledger), o.p);
    SurgerySource src = surgery_source_from_schneider(s, parse_long_list(o.spikes), zeta);
    spec.sigma = src.sigma;
    x_pairs = src.x_pairs;
  }
  SurgeryResult r = surgery_transform(zeta, spec);
  if (!o.pairs_out.empty()) {
    auto y = surgery_pairs(r.xi, x_pairs, r.u_partial);
    std::string csv = "j,kind,x,y,valuation,valuation_exact,height_sup,exponent\n";
    for (const auto& a : surgery_approximants(r.xi, r, y))
      csv += std::to_string(a.j) + "," + a.kind + "," + a.pair.x.get_str() + "," + a.pair.y.get_str() + "," +
             std::to_string(a.pair.val.value) + "," + (a.pair.val.is_exact() ? "true" : "false") + "," +
             a.pair.height_sup().get_str() + "," + fmt(a.exponent) + "\n";
    write_file(o.pairs_out, csv);
  }
  write_file(o.out, digits_to_json(r.xi));
}

struct ApproxOpts {
  std::string input, norm = "sup", out = "-";
  long max_level = 0;
  bool oracle = false;
  long height_bound = 0;
};

void run_approx(const ApproxOpts& o) {
  PAdicNumber xi = digits_from_json(read_file(o.input));
  Norm norm = parse_norm(o.norm);
  BestApproxChain c;
  if (o.oracle) {
    if (o.height_bound < 1) throw InputError("--oracle needs --height-bound");
    c = oracle_chain(xi, norm, o.height_bound);
  } else {
    long L = o.max_level ? o.max_level : static_cast<long>(xi.precision());
    c = chain(xi, norm, L);
    if (o.height_bound > 0) c = restrict_chain(c, mpz_class(o.height_bound));
  }
  if (c.censored)
    std::cerr << "notice: chain censored at valuation >= " << c.censored->val.value << " after " << c.entries.size()
              << " entries\n";
  write_file(o.out, chain_to_csv(c));
}

struct EstimateOpts {
  std::string chain, chain_mult, norm = "sup", out = "-";
  unsigned long p = 0;
  double burn_in = kDefaultBurnIn;
};

void run_estimate(const EstimateOpts& o) {
  if (o.chain.empty() && o.chain_mult.empty()) throw InputError("estimate needs --chain or --chain-mult");
  std::optional<BestApproxChain> sup, mult;
  if (!o.chain.empty()) {
    Norm n = parse_norm(o.norm);
    (n == Norm::Sup ? sup : mult) = chain_from_csv(read_file(o.chain), n, o.p);
  }
  if (!o.chain_mult.empty()) {
    if (mult) throw InputError("two multiplicative chains given");
    mult = chain_from_csv(read_file(o.chain_mult), Norm::Mult, o.p);
  }
  ExponentReport r = make_report(sup ? &*sup : nullptr, mult ? &*mult : nullptr, o.burn_in);
  if (r.precision_limited) std::cerr << "notice: chain censored; mu estimates are lower estimates\n";
  write_file(o.out, report_to_json(r).dump(2) + "\n");
}

struct VerifyOpts {
  std::string report, chain, chain_mult, checks = "all", out = "-";
  bool exact = false;
  double tol = kDefaultTolerance;
  std::string c, d;
};

double parse_growth_ratio(const std::string& s) {
  if (s == "inf") return INFINITY;
  try {
    return std::stod(s);
  } catch (const std::logic_error&) {
    throw InputError("bad ratio '" + s + "'");
  }
}

bool run_verify(const VerifyOpts& o) {
  ojson rj;
  try {
    rj = ojson::parse(read_file(o.report));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  ExponentReport r = report_from_json(rj);
  std::set<std::string> want;
  const std::set<std::string> known{"chain_bounds", "endlich", "lacunary", "padicle", "korollar", "neu", "hilfl"};
  if (o.checks == "all") {
    want = known;
  } else {
    std::stringstream ss(o.checks);
    std::string item;
    while (std::getline(ss, item, ','))
      if (known.count(item))
        want.insert(item);
      else
        throw InputError("unknown check '" + item + "'");
  }
  std::optional<BestApproxChain> sup, mult;
  if (!o.chain.empty()) sup = chain_from_csv(read_file(o.chain), Norm::Sup, r.p);
  if (!o.chain_mult.empty()) mult = chain_from_csv(read_file(o.chain_mult), Norm::Mult, r.p);

  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  auto skip = [&](const std::string& name, const std::string& why) {
    CheckResult c;
    c.name = name;
    c.inputs["skipped"] = why;
    out.push_back(c);
  };
  if (want.count("chain_bounds")) append(check_chain_bounds(r, o.tol));
  if (want.count("endlich")) append(check_endlich(r, o.tol));
  if (want.count("lacunary")) {
    if (o.c.empty() || o.d.empty())
      skip("lacunary_sandwich", "needs --c and --d");
    else
      out.push_back(check_lacunary_sandwich(r, parse_growth_ratio(o.c), parse_growth_ratio(o.d), o.tol));
  }
  if (want.count("padicle")) {
    for (const auto* c : {sup ? &*sup : nullptr, mult ? &*mult : nullptr}) {
      if (!c) continue;
      std::vector<ApproxPair> pairs = c->entries;
      CheckResult res = check_padicle(pairs, r.p);
      if (o.exact) res.inputs["exact_mode"] = true;
      res.name = "padicle_" + to_string(c->norm);
      out.push_back(std::move(res));
    }
    if (!sup && !mult) skip("padicle", "needs --chain or --chain-mult");
  }
  if (want.count("korollar")) {
    if (sup)
      out.push_back(check_korollar(*sup));
    else
      skip("korollar", "needs --chain");
  }
  if (want.count("neu")) {
    if (mult) {
      out.push_back(diagnose_neu(*mult, r, o.tol));
    } else {
      skip("neu", "needs --chain-mult");
      out.back().diagnostic = true;
    }
  }
  if (want.count("hilfl")) {
    if (mult)
      out.push_back(check_hilfl(*mult, r, o.tol));
    else
      skip("hilfl", "needs --chain-mult");
  }
  write_file(o.out, checks_to_json(out).dump(2) + "\n");
  for (const auto& c : out)
    if (!c.passed && !c.diagnostic) std::cerr << "FAILED: " << c.name << " (margin " << c.margin << ")\n";
  return all_passed(out);
}

struct SweepOpts {
  std::string family = "lacunary", out = "-";
  unsigned long p = 2;
  double d_from = 2, d_to = 6, d_step = 0.5;
  std::size_t terms = 9;
  std::size_t max_digits = kDefaultDigitCap;
  double burn_in = kDefaultBurnIn;
  // surgery
  std::string source, ledger, spikes, grid;
  long c_offset = 0;
};

template <class F>
void parallel_for(std::size_t n, F f) {
  unsigned threads = std::min<std::size_t>(thread_count(), n);
  std::vector<std::thread> pool;
  std::size_t next = 0;
  std::mutex m;
  auto worker = [&]() {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(m);
        if (next >= n) return;
        i = next++;
      }
      f(i);
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void run_sweep(const SweepOpts& o) {
  std::vector<std::string> rows;
  std::string header;
  if (o.family == "lacunary") {
    if (!(o.d_step > 0) || o.d_to < o.d_from) throw InputError("empty d grid");
    std::vector<double> grid;
    for (long i = 0;; ++i) {
      double d = o.d_from + static_cast<double>(i) * o.d_step;
      if (d > o.d_to + 1e-9) break;
      grid.push_back(d);
    }
    if (grid.empty()) throw InputError("empty d grid");
    header = "d,mu_est,mu_times_est,hat_mu_times_est,predicted_mu,predicted_mu_times\n";
    rows.resize(grid.size());
    std::vector<std::string> errors(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      try {
        std::ostringstream ds;
        ds.precision(17);
        ds << grid[i];
        LacunarySpec spec{o.p, parse_growth("pow:" + ds.str(), o.terms)};
        PAdicNumber xi = build_lacunary(spec, o.max_digits);
        long L = static_cast<long>(xi.precision());
        auto cs = chain(xi, Norm::Sup, L), cm = chain(xi, Norm::Mult, L);
        ExponentReport r = make_report(&cs, &cm, o.burn_in);
        rows[i] = fmt(grid[i]) + "," + fmt(r.mu) + "," + fmt(r.mu_times) + "," + fmt(r.hat_mu_times) + "," +
                  fmt(grid[i]) + "," + fmt(2 * grid[i]) + "\n";
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (!errors[i].empty()) throw BudgetError("d = " + fmt(grid[i]) + ": " + errors[i]);
  } else if (o.family == "surgery") {
    if (o.source.empty() || o.ledger.empty() || o.spikes.empty() || o.grid.empty())
      throw InputError("surgery sweep needs --source, --ledger, --spikes and --grid t:mu;...");
    PAdicNumber zeta = digits_from_json(read_file(o.source));
    SchneiderState s = schneider_from_ledger_csv(read_file(o.ledger), zeta.p());
    SurgerySource src = surgery_source_from_schneider(s, parse_long_list(o.spikes), zeta);
    std::vector<std::pair<Rational, Rational>> grid;
    std::stringstream ss(o.grid);
    std::string item;
    while (std::getline(ss, item, ';')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw InputError("grid entries are t:mu");
      grid.emplace_back(parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1)));
    }
    if (grid.empty()) throw InputError("empty surgery grid");
    header = "t,mu,n_exponent_min,y_exponent_last,predicted_n=mu,predicted_y=t*mu\n";
    rows.resize(grid.size());
    std::vector<std::string> errors(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      try {
        SurgerySpec spec{grid[i].first, grid[i].second, o.c_offset, src.sigma};
        SurgeryResult r = surgery_transform(zeta, spec);
        auto y = surgery_pairs(r.xi, src.x_pairs, r.u_partial);
        std::optional<double> nmin, ylast;
        for (const auto& a : surgery_approximants(r.xi, r, y)) {
          if (a.kind == "N") nmin = nmin ? std::min(*nmin, a.exponent) : a.exponent;
          if (a.kind == "y") ylast = a.exponent;
        }
        double t = to_double(grid[i].first), mu = to_double(grid[i].second);
        rows[i] = fmt(t) + "," + fmt(mu) + "," + fmt(nmin) + "," + fmt(ylast) + "," + fmt(mu) + "," + fmt(t * mu) + "\n";
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (!errors[i].empty()) throw InputError("grid point " + std::to_string(i) + ": " + errors[i]);
  } else {
    throw InputError("unknown family '" + o.family + "'");
  }
  std::string csv = header;
  for (const auto& r : rows) csv += r;
  write_file(o.out, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic best approximation lab"};
  app.require_subcommand(1);

  ConstructOpts co;
  auto* construct = app.add_subcommand("construct", "build a p-adic number and write padic-digits-v1 JSON");
  construct->require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--p", co.p, "prime")->required();
    s->add_option("-o,--output", co.out, "output file, - for stdout");
  };
  auto* lac = construct->add_subcommand("lacunary", "sum of p^{a_k}");
  common(lac);
  lac->add_option("--growth", co.growth, "pow:<d> or list:<a0,a1,...>")->required();
  lac->add_option("--terms", co.terms, "number of exponents (pow growth)");
  lac->add_option("--digit-cap", co.cap, "maximum precision");
  auto* fac = construct->add_subcommand("factorial", "sum of p^{j!}");
  common(fac);
  fac->add_option("--terms", co.terms, "number of terms")->required();
  fac->add_option("--digit-cap", co.cap, "maximum precision");
  auto* rule = construct->add_subcommand("rule", "digit rule");
  common(rule);
  rule->add_option("--name", co.name, "thue-morse or random")->required();
  rule->add_option("--seed", co.seed, "seed for random");
  rule->add_option("--precision", co.precision, "number of digits")->required();
  auto* sch = construct->add_subcommand("schneider", "Schneider continued fraction with exponent-driven b_n");
  common(sch);
  sch->add_option("--mu-seq", co.mu_seq, "const:<mu>, list:<m1,m2*k,...> or blocks:<base>,<spike>[,<count>]")
      ->required();
  sch->add_option("--steps", co.steps, "number of pairs")->required();
  sch->add_option("--g1", co.g1, "first exponent g_1");
  sch->add_option("--epsilon", co.epsilon, "mu_n must be at least 2 + epsilon");
  sch->add_option("--precision", co.precision, "materialize at this precision instead of the ledger's");
  sch->add_option("--digit-cap", co.cap, "maximum precision");
  sch->add_option("--ledger-out", co.ledger_out, "write the ledger CSV here");
  auto* sur = construct->add_subcommand("surgery", "zero digit intervals of a source number");
  common(sur);
  sur->add_option("--t", co.t, "t in [1, 2]");
  sur->add_option("--mu", co.mu, "mu > 2");
  sur->add_option("--c-offset", co.c_offset, "offset C in nu_j");
  sur->add_option("--source", co.source, "source digit file")->required();
  sur->add_option("--sigma", co.sigma, "comma separated sigma_j");
  sur->add_option("--ledger", co.ledger, "Schneider ledger CSV of the source");
  sur->add_option("--spikes", co.spikes, "ledger indices n_j giving sigma_j = ceil(log_p H_n)");
  sur->add_option("--pairs-out", co.pairs_out, "write N_j and transplanted pairs here");

  ApproxOpts ao;
  auto* approx = app.add_subcommand("approx", "best approximation chain as CSV");
  approx->add_option("--input", ao.input, "digit file")->required();
  approx->add_option("--norm", ao.norm, "sup or mult");
  approx->add_option("--max-level", ao.max_level, "highest valuation level (default: precision)");
  approx->add_flag("--oracle", ao.oracle, "exhaustive enumeration");
  approx->add_option("--height-bound", ao.height_bound, "height bound (max|x|,|y| or |xy|)");
  approx->add_option("-o,--output", ao.out, "output file");

  EstimateOpts eo;
  auto* estimate = app.add_subcommand("estimate", "exponent report from chains");
  estimate->add_option("--chain", eo.chain, "chain CSV");
  estimate->add_option("--chain-mult", eo.chain_mult, "multiplicative chain CSV");
  estimate->add_option("--norm", eo.norm, "norm of --chain");
  estimate->add_option("--p", eo.p, "prime")->required();
  estimate->add_option("--burn-in", eo.burn_in, "fraction of the chain discarded");
  estimate->add_option("-o,--output", eo.out, "output file");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "theorem checks");
  verify->add_option("--report", vo.report, "report JSON")->required();
  verify->add_option("--chain", vo.chain, "sup chain CSV");
  verify->add_option("--chain-mult", vo.chain_mult, "multiplicative chain CSV");
  verify->add_option("--checks", vo.checks,
                     "all or a list of chain_bounds,endlich,lacunary,padicle,korollar,neu,hilfl");
  verify->add_flag("--exact-checks", vo.exact, "exact comparisons for every pair in padicle");
  verify->add_option("--tolerance", vo.tol, "tolerance for exponent checks");
  verify->add_option("--c", vo.c, "liminf a_{k+1}/a_k for the lacunary check (or inf)");
  verify->add_option("--d", vo.d, "limsup a_{k+1}/a_k for the lacunary check (or inf)");
  verify->add_option("-o,--output", vo.out, "output file");

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep as CSV");
  sweep->add_option("--family", so.family, "lacunary or surgery");
  sweep->add_option("--p", so.p, "prime");
  sweep->add_option("--d-from", so.d_from, "first d");
  sweep->add_option("--d-to", so.d_to, "last d");
  sweep->add_option("--d-step", so.d_step, "d step");
  sweep->add_option("--terms", so.terms, "lacunary terms");
  sweep->add_option("--max-digits", so.max_digits, "precision budget per point");
  sweep->add_option("--burn-in", so.burn_in, "burn-in fraction");
  sweep->add_option("--source", so.source, "surgery source digit file");
  sweep->add_option("--ledger", so.ledger, "surgery source ledger CSV");
  sweep->add_option("--spikes", so.spikes, "surgery spike indices");
  sweep->add_option("--grid", so.grid, "surgery grid t:mu;t:mu;...");
  sweep->add_option("--c-offset", so.c_offset, "surgery offset C");
  sweep->add_option("-o,--output", so.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*construct) {
      if (*lac) run_lacunary(co);
      if (*fac) write_file(co.out, digits_to_json(build_factorial(co.p, static_cast<unsigned>(co.terms), co.cap)));
      if (*rule) write_file(co.out, digits_to_json(build_digit_rule(co.p, co.name, co.precision, co.seed)));
      if (*sch) run_schneider(co);
      if (*sur) run_surgery(co);
    } else if (*approx) {
      run_approx(ao);
    } else if (*estimate) {
      run_estimate(eo);
    } else if (*verify) {
      return run_verify(vo) ? 0 : 1;
    } else if (*sweep) {
      run_sweep(so);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
