#include "padiclab/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace padiclab {

namespace {

const char* kChainHeader = "k,x,y,valuation,valuation_exact,height_sup,height_mult_sq";
const char* kLedgerHeader = "n,p_n,q_n,g_n,H_n,v(L_n)";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

mpz_class parse_int(const std::string& s, const std::string& what) {
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) throw InputError("malformed " + what + " '" + s + "'");
  return z;
}

long parse_long(const std::string& s, const std::string& what) {
  mpz_class z = parse_int(s, what);
  if (!z.fits_slong_p()) throw InputError(what + " out of range");
  return z.get_si();
}

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<double> opt_from(const ojson& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw InputError(std::string("report field ") + key + " is not a number");
  return j.at(key).get<double>();
}

ojson pointwise_json(const std::vector<PointwiseExponent>& pw) {
  ojson a = ojson::array();
  for (const auto& e : pw) a.push_back({{"k", e.k}, {"tau", opt(e.tau)}, {"uniform_term", opt(e.uniform_term)}});
  return a;
}

std::vector<PointwiseExponent> pointwise_from(const ojson& j, const char* key) {
  std::vector<PointwiseExponent> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  for (const auto& e : j.at(key)) {
    PointwiseExponent p;
    p.k = e.at("k").get<std::size_t>();
    p.tau = opt_from(e, "tau");
    p.uniform_term = opt_from(e, "uniform_term");
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::string digits_to_json(const PAdicNumber& xi) {
  ojson j;
  j["format"] = "padic-digits-v1";
  j["p"] = xi.p();
  j["precision"] = xi.precision();
  j["digits"] = xi.digits();
  return j.dump() + "\n";
}

PAdicNumber digits_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed digit file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "padic-digits-v1") throw InputError("unknown digit file format");
    auto p = j.at("p").get<unsigned long>();
    auto precision = j.at("precision").get<std::size_t>();
    auto digits = j.at("digits").get<std::vector<std::uint32_t>>();
    if (digits.size() != precision) throw InputError("precision does not match the digit count");
    return PAdicNumber::from_digits(p, std::move(digits));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed digit file: ") + e.what());
  }
}

std::string chain_to_csv(const BestApproxChain& c) {
  std::string out = std::string(kChainHeader) + "\n";
  auto row = [&](std::size_t k, const ApproxPair& a) {
    out += std::to_string(k) + "," + a.x.get_str() + "," + a.y.get_str() + "," + std::to_string(a.val.value) + "," +
           (a.val.is_exact() ? "true" : "false") + "," + a.height_sup().get_str() + "," +
           a.height_mult_sq().get_str() + "\n";
  };
  for (std::size_t k = 0; k < c.entries.size(); ++k) row(k, c.entries[k]);
  if (c.censored) row(c.entries.size(), *c.censored);
  return out;
}

BestApproxChain chain_from_csv(const std::string& text, Norm norm, unsigned long p) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kChainHeader) throw InputError("chain CSV must start with the header " + std::string(kChainHeader));
  BestApproxChain c;
  c.norm = norm;
  c.p = p;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_csv(lines[i]);
    if (f.size() != 7) throw InputError("chain CSV row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    if (c.censored) throw InputError("chain CSV has rows after a censored row");
    if (parse_long(f[0], "index") != static_cast<long>(i - 1)) throw InputError("chain CSV indices are not consecutive");
    ApproxPair a;
    a.x = parse_int(f[1], "x");
    a.y = parse_int(f[2], "y");
    long v = parse_long(f[3], "valuation");
    if (v < 0) throw InputError("negative valuation");
    if (f[4] == "true")
      a.val = Valuation::exact(v);
    else if (f[4] == "false")
      a.val = Valuation::at_least(v);
    else
      throw InputError("valuation_exact must be true or false");
    if (a.x == 0 || a.y == 0) throw InputError("chain entries need nonzero x and y");
    if (a.height_sup() != parse_int(f[5], "height_sup") || a.height_mult_sq() != parse_int(f[6], "height_mult_sq"))
      throw InputError("chain CSV row " + std::to_string(i) + " has inconsistent heights");
    if (a.val.is_exact()) {
      if (!c.entries.empty() && (norm_height(norm, a.x, a.y) <= c.height(c.entries.size() - 1) ||
                                 v <= c.entries.back().val.value))
        throw InputError("chain CSV row " + std::to_string(i) + " breaks the staircase order");
      c.entries.push_back(std::move(a));
    } else {
      c.censored = std::move(a);
    }
  }
  return c;
}

ojson report_to_json(const ExponentReport& r) {
  ojson j;
  j["mu"] = opt(r.mu);
  j["mu_times"] = opt(r.mu_times);
  j["hat_mu"] = opt(r.hat_mu);
  j["hat_mu_times"] = opt(r.hat_mu_times);
  j["burn_in"] = r.burn_in;
  j["precision_limited"] = r.precision_limited;
  j["pointwise"] = pointwise_json(r.pointwise);
  j["p"] = r.p;
  j["burn_in_mult"] = r.burn_in_mult;
  j["pointwise_mult"] = pointwise_json(r.pointwise_mult);
  return j;
}

ExponentReport report_from_json(const ojson& j) {
  try {
    ExponentReport r;
    r.mu = opt_from(j, "mu");
    r.mu_times = opt_from(j, "mu_times");
    r.hat_mu = opt_from(j, "hat_mu");
    r.hat_mu_times = opt_from(j, "hat_mu_times");
    r.burn_in = j.at("burn_in").get<std::size_t>();
    r.precision_limited = j.at("precision_limited").get<bool>();
    r.pointwise = pointwise_from(j, "pointwise");
    r.p = j.value("p", 2UL);
    r.burn_in_mult = j.value("burn_in_mult", r.burn_in);
    r.pointwise_mult = pointwise_from(j, "pointwise_mult");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

ojson checks_to_json(const std::vector<CheckResult>& checks) {
  ojson a = ojson::array();
  for (const auto& c : checks) {
    ojson e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["margin"] = c.margin;
    e["inputs"] = c.inputs;
    if (c.diagnostic) e["diagnostic"] = true;
    a.push_back(std::move(e));
  }
  return a;
}

std::string schneider_ledger_csv(const SchneiderState& s) {
  std::string out = std::string(kLedgerHeader) + "\n";
  for (long n = -1; n <= s.last(); ++n) {
    out += std::to_string(n) + "," + s.P(n).get_str() + "," + s.Q(n).get_str() + ",";
    if (n >= 1) out += std::to_string(s.g_at(n));
    out += "," + s.H(n).get_str() + ",";
    if (s.has_L(n)) out += std::to_string(s.L(n));
    out += "\n";
  }
  return out;
}

SchneiderState schneider_from_ledger_csv(const std::string& text, unsigned long p) {
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kLedgerHeader) throw InputError("ledger CSV must start with " + std::string(kLedgerHeader));
  SchneiderState s(p);
  s.pn.clear();
  s.qn.clear();
  s.ledger.clear();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_csv(lines[i]);
    if (f.size() != 6) throw InputError("ledger CSV row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    long n = parse_long(f[0], "n");
    if (n != static_cast<long>(i) - 2) throw InputError("ledger CSV rows must run n = -1, 0, 1, ...");
    s.pn.push_back(parse_int(f[1], "p_n"));
    s.qn.push_back(parse_int(f[2], "q_n"));
    if (n >= 1) s.g.push_back(parse_long(f[3], "g_n"));
    if (!f[5].empty()) {
      if (s.ledger.size() != static_cast<std::size_t>(n + 1)) throw InputError("ledger has a gap in v(L_n)");
      s.ledger.push_back(parse_long(f[5], "v(L_n)"));
    }
  }
  if (s.pn.size() < 2) throw InputError("ledger CSV needs rows n = -1 and n = 0");
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << data;
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PADIC_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

}  // namespace padiclab
