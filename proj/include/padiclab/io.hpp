#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "padiclab/constructors.hpp"
#include "padiclab/exponents.hpp"
#include "padiclab/verify.hpp"

namespace padiclab {

using ojson = nlohmann::ordered_json;

// padic-digits-v1
std::string digits_to_json(const PAdicNumber& xi);
PAdicNumber digits_from_json(const std::string& text);

// k,x,y,valuation,valuation_exact,height_sup,height_mult_sq; a censored pair
// is written as a final row with valuation_exact=false.
std::string chain_to_csv(const BestApproxChain& c);
BestApproxChain chain_from_csv(const std::string& text, Norm norm, unsigned long p);

ojson report_to_json(const ExponentReport& r);
ExponentReport report_from_json(const ojson& j);

ojson checks_to_json(const std::vector<CheckResult>& checks);

// n,p_n,q_n,g_n,H_n,v(L_n) for n = -1..last
std::string schneider_ledger_csv(const SchneiderState& s);
SchneiderState schneider_from_ledger_csv(const std::string& text, unsigned long p);

std::string read_file(const std::string& path);
// "-" writes to stdout
void write_file(const std::string& path, const std::string& data);

// PADIC_LAB_THREADS, else hardware concurrency
unsigned thread_count();

}  // namespace padiclab
