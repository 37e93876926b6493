#pragma once

#include <string>

#include "carent/campaign.hpp"
#include "carent/counterexamples.hpp"

namespace carent {

/// Shortest round-trip decimal form; identical input gives identical text.
std::string format_double(double v);

std::string verify_json(const VerifyResult& r);
std::string verify_csv(const VerifyResult& r);

std::string table1_json(const Table1Result& t);
std::string table1_csv(const Table1Result& t);
std::string table1_text(const Table1Result& t);

std::string counterexample_json(const ViolationDemo& d);
std::string counterexample_csv(const ViolationDemo& d);

}  // namespace carent
