#pragma once

#include <map>
#include <string>

#include "pdqls/common.hpp"

namespace pdqls {

// Per-solve oracle access counts. Counts only grow; composite operations
// charge the sum of their parts.
class QueryLedger {
 public:
  void add(const std::string& oracle, long long n) {
    if (n < 0) throw validation_error("ledger counts cannot decrease");
    counts_[oracle] += n;
  }
  void merge(const QueryLedger& other, long long multiplier = 1) {
    for (const auto& [k, v] : other.counts_) add(k, v * multiplier);
  }
  long long get(const std::string& oracle) const {
    auto it = counts_.find(oracle);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<std::string, long long>& counts() const { return counts_; }

 private:
  std::map<std::string, long long> counts_;
};

}  // namespace pdqls
