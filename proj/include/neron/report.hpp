#pragma once

#include <string>
#include <vector>

namespace neron {

/// One verified (or refuted) identity.  `detail` carries the witness, e.g.
/// a nonzero normal form, when the check fails.
struct ReportItem {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::vector<ReportItem> items;

  void add(std::string check, bool ok, std::string detail = {}) {
    items.push_back({std::move(check), ok, std::move(detail)});
  }
  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& it : other.items) items.push_back({prefix + it.check, it.ok, it.detail});
  }
  bool passed() const {
    for (const auto& it : items)
      if (!it.ok) return false;
    return true;
  }
  std::vector<ReportItem> failures() const {
    std::vector<ReportItem> out;
    for (const auto& it : items)
      if (!it.ok) out.push_back(it);
    return out;
  }
};

}  // namespace neron
