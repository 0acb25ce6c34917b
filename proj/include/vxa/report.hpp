#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace vxa {

/// One verified identity inside a report.
struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;  // witness or measured value on failure (or notes)
};

struct Report {
  std::string title;
  std::vector<CheckItem> items;

  bool ok() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    items.push_back(CheckItem{name, pass, detail});
  }
  std::string str() const {
    std::ostringstream os;
    os << title << ": " << (ok() ? "ok" : "FAILED") << "\n";
    for (const auto& i : items) {
      os << "  [" << (i.pass ? "ok" : "FAIL") << "] " << i.name;
      if (!i.detail.empty()) os << "  (" << i.detail << ")";
      os << "\n";
    }
    return os.str();
  }
};

}  // namespace vxa
