#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "screwon/errors.hpp"

namespace screwon {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Fixed 17-significant-digit scientific representation (reproducible output).
inline std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return std::string(buf);
}

/// One quantized level produced by a spectral method.
struct SpectrumRow {
  int n = 0;
  int l = 0;
  double pz = 0.0;
  double lambda = 0.0;
  double k = 0.0;
  double E = 0.0;
  std::string method;  // wkb | radial-fd | radial-shoot | weak-exact
  double residual = 0.0;
};

/// Table of spectrum rows; E must increase strictly with n for fixed
/// (l, pz, method).
class SpectrumTable {
 public:
  void add(SpectrumRow row) { rows_.push_back(std::move(row)); }

  void append(const SpectrumTable& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  }

  const std::vector<SpectrumRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Deterministic order: by method, l, pz, then n.
  void sort() {
    std::stable_sort(rows_.begin(), rows_.end(),
                     [](const SpectrumRow& a, const SpectrumRow& b) {
                       if (a.method != b.method) return a.method < b.method;
                       if (a.l != b.l) return a.l < b.l;
                       if (a.pz != b.pz) return a.pz < b.pz;
                       return a.n < b.n;
                     });
  }

  void validate_monotone() const {
    auto sorted = *this;
    sorted.sort();
    const SpectrumRow* prev = nullptr;
    for (const auto& r : sorted.rows_) {
      if (prev && prev->method == r.method && prev->l == r.l &&
          prev->pz == r.pz && prev->n < r.n && !(prev->E < r.E))
        throw NumericalError("SpectrumTable: E not strictly increasing in n for (" +
                             r.method + ", l=" + std::to_string(r.l) + ")");
      prev = &r;
    }
  }

  void write_csv(std::ostream& os) const {
    os << "n,l,pz,lambda,k,E,method,residual\n";
    for (const auto& r : rows_) {
      os << r.n << ',' << r.l << ',' << format_shortest(r.pz) << ','
         << format_shortest(r.lambda) << ',' << format_shortest(r.k) << ','
         << format_shortest(r.E) << ',' << r.method << ','
         << format_shortest(r.residual) << '\n';
    }
  }

 private:
  std::vector<SpectrumRow> rows_;
};

}  // namespace screwon
