#include "hillshare/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hillshare {

DisutilityVector::DisutilityVector(std::vector<Rational> values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].sign() < 0) {
      throw ValidationError("negative disutility " + values_[i].str() + " at object " +
                            std::to_string(i + 1));
    }
  }
  if (normalized_ && total() != Rational(1)) {
    throw ValidationError("normalized vector sums to " + total().str() + ", not 1");
  }
}

Rational DisutilityVector::alpha() const {
  if (values_.empty()) return Rational(0);
  return *std::max_element(values_.begin(), values_.end());
}

Rational DisutilityVector::total() const {
  return std::accumulate(values_.begin(), values_.end(), Rational(0));
}

Rational DisutilityVector::cost(std::span<const std::size_t> bundle) const {
  Rational sum(0);
  for (std::size_t e : bundle) sum += values_.at(e);
  return sum;
}

bool DisutilityVector::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return x.is_zero(); });
}

Instance::Instance(std::vector<DisutilityVector> rows, std::vector<Rational> scale_factors)
    : rows_(std::move(rows)), scale_factors_(std::move(scale_factors)) {
  if (rows_.empty()) throw ValidationError("instance needs at least one agent");
  if (scale_factors_.size() != rows_.size()) throw ValidationError("one scale factor per agent required");
  m_ = rows_.front().size();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != m_) throw ValidationError("ragged instance: agent " + std::to_string(i + 1));
    if (scale_factors_[i].is_zero()) {
      if (!rows_[i].all_zero()) throw ValidationError("zero scale factor on a nonzero row");
    } else if (rows_[i].total() != Rational(1)) {
      throw ValidationError("agent " + std::to_string(i + 1) + " is not normalized");
    }
  }
}

Instance normalize(const RawMatrix& raw) {
  if (raw.empty()) throw ValidationError("instance needs at least one agent");
  const std::size_t m = raw.front().size();
  std::vector<DisutilityVector> rows;
  std::vector<Rational> scales;
  rows.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != m) {
      throw ValidationError("ragged matrix: row " + std::to_string(i + 1) + " has " +
                            std::to_string(raw[i].size()) + " entries, expected " + std::to_string(m));
    }
    DisutilityVector checked(raw[i]);  // rejects negatives
    Rational total = checked.total();
    if (total.is_zero()) {
      rows.emplace_back(raw[i], false);
    } else {
      std::vector<Rational> scaled;
      scaled.reserve(m);
      for (const Rational& x : raw[i]) scaled.push_back(x / total);
      rows.emplace_back(std::move(scaled), true);
    }
    scales.push_back(std::move(total));
  }
  return Instance(std::move(rows), std::move(scales));
}

void validate_allocation(const Allocation& alloc, std::size_t n, std::size_t m) {
  if (alloc.bundles.size() != n) {
    throw ValidationError("allocation has " + std::to_string(alloc.bundles.size()) + " bundles, expected " +
                          std::to_string(n));
  }
  std::vector<char> seen(m, 0);
  for (const auto& bundle : alloc.bundles) {
    for (std::size_t e : bundle) {
      if (e >= m) throw ValidationError("object index " + std::to_string(e + 1) + " out of range");
      if (seen[e]) throw ValidationError("object " + std::to_string(e + 1) + " allocated twice");
      seen[e] = 1;
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!seen[e]) throw ValidationError("object " + std::to_string(e + 1) + " is not allocated");
  }
}

OrderedVector order_vector(const DisutilityVector& v) {
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  std::vector<Rational> sorted;
  sorted.reserve(v.size());
  for (std::size_t idx : perm) sorted.push_back(v[idx]);
  return {DisutilityVector(std::move(sorted), v.normalized()), std::move(perm)};
}

std::string to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::D: return "D";
    case RegionTag::I: return "I";
    case RegionTag::NI: return "NI";
    case RegionTag::IV: return "IV";
  }
  return "?";
}

std::string to_string(const RegionIndex& r) { return "(k=" + std::to_string(r.k) + ", " + to_string(r.tag) + ")"; }

namespace {

void check_region_args(std::int64_t n, const Rational& alpha) {
  if (n < 1) throw DomainError("agent count must be positive");
  if (alpha.sign() <= 0 || alpha > Rational(1)) {
    throw DomainError("alpha must lie in (0, 1], got " + alpha.str());
  }
}

// Both tilings share the outer bracket (1/((k+1)n+1), 1/(kn+1)].
std::int64_t outer_bracket(std::int64_t n, const Rational& alpha) {
  Rational x = (Rational(1) / alpha - Rational(1)) / Rational(n);
  try {
    return x.floor_int();
  } catch (const std::overflow_error&) {
    throw DomainError("alpha " + alpha.str() + " is too small to classify");
  }
}

}  // namespace

RegionIndex classify_share(std::int64_t n, const Rational& alpha) {
  check_region_args(n, alpha);
  const std::int64_t k = outer_bracket(n, alpha);
  const Rational split(k + 2, n * (k + 1) * (k + 1) + k + 2);
  return {k, alpha <= split ? RegionTag::D : RegionTag::I};
}

RegionIndex classify_guarantee(std::int64_t n, const Rational& alpha) {
  check_region_args(n, alpha);
  const std::int64_t k = outer_bracket(n, alpha);
  const Rational split(k + 2, (k + 1) * ((k + 1) * n + 1));
  return {k, alpha < split ? RegionTag::NI : RegionTag::IV};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool looks_numeric(const std::string& field) {
  try {
    (void)Rational::parse(field);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

RawMatrix read_instance_csv(std::istream& in) {
  RawMatrix rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
    std::string trimmed = strip(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto fields = split_fields(trimmed);
    if (!header_seen && rows.empty() && !fields.empty() && !looks_numeric(strip(fields.front()))) {
      header_seen = true;
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                            " fields, got " + std::to_string(fields.size()));
    }
    std::vector<Rational> row;
    row.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      Rational value;
      try {
        value = Rational::parse(strip(fields[j]));
      } catch (const std::exception& e) {
        throw ValidationError("line " + std::to_string(line_no) + ", field " + std::to_string(j + 1) + ": " +
                              e.what());
      }
      if (value.sign() < 0) {
        throw ValidationError("line " + std::to_string(line_no) + ", field " + std::to_string(j + 1) +
                              ": negative disutility " + value.str());
      }
      row.push_back(std::move(value));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RawMatrix read_instance_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return read_instance_csv(in);
}

void write_instance_csv(std::ostream& out, std::span<const DisutilityVector> rows) {
  const std::size_t m = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < m; ++j) out << (j ? "," : "") << "object_" << (j + 1);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j].str();
    out << "\n";
  }
}

}  // namespace hillshare
