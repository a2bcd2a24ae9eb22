#include "ofdma/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ofdma {
namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  if (line.empty()) return fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed number '" + s + "'");
  }
  if (pos != s.size()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed integer '" + s + "'");
  }
  if (pos != s.size()) throw std::runtime_error("malformed integer '" + s + "'");
  return v;
}

}  // namespace

std::string format_sig9(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_instance_csv(std::ostream& out, const Instance& instance) {
  const auto& cbr = instance.cbr_users();
  for (std::size_t i = 0; i < cbr.size(); ++i) {
    if (cbr[i] != static_cast<int>(i)) {
      throw std::invalid_argument("instance CSV requires CBR users to be the leading columns");
    }
  }
  const auto num_sub = instance.num_subchannels();
  const auto num_users = instance.num_users();
  out << num_sub << ',' << num_users << ',' << cbr.size() << '\n';
  for (std::size_t i = 0; i < cbr.size(); ++i) {
    if (i) out << ',';
    out << format_sig9(instance.target(cbr[i]));
  }
  out << '\n';
  for (std::size_t n = 0; n < num_sub; ++n) {
    for (std::size_t k = 0; k < num_users; ++k) {
      if (k) out << ',';
      out << format_sig9(instance.rate(n, k));
    }
    out << '\n';
  }
}

Instance read_instance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("instance CSV: missing header");
  const auto header = split_commas(strip_cr(line));
  if (header.size() != 3) throw std::runtime_error("instance CSV: header must be N,K,K1");
  const long num_sub = parse_long(header[0]);
  const long num_users = parse_long(header[1]);
  const long num_cbr = parse_long(header[2]);
  if (num_sub < 1 || num_users < 1 || num_cbr < 0 || num_cbr > num_users) {
    throw std::runtime_error("instance CSV: invalid dimensions");
  }

  if (!std::getline(in, line)) throw std::runtime_error("instance CSV: missing R_min line");
  const auto target_fields = split_commas(strip_cr(line));
  if (static_cast<long>(target_fields.size()) != num_cbr) {
    throw std::runtime_error("instance CSV: expected " + std::to_string(num_cbr) +
                             " R_min values");
  }
  std::vector<double> targets;
  for (const auto& f : target_fields) targets.push_back(parse_double(f));

  RateMatrix rates(num_sub, num_users);
  for (long n = 0; n < num_sub; ++n) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("instance CSV: expected " + std::to_string(num_sub) + " rate rows");
    }
    const auto fields = split_commas(strip_cr(line));
    if (static_cast<long>(fields.size()) != num_users) {
      throw std::runtime_error("instance CSV: row " + std::to_string(n + 1) + " has " +
                               std::to_string(fields.size()) + " fields");
    }
    for (long k = 0; k < num_users; ++k) rates(n, k) = parse_double(fields[k]);
  }
  return Instance::with_leading_cbr(std::move(rates), std::move(targets));
}

void write_allocation_csv(std::ostream& out, const Allocation& alloc) {
  for (std::size_t n = 0; n < alloc.owner.size(); ++n) {
    out << (n + 1) << ',' << (alloc.owner[n] == kUnassigned ? 0 : alloc.owner[n] + 1) << '\n';
  }
}

Allocation read_allocation_csv(std::istream& in, std::size_t num_subchannels) {
  Allocation alloc = Allocation::unassigned(num_subchannels);
  std::vector<bool> seen(num_subchannels, false);
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 2) throw std::runtime_error("allocation CSV: expected subchannel,owner");
    const long n = parse_long(fields[0]);
    const long owner = parse_long(fields[1]);
    if (n < 1 || n > static_cast<long>(num_subchannels)) {
      throw std::runtime_error("allocation CSV: subchannel out of range");
    }
    if (seen[n - 1]) throw std::runtime_error("allocation CSV: subchannel listed twice");
    seen[n - 1] = true;
    alloc.owner[n - 1] = owner == 0 ? kUnassigned : static_cast<int>(owner - 1);
  }
  return alloc;
}

}  // namespace ofdma
