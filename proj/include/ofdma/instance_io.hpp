#pragma once

#include <iosfwd>
#include <string>

#include "ofdma/instance.hpp"

namespace ofdma {

// Instance CSV:
//   N,K,K1
//   R_min of CBR users 1..K1, comma-separated (empty line when K1 = 0)
//   N lines of K comma-separated rates, 9 significant digits
// CBR users are the first K1 columns. Only instances with that layout can be
// written.
void write_instance_csv(std::ostream& out, const Instance& instance);
Instance read_instance_csv(std::istream& in);

// Allocation CSV: one `subchannel,owner` line per subchannel, both 1-based;
// owner 0 marks an unassigned subchannel.
void write_allocation_csv(std::ostream& out, const Allocation& alloc);
Allocation read_allocation_csv(std::istream& in, std::size_t num_subchannels);

// printf("%.9g") with "nan"/"inf" spelled consistently.
std::string format_sig9(double value);

}  // namespace ofdma
