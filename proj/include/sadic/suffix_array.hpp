#pragma once

#include <cstdint>
#include <vector>

namespace sadic {

// Suffix array over a non-negative int sequence (prefix doubling with radix
// passes), plus the Kasai LCP array: lcp[i] = lcp(sa[i-1], sa[i]), lcp[0]=0.
std::vector<int32_t> build_suffix_array(const std::vector<int32_t>& s);
std::vector<int32_t> build_lcp(const std::vector<int32_t>& s, const std::vector<int32_t>& sa);

}  // namespace sadic
