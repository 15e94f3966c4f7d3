#pragma once

#include <cstddef>
#include <string>

namespace dmdl {

/// Shortest decimal form that round-trips a double (17 significant
/// digits); used by every CSV/JSON emitter so round trips are bit-exact.
std::string format_g17(double v);

/// FNV-1a 64-bit digest as 16 hex characters; input-file provenance tag.
std::string fnv1a_hex(const void* data, std::size_t size);
std::string fnv1a_hex(const std::string& data);

}  // namespace dmdl
