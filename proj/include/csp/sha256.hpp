#pragma once

#include <string>

namespace csp {

/// SHA-256 digest of `data`, as lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace csp
