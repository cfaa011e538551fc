#pragma once

#include <string>

#include "cotforge/gateway/types.hpp"

namespace cotforge::gateway {

/// Lowercase hex SHA-256 of an arbitrary byte string.
std::string sha256_hex(const std::string& data);

/// Deterministic digest of a request: covers model_id, every message role
/// and content in order, and all sampling fields at 6-decimal precision.
/// Equal requests produce equal digests; changing any covered field changes
/// the digest.
std::string request_fingerprint(const ModelRequest& request);

} // namespace cotforge::gateway
