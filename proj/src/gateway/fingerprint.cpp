#include "cotforge/gateway/fingerprint.hpp"

#include <cstdio>

#include <openssl/evp.h>

namespace cotforge::gateway {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0x0f]);
    }
    return out;
}

namespace {

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

} // namespace

std::string request_fingerprint(const ModelRequest& request) {
    // Length-prefixed fields under a versioned tag keep the encoding
    // injective; bump the tag if the layout ever changes.
    std::string canon = "cotforge-fp-v1\x1e";
    canon += request.model_id;
    canon += '\x1e';
    for (const auto& message : request.messages) {
        canon += to_string(message.role);
        canon += '\x1f';
        canon += std::to_string(message.content.size());
        canon += '\x1f';
        canon += message.content;
        canon += '\x1e';
    }
    canon += fixed6(request.params.temperature);
    canon += '\x1f';
    canon += fixed6(request.params.presence_penalty);
    canon += '\x1f';
    canon += fixed6(request.params.top_p);
    canon += '\x1f';
    canon += std::to_string(request.params.max_output_tokens);
    return sha256_hex(canon);
}

} // namespace cotforge::gateway
