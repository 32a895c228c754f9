#include "kreinlab_cli/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace kreinlab::cli {

#ifndef KREINLAB_VERSION
#define KREINLAB_VERSION "0.0.0"
#endif

std::string_view tool_version() { return KREINLAB_VERSION; }

struct InputsDigest::State {
  EVP_MD_CTX* ctx = nullptr;
};

InputsDigest::InputsDigest() : state_(new State) {
  state_->ctx = EVP_MD_CTX_new();
  if (state_->ctx == nullptr || EVP_DigestInit_ex(state_->ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(state_->ctx);
    delete state_;
    throw std::runtime_error("SHA-256 unavailable");
  }
}

InputsDigest::~InputsDigest() {
  EVP_MD_CTX_free(state_->ctx);
  delete state_;
}

void InputsDigest::add(std::string_view label, std::string_view bytes) {
  for (std::string_view part : {label, bytes}) {
    const std::string len = std::to_string(part.size()) + ":";
    EVP_DigestUpdate(state_->ctx, len.data(), len.size());
    EVP_DigestUpdate(state_->ctx, part.data(), part.size());
  }
}

std::string InputsDigest::hex() {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(state_->ctx, md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json out;
  out["command"] = command;
  out["version"] = tool_version();
  out["inputs_digest"] = inputs_digest;
  out["tolerance"] = {{"relative_eps", tolerance.policy.relative_eps}, {"source", tolerance.source}};
  out["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  out["results"] = results;
  out["flags"] = flags;
  return out;
}

}  // namespace kreinlab::cli
