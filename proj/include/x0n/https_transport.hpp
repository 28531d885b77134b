#pragma once

// Requires OpenSSL at link time; only the CLI includes this.
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <string>

#include "x0n/error.hpp"
#include "x0n/lmfdb.hpp"

namespace x0n::degrees {

inline HttpGet https_transport(int timeout_seconds = 30) {
  return [timeout_seconds](const std::string& url) {
    const std::string host = LmfdbClient::kHost;
    if (url.rfind(host, 0) != 0) throw Error("invalid-argument", "unexpected host in " + url);
    httplib::Client cli(host);
    cli.set_connection_timeout(timeout_seconds);
    cli.set_read_timeout(timeout_seconds);
    cli.set_follow_location(true);
    auto res = cli.Get(url.substr(host.size()));
    if (!res) throw Error("network-unavailable", "GET " + url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("network-unavailable", "GET " + url + ": HTTP " + std::to_string(res->status));
    return res->body;
  };
}

}  // namespace x0n::degrees
