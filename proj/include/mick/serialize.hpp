#pragma once

#include <json.hpp>

#include "mick/channels.hpp"

namespace mick {

// Flat JSON form of a channel; half-integers as "p/2" strings or plain
// integers, matching the command-line syntax.
inline nlohmann::json to_json(const Channel& ch) {
  nlohmann::json j;
  j["s"] = ch.s().str();
  j["m"] = ch.m().str();
  j["lambda1"] = ch.lambda1();
  j["lambda2"] = ch.lambda2();
  j["hbar"] = ch.constants().hbar;
  j["mass"] = ch.constants().mass;
  j["charge"] = ch.constants().charge;
  return j;
}

inline Channel channel_from_json(const nlohmann::json& j) {
  Constants k;
  k.hbar = j.value("hbar", 1.0);
  k.mass = j.value("mass", 1.0);
  k.charge = j.value("charge", 1.0);
  auto half = [&](const char* key) {
    const auto& v = j.at(key);
    if (v.is_string())
      return HalfInt::parse(v.get<std::string>());
    return HalfInt::parse(std::to_string(v.get<double>()));
  };
  return Channel(half("s"), half("m"), j.value("lambda1", 0.0),
                 j.value("lambda2", 0.0), k);
}

} // namespace mick
