#include <json.hpp>

#include "permind/error.hpp"
#include "permind/oracle.hpp"

namespace permind {

using ojson = nlohmann::ordered_json;

std::string transcript_to_json(const Transcript& t) {
  ojson entries = ojson::array();
  for (const auto& e : t.entries) {
    ojson guess = ojson::array();
    for (Color c : e.guess.entries()) guess.push_back(c);
    entries.push_back(ojson{{"seq", e.seq}, {"guess", std::move(guess)}, {"black", e.black}});
  }
  ojson secret = nullptr;
  if (t.secret) {
    secret = ojson::array();
    for (Color c : t.secret->entries()) secret.push_back(c);
  }
  ojson doc;
  doc["version"] = 1;
  doc["n"] = t.config.n;
  doc["k"] = t.config.k;
  doc["entries"] = std::move(entries);
  doc["solved"] = t.solved;
  doc["secret"] = std::move(secret);
  doc["queries"] = t.queries;
  return doc.dump();
}

namespace {

Code code_from_json(const ojson& value, GameConfig cfg) {
  if (!value.is_array()) throw Error(ErrorCode::ParseError, "code must be an array");
  std::vector<Color> raw;
  for (const auto& c : value) {
    if (!c.is_number_integer()) throw Error(ErrorCode::ParseError, "colors must be integers");
    raw.push_back(c.get<Color>());
  }
  return validate_code(raw, cfg);
}

}  // namespace

Transcript transcript_from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    if (doc.at("version").get<int>() != 1) throw Error(ErrorCode::ParseError, "unsupported version");
    Transcript t;
    t.config = GameConfig::make(doc.at("n").get<int>(), doc.at("k").get<int>());
    for (const auto& e : doc.at("entries")) {
      TranscriptEntry entry;
      entry.seq = e.at("seq").get<std::int64_t>();
      entry.guess = code_from_json(e.at("guess"), t.config);
      entry.black = e.at("black").get<int>();
      if (entry.seq != static_cast<std::int64_t>(t.entries.size()) + 1) {
        throw Error(ErrorCode::ParseError, "entries must be numbered 1, 2, ...");
      }
      if (entry.black < 0 || entry.black > t.config.n) {
        throw Error(ErrorCode::ParseError, "black answer out of range at seq " + std::to_string(entry.seq));
      }
      t.entries.push_back(std::move(entry));
    }
    t.solved = doc.at("solved").get<bool>();
    if (!doc.at("secret").is_null()) t.secret = code_from_json(doc.at("secret"), t.config);
    t.queries = doc.at("queries").get<std::int64_t>();
    if (t.queries != static_cast<std::int64_t>(t.entries.size())) {
      throw Error(ErrorCode::ParseError, "queries does not match the number of entries");
    }
    if (t.solved && (!t.secret || t.entries.empty() || !(t.entries.back().guess == *t.secret) ||
                     t.entries.back().black != t.config.n)) {
      throw Error(ErrorCode::ParseError, "solved transcript must end with the secret at black = n");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace permind
