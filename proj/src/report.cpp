#include "augblock/report.hpp"

#include <json.hpp>

#include "augblock/errors.hpp"

namespace augblock {

namespace {

using nlohmann::json;

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (const auto it = j.find(key); it != j.end() && !it->is_null()) v = it->template get<T>();
}

}  // namespace

std::string to_json(const SolveReport& r) {
  json j;
  j["mode"] = r.mode;
  j["augment"] = r.augment;
  j["reorder"] = r.reorder;
  j["m"] = r.m;
  j["n"] = r.n;
  j["blocks"] = r.blocks;
  j["q"] = r.q;
  j["threads"] = r.threads;
  j["orthogonality_defect"] = r.orthogonality_defect;
  j["residual_norm"] = r.residual_norm;
  put(j, "y_norm", r.y_norm);
  put(j, "gamma_y_plus_Sz_norm", r.gamma_y_plus_Sz_norm);
  put(j, "normal_residual", r.normal_residual);
  put(j, "oracle_gap", r.oracle_gap);
  put(j, "bandwidth_before", r.bandwidth_before);
  put(j, "bandwidth_after", r.bandwidth_after);
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["message"] = r.message;
  j["x"] = r.x;
  j["timings_ms"] = r.timings_ms;
  return j.dump(2) + "\n";
}

SolveReport parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
  try {
    SolveReport r;
    r.mode = j.at("mode").get<std::string>();
    r.augment = j.at("augment").get<std::string>();
    r.reorder = j.at("reorder").get<std::string>();
    r.m = j.at("m").get<std::size_t>();
    r.n = j.at("n").get<std::size_t>();
    r.blocks = j.at("blocks").get<std::size_t>();
    r.q = j.at("q").get<std::size_t>();
    r.threads = j.at("threads").get<unsigned>();
    r.orthogonality_defect = j.at("orthogonality_defect").get<double>();
    r.residual_norm = j.at("residual_norm").get<double>();
    get(j, "y_norm", r.y_norm);
    get(j, "gamma_y_plus_Sz_norm", r.gamma_y_plus_Sz_norm);
    get(j, "normal_residual", r.normal_residual);
    get(j, "oracle_gap", r.oracle_gap);
    get(j, "bandwidth_before", r.bandwidth_before);
    get(j, "bandwidth_after", r.bandwidth_after);
    r.status = j.at("status").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.message = j.at("message").get<std::string>();
    r.x = j.at("x").get<Vector>();
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report: ") + e.what());
  }
}

}  // namespace augblock
