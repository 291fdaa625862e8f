#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ahx/scenario.hpp"

namespace ahx::scenario {

namespace {

void dump(const Json& j, int indent, int level, std::string& out) {
  const auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        newline(level + 1);
        dump(j[i], indent, level + 1, out);
      }
      newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NonConvergence:
    case ErrorKind::DegreeOverflow:
    case ErrorKind::NotARoot:
      return 3;
    default:
      return 2;
  }
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  std::string text = canonical_dump(j);
  if (text.size() > 100) text = text.substr(0, 97) + "...";
  rows.emplace_back(prefix, text);
}

}  // namespace

std::string render_table(const Json& report) {
  std::ostringstream os;
  os << "scenario " << report.value("scenario", std::string("?")) << "  seed " << canonical_dump(report.value("seed", Json()))
     << "\n";
  for (const auto& r : report.value("results", Json::array())) {
    os << "\n[" << r.value("op", std::string("?")) << "]\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(r.value("inputs", Json::object()), "in", rows);
    flatten(r.value("outputs", Json::object()), "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) os << "  " << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  }
  return os.str();
}

}  // namespace ahx::scenario
