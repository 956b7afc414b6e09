#include "cheng/model_io.hpp"

#include <fstream>
#include <sstream>

namespace cheng {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  std::ostringstream os;
  os << "line " << line << ": " << message;
  throw Error(ErrorCode::ParseError, os.str());
}

double parse_float(int line, const std::string& token) {
  try {
    size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) fail(line, "bad number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "bad number '" + token + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// "key=value" -> value, or fail.
std::string expect_kv(int line, const std::string& token, const std::string& key) {
  auto prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) fail(line, "expected " + key + "=..., got '" + token + "'");
  return token.substr(prefix.size());
}

Scope parse_scope(int line, const std::string& value) {
  if (value == "ALL") return Scope::All();
  std::vector<std::pair<std::string, std::string>> members;
  std::istringstream is(value);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto gt = item.find('>');
    if (gt == std::string::npos || gt == 0 || gt + 1 == item.size())
      fail(line, "bad scope member '" + item + "' (want SRC>DST)");
    members.emplace_back(item.substr(0, gt), item.substr(gt + 1));
  }
  if (members.empty()) fail(line, "empty scope");
  return Scope::Of(std::move(members));
}

}  // namespace

ModelSpec parse_model_text(const std::string& text) {
  ModelSpec spec;
  std::istringstream input(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(input, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = split_ws(raw);
    if (tokens.empty()) continue;

    if (tokens[0] == "var") {
      if (tokens.size() < 3 || tokens.size() > 4) fail(line_no, "var NAME (observed|unobserved) [base=FLOAT]");
      VariableSpec v;
      v.name = tokens[1];
      if (tokens[2] == "observed")
        v.observed = true;
      else if (tokens[2] == "unobserved")
        v.observed = false;
      else
        fail(line_no, "expected observed|unobserved, got '" + tokens[2] + "'");
      if (tokens.size() == 4)
        v.base_rate = parse_float(line_no, expect_kv(line_no, tokens[3], "base"));
      spec.variables.push_back(std::move(v));
    } else if (tokens[0] == "edge") {
      if (tokens.size() < 6) fail(line_no, "edge SRC (->|-|) DST (fac|prev) q=FLOAT [scope=...]");
      EdgeSpec e;
      e.source = tokens[1];
      e.target = tokens[3];
      const std::string& arrow = tokens[2];
      const std::string& pol = tokens[4];
      if (arrow == "->" && pol == "fac")
        e.polarity = Polarity::Facilitating;
      else if (arrow == "-|" && pol == "prev")
        e.polarity = Polarity::Preventive;
      else
        fail(line_no, "arrow '" + arrow + "' does not match polarity '" + pol + "'");
      e.q = parse_float(line_no, expect_kv(line_no, tokens[5], "q"));
      if (tokens.size() >= 7) {
        if (e.polarity != Polarity::Preventive) fail(line_no, "scope on facilitating edge");
        e.scope = parse_scope(line_no, expect_kv(line_no, tokens[6], "scope"));
        if (tokens.size() > 7) fail(line_no, "trailing tokens after scope");
      }
      spec.edges.push_back(std::move(e));
    } else {
      fail(line_no, "unknown directive '" + tokens[0] + "'");
    }
  }
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_text(buffer.str());
}

ChengModel load_model(const std::string& path) { return build_model(load_model_spec(path)); }

namespace {

void write_float(std::ostream& os, double v) {
  std::ostringstream tmp;
  tmp.precision(17);
  tmp << v;
  os << tmp.str();
}

}  // namespace

std::string model_to_text(const ChengModel& model) {
  std::ostringstream os;
  for (const auto& v : model.variables()) {
    os << "var " << v.name << ' ' << (v.observed ? "observed" : "unobserved");
    if (v.base_rate) {
      os << " base=";
      write_float(os, *v.base_rate);
    }
    os << '\n';
  }
  for (const auto& e : model.edges()) {
    bool fac = e.polarity == Polarity::Facilitating;
    os << "edge " << e.source << (fac ? " -> " : " -| ") << e.target << (fac ? " fac q=" : " prev q=");
    write_float(os, e.q);
    if (!fac && !e.scope.all) {
      os << " scope=";
      for (size_t i = 0; i < e.scope.members.size(); ++i) {
        if (i) os << ',';
        os << e.scope.members[i].first << '>' << e.scope.members[i].second;
      }
    }
    os << '\n';
  }
  return os.str();
}

void save_model(const ChengModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write model file '" + path + "'");
  out << model_to_text(model);
}

}  // namespace cheng
