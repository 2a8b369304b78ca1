#include "qahm/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qahm {
namespace textio {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw std::invalid_argument("malformed number: '" + token + "'");
  return v;
}

long long parse_integer(const std::string& token) {
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0')
    throw std::invalid_argument("malformed integer: '" + token + "'");
  return v;
}

bool LineParser::next(std::vector<std::string>& tokens) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    tokens.clear();
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (!tokens.empty()) return true;
  }
  return false;
}

void LineParser::require(std::vector<std::string>& tokens, const std::string& context) {
  if (!next(tokens)) fail("unexpected end of input while reading " + context);
}

void LineParser::fail(const std::string& message) const {
  throw std::runtime_error("line " + std::to_string(line_) + ": " + message);
}

void expect_header(LineParser& parser, const std::string& kind) {
  std::vector<std::string> tok;
  parser.require(tok, "header");
  if (tok.size() != 2 || tok[0] != "schema_version")
    parser.fail("expected 'schema_version <v>'");
  if (parse_integer(tok[1]) != 1) parser.fail("unsupported schema_version " + tok[1]);
  parser.require(tok, "header");
  if (tok.size() != 2 || tok[0] != "kind") parser.fail("expected 'kind <kind>'");
  if (tok[1] != kind) parser.fail("expected kind '" + kind + "', found '" + tok[1] + "'");
}

void write_header(std::ostream& out, const std::string& kind) {
  out << "schema_version 1\n";
  out << "kind " << kind << "\n";
}

}  // namespace textio

void write_ising(std::ostream& out, const IsingModel& model) {
  textio::write_header(out, "ising");
  out << "nodes " << model.num_nodes() << "\n";
  for (int i = 0; i < model.num_nodes(); ++i)
    out << "h " << i << " " << textio::format_double(model.bias(i)) << "\n";
  for (const Edge& e : model.edges())
    out << "edge " << e.i << " " << e.j << " " << textio::format_double(e.coupling)
        << "\n";
  out << "end\n";
}

IsingModel read_ising(std::istream& in) {
  textio::LineParser parser(in);
  textio::expect_header(parser, "ising");
  std::vector<std::string> tok;
  parser.require(tok, "nodes");
  if (tok.size() != 2 || tok[0] != "nodes") parser.fail("expected 'nodes <n>'");
  IsingModel model(static_cast<int>(textio::parse_integer(tok[1])));
  while (true) {
    parser.require(tok, "ising body");
    if (tok[0] == "end") {
      if (tok.size() != 1) parser.fail("trailing tokens after 'end'");
      break;
    }
    if (tok[0] == "h") {
      if (tok.size() != 3) parser.fail("expected 'h <node> <value>'");
      model.set_bias(static_cast<int>(textio::parse_integer(tok[1])),
                     textio::parse_double(tok[2]));
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) parser.fail("expected 'edge <i> <j> <value>'");
      const int i = static_cast<int>(textio::parse_integer(tok[1]));
      const int j = static_cast<int>(textio::parse_integer(tok[2]));
      if (model.has_edge(i, j)) parser.fail("duplicate edge");
      model.set_coupling(i, j, textio::parse_double(tok[3]));
    } else {
      parser.fail("unknown key '" + tok[0] + "' in ising block");
    }
  }
  model.check_finite();
  return model;
}

void save_ising(const std::string& path, const IsingModel& model) {
  std::ostringstream ss;
  write_ising(ss, model);
  write_text_file(path, ss.str());
}

IsingModel load_ising(const std::string& path) {
  std::istringstream ss(read_text_file(path));
  return read_ising(ss);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qahm
