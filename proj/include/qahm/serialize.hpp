#ifndef QAHM_SERIALIZE_HPP
#define QAHM_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qahm/ising.hpp"

namespace qahm {

// Low-level pieces of the text formats described in docs/formats.md.
// All formats are whitespace-tokenized lines, '#' starts a comment, every
// block opens with "schema_version <v>" / "kind <kind>" and closes with
// "end". Doubles are written with 17 significant digits so finite values
// round-trip losslessly.
namespace textio {

std::string format_double(double v);
double parse_double(const std::string& token);
long long parse_integer(const std::string& token);

class LineParser {
 public:
  explicit LineParser(std::istream& in) : in_(in) {}

  // Fills tokens from the next non-blank, non-comment line. False at EOF.
  bool next(std::vector<std::string>& tokens);
  // Like next() but throws if the stream ends first.
  void require(std::vector<std::string>& tokens, const std::string& context);
  int line_number() const { return line_; }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::istream& in_;
  int line_ = 0;
};

// Consumes "schema_version 1" and "kind <kind>"; throws on anything else.
void expect_header(LineParser& parser, const std::string& kind);

void write_header(std::ostream& out, const std::string& kind);

}  // namespace textio

void write_ising(std::ostream& out, const IsingModel& model);
IsingModel read_ising(std::istream& in);

void save_ising(const std::string& path, const IsingModel& model);
IsingModel load_ising(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qahm

#endif  // QAHM_SERIALIZE_HPP
