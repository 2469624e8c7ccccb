#include "carpetlab/carpet_io.hpp"

#include <fstream>
#include <sstream>

#include "carpetlab/error.hpp"

namespace carpetlab {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool read_pair(const std::string& line, int& a, int& b) {
  std::istringstream fields(line);
  if (!(fields >> a >> b)) return false;
  std::string extra;
  return !(fields >> extra);
}

}  // namespace

Carpet parse_carpet(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int m = 0;
  int n = 0;
  std::vector<Digit> digits;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    int a = 0;
    int b = 0;
    if (!read_pair(body, a, b)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) +
                      ": expected two integers, got '" + line + "'");
    }
    if (!have_header) {
      m = a;
      n = b;
      have_header = true;
    } else {
      digits.push_back({a, b});
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::ParseError, "missing 'm n' header line");
  }
  return Carpet::create(m, n, std::move(digits));
}

Carpet parse_carpet(const std::string& text) {
  std::istringstream in(text);
  return parse_carpet(in);
}

Carpet load_carpet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  return parse_carpet(in);
}

std::string format_carpet(const Carpet& c) {
  std::ostringstream out;
  out << c.m() << ' ' << c.n() << '\n';
  for (const Digit& d : c.digits()) out << d.x << ' ' << d.y << '\n';
  return out.str();
}

}  // namespace carpetlab
