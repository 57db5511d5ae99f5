#ifndef W1_SPEC_PARSE_HPP
#define W1_SPEC_PARSE_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "w1/copula.hpp"
#include "w1/distribution.hpp"

namespace w1 {

/// Error in a distribution or copula spec string; carries the character
/// position of the offending token.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }
 private:
  std::size_t pos_;
};

namespace detail {

inline double parse_number(const std::string& tok, std::size_t pos) {
  std::size_t consumed = 0;
  double v;
  try {
    v = std::stod(tok, &consumed);
  } catch (const std::exception&) {
    throw parse_error("expected a number, got '" + tok + "'", pos);
  }
  if (consumed != tok.size())
    throw parse_error("trailing characters in number '" + tok + "'", pos);
  return v;
}

inline std::vector<std::string> split_params(const std::string& text,
                                             std::size_t start) {
  std::vector<std::string> out;
  std::size_t pos = start;
  while (true) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

inline std::vector<double> read_sample_file(const std::string& path,
                                            std::size_t pos) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open sample file '" + path + "'", pos);
  std::vector<double> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(first, last - first + 1);
    std::size_t consumed = 0;
    double v;
    try {
      v = std::stod(tok, &consumed);
    } catch (const std::exception&) {
      throw parse_error("non-numeric sample '" + tok + "' in " + path +
                            " line " + std::to_string(lineno),
                        pos);
    }
    if (consumed != tok.size())
      throw parse_error("non-numeric sample '" + tok + "' in " + path +
                            " line " + std::to_string(lineno),
                        pos);
    samples.push_back(v);
  }
  if (samples.empty())
    throw parse_error("sample file '" + path + "' has no data", pos);
  return samples;
}

}  // namespace detail

/// Grammar (exact, case-sensitive):
///   normal:MU,SIGMA | uniform:A,B | exp:LAMBDA | empirical:@path.csv
inline Distribution parse_distribution(const std::string& text) {
  std::size_t colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (colon == std::string::npos)
    throw parse_error("expected FAMILY:PARAMS, got '" + text + "'", 0);
  std::size_t body = colon + 1;

  if (head == "normal") {
    auto p = detail::split_params(text, body);
    if (p.size() != 2)
      throw parse_error("normal takes 2 parameters (mu,sigma)", body);
    double mu = detail::parse_number(p[0], body);
    double sigma = detail::parse_number(p[1], body + p[0].size() + 1);
    if (sigma <= 0.0)
      throw parse_error("sigma must be > 0", body + p[0].size() + 1);
    return Distribution::normal(mu, sigma);
  }
  if (head == "uniform") {
    auto p = detail::split_params(text, body);
    if (p.size() != 2)
      throw parse_error("uniform takes 2 parameters (a,b)", body);
    double a = detail::parse_number(p[0], body);
    double b = detail::parse_number(p[1], body + p[0].size() + 1);
    if (!(a < b)) throw parse_error("a >= b", body);
    return Distribution::uniform(a, b);
  }
  if (head == "exp") {
    auto p = detail::split_params(text, body);
    if (p.size() != 1)
      throw parse_error("exp takes 1 parameter (lambda)", body);
    double lambda = detail::parse_number(p[0], body);
    if (lambda <= 0.0) throw parse_error("lambda must be > 0", body);
    return Distribution::exponential(lambda);
  }
  if (head == "empirical") {
    if (body >= text.size() || text[body] != '@')
      throw parse_error("empirical takes @path", body);
    return Distribution::empirical(
        detail::read_sample_file(text.substr(body + 1), body + 1));
  }
  throw parse_error("unknown distribution family '" + head + "'", 0);
}

/// Grammar (exact, case-sensitive): m | w | pi | gaussian:RHO
inline CopulaSpec parse_copula(const std::string& text) {
  if (text == "m") return CopulaSpec::m();
  if (text == "w") return CopulaSpec::w();
  if (text == "pi") return CopulaSpec::pi();
  std::size_t colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (head == "gaussian" && colon != std::string::npos) {
    double rho = detail::parse_number(text.substr(colon + 1), colon + 1);
    if (!(rho >= -1.0 && rho <= 1.0))
      throw parse_error("|rho| > 1", colon + 1);
    return CopulaSpec::gaussian(rho);
  }
  throw parse_error("unknown copula '" + text + "'", 0);
}

}  // namespace w1

#endif  // W1_SPEC_PARSE_HPP
