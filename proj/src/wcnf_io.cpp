#include "mpmcs/wcnf_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mpmcs/errors.hpp"

namespace mpmcs {

namespace {

void append_clause_line(std::string& out, std::int64_t weight,
                        const Clause& literals) {
  out += std::to_string(weight);
  for (int lit : literals) {
    out += ' ';
    out += std::to_string(lit);
  }
  out += " 0\n";
}

// Whitespace-separated int64 scanner for one line.
class LineScanner {
 public:
  LineScanner(const std::string& line, int line_no)
      : line_(line), line_no_(line_no) {}

  bool next(std::int64_t& value) {
    skip_spaces();
    if (pos_ >= line_.size()) return false;
    const char* begin = line_.data() + pos_;
    const char* end = line_.data() + line_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError("malformed number", line_no_);
    }
    pos_ = static_cast<std::size_t>(ptr - line_.data());
    return true;
  }

  bool exhausted() {
    skip_spaces();
    return pos_ >= line_.size();
  }

 private:
  void skip_spaces() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
      ++pos_;
    }
  }

  const std::string& line_;
  int line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string emit_wcnf(const WcnfInstance& instance,
                      const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) {
    out += "c ";
    out += c;
    out += '\n';
  }
  out += "p wcnf ";
  out += std::to_string(instance.num_vars);
  out += ' ';
  out += std::to_string(instance.num_clauses());
  out += ' ';
  out += std::to_string(instance.top);
  out += '\n';

  for (const Clause& clause : instance.hard) {
    append_clause_line(out, instance.top, clause);
  }

  std::vector<std::size_t> order(instance.soft.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&instance](std::size_t a, std::size_t b) {
                     const Clause& ca = instance.soft[a].literals;
                     const Clause& cb = instance.soft[b].literals;
                     int va = ca.empty() ? 0 : std::abs(ca[0]);
                     int vb = cb.empty() ? 0 : std::abs(cb[0]);
                     return va < vb;
                   });
  for (std::size_t i : order) {
    append_clause_line(out, instance.soft[i].weight, instance.soft[i].literals);
  }
  return out;
}

void save_wcnf(const WcnfInstance& instance, const std::filesystem::path& path,
               const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  out << emit_wcnf(instance, comments);
}

WcnfInstance parse_wcnf(const std::string& text) {
  WcnfInstance instance;
  bool saw_header = false;
  std::int64_t declared_clauses = 0;
  std::int64_t seen_clauses = 0;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == 'c') continue;          // comment

    if (line[first] == 'p') {
      if (saw_header) throw ParseError("duplicate header", line_no);
      std::istringstream hs(line.substr(first));
      std::string p, fmt;
      std::int64_t vars = 0, clauses = 0, top = 0;
      if (!(hs >> p >> fmt >> vars >> clauses >> top) || p != "p" ||
          fmt != "wcnf") {
        throw ParseError("malformed header, expected 'p wcnf <vars> <clauses> <top>'",
                         line_no);
      }
      std::string rest;
      if (hs >> rest) throw ParseError("trailing tokens after header", line_no);
      if (vars < 1 || vars > 100'000'000) {
        throw ParseError("variable count out of range", line_no);
      }
      if (clauses < 0) throw ParseError("negative clause count", line_no);
      if (top < 2) throw ParseError("top weight must be at least 2", line_no);
      instance.num_vars = static_cast<int>(vars);
      instance.top = top;
      declared_clauses = clauses;
      saw_header = true;
      continue;
    }

    if (!saw_header) throw ParseError("clause before header", line_no);

    LineScanner scan(line, line_no);
    std::int64_t weight = 0;
    if (!scan.next(weight)) throw ParseError("empty clause line", line_no);
    if (weight < 1) throw ParseError("weight must be positive", line_no);
    if (weight > instance.top) {
      throw ParseError("weight " + std::to_string(weight) +
                           " exceeds top " + std::to_string(instance.top),
                       line_no);
    }

    Clause literals;
    bool terminated = false;
    std::int64_t lit = 0;
    while (scan.next(lit)) {
      if (lit == 0) {
        terminated = true;
        break;
      }
      std::int64_t var = lit < 0 ? -lit : lit;
      if (var > instance.num_vars) {
        throw ParseError("literal " + std::to_string(lit) +
                             " outside declared variable range",
                         line_no);
      }
      literals.push_back(static_cast<int>(lit));
    }
    if (!terminated) throw ParseError("clause missing terminating 0", line_no);
    if (!scan.exhausted()) {
      throw ParseError("trailing tokens after terminating 0", line_no);
    }

    ++seen_clauses;
    if (weight == instance.top) {
      instance.hard.push_back(std::move(literals));
    } else {
      instance.soft.push_back(SoftClause{weight, std::move(literals)});
    }
  }

  if (!saw_header) throw ParseError("missing 'p wcnf' header");
  if (seen_clauses != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but " + std::to_string(seen_clauses) +
                     " are present");
  }
  return instance;
}

WcnfInstance load_wcnf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_wcnf(buf.str());
}

}  // namespace mpmcs
