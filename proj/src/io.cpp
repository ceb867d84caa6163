#include "loo/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <vector>

#include <unistd.h>

namespace loo::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::size_t parse_index(const std::string& token, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad node index '" + token + "'");
  }
  return value;
}

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Adjacency parse_edge_list(std::istream& in, const std::string& header) {
  static const std::regex header_re(R"(^#\s*n\s*=\s*(\d+)\s*$)");
  std::smatch match;
  if (!std::regex_match(header, match, header_re)) {
    throw InputError("edge list must start with a '# n=<count>' header");
  }
  const std::size_t n = parse_index(match[1].str(), 1);
  if (n == 0 || n > kMaxNodes) throw InputError("edge list header has an unsupported n");
  Adjacency A(n);

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'i j'");
    }
    const std::size_t i = parse_index(fields[0], line_no);
    const std::size_t j = parse_index(fields[1], line_no);
    if (i >= n || j >= n) {
      throw InputError("line " + std::to_string(line_no) + ": node index out of range for n=" +
                       std::to_string(n));
    }
    if (i == j) throw InputError("self-loop at node " + std::to_string(i));
    A.set_edge(i, j, true);
  }
  return A;
}

Adjacency parse_dense(std::istream& in, const std::string& first_line, bool symmetrize) {
  std::vector<std::vector<std::uint8_t>> rows;
  auto consume = [&](const std::string& line) {
    const auto fields = split_fields(line);
    std::vector<std::uint8_t> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "0") {
        row.push_back(0);
      } else if (fields[c] == "1") {
        row.push_back(1);
      } else {
        throw InputError("non-binary value '" + fields[c] + "' at " + entry_name(rows.size(), c));
      }
    }
    rows.push_back(std::move(row));
  };
  consume(first_line);
  std::string line;
  while (std::getline(in, line)) {
    if (!is_blank(line)) consume(line);
  }

  const std::size_t n = rows.size();
  if (n > kMaxNodes) throw InputError("matrix exceeds the supported size");
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw InputError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(n));
    }
  }

  Adjacency A(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (rows[i][i] && !symmetrize) throw InputError("self-loop at node " + std::to_string(i));
        continue;
      }
      if (j < i) continue;
      const bool upper = rows[i][j] != 0;
      const bool lower = rows[j][i] != 0;
      if (upper != lower && !symmetrize) {
        throw InputError("asymmetric entry at " + entry_name(i, j));
      }
      if (upper || lower) A.set_edge(i, j, true);
    }
  }
  return A;
}

}  // namespace

Adjacency parse_adjacency(std::istream& in, bool symmetrize) {
  std::string first;
  while (std::getline(in, first)) {
    if (!is_blank(first)) break;
  }
  if (is_blank(first)) throw InputError("adjacency input is empty");
  if (first.front() == '#') return parse_edge_list(in, first);
  return parse_dense(in, first, symmetrize);
}

Adjacency read_adjacency(const std::filesystem::path& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return parse_adjacency(in, symmetrize);
}

void write_edge_list(std::ostream& out, const Adjacency& A) {
  out << "# n=" << A.size() << '\n';
  for (Node i = 0; i < A.size(); ++i) {
    for (Node j = i + 1; j < A.size(); ++j) {
      if (A(i, j)) out << i << ' ' << j << '\n';
    }
  }
}

void write_dense_csv(std::ostream& out, const Adjacency& A) {
  for (Node i = 0; i < A.size(); ++i) {
    for (Node j = 0; j < A.size(); ++j) {
      if (j) out << ',';
      out << static_cast<int>(A(i, j));
    }
    out << '\n';
  }
}

std::string format_number(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, ptr);
}

void write_atomic(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    try {
      body(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InputError("failed writing '" + path.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_interval_csv(std::ostream& out, std::span<const IntervalReport> reports) {
  out << "i,j,estimate,method,lower,upper,halfwidth,alpha\n";
  for (const IntervalReport& r : reports) {
    out << r.i << ',' << r.j << ',' << format_number(r.estimate) << ',' << method_tag(r.method)
        << ',' << format_number(r.lower) << ',' << format_number(r.upper) << ','
        << format_number(r.halfwidth) << ',' << format_number(r.alpha) << '\n';
  }
}

void write_edge_csv(std::ostream& out, std::span<const EdgeRecord> rows) {
  out << "i,j,p_true,p_tilde,p_hat,eb_lo,eb_hi,n_lo,n_hi\n";
  for (const EdgeRecord& r : rows) {
    out << r.i << ',' << r.j << ',' << format_number(r.p_true) << ',' << format_number(r.p_tilde)
        << ',' << format_number(r.p_hat) << ',' << format_number(r.eb_lo) << ','
        << format_number(r.eb_hi) << ',' << format_number(r.n_lo) << ','
        << format_number(r.n_hi) << '\n';
  }
}

void write_estimate_csv(std::ostream& out, const LooFit& fit, const IntervalSet& intervals) {
  const std::size_t n = fit.estimates.size();
  out << "i,j,p_tilde,p_hat,eb_lo,eb_hi,n_lo,n_hi\n";
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t slot = pair_index(n, i, j);
      out << i << ',' << j << ',' << format_number(fit.estimates.tilde(i, j)) << ','
          << format_number(fit.estimates.hat(i, j)) << ','
          << format_number(intervals.eb[slot].lower) << ','
          << format_number(intervals.eb[slot].upper) << ','
          << format_number(intervals.normal[slot].lower) << ','
          << format_number(intervals.normal[slot].upper) << '\n';
    }
  }
}

}  // namespace loo::io
