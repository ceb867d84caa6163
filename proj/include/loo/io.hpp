#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "loo/estimator.hpp"
#include "loo/graphon.hpp"
#include "loo/harness.hpp"
#include "loo/inference.hpp"

namespace loo::io {

/// Reads an adjacency matrix, detecting the format from the first line:
///
///   edge list   `# n=<count>` header, then one undirected edge `i j` per
///               line (0-based, whitespace or comma separated; `#` lines
///               are comments)
///   dense CSV   n rows of n comma or whitespace separated 0/1 values
///
/// Without `symmetrize`, self-loops, asymmetric entries and non-binary
/// values throw InputError naming the first offending entry. With it, the
/// dense matrix is replaced by A OR A^T and its diagonal is cleared.
Adjacency parse_adjacency(std::istream& in, bool symmetrize = false);
Adjacency read_adjacency(const std::filesystem::path& path, bool symmetrize = false);

void write_edge_list(std::ostream& out, const Adjacency& A);
void write_dense_csv(std::ostream& out, const Adjacency& A);

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& body);

/// Columns: i,j,estimate,method,lower,upper,halfwidth,alpha
void write_interval_csv(std::ostream& out, std::span<const IntervalReport> reports);

/// Columns: i,j,p_true,p_tilde,p_hat,eb_lo,eb_hi,n_lo,n_hi
void write_edge_csv(std::ostream& out, std::span<const EdgeRecord> rows);

/// Columns: i,j,p_tilde,p_hat,eb_lo,eb_hi,n_lo,n_hi (no ground truth).
void write_estimate_csv(std::ostream& out, const LooFit& fit, const IntervalSet& intervals);

}  // namespace loo::io
