#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "sfd/bench.hpp"
#include "sfd/sparse.hpp"

namespace sfd {

inline constexpr const char* kToolVersion = "0.1.0";

// Forward-only row source. Implementations read their underlying stream
// strictly sequentially (no seeking), which is what makes the single-pass
// streaming guarantee checkable.
class RowStream {
  public:
    virtual ~RowStream() = default;
    virtual std::size_t cols() const = 0;
    // Returns false at end of stream.
    virtual bool next(SparseRow& out) = 0;
};

// Opens either a MatrixMarket coordinate file (header
// "%%MatrixMarket matrix coordinate real general", 1-based indices, entries
// grouped by nondecreasing row) or the plain "col:value" format (one row per
// line, 0-based, space separated, '#' comments). Plain files carry no
// dimension, so plain_cols must be supplied for them.
std::unique_ptr<RowStream> open_row_stream(const std::string& path,
                                           std::optional<std::size_t> plain_cols = std::nullopt);

// MatrixMarket coordinate writer; entries must be appended in row order.
class MatrixMarketWriter {
  public:
    MatrixMarketWriter(const std::string& path, std::size_t rows, std::size_t cols,
                       std::size_t nnz);
    ~MatrixMarketWriter();
    void append_row(std::size_t row_index, const SparseRow& row); // 0-based index
    void close();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Sketch on disk: ell lines of d comma separated values, 17 significant
// digits (round-trip exact for doubles).
void write_sketch_csv(const std::string& path, const DenseMatrix& sketch);
DenseMatrix read_sketch_csv(const std::string& path);

void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows);
std::string metrics_csv_header();
std::string metrics_csv_line(const MetricsRow& row);

// Run manifest written alongside every CLI output (JSON).
void write_manifest(const std::string& output_path, const std::string& json_text);

} // namespace sfd
