#pragma once

#include <cstdint>

#include "sfd/shrink.hpp"

namespace sfd {

struct SketchConfig {
    std::size_t ell = 0;
    std::size_t d = 0;
    double delta = 0.1;
    PowerConfig power;
    std::uint64_t seed = 0;

    void validate() const;
};

// Streaming SparseFrequentDirections. Rows accumulate in a sparse buffer;
// when the buffer holds ell*d nonzeros or d rows it is shrunk into the
// ongoing dense sketch.
class SfdSketcher {
  public:
    explicit SfdSketcher(const SketchConfig& cfg);

    void append(const SparseRow& row);

    // Flushes whatever is left in the buffer and returns the final sketch.
    // A partial buffer with fewer than ell rows is densified and merged
    // through dense_shrink instead.
    DenseMatrix finalize();

    const DenseMatrix& sketch() const { return b_; }
    const SparseBuffer& buffer() const { return buffer_; }
    const VerifierState& verifier() const { return verifier_; }
    std::size_t flush_count() const { return flush_count_; }
    std::size_t attempt_total() const { return attempt_total_; }

  private:
    void flush();

    SketchConfig cfg_;
    DenseMatrix b_;
    SparseBuffer buffer_;
    VerifierState verifier_;
    Rng rng_;
    std::size_t flush_count_ = 0;
    std::size_t attempt_total_ = 0;
};

// Classic dense FrequentDirections: rows fill a 2*ell row workspace which
// is compacted by dense_shrink whenever it fills up. Deterministic.
class FdSketcher {
  public:
    FdSketcher(std::size_t ell, std::size_t d);

    void append(const std::vector<double>& row);
    DenseMatrix finalize();

    std::size_t shrink_count() const { return shrink_count_; }

  private:
    std::size_t ell_;
    std::size_t d_;
    DenseMatrix work_; // 2*ell x d
    std::size_t fill_ = 0;
    std::size_t shrink_count_ = 0;
};

// Shrink-merge of two sketches of equal width.
DenseMatrix merge(const DenseMatrix& b1, const DenseMatrix& b2, std::size_t ell);

} // namespace sfd
