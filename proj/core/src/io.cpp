#include "sfd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfd {

namespace {

struct Entry {
    std::size_t row;
    std::uint32_t col;
    double value;
};

class MatrixMarketStream final : public RowStream {
  public:
    MatrixMarketStream(std::unique_ptr<std::ifstream> in, const std::string& path)
        : in_(std::move(in)), path_(path) {
        std::string line;
        while (std::getline(*in_, line)) {
            if (line.empty() || line[0] == '%') continue;
            std::istringstream ss(line);
            long long nnz = 0;
            long long n = 0, d = 0;
            if (!(ss >> n >> d >> nnz) || n < 0 || d <= 0 || nnz < 0)
                throw std::invalid_argument(path_ + ": bad MatrixMarket size line");
            n_ = static_cast<std::size_t>(n);
            d_ = static_cast<std::size_t>(d);
            return;
        }
        throw std::invalid_argument(path_ + ": missing MatrixMarket size line");
    }

    std::size_t cols() const override { return d_; }

    bool next(SparseRow& out) override {
        if (emitted_ == n_) return false;
        out.indices.clear();
        out.values.clear();
        const std::size_t want = emitted_;
        while (true) {
            if (!pending_ && !read_entry()) break;
            if (pending_->row > want) break; // belongs to a later row
            if (pending_->row < want)
                throw std::invalid_argument(path_ + ": entries not grouped by nondecreasing row "
                                                    "(streaming input must be row ordered)");
            out.indices.push_back(pending_->col);
            out.values.push_back(pending_->value);
            pending_.reset();
        }
        sort_row(out);
        emitted_ += 1;
        return true;
    }

  private:
    bool read_entry() {
        std::string line;
        while (std::getline(*in_, line)) {
            if (line.empty() || line[0] == '%') continue;
            std::istringstream ss(line);
            long long r = 0, c = 0;
            double v = 0.0;
            if (!(ss >> r >> c >> v))
                throw std::invalid_argument(path_ + ": malformed entry line");
            if (r < 1 || static_cast<std::size_t>(r) > n_ || c < 1 ||
                static_cast<std::size_t>(c) > d_)
                throw std::invalid_argument(path_ + ": entry index out of range");
            pending_ = Entry{static_cast<std::size_t>(r - 1),
                             static_cast<std::uint32_t>(c - 1), v};
            return true;
        }
        return false;
    }

    void sort_row(SparseRow& row) const {
        // Entries within one row may arrive in any column order.
        std::vector<std::size_t> order(row.indices.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return row.indices[a] < row.indices[b];
        });
        SparseRow sorted;
        sorted.indices.reserve(order.size());
        sorted.values.reserve(order.size());
        for (std::size_t i : order) {
            if (!sorted.indices.empty() && sorted.indices.back() == row.indices[i])
                throw std::invalid_argument(path_ + ": duplicate column within a row");
            sorted.indices.push_back(row.indices[i]);
            sorted.values.push_back(row.values[i]);
        }
        row = std::move(sorted);
    }

    std::unique_ptr<std::ifstream> in_;
    std::string path_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::size_t emitted_ = 0;
    std::optional<Entry> pending_;
};

class PlainStream final : public RowStream {
  public:
    PlainStream(std::unique_ptr<std::ifstream> in, const std::string& path,
                std::string first_line, std::size_t cols)
        : in_(std::move(in)), path_(path), buffered_(std::move(first_line)), d_(cols) {}

    std::size_t cols() const override { return d_; }

    bool next(SparseRow& out) override {
        std::string line;
        while (take_line(line)) {
            std::size_t pos = line.find('#');
            if (pos != std::string::npos) line.resize(pos);
            bool blank = true;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
            if (blank) continue;
            parse_line(line, out);
            return true;
        }
        return false;
    }

  private:
    bool take_line(std::string& line) {
        if (buffered_) {
            line = std::move(*buffered_);
            buffered_.reset();
            return true;
        }
        return static_cast<bool>(std::getline(*in_, line));
    }

    void parse_line(const std::string& line, SparseRow& out) const {
        out.indices.clear();
        out.values.clear();
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            const std::size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument(path_ + ": expected col:value token, got '" + tok + "'");
            const long long col = std::stoll(tok.substr(0, colon));
            const double val = std::stod(tok.substr(colon + 1));
            if (col < 0 || static_cast<std::size_t>(col) >= d_)
                throw std::invalid_argument(path_ + ": column index out of range");
            if (!out.indices.empty() && static_cast<std::uint32_t>(col) <= out.indices.back())
                throw std::invalid_argument(path_ + ": columns must be strictly increasing");
            out.indices.push_back(static_cast<std::uint32_t>(col));
            out.values.push_back(val);
        }
    }

    std::unique_ptr<std::ifstream> in_;
    std::string path_;
    std::optional<std::string> buffered_;
    std::size_t d_;
};

} // namespace

std::unique_ptr<RowStream> open_row_stream(const std::string& path,
                                           std::optional<std::size_t> plain_cols) {
    auto in = std::make_unique<std::ifstream>(path);
    if (!*in) throw std::invalid_argument(path + ": cannot open input");
    std::string first;
    if (!std::getline(*in, first)) {
        // Empty file: zero-row plain stream needs a width anyway.
        if (!plain_cols) throw std::invalid_argument(path + ": empty file and no column count given");
        return std::make_unique<PlainStream>(std::move(in), path, std::string(), *plain_cols);
    }
    if (first.rfind("%%MatrixMarket", 0) == 0) {
        if (first.find("matrix coordinate real general") == std::string::npos)
            throw std::invalid_argument(path + ": unsupported MatrixMarket header (need "
                                               "'matrix coordinate real general')");
        return std::make_unique<MatrixMarketStream>(std::move(in), path);
    }
    if (!plain_cols)
        throw std::invalid_argument(path + ": plain format input requires an explicit column count");
    return std::make_unique<PlainStream>(std::move(in), path, std::move(first), *plain_cols);
}

struct MatrixMarketWriter::Impl {
    std::ofstream out;
    std::size_t rows = 0;
    std::size_t declared_nnz = 0;
    std::size_t written_nnz = 0;
    std::size_t last_row = 0;
    bool any = false;
};

MatrixMarketWriter::MatrixMarketWriter(const std::string& path, std::size_t rows,
                                       std::size_t cols, std::size_t nnz)
    : impl_(std::make_unique<Impl>()) {
    impl_->out.open(path);
    if (!impl_->out) throw std::invalid_argument(path + ": cannot open output");
    impl_->rows = rows;
    impl_->declared_nnz = nnz;
    impl_->out << "%%MatrixMarket matrix coordinate real general\n";
    impl_->out << rows << " " << cols << " " << nnz << "\n";
}

MatrixMarketWriter::~MatrixMarketWriter() = default;

void MatrixMarketWriter::append_row(std::size_t row_index, const SparseRow& row) {
    if (impl_->any && row_index < impl_->last_row)
        throw std::invalid_argument("MatrixMarketWriter: rows must be appended in order");
    impl_->any = true;
    impl_->last_row = row_index;
    char buf[64];
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.values[k]);
        impl_->out << (row_index + 1) << " " << (row.indices[k] + 1) << " " << buf << "\n";
        impl_->written_nnz += 1;
    }
}

void MatrixMarketWriter::close() {
    if (impl_->written_nnz != impl_->declared_nnz)
        throw std::logic_error("MatrixMarketWriter: entry count does not match declared nnz");
    impl_->out.close();
}

void write_sketch_csv(const std::string& path, const DenseMatrix& sketch) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open output");
    char buf[64];
    for (std::size_t i = 0; i < sketch.rows; ++i) {
        for (std::size_t j = 0; j < sketch.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", sketch(i, j));
            out << buf;
            if (j + 1 < sketch.cols) out << ",";
        }
        out << "\n";
    }
}

DenseMatrix read_sketch_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open sketch file");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (!rows.empty() && vals.size() != rows.front().size())
            throw std::invalid_argument(path + ": ragged sketch file");
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::invalid_argument(path + ": empty sketch file");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string metrics_csv_header() { return "algo,n,d,ell,z,k,proj_err,cov_err,wall_seconds,seed"; }

std::string metrics_csv_line(const MetricsRow& row) {
    std::ostringstream ss;
    char buf[64];
    ss << row.algo << "," << row.n << "," << row.d << "," << row.ell << "," << row.z << ","
       << row.k << ",";
    if (row.proj_err) {
        std::snprintf(buf, sizeof(buf), "%.9f", *row.proj_err);
        ss << buf;
    } else {
        ss << "nan";
    }
    std::snprintf(buf, sizeof(buf), ",%.9f", row.cov_err);
    ss << buf;
    std::snprintf(buf, sizeof(buf), ",%.6f", row.wall_seconds);
    ss << buf << "," << row.seed;
    return ss.str();
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open output");
    out << metrics_csv_header() << "\n";
    for (const MetricsRow& r : rows) out << metrics_csv_line(r) << "\n";
}

void write_manifest(const std::string& output_path, const std::string& json_text) {
    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open manifest output");
    out << json_text << "\n";
}

} // namespace sfd
