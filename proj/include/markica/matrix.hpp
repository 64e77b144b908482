#ifndef MARKICA_MATRIX_HPP
#define MARKICA_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace markica {

using Vector = std::vector<double>;

// Dense row-major matrix. Rows are samples, columns are features/components.
// A default-constructed Matrix is empty (0x0); every other constructor
// requires rows >= 1 and cols >= 1.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    Matrix transposed() const;

    // Rows [first, first + count).
    Matrix row_block(std::size_t first, std::size_t count) const;
    Matrix select_rows(std::span<const std::size_t> idx) const;

    bool all_finite() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

// Max absolute row sum.
double norm_inf(const Matrix& a);
// Max absolute entry of (a - b).
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace markica

#endif
