#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact integer linear algebra: vectors, matrices, Smith normal form,
// unimodular operations, primitivity tests and cokernels. Everything is
// arbitrary precision; intermediate entries of a normal form computation can
// exceed machine words even for small inputs.

namespace ttm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation is outside the supported hypotheses (reported to CLI
// users as exit code 2 rather than a data error).
struct unsupported_error : error {
    explicit unsupported_error(const std::string& what) : error(what) {}
};

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

class IntVec {
public:
    IntVec() = default;
    explicit IntVec(std::vector<Int> entries) : entries_(std::move(entries)) {}
    IntVec(std::initializer_list<Int> entries) : entries_(entries) {}

    static IntVec zero(int dim) { return IntVec(std::vector<Int>(static_cast<size_t>(dim))); }
    static IntVec unit(int dim, int i) {
        IntVec v = zero(dim);
        v[i] = 1;
        return v;
    }

    int dim() const { return static_cast<int>(entries_.size()); }
    const Int& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    Int& operator[](int i) { return entries_[static_cast<size_t>(i)]; }
    const std::vector<Int>& entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Int& e) { return e == 0; });
    }

    Int content() const {  // gcd of entries, 0 for the zero vector
        Int g = 0;
        for (const Int& e : entries_) g = ttm::gcd(g, e);
        return g;
    }
    bool is_primitive() const { return content() == 1; }

    friend IntVec operator+(const IntVec& a, const IntVec& b) {
        check_dims(a, b);
        IntVec r = a;
        for (int i = 0; i < r.dim(); ++i) r[i] += b[i];
        return r;
    }
    friend IntVec operator-(const IntVec& a, const IntVec& b) {
        check_dims(a, b);
        IntVec r = a;
        for (int i = 0; i < r.dim(); ++i) r[i] -= b[i];
        return r;
    }
    friend IntVec operator-(const IntVec& a) {
        IntVec r = a;
        for (int i = 0; i < r.dim(); ++i) r[i] = -r[i];
        return r;
    }
    friend IntVec operator*(const Int& c, const IntVec& v) {
        IntVec r = v;
        for (int i = 0; i < r.dim(); ++i) r[i] *= c;
        return r;
    }
    friend bool operator==(const IntVec& a, const IntVec& b) { return a.entries_ == b.entries_; }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << entries_[static_cast<size_t>(i)];
        os << ')';
        return os.str();
    }

private:
    static void check_dims(const IntVec& a, const IntVec& b) {
        if (a.dim() != b.dim()) throw error("vector dimension mismatch");
    }
    std::vector<Int> entries_;
};

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.dim() != b.dim()) throw error("vector dimension mismatch");
    Int s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

// Determinant of the 2x2 matrix with columns a, b.
inline Int det2(const IntVec& a, const IntVec& b) {
    if (a.dim() != 2 || b.dim() != 2) throw error("det2 expects 2-dimensional vectors");
    return a[0] * b[1] - a[1] * b[0];
}

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
        if (rows < 0 || cols < 0) throw error("negative matrix dimension");
    }
    IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        e_.reserve(static_cast<size_t>(rows_) * static_cast<size_t>(cols_));
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw error("ragged matrix literal");
            e_.insert(e_.end(), r.begin(), r.end());
        }
    }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat from_columns(int dim, std::span<const IntVec> cols) {
        IntMat m(dim, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (cols[static_cast<size_t>(j)].dim() != dim) throw error("column dimension mismatch");
            for (int i = 0; i < dim; ++i) m(i, j) = cols[static_cast<size_t>(j)][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Int& operator()(int r, int c) const { return e_[idx(r, c)]; }
    Int& operator()(int r, int c) { return e_[idx(r, c)]; }

    IntVec column(int j) const {
        IntVec v = IntVec::zero(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    IntVec row(int i) const {
        IntVec v = IntVec::zero(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    void set_column(int j, const IntVec& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend IntMat operator*(const IntMat& a, const IntMat& b) {
        if (a.cols_ != b.rows_) throw error("matrix shape mismatch in product");
        IntMat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend IntVec operator*(const IntMat& a, const IntVec& v) {
        if (a.cols_ != v.dim()) throw error("matrix/vector shape mismatch");
        IntVec r = IntVec::zero(a.rows_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }
    friend IntMat operator+(const IntMat& a, const IntMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix shape mismatch in sum");
        IntMat r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend IntMat operator-(const IntMat& a, const IntMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix shape mismatch in difference");
        IntMat r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend IntMat operator-(const IntMat& a) {
        IntMat r = a;
        for (auto& e : r.e_) e = -e;
        return r;
    }
    friend bool operator==(const IntMat& a, const IntMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const Int& e) { return e == 0; });
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    void add_row_multiple(int dst, int src, const Int& c) {  // row dst += c * row src
        if (c == 0) return;
        for (int j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
    }
    void add_col_multiple(int dst, int src, const Int& c) {  // col dst += c * col src
        if (c == 0) return;
        for (int i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
    }
    void negate_row(int i) {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (int i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        }
        os << ']';
        return os.str();
    }

private:
    size_t idx(int r, int c) const {
        return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
    }
    int rows_, cols_;
    std::vector<Int> e_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMat& a) {
    if (!a.is_square()) throw error("determinant of a non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

struct SmithDecomposition {
    IntMat left;             // unimodular, rows x rows
    std::vector<Int> diag;   // invariant factors, non-negative, d_i | d_{i+1}, zeros trailing
    IntMat right;            // unimodular, cols x cols

    IntMat diagonal_matrix(int rows, int cols) const {
        IntMat d(rows, cols);
        for (size_t i = 0; i < diag.size(); ++i) d(static_cast<int>(i), static_cast<int>(i)) = diag[i];
        return d;
    }
};

// left * A * right is diagonal with the divisibility chain d_1 | d_2 | ...
// Pivot ties are broken by smallest absolute value, then lowest row, then
// lowest column, so the factorization is deterministic.
inline SmithDecomposition smith_normal_form(const IntMat& a_in) {
    IntMat a = a_in;
    const int m = a.rows(), n = a.cols();
    IntMat left = IntMat::identity(m);
    IntMat right = IntMat::identity(n);

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // deterministic pivot search over the trailing submatrix
            int pi = -1, pj = -1;
            Int best = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    const Int v = ttm::abs(a(i, j));
                    if (v == 0) continue;
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) goto done;  // trailing submatrix is zero
            if (pi != t) {
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
            }
            if (pj != t) {
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
            }

            bool residue = false;
            for (int i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                const Int q = a(i, t) / a(t, t);
                a.add_row_multiple(i, t, -q);
                left.add_row_multiple(i, t, -q);
                if (a(i, t) != 0) residue = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                const Int q = a(t, j) / a(t, t);
                a.add_col_multiple(j, t, -q);
                right.add_col_multiple(j, t, -q);
                if (a(t, j) != 0) residue = true;
            }
            if (residue) continue;  // remainders are strictly smaller, retry

            // pivot must divide the whole trailing block for the chain
            int bi = -1, bj = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi >= 0) {
                a.add_row_multiple(t, bi, 1);
                left.add_row_multiple(t, bi, 1);
                continue;
            }
            break;
        }
    }
done:
    for (int t = 0; t < steps; ++t)
        if (a(t, t) < 0) {
            a.negate_row(t);
            left.negate_row(t);
        }
    std::vector<Int> diag(static_cast<size_t>(steps));
    for (int t = 0; t < steps; ++t) diag[static_cast<size_t>(t)] = a(t, t);
    return SmithDecomposition{std::move(left), std::move(diag), std::move(right)};
}

// Integer inverse of a matrix with determinant +-1. With left*A*right = I the
// inverse is right*left.
inline IntMat unimodular_inverse(const IntMat& a) {
    if (!a.is_square()) throw error("unimodular_inverse of a non-square matrix");
    SmithDecomposition s = smith_normal_form(a);
    for (const Int& d : s.diag)
        if (d != 1) throw error("matrix is not unimodular (|det| != 1)");
    return s.right * s.left;
}

// Finitely generated abelian group in invariant factor form.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<Int> torsion;  // each > 1, each dividing the next

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank == 1)
            os << "Z", first = false;
        else if (free_rank > 1)
            os << "Z^" << free_rank, first = false;
        for (const Int& d : torsion) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        return os.str();
    }
};

// Z^rows / image(A).
inline AbelianGroup cokernel(const IntMat& a) {
    SmithDecomposition s = smith_normal_form(a);
    AbelianGroup g;
    int nonzero = 0;
    for (const Int& d : s.diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.torsion.push_back(d);
    }
    g.free_rank = a.rows() - nonzero;
    return g;
}

// Direct sum, renormalized to a divisibility chain.
inline AbelianGroup direct_sum(std::span<const AbelianGroup> parts) {
    AbelianGroup g;
    std::vector<Int> tor;
    for (const AbelianGroup& p : parts) {
        g.free_rank += p.free_rank;
        tor.insert(tor.end(), p.torsion.begin(), p.torsion.end());
    }
    if (!tor.empty()) {
        IntMat d(static_cast<int>(tor.size()), static_cast<int>(tor.size()));
        for (size_t i = 0; i < tor.size(); ++i) d(static_cast<int>(i), static_cast<int>(i)) = tor[i];
        g.torsion = cokernel(d).torsion;
    }
    return g;
}

// Some integer solution of A x = b, if one exists.
inline std::optional<IntVec> integer_solve(const IntMat& a, const IntVec& b) {
    if (b.dim() != a.rows()) throw error("right-hand side dimension mismatch");
    SmithDecomposition s = smith_normal_form(a);
    IntVec lb = s.left * b;
    IntVec y = IntVec::zero(a.cols());
    const int k = static_cast<int>(s.diag.size());
    for (int i = 0; i < a.rows(); ++i) {
        const Int d = i < k ? s.diag[static_cast<size_t>(i)] : Int(0);
        if (d == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            if (lb[i] % d != 0) return std::nullopt;
            if (i < a.cols()) y[i] = lb[i] / d;
        }
    }
    return s.right * y;
}

inline int rank(const IntMat& a) {
    SmithDecomposition s = smith_normal_form(a);
    int r = 0;
    for (const Int& d : s.diag)
        if (d != 0) ++r;
    return r;
}

// Basis of the integer kernel lattice of A, as matrix columns. The kernel of
// an integer matrix is a direct summand, so these columns extend to a basis
// of Z^cols.
inline IntMat kernel_basis(const IntMat& a) {
    SmithDecomposition s = smith_normal_form(a);
    int r = 0;
    for (const Int& d : s.diag)
        if (d != 0) ++r;
    IntMat k(a.cols(), a.cols() - r);
    for (int j = r; j < a.cols(); ++j)
        for (int i = 0; i < a.cols(); ++i) k(i, j - r) = s.right(i, j);
    return k;
}

// A tuple of vectors is primitive when it spans a direct summand of full
// tuple rank: linearly independent over Q with all Smith invariant factors 1.
// The empty tuple is primitive.
inline bool is_primitive_tuple(std::span<const IntVec> vectors) {
    if (vectors.empty()) return true;
    const int n = vectors[0].dim();
    for (const IntVec& v : vectors)
        if (v.dim() != n) throw error("primitivity test on vectors of mixed dimension");
    const int k = static_cast<int>(vectors.size());
    if (k > n) return false;
    SmithDecomposition s = smith_normal_form(IntMat::from_columns(n, vectors));
    for (const Int& d : s.diag)
        if (d != 1) return false;
    return true;
}

// Extends a primitive tuple of k vectors in Z^n to a basis of Z^n; the result
// has the tuple as its first k columns and determinant +-1.
inline IntMat unimodular_completion(std::span<const IntVec> vectors) {
    if (vectors.empty()) throw error("cannot complete an empty tuple without an ambient dimension");
    if (!is_primitive_tuple(vectors)) throw error("tuple is not primitive");
    const int n = vectors[0].dim();
    const int k = static_cast<int>(vectors.size());
    IntMat a = IntMat::from_columns(n, vectors);
    SmithDecomposition s = smith_normal_form(a);
    IntMat linv = unimodular_inverse(s.left);
    IntMat c(n, n);
    for (int j = 0; j < k; ++j) c.set_column(j, a.column(j));
    for (int j = k; j < n; ++j) c.set_column(j, linv.column(j));
    return c;
}

inline bool is_sl2(const IntMat& m) { return m.rows() == 2 && m.cols() == 2 && det(m) == 1; }

}  // namespace ttm
