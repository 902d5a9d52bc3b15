#include "foliage/exterior.hpp"

#include <array>
#include <memory>
#include <sstream>

namespace foliage {

int merge_sign(Mask a, Mask b)
{
    int inversions = 0;
    while (b) {
        const int j = std::countr_zero(b);
        b &= b - 1;
        const Mask above = (j + 1 >= 32) ? 0 : (~Mask{0} << (j + 1));
        inversions += std::popcount(a & above);
    }
    return (inversions % 2) ? -1 : 1;
}

ExteriorBasis::ExteriorBasis(int dim) : dim_(dim), masks_(static_cast<std::size_t>(dim) + 1)
{
    if (dim < 0 || dim > kMaxDimension)
        throw InvalidInput("exterior basis: unsupported dimension " + std::to_string(dim));
    index_.assign(std::size_t{1} << dim, 0);
    // lexicographic order of sorted index tuples, built by recursive extension
    std::vector<std::vector<int>> current{{}};
    masks_[0].push_back(0);
    for (int k = 1; k <= dim; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& tuple : current) {
            const int start = tuple.empty() ? 0 : tuple.back() + 1;
            for (int i = start; i < dim; ++i) {
                auto t = tuple;
                t.push_back(i);
                next.push_back(std::move(t));
            }
        }
        for (const auto& t : next) {
            Mask m = 0;
            for (int i : t)
                m |= Mask{1} << i;
            masks_[static_cast<std::size_t>(k)].push_back(m);
        }
        current = std::move(next);
    }
    for (const auto& level : masks_)
        for (std::size_t i = 0; i < level.size(); ++i)
            index_[level[i]] = i;
}

std::size_t ExteriorBasis::size(int degree) const
{
    if (degree < 0 || degree > dim_)
        return 0;
    return masks_[static_cast<std::size_t>(degree)].size();
}

const ExteriorBasis& exterior_basis(int dim)
{
    static const auto tables = [] {
        std::array<std::unique_ptr<ExteriorBasis>, kMaxDimension + 1> t;
        for (int d = 0; d <= kMaxDimension; ++d)
            t[static_cast<std::size_t>(d)] = std::make_unique<ExteriorBasis>(d);
        return t;
    }();
    if (dim < 0 || dim > kMaxDimension)
        throw InvalidInput("unsupported dimension " + std::to_string(dim));
    return *tables[static_cast<std::size_t>(dim)];
}

std::string mask_to_string(Mask m)
{
    if (m == 0)
        return "1";
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i)
        if (m & (Mask{1} << i))
            idx.push_back(i + 1);
    const bool wide = idx.back() >= 10;
    std::string out = wide ? "e^{" : "e^";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (wide && k)
            out += ",";
        out += std::to_string(idx[k]);
    }
    if (wide)
        out += "}";
    return out;
}

LieAlgebraModel::LieAlgebraModel(int dim, const BracketTable& brackets) : dim_(dim), table_()
{
    if (dim < 1 || dim > kMaxDimension)
        throw InvalidInput("model dimension must lie in [1, " + std::to_string(kMaxDimension) + "]");
    const auto m = static_cast<std::size_t>(dim);
    constants_.assign(m * m * m, Rational(0));
    for (const auto& [key, coeffs] : brackets) {
        const auto [i, j] = key;
        if (i < 0 || j < 0 || i >= dim || j >= dim || i >= j)
            throw InvalidInput("bracket key out of range or not ordered");
        if (coeffs.size() != m)
            throw InvalidInput("bracket coefficient vector has the wrong length");
        if (is_zero_vector(coeffs))
            continue;
        table_.emplace(key, coeffs);
        for (std::size_t k = 0; k < m; ++k) {
            constants_[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m + k] = coeffs[k];
            constants_[(static_cast<std::size_t>(j) * m + static_cast<std::size_t>(i)) * m + k] = -coeffs[k];
        }
    }
    for (int k = 0; k < dim; ++k) {
        Form<Rational> de(dim, 2);
        for (const auto& [key, coeffs] : table_)
            de.add((Mask{1} << key.first) | (Mask{1} << key.second), -coeffs[static_cast<std::size_t>(k)]);
        de_.push_back(std::move(de));
    }
}

Vector LieAlgebraModel::basis_vector(int i) const
{
    Vector v(static_cast<std::size_t>(dim_), Rational(0));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

Vector LieAlgebraModel::bracket(const Vector& x, const Vector& y) const
{
    if (x.size() != static_cast<std::size_t>(dim_) || y.size() != static_cast<std::size_t>(dim_))
        throw InvalidInput("bracket: vector length mismatch");
    Vector out(static_cast<std::size_t>(dim_), Rational(0));
    for (const auto& [key, coeffs] : table_) {
        const auto i = static_cast<std::size_t>(key.first);
        const auto j = static_cast<std::size_t>(key.second);
        Rational w = x[i] * y[j] - x[j] * y[i];
        if (is_zero(w))
            continue;
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += w * coeffs[k];
    }
    return out;
}

Matrix<Rational> LieAlgebraModel::ad(const Vector& v) const
{
    Matrix<Rational> a(static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j)
        a.set_column(static_cast<std::size_t>(j), bracket(v, basis_vector(j)));
    return a;
}

std::string AlgebraValidation::message() const
{
    if (valid)
        return "valid";
    std::ostringstream os;
    os << "Jacobi identity violated on triple (" << (*triple)[0] << "," << (*triple)[1] << "," << (*triple)[2]
       << "): residual " << vector_to_string(residual);
    return os.str();
}

AlgebraValidation validate_algebra(const LieAlgebraModel& model)
{
    AlgebraValidation out;
    const int m = model.dim();
    for (int i = 0; i < m && out.valid; ++i)
        for (int j = i + 1; j < m && out.valid; ++j)
            for (int k = j + 1; k < m && out.valid; ++k) {
                const Vector ei = model.basis_vector(i);
                const Vector ej = model.basis_vector(j);
                const Vector ek = model.basis_vector(k);
                Vector r = model.bracket(model.bracket(ei, ej), ek);
                const Vector r2 = model.bracket(model.bracket(ej, ek), ei);
                const Vector r3 = model.bracket(model.bracket(ek, ei), ej);
                for (std::size_t t = 0; t < r.size(); ++t)
                    r[t] += r2[t] + r3[t];
                if (!is_zero_vector(r)) {
                    out.valid = false;
                    out.triple = std::array<int, 3>{i + 1, j + 1, k + 1};
                    out.residual = r;
                }
            }
    for (const auto& de : model.differentials_of_generators())
        if (!ce_d(model, de).is_zero())
            out.d_squared_zero = false;
    if (out.valid != out.d_squared_zero)
        throw InternalInconsistency("Jacobi audit and d^2 = 0 audit disagree");
    return out;
}

Matrix<Rational> lie_derivative_endo(const LieAlgebraModel& model, const Vector& v, const Matrix<Rational>& phi)
{
    const auto m = static_cast<std::size_t>(model.dim());
    if (phi.rows() != m || phi.cols() != m)
        throw InvalidInput("lie_derivative_endo: endomorphism must be square of the model dimension");
    Matrix<Rational> out(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector x = model.basis_vector(static_cast<int>(j));
        Vector a = model.bracket(v, phi * x);
        const Vector b = phi * model.bracket(v, x);
        for (std::size_t k = 0; k < m; ++k)
            a[k] -= b[k];
        out.set_column(j, a);
    }
    return out;
}

} // namespace foliage
