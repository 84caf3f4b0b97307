#include <troplift/instance.hpp>

#include <stdexcept>

namespace troplift
{

Instance::Instance(Matrix<PuiseuxRational> a, std::vector<PuiseuxRational> rhs) : A(std::move(a)), b(std::move(rhs))
{
    if (A.rows() != b.size()) {
        throw std::invalid_argument("instance: rhs length does not match row count");
    }
}

std::int64_t Instance::grid_den() const
{
    std::int64_t q = 1;
    for (std::size_t i = 0; i < rows(); ++i) {
        for (std::size_t j = 0; j < cols(); ++j) {
            q = lcm_int64(q, A(i, j).grid_den());
        }
        q = lcm_int64(q, b[i].grid_den());
    }
    return q;
}

Instance regrid(const Instance &inst, std::int64_t N)
{
    Instance out = inst;
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            out.A(i, j) = regrid(inst.A(i, j), N);
        }
        out.b[i] = regrid(inst.b[i], N);
    }
    return out;
}

TropPoint scale(const TropPoint &v, const Rational &factor)
{
    TropPoint out;
    for (const auto &c : v.coords) {
        out.coords.push_back(c.is_infinite() ? c : Valuation(c.value() * factor));
    }
    return out;
}

Instance permute_columns(const Instance &inst, const std::vector<std::size_t> &perm)
{
    if (perm.size() != inst.cols()) {
        throw std::invalid_argument("permutation length does not match column count");
    }
    Instance out(Matrix<PuiseuxRational>(inst.rows(), inst.cols()), inst.b);
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t k = 0; k < perm.size(); ++k) {
            out.A(i, k) = inst.A(i, perm[k]);
        }
    }
    return out;
}

TropPoint permute(const TropPoint &v, const std::vector<std::size_t> &perm)
{
    TropPoint out;
    for (const std::size_t j : perm) {
        out.coords.push_back(v.coords.at(j));
    }
    return out;
}

} // namespace troplift
