#include "genpow/power_table.hpp"
#include "genpow/errors.hpp"

#include <cmath>

namespace genpow {

namespace {

std::vector<cvec> run_recursion(const Grid& grid, const cvec& weight_odd, const cvec& weight_even,
                                std::size_t x0_index, std::size_t order) {
    const std::size_t m = grid.size();
    std::vector<cvec> rows;
    rows.reserve(order + 1);
    rows.emplace_back(m, cplx{1.0, 0.0});
    cvec scratch(m);
    for (std::size_t n = 1; n <= order; ++n) {
        const cvec& w = (n % 2 == 1) ? weight_odd : weight_even;
        for (std::size_t i = 0; i < m; ++i) scratch[i] = rows[n - 1][i] * w[i];
        cvec next = cumulative_integral(grid, scratch, x0_index);
        for (cplx& v : next) v *= double(n);
        rows.push_back(std::move(next));
    }
    return rows;
}

}  // namespace

const cvec& PowerTable::y_row(std::size_t n) const {
    if (n > order) throw InsufficientOrder(n, order);
    return (n % 2 == 1) ? Xt[n] : X[n];
}

const cvec& PowerTable::yt_row(std::size_t n) const {
    if (n > order) throw InsufficientOrder(n, order);
    return (n % 2 == 1) ? X[n] : Xt[n];
}

PowerTable build_power_table(const SampledFunction& phi, std::size_t x0_index, std::size_t order) {
    require_nonvanishing(phi, "Phi");
    const Grid& grid = phi.grid;
    if (x0_index >= grid.size()) throw GridError("x0_index out of range");

    const std::size_t m = grid.size();
    cvec inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = 1.0 / phi.values[i];

    PowerTable t{phi, x0_index, order, {}, {}, 0.0, 0.0};
    t.X = run_recursion(grid, inv, phi.values, x0_index, order);
    t.Xt = run_recursion(grid, phi.values, inv, x0_index, order);

    double max_phi = 0.0, max_inv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        max_phi = std::max(max_phi, std::abs(phi.values[i]));
        max_inv = std::max(max_inv, std::abs(inv[i]));
    }
    const double len = grid.length();
    t.c_bound = max_phi * max_inv * len * len;
    t.max_inv_phi = max_inv;
    return t;
}

PowerTable conjugate_table(const PowerTable& table) {
    const std::size_t m = table.grid().size();
    cvec inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = 1.0 / table.phi.values[i];
    // derivative of 1/Phi when Phi' is known: -(Phi'/Phi^2)
    std::vector<cvec> ders;
    if (table.phi.has_derivative(1)) {
        cvec d(m);
        for (std::size_t i = 0; i < m; ++i)
            d[i] = -table.phi.derivatives[0][i] * inv[i] * inv[i];
        ders.push_back(std::move(d));
    }
    SampledFunction inv_phi(table.grid(), std::move(inv), std::move(ders));
    return build_power_table(inv_phi, table.x0_index, table.order);
}

PowerTable rebase_table(const PowerTable& table, std::size_t base_index, std::size_t order) {
    if (base_index >= table.grid().size()) throw GridError("base_index out of range");
    SampledFunction phi = table.phi;
    PowerTable t = build_power_table(phi, base_index, order);
    return t;
}

cvec power_at_base(const PowerTable& table, std::size_t n, std::size_t base_index, bool tilde) {
    PowerTable rebased = rebase_table(table, base_index, n);
    return tilde ? rebased.Xt[n] : rebased.X[n];
}

}  // namespace genpow
