#include "genpow/grid.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace genpow {

namespace {

double env_or(const char* name, double fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    char* end = nullptr;
    double v = std::strtod(s, &end);
    return (end && *end == '\0') ? v : fallback;
}

}  // namespace

const Tolerances& tolerances() {
    static const Tolerances t = [] {
        Tolerances v;
        v.identity = env_or("GENPOW_TOL_IDENTITY", v.identity);
        v.vanish = env_or("GENPOW_VANISH_TOL", v.vanish);
        v.resid = env_or("GENPOW_RESID_TOL", v.resid);
        v.ode = env_or("GENPOW_ODE_TOL", v.ode);
        v.root = env_or("GENPOW_ROOT_TOL", v.root);
        return v;
    }();
    return t;
}

Grid::Grid(double a, double b, std::vector<double> nodes, std::size_t x0_index)
    : a_(a), b_(b), nodes_(std::move(nodes)), x0_index_(x0_index) {
    const std::size_t m = nodes_.size();
    if (!(a_ < b_)) throw GridError("interval endpoints must satisfy a < b");
    if (m < 5 || m % 2 == 0)
        throw GridError("grid needs an odd node count of at least 5, got " + std::to_string(m));
    if (nodes_.front() != a_ || nodes_.back() != b_)
        throw GridError("nodes must start at a and end at b");
    if (x0_index_ >= m) throw GridError("x0_index out of range");
    spacing_ = (b_ - a_) / double(m - 1);
    for (std::size_t i = 1; i < m; ++i) {
        const double d = nodes_[i] - nodes_[i - 1];
        if (!(d > 0.0)) throw GridError("nodes must be strictly increasing");
        if (std::abs(d - spacing_) > 1e-12 * std::max(1.0, std::abs(spacing_)))
            throw GridError("grid spacing not uniform at node " + std::to_string(i));
    }
}

Grid Grid::uniform(double a, double b, std::size_t count, std::size_t x0_index) {
    std::vector<double> nodes(count);
    for (std::size_t i = 0; i < count; ++i)
        nodes[i] = a + (b - a) * double(i) / double(count - 1);
    if (count) nodes.back() = b;
    return Grid(a, b, std::move(nodes), x0_index);
}

bool Grid::same_as(const Grid& other) const {
    return a_ == other.a_ && b_ == other.b_ && nodes_.size() == other.nodes_.size() &&
           x0_index_ == other.x0_index_;
}

SampledFunction::SampledFunction(Grid g, cvec v, std::vector<cvec> d)
    : grid(std::move(g)), values(std::move(v)), derivatives(std::move(d)) {
    if (values.size() != grid.size())
        throw GridError("sample length " + std::to_string(values.size()) +
                        " does not match grid size " + std::to_string(grid.size()));
    for (const auto& dv : derivatives)
        if (dv.size() != grid.size()) throw GridError("derivative array length mismatch");
}

const cvec& SampledFunction::derivative(std::size_t order) const {
    if (order == 0 || order > derivatives.size())
        throw InsufficientOrder(order, derivatives.size());
    return derivatives[order - 1];
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::min_abs() const {
    double m = std::abs(values.empty() ? cplx{} : values[0]);
    for (const cplx& v : values) m = std::min(m, std::abs(v));
    return m;
}

bool SampledFunction::is_real(double tol) const {
    for (const cplx& v : values)
        if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real()))) return false;
    return true;
}

void require_nonvanishing(const SampledFunction& f, const std::string& role) {
    const double tol = tolerances().vanish;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (std::abs(f.values[i]) <= tol) throw NonvanishingViolation(role, i, std::abs(f.values[i]));
}

FuncSpec FuncSpec::make_constant(cplx c) {
    FuncSpec s;
    s.kind = Kind::Constant;
    s.constant = c;
    return s;
}

FuncSpec FuncSpec::make_polynomial(std::vector<cplx> coeffs) {
    FuncSpec s;
    s.kind = Kind::Polynomial;
    s.poly_coeffs = std::move(coeffs);
    return s;
}

FuncSpec FuncSpec::shifted_square() { FuncSpec s; s.kind = Kind::ShiftedSquare; return s; }
FuncSpec FuncSpec::sqrt_cosh() { FuncSpec s; s.kind = Kind::SqrtCosh; return s; }
FuncSpec FuncSpec::gaussian_ground() { FuncSpec s; s.kind = Kind::GaussianGround; return s; }
FuncSpec FuncSpec::gaussian() { FuncSpec s; s.kind = Kind::Gaussian; return s; }
FuncSpec FuncSpec::cosh_spec() { FuncSpec s; s.kind = Kind::Cosh; return s; }

FuncSpec FuncSpec::from_table_csv(const std::string& path) {
    FuncSpec s;
    s.kind = Kind::Table;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // skip a header line if the first field is not numeric
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() < 2) throw ConfigError("table row needs node,value: " + line);
        char* end = nullptr;
        double node = std::strtod(fields[0].c_str(), &end);
        if (end == fields[0].c_str()) continue;  // header
        double re = std::strtod(fields[1].c_str(), nullptr);
        double im = fields.size() > 2 ? std::strtod(fields[2].c_str(), nullptr) : 0.0;
        s.table_nodes.push_back(node);
        s.table_values.emplace_back(re, im);
    }
    if (s.table_nodes.empty()) throw ConfigError("table file has no data rows: " + path);
    return s;
}

std::string FuncSpec::name() const {
    switch (kind) {
        case Kind::Constant: return "constant";
        case Kind::Polynomial: return "polynomial";
        case Kind::ShiftedSquare: return "shifted_square";
        case Kind::SqrtCosh: return "sqrt_cosh";
        case Kind::GaussianGround: return "gaussian_ground";
        case Kind::Gaussian: return "gaussian";
        case Kind::Cosh: return "cosh";
        case Kind::Table: return "table";
    }
    return "unknown";
}

namespace {

// binomial coefficients as doubles (orders stay small)
double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

}  // namespace

SampledFunction materialize(const FuncSpec& spec, const Grid& grid, std::size_t deriv_orders) {
    const std::size_t m = grid.size();
    cvec vals(m);
    std::vector<cvec> ders;
    auto zero_rows = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) ders.emplace_back(m, cplx{0.0, 0.0});
    };

    switch (spec.kind) {
        case FuncSpec::Kind::Constant: {
            std::fill(vals.begin(), vals.end(), spec.constant);
            zero_rows(deriv_orders);
            break;
        }
        case FuncSpec::Kind::Polynomial: {
            std::vector<cplx> c = spec.poly_coeffs;
            if (c.empty()) c.push_back(cplx{0.0, 0.0});
            auto horner = [&](const std::vector<cplx>& cc, double x) {
                cplx v{0.0, 0.0};
                for (std::size_t k = cc.size(); k-- > 0;) v = v * x + cc[k];
                return v;
            };
            for (std::size_t i = 0; i < m; ++i) vals[i] = horner(c, grid.node(i));
            for (std::size_t d = 0; d < deriv_orders; ++d) {
                std::vector<cplx> dc;
                for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(double(k) * c[k]);
                if (dc.empty()) dc.push_back(cplx{0.0, 0.0});
                ders.emplace_back(m);
                for (std::size_t i = 0; i < m; ++i) ders.back()[i] = horner(dc, grid.node(i));
                c = dc;
            }
            break;
        }
        case FuncSpec::Kind::ShiftedSquare: {
            for (std::size_t i = 0; i < m; ++i) {
                const double t = 1.0 + grid.node(i);
                vals[i] = t * t;
            }
            zero_rows(deriv_orders);
            for (std::size_t i = 0; i < m && deriv_orders >= 1; ++i)
                ders[0][i] = 2.0 * (1.0 + grid.node(i));
            for (std::size_t i = 0; i < m && deriv_orders >= 2; ++i) ders[1][i] = 2.0;
            break;
        }
        case FuncSpec::Kind::SqrtCosh: {
            // phi^2 = cosh x; solve Leibniz rows pointwise:
            // 2 phi phi^{(k)} = cosh^{(k)} - sum_{j=1}^{k-1} C(k,j) phi^{(j)} phi^{(k-j)}
            zero_rows(deriv_orders);
            for (std::size_t i = 0; i < m; ++i) {
                const double x = grid.node(i);
                std::vector<double> p(deriv_orders + 1, 0.0);
                p[0] = std::sqrt(std::cosh(x));
                for (std::size_t k = 1; k <= deriv_orders; ++k) {
                    double rhs = (k % 2 == 0) ? std::cosh(x) : std::sinh(x);
                    for (std::size_t j = 1; j < k; ++j) rhs -= binom(k, j) * p[j] * p[k - j];
                    p[k] = rhs / (2.0 * p[0]);
                }
                vals[i] = p[0];
                for (std::size_t k = 1; k <= deriv_orders; ++k) ders[k - 1][i] = p[k];
            }
            break;
        }
        case FuncSpec::Kind::GaussianGround:
        case FuncSpec::Kind::Gaussian: {
            // f' = -s*x*f  with s = 2 (e^{-x^2}) or 1 (e^{-x^2/2});
            // f^{(k+1)} = -s*(x*f^{(k)} + k*f^{(k-1)})
            const double s = spec.kind == FuncSpec::Kind::GaussianGround ? 2.0 : 1.0;
            zero_rows(deriv_orders);
            for (std::size_t i = 0; i < m; ++i) {
                const double x = grid.node(i);
                std::vector<double> p(deriv_orders + 1, 0.0);
                p[0] = std::exp(-s * x * x / 2.0);
                for (std::size_t k = 0; k < deriv_orders; ++k)
                    p[k + 1] = -s * (x * p[k] + (k ? double(k) * p[k - 1] : 0.0));
                vals[i] = p[0];
                for (std::size_t k = 1; k <= deriv_orders; ++k) ders[k - 1][i] = p[k];
            }
            break;
        }
        case FuncSpec::Kind::Cosh: {
            zero_rows(deriv_orders);
            for (std::size_t i = 0; i < m; ++i) {
                const double x = grid.node(i);
                vals[i] = std::cosh(x);
                for (std::size_t k = 1; k <= deriv_orders; ++k)
                    ders[k - 1][i] = (k % 2 == 1) ? std::sinh(x) : std::cosh(x);
            }
            break;
        }
        case FuncSpec::Kind::Table: {
            if (spec.table_nodes.size() != m)
                throw ConfigError("table has " + std::to_string(spec.table_nodes.size()) +
                                  " rows, grid has " + std::to_string(m) + " nodes");
            for (std::size_t i = 0; i < m; ++i) {
                if (std::abs(spec.table_nodes[i] - grid.node(i)) >
                    1e-10 * std::max(1.0, std::abs(grid.node(i))))
                    throw ConfigError("table node " + std::to_string(i) + " does not match the grid");
                vals[i] = spec.table_values[i];
            }
            ders.push_back(finite_difference(grid, vals));
            break;
        }
    }
    return SampledFunction(grid, std::move(vals), std::move(ders));
}

SampledFunction materialize_phi(const PhiSpec& spec, const Grid& grid) {
    SampledFunction f = materialize(spec, grid);
    require_nonvanishing(f, "Phi (" + spec.name() + ")");
    return f;
}

namespace {

// Per-interval weights of the degree-5 interpolatory rule on a 6-node stencil,
// times 1440. Row r integrates over [x_{s+r}, x_{s+r+1}] where s is the stencil start.
constexpr double kW6[5][6] = {
    {475, 1427, -798, 482, -173, 27},
    {-27, 637, 1022, -258, 77, -11},
    {11, -93, 802, 802, -93, 11},
    {-11, 77, -258, 1022, 637, -27},
    {27, -173, 482, -798, 1427, 475},
};

// Degree-2 fallback for the minimal 5-node grid: cumulative Simpson with the
// 3-point correction at odd offsets.
cvec prefix_simpson(const Grid& grid, const cvec& f) {
    const std::size_t m = grid.size();
    const double h = grid.spacing();
    cvec g(m, cplx{0.0, 0.0});
    for (std::size_t i = 2; i < m; i += 2)
        g[i] = g[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
    for (std::size_t i = 1; i < m; i += 2)
        g[i] = g[i - 1] + h * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]) / 12.0;
    return g;
}

cvec prefix_integral(const Grid& grid, const cvec& f) {
    const std::size_t m = grid.size();
    if (m < 6) return prefix_simpson(grid, f);
    const double h = grid.spacing();
    cvec g(m, cplx{0.0, 0.0});
    for (std::size_t i = 1; i < m; ++i) {
        const std::size_t j = i - 1;  // interval [j, j+1]
        std::size_t s = j >= 2 ? j - 2 : 0;
        if (s > m - 6) s = m - 6;
        const double* w = kW6[j - s];
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < 6; ++k) acc += w[k] * f[s + k];
        g[i] = g[i - 1] + h * acc / 1440.0;
    }
    return g;
}

}  // namespace

cvec cumulative_integral(const Grid& grid, const cvec& values, std::size_t from_index) {
    if (values.size() != grid.size()) throw GridMismatch("integrand length does not match grid");
    if (from_index >= grid.size()) throw GridError("from_index out of range");
    cvec g = prefix_integral(grid, values);
    const cplx base = g[from_index];
    for (cplx& v : g) v -= base;
    return g;
}

SampledFunction cumulative_integral(const SampledFunction& f, std::size_t from_index) {
    return SampledFunction(f.grid, cumulative_integral(f.grid, f.values, from_index));
}

cplx range_integral(const Grid& grid, const cvec& values, std::size_t i, std::size_t j) {
    if (values.size() != grid.size()) throw GridMismatch("integrand length does not match grid");
    cvec g = prefix_integral(grid, values);
    return g[j] - g[i];
}

cvec finite_difference(const Grid& grid, const cvec& values) {
    const std::size_t m = grid.size();
    const double h = grid.spacing();
    cvec d(m);
    for (std::size_t i = 2; i + 2 < m; ++i)
        d[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) /
               (12.0 * h);
    d[0] = (-25.0 * values[0] + 48.0 * values[1] - 36.0 * values[2] + 16.0 * values[3] -
            3.0 * values[4]) / (12.0 * h);
    d[1] = (-3.0 * values[0] - 10.0 * values[1] + 18.0 * values[2] - 6.0 * values[3] +
            values[4]) / (12.0 * h);
    d[m - 1] = (25.0 * values[m - 1] - 48.0 * values[m - 2] + 36.0 * values[m - 3] -
                16.0 * values[m - 4] + 3.0 * values[m - 5]) / (12.0 * h);
    d[m - 2] = (3.0 * values[m - 1] + 10.0 * values[m - 2] - 18.0 * values[m - 3] +
                6.0 * values[m - 4] - values[m - 5]) / (12.0 * h);
    return d;
}

}  // namespace genpow
