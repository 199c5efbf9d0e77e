#include "genpow/trig.hpp"
#include "genpow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace genpow {

double trig_tail_bound(double c_bound, std::size_t K, double odd_factor) {
    // term_j = c^j/(2j)!, accumulated iteratively to dodge factorial overflow
    double term = 1.0, tail = 0.0;
    for (std::size_t j = 1; j <= K + 400; ++j) {
        term *= c_bound / double((2 * j - 1) * (2 * j));
        if (j > K) {
            tail += term;
            if (term < 1e-300) break;
        }
    }
    return tail * odd_factor;
}

std::size_t auto_truncation(double c_bound, double odd_factor, double epsilon) {
    constexpr std::size_t kCap = 200;
    // the true tail is strictly positive; an epsilon of zero only "succeeds"
    // once the iterated term underflows, which certifies nothing
    if (!(epsilon > 0.0))
        throw ToleranceTooTight("truncation tolerance must be positive");
    for (std::size_t K = 0; K <= kCap; ++K)
        if (trig_tail_bound(c_bound, K, odd_factor) <= epsilon) return K;
    throw ToleranceTooTight("no truncation below K=200 certifies epsilon=" +
                            std::to_string(epsilon));
}

namespace {

// accumulate sign^j * rows[2j+off]/(2j+off)! for j = 0..K
cvec parity_sum(const std::vector<cvec>& rows, std::size_t K, int off, double sign) {
    const std::size_t m = rows[0].size();
    cvec out(m, cplx{0.0, 0.0});
    double coef = off == 0 ? 1.0 : 1.0;  // 1/0! or 1/1!
    double s = 1.0;
    for (std::size_t j = 0; j <= K; ++j) {
        const std::size_t n = 2 * j + std::size_t(off);
        if (j > 0) {
            coef /= double((n - 1) * n);
            s *= sign;
        }
        for (std::size_t i = 0; i < m; ++i) out[i] += s * coef * rows[n][i];
    }
    return out;
}

}  // namespace

PhiTrigSet build_trig(const PowerTable& table, double epsilon) {
    const double odd_factor = 1.0 + table.grid().length() * table.max_inv_phi;
    const std::size_t K = auto_truncation(table.c_bound, odd_factor, epsilon);
    if (table.order < 2 * K + 1) throw InsufficientOrder(2 * K + 1, table.order);

    PhiTrigSet t;
    t.K = K;
    t.tail_bound = trig_tail_bound(table.c_bound, K, odd_factor);
    t.C = parity_sum(table.X, K, 0, -1.0);
    t.Ct = parity_sum(table.Xt, K, 0, -1.0);
    t.S = parity_sum(table.X, K, 1, -1.0);
    t.St = parity_sum(table.Xt, K, 1, -1.0);
    t.Ch = parity_sum(table.X, K, 0, 1.0);
    t.Cht = parity_sum(table.Xt, K, 0, 1.0);
    t.Sh = parity_sum(table.X, K, 1, 1.0);
    t.Sht = parity_sum(table.Xt, K, 1, 1.0);
    return t;
}

double TrigDerivativeReport::max() const {
    return std::max(std::max(ds_minus_c, dtc_plus_s), std::max(dsh_minus_ch, dtch_minus_sh));
}

TrigDerivativeReport trig_derivative_check(const PowerTable& table, const PhiTrigSet& trig) {
    // Exact recurrence: X^(n)' = n * Phi^{(-1)^n} * X^(n-1), so
    //   D S  = sum (-1)^j X^(2j)/(2j)!          (odd rows lose their 1/Phi weight)
    //   Dt C = sum_{j>=1} (-1)^j X^(2j-1)/(2j-1)!
    // and the hyperbolic analogues without alternating signs.
    const std::size_t K = trig.K;
    const std::size_t m = table.grid().size();
    auto shifted_odd = [&](double sign) {
        // sum_{j=1..K} sign^j X^(2j-1)/(2j-1)!
        cvec out(m, cplx{0.0, 0.0});
        double coef = 1.0, s = 1.0;
        for (std::size_t j = 1; j <= K; ++j) {
            s *= sign;
            if (j > 1) coef /= double((2 * j - 2) * (2 * j - 1));
            for (std::size_t i = 0; i < m; ++i) out[i] += s * coef * table.X[2 * j - 1][i];
        }
        return out;
    };
    cvec DS(m), DSh(m);
    {
        // same sums as C/Ch over the untilde even rows
        double coef = 1.0, sa = 1.0, sh = 1.0;
        cvec a(m, cplx{0.0, 0.0}), b(m, cplx{0.0, 0.0});
        for (std::size_t j = 0; j <= K; ++j) {
            if (j > 0) {
                coef /= double((2 * j - 1) * (2 * j));
                sa *= -1.0;
            }
            for (std::size_t i = 0; i < m; ++i) {
                a[i] += sa * coef * table.X[2 * j][i];
                b[i] += sh * coef * table.X[2 * j][i];
            }
        }
        DS = std::move(a);
        DSh = std::move(b);
    }
    cvec DtC = shifted_odd(-1.0);
    cvec DtCh = shifted_odd(1.0);

    TrigDerivativeReport r{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        r.ds_minus_c = std::max(r.ds_minus_c, std::abs(DS[i] - trig.C[i]));
        r.dtc_plus_s = std::max(r.dtc_plus_s, std::abs(DtC[i] + trig.S[i]));
        r.dsh_minus_ch = std::max(r.dsh_minus_ch, std::abs(DSh[i] - trig.Ch[i]));
        r.dtch_minus_sh = std::max(r.dtch_minus_sh, std::abs(DtCh[i] - trig.Sh[i]));
    }
    return r;
}

}  // namespace genpow
