#include "block_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>

#include <json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace boxpoly {

using ordered_json = nlohmann::ordered_json;

namespace {

// One digit per variable: 0 = fixed at 0, 1 = fixed at 1, 2 = free.
using FaceCode = std::vector<std::uint8_t>;

struct Candidate {
    bool has = false;
    Rat value;
    std::vector<Rat> point;
    FaceCode code;
};

void offer(Candidate& best, Rat value, std::vector<Rat> point, FaceCode code) {
    if (!best.has || value < best.value || (value == best.value && code < best.code)) {
        best.has = true;
        best.value = std::move(value);
        best.point = std::move(point);
        best.code = std::move(code);
    }
}

mpz_class scaled_to_int(const Rat& r, const mpz_class& scale) {
    Rat t = r * Rat(scale);
    if (t.get_den() != 1) fail(Errc::internal, "integer scaling failed");
    return t.get_num();
}

// Row echelon solve of M y = b over the rationals; free variables are fixed
// at 1/2 so the representative is interior-biased. Returns nullopt when the
// system is inconsistent.
std::optional<std::vector<Rat>> solve_affine_representative(std::vector<std::vector<Rat>> m,
                                                            std::vector<Rat> b) {
    const int n = static_cast<int>(b.size());
    std::vector<int> pivot_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = -1;
        for (int r = row; r < n; ++r)
            if (m[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr == -1) continue;
        std::swap(m[pr], m[row]);
        std::swap(b[pr], b[row]);
        const Rat inv = 1 / m[row][col];
        for (int c = col; c < n; ++c) m[row][c] *= inv;
        b[row] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rat factor = m[r][col];
            for (int c = col; c < n; ++c) m[r][c] -= factor * m[row][c];
            b[r] -= factor * b[row];
        }
        pivot_col[row] = col;
        ++row;
    }
    for (int r = row; r < n; ++r)
        if (b[r] != 0) return std::nullopt;
    std::vector<Rat> y(n, Rat(1, 2));
    for (int r = row - 1; r >= 0; --r) {
        Rat v = b[r];
        for (int c = pivot_col[r] + 1; c < n; ++c)
            if (m[r][c] != 0) v -= m[r][c] * y[c];
        y[pivot_col[r]] = v;
    }
    return y;
}

// Gauss-Jordan inverse over the rationals with the determinant tracked.
bool invert_with_det(const std::vector<std::vector<Rat>>& m, std::vector<std::vector<Rat>>& inv,
                     Rat& det) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a = m;
    inv.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    det = 1;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr == -1) return false;
        if (pr != col) {
            std::swap(a[pr], a[col]);
            std::swap(inv[pr], inv[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rat piv_inv = 1 / a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] *= piv_inv;
            inv[col][c] *= piv_inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rat factor = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return true;
}

}  // namespace

BoxMinimum solve_quadratic_box(const Polynomial& q) {
    if (q.degree() > 2) fail(Errc::degree, "solve_quadratic_box requires degree <= 2");
    const int k = q.nvars();
    if (k > kFaceEnumCapVars)
        fail(Errc::cap_exceeded, "face enumeration cap " + std::to_string(kFaceEnumCapVars) +
                                     " exceeded (k=" + std::to_string(k) + ")");
    const QuadraticForm f = quadratic_parts(q);
    if (k == 0) return {f.constant, {}};

    // A = 2Q so that grad f = A x + c; scale everything integer by D0.
    std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k, Rat(0)));
    for (const auto& [ij, v] : f.q) {
        auto [i, j] = ij;
        if (i == j) {
            a[i][i] = 2 * v;
        } else {
            a[i][j] = 2 * v;
            a[j][i] = 2 * v;
        }
    }
    mpz_class d0 = 1;
    auto fold_den = [&d0](const Rat& r) {
        mpz_lcm(d0.get_mpz_t(), d0.get_mpz_t(), r.get_den().get_mpz_t());
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) fold_den(a[i][j]);
    for (int i = 0; i < k; ++i) fold_den(f.linear[i]);
    fold_den(f.constant);

    std::vector<std::vector<mpz_class>> az(k, std::vector<mpz_class>(k));
    std::vector<mpz_class> cz(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) az[i][j] = scaled_to_int(a[i][j], d0);
        cz[i] = scaled_to_int(f.linear[i], d0);
    }

    // Vertex values scaled by 2*D0, filled along a Gray walk.
    const std::uint32_t nmask = std::uint32_t{1} << k;
    std::vector<mpz_class> vz(nmask);
    vz[0] = scaled_to_int(f.constant, d0) * 2;
    {
        mpz_class cur = vz[0];
        for (std::uint32_t step = 1; step < nmask; ++step) {
            const std::uint32_t gray = step ^ (step >> 1);
            const std::uint32_t prev = (step - 1) ^ ((step - 1) >> 1);
            const int t = std::countr_zero(gray ^ prev);
            const bool on = (gray >> t) & 1;
            const std::uint32_t others = gray & prev;
            mpz_class delta = az[t][t] + 2 * cz[t];
            for (int i = 0; i < k; ++i)
                if ((others >> i) & 1) delta += 2 * az[t][i];
            if (on)
                cur += delta;
            else
                cur -= delta;
            vz[gray] = cur;
        }
    }

    Candidate best;
    const mpz_class den_vertex = 2 * d0;
    for (std::uint32_t mask = 0; mask < nmask; ++mask) {
        Rat value(vz[mask], den_vertex);
        value.canonicalize();
        std::vector<Rat> point(k);
        FaceCode code(k);
        for (int i = 0; i < k; ++i) {
            const int bit = (mask >> i) & 1;
            point[i] = bit;
            code[i] = static_cast<std::uint8_t>(bit);
        }
        offer(best, std::move(value), std::move(point), std::move(code));
    }

    // Faces with at least one free variable, grouped by the free set J: the
    // stationarity matrix depends on J only, so it is inverted once and the
    // right-hand side walks the fixed assignments in Gray order.
    std::vector<mpz_class> ynum(k), rz(k);
    for (std::uint32_t jmask = 1; jmask < nmask; ++jmask) {
        std::vector<int> jvars, fvars;
        for (int i = 0; i < k; ++i)
            ((jmask >> i) & 1 ? jvars : fvars).push_back(i);
        const int j = static_cast<int>(jvars.size());

        std::vector<std::vector<Rat>> m(j, std::vector<Rat>(j));
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c) m[r][c] = a[jvars[r]][jvars[c]];
        // A zero row in the stationarity matrix makes the system inconsistent
        // unless the matching rhs entry vanishes; that sign test per
        // assignment avoids the rational elimination on most sparse faces.
        std::vector<int> zero_rows;
        for (int r = 0; r < j; ++r) {
            bool all_zero = true;
            for (int c = 0; c < j; ++c)
                if (m[r][c] != 0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) zero_rows.push_back(r);
        }
        std::vector<std::vector<Rat>> inv;
        Rat det_q;
        const bool nonsingular = zero_rows.empty() && invert_with_det(m, inv, det_q);

        mpz_class dz;
        std::vector<std::vector<mpz_class>> adj;
        if (nonsingular) {
            // det of the integer matrix az[J,J] = det(a[J,J]) * d0^j.
            Rat dscale = det_q;
            for (int t = 0; t < j; ++t) dscale *= Rat(d0);
            if (dscale.get_den() != 1) fail(Errc::internal, "integer determinant expected");
            dz = dscale.get_num();
            adj.assign(j, std::vector<mpz_class>(j));
            for (int r = 0; r < j; ++r)
                for (int c = 0; c < j; ++c) {
                    // inv is the inverse of a[J,J]; az[J,J]^{-1} = inv / d0,
                    // so adj = az^{-1} * dz = inv * det_q * d0^{j-1}.
                    Rat e = inv[r][c] * det_q;
                    for (int t = 0; t + 1 < j; ++t) e *= Rat(d0);
                    if (e.get_den() != 1) fail(Errc::internal, "integer adjugate expected");
                    adj[r][c] = e.get_num();
                }
        }

        for (int r = 0; r < j; ++r) rz[r] = cz[jvars[r]];
        std::uint32_t i1mask = 0;
        const std::uint32_t nfixed = std::uint32_t{1} << fvars.size();
        for (std::uint32_t step = 0; step < nfixed; ++step) {
            if (step > 0) {
                const std::uint32_t gray = step ^ (step >> 1);
                const std::uint32_t prev = (step - 1) ^ ((step - 1) >> 1);
                const int local = std::countr_zero(gray ^ prev);
                const int var = fvars[local];
                const bool on = (gray >> local) & 1;
                for (int r = 0; r < j; ++r) {
                    if (on)
                        rz[r] += az[jvars[r]][var];
                    else
                        rz[r] -= az[jvars[r]][var];
                }
                i1mask = on ? (i1mask | (1u << var)) : (i1mask & ~(1u << var));
            }

            if (nonsingular) {
                // y = -az[J,J]^{-1} rz = -(adj * rz)/dz
                bool interior = true;
                const int sgn_dz = sgn(dz);
                for (int r = 0; r < j && interior; ++r) {
                    mpz_class& acc = ynum[r];
                    acc = 0;
                    for (int c = 0; c < j; ++c)
                        mpz_submul(acc.get_mpz_t(), adj[r][c].get_mpz_t(), rz[c].get_mpz_t());
                    // interior iff 0 < acc/dz < 1
                    if (sgn_dz > 0)
                        interior = sgn(acc) > 0 && cmp(acc, dz) < 0;
                    else
                        interior = sgn(acc) < 0 && cmp(acc, dz) > 0;
                }
                if (!interior) continue;
                // value = s + (1/2) r~^T y = (vz[i1]*dz + rz . ynum) / (2 d0 dz)
                mpz_class num = vz[i1mask] * dz;
                for (int r = 0; r < j; ++r)
                    mpz_addmul(num.get_mpz_t(), rz[r].get_mpz_t(), ynum[r].get_mpz_t());
                Rat value(num, 2 * d0 * dz);
                value.canonicalize();
                std::vector<Rat> point(k);
                FaceCode code(k);
                for (int i = 0; i < k; ++i) {
                    point[i] = (i1mask >> i) & 1;
                    code[i] = static_cast<std::uint8_t>((i1mask >> i) & 1);
                }
                for (int r = 0; r < j; ++r) {
                    Rat y(ynum[r], dz);
                    y.canonicalize();
                    point[jvars[r]] = std::move(y);
                    code[jvars[r]] = 2;
                }
                offer(best, std::move(value), std::move(point), std::move(code));
            } else {
                bool inconsistent = false;
                for (int t : zero_rows)
                    if (sgn(rz[t]) != 0) {
                        inconsistent = true;
                        break;
                    }
                if (inconsistent) continue;
                // Rank-deficient stationarity system: parameterize and test one
                // representative; the value is constant on the solution space.
                std::vector<Rat> b(j);
                for (int r = 0; r < j; ++r) b[r] = -Rat(rz[r]) / Rat(d0);
                auto sol = solve_affine_representative(m, b);
                if (!sol) continue;
                bool interior = true;
                for (const Rat& y : *sol)
                    if (!(y > 0 && y < 1)) {
                        interior = false;
                        break;
                    }
                if (!interior) continue;
                Rat value(vz[i1mask], 2 * d0);
                value.canonicalize();
                for (int r = 0; r < j; ++r) value += Rat(rz[r]) * (*sol)[r] / (2 * Rat(d0));
                std::vector<Rat> point(k);
                FaceCode code(k);
                for (int i = 0; i < k; ++i) {
                    point[i] = (i1mask >> i) & 1;
                    code[i] = static_cast<std::uint8_t>((i1mask >> i) & 1);
                }
                for (int r = 0; r < j; ++r) {
                    point[jvars[r]] = (*sol)[r];
                    code[jvars[r]] = 2;
                }
                offer(best, std::move(value), std::move(point), std::move(code));
            }
        }
    }
    return {best.value, best.point};
}

// --- numeric solver ------------------------------------------------------------

double lipschitz_bound(const Polynomial& q) {
    double l = 0.0;
    for (const auto& [m, c] : q.terms()) l += std::abs(rat_to_double(c)) * m.total_degree();
    return l;
}

namespace {

struct CompiledTerm {
    double coef;
    std::vector<std::pair<int, int>> exps;
};

std::vector<CompiledTerm> compile(const Polynomial& q) {
    std::vector<CompiledTerm> out;
    out.reserve(q.term_count());
    for (const auto& [m, c] : q.terms()) out.push_back({rat_to_double(c), m.exps()});
    return out;
}

double eval_compiled(const std::vector<CompiledTerm>& terms, const std::vector<double>& x) {
    double sum = 0.0;
    for (const auto& t : terms) {
        double v = t.coef;
        for (const auto& [var, e] : t.exps) {
            double b = x[var];
            for (int i = 0; i < e; ++i) v *= b;
        }
        sum += v;
    }
    return sum;
}

std::vector<std::vector<CompiledTerm>> compile_gradient(const Polynomial& q) {
    std::vector<std::vector<CompiledTerm>> grads(q.nvars());
    for (const auto& [m, c] : q.terms()) {
        for (const auto& [var, e] : m.exps()) {
            CompiledTerm t;
            t.coef = rat_to_double(c) * e;
            for (const auto& [v2, e2] : m.exps()) {
                int ne = (v2 == var) ? e2 - 1 : e2;
                if (ne > 0) t.exps.emplace_back(v2, ne);
            }
            grads[var].push_back(std::move(t));
        }
    }
    return grads;
}

// Projected gradient descent with backtracking line search: 200 iterations,
// step halved from 1.0, Armijo constant 1e-4.
std::pair<double, std::vector<double>> polish_point(const std::vector<CompiledTerm>& terms,
                                                    const std::vector<std::vector<CompiledTerm>>& grads,
                                                    std::vector<double> x) {
    const int k = static_cast<int>(x.size());
    for (double& c : x) c = std::clamp(c, 0.0, 1.0);
    double fx = eval_compiled(terms, x);
    std::vector<double> g(k), xn(k);
    for (int iter = 0; iter < 200; ++iter) {
        for (int i = 0; i < k; ++i) g[i] = eval_compiled(grads[i], x);
        bool moved = false;
        double t = 1.0;
        for (int bt = 0; bt < 40 && !moved; ++bt, t *= 0.5) {
            double step2 = 0.0;
            for (int i = 0; i < k; ++i) {
                xn[i] = std::clamp(x[i] - t * g[i], 0.0, 1.0);
                step2 += (xn[i] - x[i]) * (xn[i] - x[i]);
            }
            if (step2 < 1e-28) break;
            const double fn = eval_compiled(terms, xn);
            if (fn <= fx - 1e-4 / t * step2) {
                x = xn;
                fx = fn;
                moved = true;
            }
        }
        if (!moved) break;
    }
    return {fx, std::move(x)};
}

}  // namespace

NumericBoxMinimum grid_polish_min(const Polynomial& q, int points_per_dim, bool polish) {
    const int k = q.nvars();
    if (k > kGridEngineCapVars)
        fail(Errc::cap_exceeded, "grid engine cap " + std::to_string(kGridEngineCapVars) +
                                     " exceeded (k=" + std::to_string(k) + ")");
    if (points_per_dim < 2) fail(Errc::invalid_argument, "need at least 2 grid points per dimension");
    if (k == 0) {
        return {rat_to_double(q.constant_term()), {}, 0.0};
    }
    double total = 1.0;
    for (int i = 0; i < k; ++i) total *= points_per_dim;
    if (total > static_cast<double>(kGridPointCap))
        fail(Errc::cap_exceeded, "grid of " + std::to_string(total) + " points exceeds cap");

    const auto terms = compile(q);
    const auto grads = compile_gradient(q);
    const double h = 1.0 / (points_per_dim - 1);

    std::vector<int> idx(k, 0);
    std::vector<double> x(k, 0.0);
    std::vector<std::vector<double>> incumbents;
    double best = eval_compiled(terms, x);
    incumbents.push_back(x);
    while (true) {
        int d = 0;
        while (d < k && ++idx[d] == points_per_dim) {
            idx[d] = 0;
            x[d] = 0.0;
            ++d;
        }
        if (d == k) break;
        x[d] = idx[d] * h;
        const double v = eval_compiled(terms, x);
        if (v < best) {
            best = v;
            incumbents.push_back(x);
        }
    }

    NumericBoxMinimum out;
    out.value = best;
    out.point = incumbents.back();
    out.gap_bound = lipschitz_bound(q) * h * std::sqrt(static_cast<double>(k)) / 2.0;
    if (polish) {
        // Late incumbents dominate earlier ones; keep the trailing window so
        // the polish pass stays cheap on long improving scans.
        if (incumbents.size() > 32)
            incumbents.erase(incumbents.begin(), incumbents.end() - 32);
        std::vector<std::vector<double>> starts = incumbents;
        const std::uint32_t nv = std::uint32_t{1} << k;
        for (std::uint32_t mask = 0; mask < nv; ++mask) {
            std::vector<double> v(k);
            for (int i = 0; i < k; ++i) v[i] = (mask >> i) & 1;
            starts.push_back(std::move(v));
        }
        for (const auto& s : starts) {
            auto [fv, px] = polish_point(terms, grads, s);
            if (fv < out.value) {
                out.value = fv;
                out.point = std::move(px);
            }
        }
    }
    return out;
}

double feasible_tol(const Polynomial& q, double tol, long point_cap) {
    const int k = q.nvars();
    if (k == 0) return tol;
    const double l = lipschitz_bound(q);
    if (l == 0.0) return tol;
    long segments = 8;
    while (true) {
        double pts = 1.0;
        for (int i = 0; i < k; ++i) pts *= static_cast<double>(2 * segments + 1);
        if (pts > static_cast<double>(point_cap)) break;
        segments *= 2;
    }
    const double tol_min = l * (1.0 / segments) * std::sqrt(static_cast<double>(k)) / 2.0;
    return std::max(tol, tol_min * (1.0 + 1e-9));
}

NumericBoxMinimum solve_poly_box_numeric(const Polynomial& q, double tol) {
    if (tol <= 0) fail(Errc::invalid_argument, "tol must be positive");
    const int k = q.nvars();
    if (k > kNumericCapVars)
        fail(Errc::cap_exceeded, "numeric solver cap " + std::to_string(kNumericCapVars) +
                                     " exceeded (k=" + std::to_string(k) + ")");
    if (k == 0) return {rat_to_double(q.constant_term()), {}, 0.0};
    const double l = lipschitz_bound(q);
    if (l == 0.0) {
        std::vector<double> zero(k, 0.0);
        return {evaluate(q, zero), zero, 0.0};
    }
    const double h_req = 2.0 * tol / (l * std::sqrt(static_cast<double>(k)));
    long segments = 8;
    while (1.0 / segments > h_req) {
        segments *= 2;
        double pts = 1.0;
        for (int i = 0; i < k; ++i) pts *= static_cast<double>(segments + 1);
        if (pts > static_cast<double>(kGridPointCap))
            fail(Errc::cap_exceeded,
                 "tolerance needs a grid beyond the point cap; use feasible_tol to adapt");
    }
    // Dyadic refinement ladder: candidates accumulate, so halving the target
    // spacing can only improve the returned value.
    NumericBoxMinimum out;
    bool first = true;
    for (long s = 8; s <= segments; s *= 2) {
        NumericBoxMinimum level = grid_polish_min(q, static_cast<int>(s) + 1, true);
        if (first || level.value < out.value) {
            out.value = level.value;
            out.point = level.point;
            first = false;
        }
    }
    out.gap_bound = l * (1.0 / segments) * std::sqrt(static_cast<double>(k)) / 2.0;
    return out;
}

// --- psi tabulation ---------------------------------------------------------------

PsiTable build_psi_table(const BlockProblem& bp, SolveMode mode, double tol) {
    const int arity = static_cast<int>(bp.bin_vars.size());
    if ((std::size_t{1} << arity) > static_cast<std::size_t>(kPsiEntriesCap))
        fail(Errc::cap_exceeded, "psi table with 2^" + std::to_string(arity) + " entries exceeds cap");
    std::set<int> allowed(bp.cont_vars.begin(), bp.cont_vars.end());
    allowed.insert(bp.bin_vars.begin(), bp.bin_vars.end());
    for (const auto& [m, c] : bp.objective.terms())
        for (const auto& [v, e] : m.exps())
            if (!allowed.count(v))
                fail(Errc::invalid_argument,
                     "block objective mentions variable " + std::to_string(v) + " outside C u N(C)");
    if (mode == SolveMode::exact && bp.objective.degree() > 2)
        fail(Errc::degree, "exact psi tabulation requires a quadratic block");

    PsiTable t;
    t.arity = arity;
    t.mode = mode;
    const std::size_t entries = t.size();
    std::vector<double> gaps(entries, 0.0);
    if (mode == SolveMode::exact) {
        t.rvalues.assign(entries, Rat(0));
        t.rwitnesses.assign(entries, {});
    } else {
        t.fvalues.assign(entries, 0.0);
        t.fwitnesses.assign(entries, {});
    }

    parallel_for(entries, [&](std::size_t z) {
        std::map<int, Rat> fix;
        for (int j = 0; j < arity; ++j) fix[bp.bin_vars[j]] = Rat((z >> j) & 1);
        const Polynomial block = relabel_to_compact(substitute(bp.objective, fix), bp.cont_vars);
        if (mode == SolveMode::exact) {
            BoxMinimum r = solve_quadratic_box(block);
            t.rvalues[z] = std::move(r.value);
            t.rwitnesses[z] = std::move(r.point);
        } else if (block.degree() <= 2) {
            BoxMinimum r = solve_quadratic_box(block);
            t.fvalues[z] = rat_to_double(r.value);
            std::vector<double> w(r.point.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = rat_to_double(r.point[i]);
            t.fwitnesses[z] = std::move(w);
        } else {
            NumericBoxMinimum r =
                solve_poly_box_numeric(block, feasible_tol(block, tol, kPsiGridPointCap));
            t.fvalues[z] = r.value;
            t.fwitnesses[z] = std::move(r.point);
            gaps[z] = r.gap_bound;
        }
    });
    t.gap_bound = *std::max_element(gaps.begin(), gaps.end());
    return t;
}

std::string psi_to_json(const PsiTable& t) {
    ordered_json doc;
    doc["arity"] = t.arity;
    doc["mode"] = (t.mode == SolveMode::exact) ? "exact" : "numeric";
    ordered_json entries = ordered_json::array();
    for (std::size_t z = 0; z < t.size(); ++z) {
        ordered_json e;
        ordered_json bits = ordered_json::array();
        for (int j = 0; j < t.arity; ++j) bits.push_back(static_cast<int>((z >> j) & 1));
        e["z"] = std::move(bits);
        if (t.mode == SolveMode::exact) {
            e["value"] = rat_to_string(t.rvalues[z]);
            ordered_json w = ordered_json::array();
            for (const Rat& r : t.rwitnesses[z]) w.push_back(rat_to_string(r));
            e["witness"] = std::move(w);
        } else {
            e["value"] = format_double17(t.fvalues[z]);
            ordered_json w = ordered_json::array();
            for (double d : t.fwitnesses[z]) w.push_back(format_double17(d));
            e["witness"] = std::move(w);
        }
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    if (t.mode == SolveMode::numeric) doc["gap_bound"] = t.gap_bound;
    return doc.dump();
}

}  // namespace boxpoly
