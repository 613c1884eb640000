#include "subspace_round/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace subspace_round::verify {

EigenSystem jacobi_eigen(const DenseMatrix& sym) {
    const std::size_t n = sym.rows();
    if (sym.cols() != n) throw std::invalid_argument("jacobi_eigen: matrix is not square");
    DenseMatrix a = sym;
    DenseMatrix v = DenseMatrix::identity(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (off <= 1e-30 * total || off == 0.0) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    EigenSystem out{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    // One-sided Jacobi on the columns of the wider-than-tall orientation.
    DenseMatrix a = m.rows() >= m.cols() ? m : naive_transpose(m);
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    gamma += a(i, p) * a(i, q);
                }
                if (std::abs(gamma) <= 1e-16 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double x = a(i, p);
                    const double y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> out(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
        out[j] = std::sqrt(s);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double oracle_spectral_norm(const DenseMatrix& m) { return singular_values(m).front(); }

std::pair<double, double> eigen_2x2(double a, double b, double c) {
    const double mean = 0.5 * (a + c);
    const double radius = std::hypot(0.5 * (a - c), b);
    return {mean + radius, mean - radius};
}

DenseMatrix naive_multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("naive_multiply: shape mismatch");
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * b(t, j);
            out(i, j) = s;
        }
    return out;
}

DenseMatrix naive_transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

DenseMatrix column_projector(const DenseMatrix& m, double rel_tol) {
    const EigenSystem e = jacobi_eigen(naive_multiply(m, naive_transpose(m)));
    const std::size_t n = m.rows();
    DenseMatrix p(n, n);
    const double top = e.values.front();
    if (top <= 0.0) return p;
    for (std::size_t j = 0; j < n; ++j) {
        if (e.values[j] <= rel_tol * top) continue;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) p(a, b) += e.vectors(a, j) * e.vectors(b, j);
    }
    return p;
}

DenseMatrix indicator_basis(const std::vector<NodeSet>& sets, std::size_t n) {
    DenseMatrix out(n, std::max<std::size_t>(sets.size(), 1));
    for (std::size_t c = 0; c < sets.size(); ++c) {
        const double w = 1.0 / std::sqrt(static_cast<double>(sets[c].size()));
        for (Node u : sets[c]) out(u, c) = w;
    }
    return out;
}

double set_delta(const NodeSet& a, const NodeSet& b) {
    std::size_t common = 0;
    for (Node u : a)
        if (std::find(b.begin(), b.end(), u) != b.end()) ++common;
    const double c = static_cast<double>(common);
    return 1.0 - c * c / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double vector_delta(const std::vector<double>& p, const std::vector<double>& q) {
    double pq = 0.0, pp = 0.0, qq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        pq += p[i] * q[i];
        pp += p[i] * p[i];
        qq += q[i] * q[i];
    }
    return 1.0 - pq * pq / (pp * qq);
}

BruteMatch brute_delta_partitions(const std::vector<NodeSet>& a, const std::vector<NodeSet>& b) {
    const std::size_t k = a.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    BruteMatch best{std::numeric_limits<double>::infinity(), {}};
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, set_delta(a[i], b[perm[i]]));
        // next_permutation visits permutations in lexicographic order, so the
        // first strict improvement is the smallest optimal one.
        if (worst < best.value) best = {worst, perm};
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (k == 0) best.value = 0.0;
    return best;
}

std::vector<NodeSet> threshold_sets(const std::vector<double>& q) {
    std::vector<NodeSet> out;
    for (int s : {1, -1}) {
        for (std::size_t v = 0; v < q.size(); ++v) {
            std::vector<Node> members;
            for (std::size_t u = 0; u < q.size(); ++u)
                if (s * q[u] >= s * q[v]) members.push_back(u);
            out.emplace_back(std::move(members));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double threshold_score(const std::vector<double>& q, const NodeSet& s) {
    double sum = 0.0;
    for (Node u : s) sum += q[u];
    return std::abs(sum) / std::sqrt(static_cast<double>(s.size()));
}

namespace {

std::vector<std::size_t> ratio_order(const DenseMatrix& z, std::size_t c) {
    const std::size_t n = z.cols();
    std::vector<double> ratio(n);
    for (std::size_t u = 0; u < n; ++u) {
        double d = 0.0, nu = 0.0;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            d += (z(i, u) - z(i, c)) * (z(i, u) - z(i, c));
            nu += z(i, u) * z(i, u);
        }
        ratio[u] = nu > 0.0 ? std::sqrt(d / nu) : std::numeric_limits<double>::infinity();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ratio[x] < ratio[y]; });
    return order;
}

double column_sq(const DenseMatrix& z, std::size_t u, std::size_t c, bool relative) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const double x = relative ? z(i, u) - z(i, c) : z(i, u);
        s += x * x;
    }
    return s;
}

} // namespace

FindClusterOracle brute_find_cluster(const DenseMatrix& z) {
    const std::size_t n = z.cols();
    std::vector<std::vector<std::size_t>> orders(n);
    std::vector<double> candidates;
    for (std::size_t c = 0; c < n; ++c) {
        orders[c] = ratio_order(z, c);
        double mass = 0.0, dist = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            mass += column_sq(z, orders[c][j], c, false);
            dist += column_sq(z, orders[c][j], c, true);
            candidates.push_back(std::max(1.0 - mass, dist));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    // Literal algorithm: the smallest δ′ for which some center accepts.
    for (double d : candidates) {
        if (d > 1.0) break;
        for (std::size_t c = 0; c < n; ++c) {
            double mass = 0.0, dist = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                mass += column_sq(z, orders[c][j], c, false);
                dist += column_sq(z, orders[c][j], c, true);
                if (1.0 - mass <= d) {
                    if (dist <= d) return {d, c};
                    break;
                }
            }
        }
    }
    return {std::numeric_limits<double>::infinity(), n};
}

bool brute_unravel_feasible(const std::vector<NodeSet>& family, std::size_t n,
                            const std::vector<std::size_t>& block) {
    std::vector<std::vector<std::size_t>> owners(n);
    for (std::size_t s = 0; s < family.size(); ++s)
        for (Node u : family[s]) owners[u].push_back(s);
    std::vector<std::size_t> load(family.size(), 0);
    // Depth-first over nodes; each node picks one owner or stays out.
    auto rec = [&](auto&& self, std::size_t u) -> bool {
        if (u == n) {
            for (std::size_t s = 0; s < family.size(); ++s)
                if (load[s] < block[s]) return false;
            return true;
        }
        for (std::size_t s : owners[u]) {
            if (load[s] >= block[s]) continue;
            ++load[s];
            const bool ok = self(self, u + 1);
            --load[s];
            if (ok) return true;
        }
        return self(self, u + 1);
    };
    return rec(rec, 0);
}

double oracle_residual(const DenseMatrix& y, const std::vector<NodeSet>& sets) {
    const DenseMatrix basis = indicator_basis(sets, y.cols());
    DenseMatrix proj = naive_multiply(basis, naive_transpose(basis));
    if (sets.empty()) proj = DenseMatrix(y.cols(), y.cols());
    DenseMatrix diff = y;
    const DenseMatrix yp = naive_multiply(y, proj);
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) diff(i, j) -= yp(i, j);
    return jacobi_eigen(naive_multiply(diff, naive_transpose(diff))).values.front();
}

DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal;
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = normal(rng);
    return out;
}

DenseMatrix random_orthonormal_rows(std::size_t k, std::size_t n, Rng& rng) {
    if (k > n) throw std::invalid_argument("random_orthonormal_rows: k > n");
    DenseMatrix m = random_gaussian(k, n, rng);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double d = 0.0;
                for (std::size_t t = 0; t < n; ++t) d += m(i, t) * m(j, t);
                for (std::size_t t = 0; t < n; ++t) m(i, t) -= d * m(j, t);
            }
            double nn = 0.0;
            for (std::size_t t = 0; t < n; ++t) nn += m(i, t) * m(i, t);
            nn = std::sqrt(nn);
            for (std::size_t t = 0; t < n; ++t) m(i, t) /= nn;
        }
    }
    return m;
}

DenseMatrix random_symmetric(std::size_t n, Rng& rng) {
    DenseMatrix g = random_gaussian(n, n, rng);
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = 0.5 * (g(i, j) + g(j, i));
    return out;
}

DenseMatrix with_spectrum(const std::vector<double>& values, Rng& rng) {
    const std::size_t n = values.size();
    const DenseMatrix q = random_orthonormal_rows(n, n, rng);
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += q(t, i) * values[t] * q(t, j);
            out(i, j) = s;
        }
    return out;
}

std::size_t uniform_index(std::size_t bound, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

double uniform_real(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<NodeSet> random_partition(std::size_t n, std::size_t k, bool full, Rng& rng) {
    if (k == 0 || k > n) throw std::invalid_argument("random_partition: need 1 <= k <= n");
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const std::size_t used = full ? n : k + uniform_index(n - k + 1, rng);
    std::vector<std::vector<Node>> members(k);
    for (std::size_t i = 0; i < k; ++i) members[i].push_back(nodes[i]);
    for (std::size_t i = k; i < used; ++i) members[uniform_index(k, rng)].push_back(nodes[i]);
    std::vector<NodeSet> out;
    for (auto& m : members) out.emplace_back(std::move(m));
    return out;
}

} // namespace subspace_round::verify
