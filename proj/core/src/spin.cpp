#include "qel/spin.hpp"

#include <bit>
#include <cmath>

namespace qel {

namespace {

constexpr int kMaxCopies = 8;
constexpr int kMaxBlockCopies = 6;

CMatrix pauli(int which) // 1 = x, 2 = y, 3 = z
{
    CMatrix s(2, 2);
    switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
    }
    return s;
}

CMatrix embed(int n, int site, const CMatrix& op2)
{
    CMatrix out = CMatrix::Identity(1, 1);
    for (int j = 1; j <= n; ++j)
        out = kron(out, j == site ? op2 : CMatrix::Identity(2, 2));
    return out;
}

long binom(int n, int k)
{
    long out = 1;
    for (int i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

} // namespace

LocalSpin local_spin(int n, int site)
{
    if (n < 1 || n > kMaxCopies)
        throw CopyCountOutOfRange("local_spin: n must be in 1..8");
    if (site < 1 || site > n)
        throw SiteOutOfRange("local_spin: site must be in 1..n");
    return {embed(n, site, 0.5 * pauli(1)), embed(n, site, 0.5 * pauli(2)),
            embed(n, site, 0.5 * pauli(3))};
}

CMatrix partial_spin_sq(int n, int upto)
{
    if (n < 1 || n > kMaxCopies)
        throw CopyCountOutOfRange("partial_spin_sq: n must be in 1..8");
    if (upto < 1 || upto > n)
        throw SiteOutOfRange("partial_spin_sq: upto must be in 1..n");
    const int dim = 1 << n;
    CMatrix total = CMatrix::Zero(dim, dim);
    for (int c = 1; c <= 3; ++c) {
        CMatrix s = CMatrix::Zero(dim, dim);
        for (int site = 1; site <= upto; ++site)
            s += embed(n, site, 0.5 * pauli(c));
        total += s * s;
    }
    return total;
}

std::vector<SpinBlock> spin_blocks(int n)
{
    if (n < 1 || n > kMaxBlockCopies)
        throw CopyCountOutOfRange("spin_blocks: n must be in 1..6");

    const int dim = 1 << n;

    // Start from the full space and refine by each partial Casimir in turn.
    // A block is carried as an orthonormal basis (columns) plus its label
    // chain; eigenvalue clusters within 1e-8 are treated as one eigenspace
    // and emitted in descending eigenvalue order.
    struct Working {
        CMatrix basis;
        std::vector<double> labels;
    };
    std::vector<Working> blocks{{CMatrix::Identity(dim, dim), {}}};

    for (int alpha = 2; alpha <= n; ++alpha) {
        const CMatrix s2 = partial_spin_sq(n, alpha);
        std::vector<Working> refined;
        for (const Working& blk : blocks) {
            const CMatrix restricted =
                blk.basis.adjoint() * s2 * blk.basis;
            const HermEig e = herm_eig(restricted, 1e-9);

            // cluster ascending eigenvalues
            std::vector<std::pair<double, std::vector<int>>> clusters;
            for (int i = 0; i < e.eigenvalues.size(); ++i) {
                const double lam = e.eigenvalues[i];
                if (!clusters.empty() &&
                    std::abs(lam - clusters.back().first) <= 1e-8) {
                    clusters.back().second.push_back(i);
                } else {
                    clusters.push_back({lam, {i}});
                }
            }
            for (auto it = clusters.rbegin(); it != clusters.rend(); ++it) {
                const double lam = it->first;
                // s(s+1) = lam  =>  s = (-1 + sqrt(1+4 lam))/2, a half-integer
                const double s_raw =
                    (-1.0 + std::sqrt(1.0 + 4.0 * std::max(lam, 0.0))) / 2.0;
                const double s = std::round(2.0 * s_raw) / 2.0;

                CMatrix sub(dim, static_cast<Eigen::Index>(it->second.size()));
                for (std::size_t c = 0; c < it->second.size(); ++c)
                    sub.col(c) = blk.basis * e.eigenvectors.col(it->second[c]);

                Working w{std::move(sub), blk.labels};
                w.labels.push_back(s);
                refined.push_back(std::move(w));
            }
        }
        blocks = std::move(refined);
    }

    std::vector<SpinBlock> out;
    out.reserve(blocks.size());
    for (Working& blk : blocks) {
        SpinBlock sb;
        sb.labels = std::move(blk.labels);
        sb.dimension = static_cast<int>(blk.basis.cols());
        sb.projector = blk.basis * blk.basis.adjoint();
        out.push_back(std::move(sb));
    }
    return out;
}

CMatrix symmetric_projector(int n)
{
    if (n < 1 || n > kMaxCopies)
        throw CopyCountOutOfRange("symmetric_projector: n must be in 1..8");
    const int dim = 1 << n;
    // Dicke-state form: basis states with the same excitation count k are
    // symmetrized together, P[x,y] = 1/C(n,k) when popcount(x)=popcount(y)=k.
    CMatrix p = CMatrix::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        const int kx = std::popcount(static_cast<unsigned>(x));
        for (int y = 0; y < dim; ++y) {
            if (std::popcount(static_cast<unsigned>(y)) == kx)
                p(x, y) = 1.0 / static_cast<double>(binom(n, kx));
        }
    }
    return p;
}

} // namespace qel
