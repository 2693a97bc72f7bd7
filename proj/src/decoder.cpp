#include "srst/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace srst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDiagTiny = 1e-12;

double column_norm(const CMatrix& M, Eigen::Index c) { return M.col(c).norm(); }

}  // namespace

void ql_decompose(const CMatrix& M, CMatrix& Q, CMatrix& L) {
    const Eigen::Index n_r = M.rows(), n_t = M.cols();
    if (n_r < n_t) throw Error(Errc::BadParams, "QL factorization expects n_r >= n_t");
    const CMatrix A = M.reverse();
    Eigen::HouseholderQR<CMatrix> qr(A);
    const CMatrix QA = qr.householderQ();
    const CMatrix RA = qr.matrixQR().triangularView<Eigen::Upper>();
    Q = QA.reverse();
    L = RA.reverse();
    // Make the square bottom diagonal real non-negative so the causal cost
    // coefficients are reproducible.
    for (Eigen::Index c = 0; c < n_t; ++c) {
        const Eigen::Index rr = n_r - n_t + c;
        const std::complex<double> d = L(rr, c);
        const double ad = std::abs(d);
        if (ad > 0) {
            const std::complex<double> ph = d / ad;
            L.row(rr) *= std::conj(ph);
            Q.col(rr) *= ph;
        }
    }
}

CMatrix ld_effective_channel(const std::vector<CMatrix>& H, const std::vector<CMatrix>& dispersion,
                             double rho, std::uint32_t T) {
    if (H.empty() || dispersion.empty()) throw Error(Errc::DimensionMismatch, "empty inputs");
    const std::uint32_t L = std::uint32_t(H.size());
    const Eigen::Index n_r = H[0].rows(), n_t = H[0].cols();
    const Eigen::Index lt = std::int64_t(L) * T;
    const std::size_t K = dispersion.size();
    for (const auto& A : dispersion)
        if (A.rows() != n_t || A.cols() != lt)
            throw Error(Errc::DimensionMismatch, "dispersion matrix has wrong shape");
    CMatrix eff(n_r * lt, Eigen::Index(K));
    for (Eigen::Index j = 0; j < lt; ++j) {
        const auto& Hb = H[std::size_t(j / T)];
        for (std::size_t i = 0; i < K; ++i)
            eff.block(j * n_r, Eigen::Index(i), n_r, 1) = rho * Hb * dispersion[i].col(j);
    }
    return eff;
}

Eigen::VectorXcd ld_receive_vector(const std::vector<CMatrix>& Y) {
    if (Y.empty()) throw Error(Errc::DimensionMismatch, "no received blocks");
    const Eigen::Index n_r = Y[0].rows(), T = Y[0].cols();
    Eigen::VectorXcd y(n_r * T * Eigen::Index(Y.size()));
    Eigen::Index off = 0;
    for (const auto& blk : Y)
        for (Eigen::Index t = 0; t < T; ++t) {
            y.segment(off, n_r) = blk.col(t);
            off += n_r;
        }
    return y;
}

std::vector<std::vector<std::uint32_t>> spatial_permutation(const std::vector<CMatrix>& H) {
    std::vector<std::vector<std::uint32_t>> perms;
    perms.reserve(H.size());
    for (const auto& Hb : H) {
        std::vector<std::uint32_t> p(Hb.cols());
        std::iota(p.begin(), p.end(), 0);
        std::stable_sort(p.begin(), p.end(), [&](std::uint32_t a, std::uint32_t b) {
            return column_norm(Hb, a) > column_norm(Hb, b);
        });
        perms.push_back(std::move(p));
    }
    return perms;
}

std::vector<std::uint32_t> temporal_permutation_for(const std::vector<CMatrix>& Y, std::uint32_t T) {
    const std::uint32_t L = std::uint32_t(Y.size());
    std::vector<std::uint32_t> p(std::size_t(L) * T);
    std::iota(p.begin(), p.end(), 0);
    auto norm_of = [&](std::uint32_t j) { return column_norm(Y[j / T], j % T); };
    std::stable_sort(p.begin(), p.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return norm_of(a) > norm_of(b); });
    return p;
}

DecoderRun::DecoderRun(const SpaceTimeEncoder& enc, const ChannelRealization& real,
                       const std::vector<CMatrix>& Y, DecoderConfig cfg)
    : con_(&enc.params.constellation), cfg_(cfg), enc_(&enc) {
    if (cfg_.alpha <= 0 || cfg_.delta <= 0)
        throw Error(Errc::BadParams, "threshold parameters must be positive");
    if (enc.transposed)
        throw Error(Errc::BadParams, "tree decoding expects the SRB layout (T <= n_t)");
    const std::uint32_t n_t = enc.params.n_t, T = enc.params.T, L = enc.params.L;
    const Eigen::Index n_r = real.H.at(0).rows();
    if (n_r < n_t) throw Error(Errc::BadParams, "n_r >= n_t is required");
    if (Y.size() != L) throw Error(Errc::DimensionMismatch, "received block count != L");

    col_size_ = n_t;
    n_cols_ = L * T;
    info_cols_ = enc.k;
    n_ = col_size_ * n_cols_;
    noise_energy_ = double(L) * double(n_r) * T;

    spatial_.assign(L, {});
    if (cfg_.spatial_perm) {
        spatial_ = spatial_permutation(real.H);
    } else {
        for (auto& p : spatial_) {
            p.resize(n_t);
            std::iota(p.begin(), p.end(), 0);
        }
    }

    lfac_.resize(L);
    std::vector<CMatrix> rotated(L);
    for (std::uint32_t ell = 0; ell < L; ++ell) {
        CMatrix Hp(n_r, n_t);
        for (std::uint32_t c = 0; c < n_t; ++c) Hp.col(c) = real.rho * real.H[ell].col(spatial_[ell][c]);
        CMatrix Q, Lfull;
        ql_decompose(Hp, Q, Lfull);
        lfac_[ell] = Lfull.bottomRows(n_t);
        const CMatrix Yt = Q.adjoint() * Y[ell];
        offset_ += Yt.topRows(n_r - n_t).squaredNorm();
        rotated[ell] = Yt.bottomRows(n_t);
    }

    if (cfg_.temporal_perm) {
        temporal_ = temporal_permutation_for(Y, T);
    } else {
        temporal_.resize(n_cols_);
        std::iota(temporal_.begin(), temporal_.end(), 0);
    }

    col_block_.resize(n_cols_);
    col_y_.resize(n_cols_);
    for (std::uint32_t jj = 0; jj < n_cols_; ++jj) {
        const std::uint32_t orig = temporal_[jj];
        col_block_[jj] = orig / T;
        col_y_[jj] = rotated[orig / T].col(orig % T);
    }

    // Column-permuted generator, re-systematized on the first k detection
    // coordinates (always possible: the code is MDS).
    SumRankCode perm = enc.code;
    for (std::uint32_t jj = 0; jj < n_cols_; ++jj)
        for (std::uint32_t i = 0; i < enc.k; ++i) perm.G[i * enc.N + jj] = enc.code.g(i, temporal_[jj]);
    std::vector<std::uint32_t> first_k(enc.k);
    std::iota(first_k.begin(), first_k.end(), 0);
    perm = systematize(std::move(perm), first_k);
    gperm_ = std::move(perm.G);

    setup_heuristics();
}

DecoderRun::DecoderRun(const CMatrix& M, const Eigen::VectorXcd& y, const Constellation& A,
                       DecoderConfig cfg)
    : con_(&A), cfg_(cfg) {
    if (M.rows() != y.size()) throw Error(Errc::DimensionMismatch, "channel/receive size mismatch");
    col_size_ = std::uint32_t(M.cols());
    n_cols_ = 1;
    info_cols_ = 1;
    n_ = col_size_;
    noise_energy_ = double(M.rows());
    cfg_.spatial_perm = cfg_.temporal_perm = false;

    CMatrix Q, Lfull;
    ql_decompose(M, Q, Lfull);
    lfac_.push_back(Lfull.bottomRows(col_size_));
    const Eigen::VectorXcd yt = Q.adjoint() * y;
    offset_ = yt.head(M.rows() - col_size_).squaredNorm();
    col_y_.push_back(yt.tail(col_size_));
    col_block_.assign(1, 0);
    temporal_.assign(1, 0);
    spatial_.resize(1);
    spatial_[0].resize(col_size_);
    std::iota(spatial_[0].begin(), spatial_[0].end(), 0);

    setup_heuristics();
}

std::complex<double> DecoderRun::residual(std::uint32_t col, std::uint32_t row,
                                          const std::uint16_t* colsyms) const {
    const CMatrix& Lb = lfac_[col_block_[col]];
    std::complex<double> u = col_y_[col](row);
    for (std::uint32_t t = 0; t < row; ++t) u -= Lb(row, t) * con_->point(colsyms[t]);
    return u;
}

double DecoderRun::solve_column_min(std::uint32_t col) const {
    // Exact minimum of the n_t x n_t column subproblem via a nested vanilla
    // search on the already-triangular factor.
    DecoderConfig nested;
    nested.stack_capacity = cfg_.stack_capacity;
    DecoderRun sub(lfac_[col_block_[col]], col_y_[col], *con_, nested);
    return sub.run().cost;
}

void DecoderRun::setup_heuristics() {
    col_min_.clear();
    h_.clear();
    if (cfg_.future_costing == DecoderConfig::FutureCost::Off) return;

    for (const auto& Lb : lfac_) {
        for (Eigen::Index r = 0; r < Lb.rows(); ++r) {
            if (std::abs(Lb(r, r)) < kDiagTiny) return;  // SingularBlock: fall back to h == 0
        }
    }

    col_min_.resize(n_cols_);
    if (cfg_.future_costing == DecoderConfig::FutureCost::ColumnMin) {
        for (std::uint32_t jj = 0; jj < n_cols_; ++jj) col_min_[jj] = solve_column_min(jj);
    } else {
        // lambda_min ||x - L^{-1} y||^2 lower-bounds the column cost; the
        // component-wise minimization runs over the constellation points.
        std::vector<double> lmin(lfac_.size());
        for (std::size_t b = 0; b < lfac_.size(); ++b) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(lfac_[b].adjoint() * lfac_[b]);
            lmin[b] = es.eigenvalues().minCoeff();
        }
        for (std::uint32_t jj = 0; jj < n_cols_; ++jj) {
            const auto& Lb = lfac_[col_block_[jj]];
            const Eigen::VectorXcd v = Lb.triangularView<Eigen::Lower>().solve(col_y_[jj]);
            double s = 0;
            for (Eigen::Index r = 0; r < v.size(); ++r) {
                double best = kInf;
                for (std::uint32_t a = 0; a < con_->size(); ++a)
                    best = std::min(best, std::norm(con_->point(a) - v(r)));
                s += best;
            }
            col_min_[jj] = lmin[col_block_[jj]] * s;
        }
    }

    // h for a prefix of length i covers the columns strictly after the last
    // column the prefix touches; a fully untouched next column keeps its own
    // bound. Suffix sums make the table O(LT).
    std::vector<double> suffix(n_cols_ + 1, 0.0);
    for (std::uint32_t jj = n_cols_; jj-- > 0;) suffix[jj] = suffix[jj + 1] + col_min_[jj];
    h_.resize(n_ + 1);
    h_[0] = suffix[0];
    for (std::uint32_t i = 1; i <= n_; ++i) h_[i] = suffix[(i - 1) / col_size_ + 1];
}

void DecoderRun::column_prefix(std::span<const std::uint16_t> prefix, std::uint32_t col,
                               std::uint16_t* out, std::uint32_t count) const {
    for (std::uint32_t t = 0; t < count; ++t) out[t] = prefix[col * col_size_ + t];
}

double DecoderRun::cost_step(std::span<const std::uint16_t> prefix, std::uint16_t next) const {
    const std::uint32_t D = std::uint32_t(prefix.size());
    if (D >= n_) throw Error(Errc::InvalidPrefix, "prefix is already a full codeword");
    const std::uint32_t col = D / col_size_, row = D % col_size_;
    std::vector<std::uint16_t> cur(row);
    column_prefix(prefix, col, cur.data(), row);
    const std::complex<double> u = residual(col, row, cur.data());
    const std::complex<double> hc = lfac_[col_block_[col]](row, row);
    return std::norm(u - hc * con_->point(next));
}

double DecoderRun::prefix_cost(std::span<const std::uint16_t> prefix) const {
    double c = offset_;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        c += cost_step(prefix.first(i), prefix[i]);
    return c;
}

void DecoderRun::parity_tail(const std::uint16_t* info, std::uint16_t* tail) const {
    const auto& ctx = *enc_->ctx;
    const std::uint32_t k = info_cols_, n_t = col_size_;
    std::vector<std::uint32_t> dig(n_t);
    std::vector<Fe> u(k);
    for (std::uint32_t jj = 0; jj < k; ++jj) {
        const auto& sp = spatial_[col_block_[jj]];
        for (std::uint32_t r = 0; r < n_t; ++r) dig[sp[r]] = info[jj * n_t + r];
        u[jj] = ctx.from_coords(dig);
    }
    for (std::uint32_t jj = k; jj < n_cols_; ++jj) {
        Fe c = 0;
        for (std::uint32_t i = 0; i < k; ++i) c = ctx.add(c, ctx.mul(u[i], gperm_[i * n_cols_ + jj]));
        ctx.coords(c, dig);
        const auto& sp = spatial_[col_block_[jj]];
        for (std::uint32_t r = 0; r < n_t; ++r) tail[(jj - k) * n_t + r] = std::uint16_t(dig[sp[r]]);
    }
}

std::vector<std::uint16_t> DecoderRun::children(std::span<const std::uint16_t> prefix) const {
    const std::uint32_t D = std::uint32_t(prefix.size());
    if (D > n_) throw Error(Errc::InvalidPrefix, "prefix longer than a codeword");
    for (auto s : prefix)
        if (s >= con_->size()) throw Error(Errc::InvalidPrefix, "prefix symbol outside the alphabet");
    if (D == n_) return {};
    const std::uint32_t info_depth = info_cols_ * col_size_;
    if (D < info_depth) {
        std::vector<std::uint16_t> all(con_->size());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    std::vector<std::uint16_t> tail((n_cols_ - info_cols_) * col_size_);
    parity_tail(prefix.data(), tail.data());
    return {tail[D - info_depth]};
}

std::vector<std::uint16_t> DecoderRun::sphere_children(std::span<const std::uint16_t> prefix,
                                                       double threshold,
                                                       std::uint64_t* visited) const {
    const double budget = threshold - prefix_cost(prefix);
    if (!std::isfinite(budget)) return children(prefix);

    const std::uint32_t D = std::uint32_t(prefix.size());
    const std::uint32_t col = D / col_size_, row = D % col_size_;
    const std::uint32_t info_depth = info_cols_ * col_size_;
    if (D >= info_depth || !con_->is_lattice()) {
        std::vector<std::uint16_t> keep;
        for (auto t : children(prefix)) {
            if (visited) ++*visited;
            if (cost_step(prefix, t) <= budget) keep.push_back(t);
        }
        return keep;
    }
    if (budget < 0) return {};
    std::vector<std::uint16_t> cur(row);
    column_prefix(prefix, col, cur.data(), row);
    const std::complex<double> u = residual(col, row, cur.data());
    const std::complex<double> hc = lfac_[col_block_[col]](row, row);
    const double ah = std::abs(hc);
    if (ah < kDiagTiny) {
        std::vector<std::uint16_t> keep;
        for (std::uint16_t t = 0; t < con_->size(); ++t) {
            if (visited) ++*visited;
            if (std::norm(u - hc * con_->point(t)) <= budget) keep.push_back(t);
        }
        return keep;
    }
    const auto res = enumerate_circle(*con_, u / hc, std::sqrt(budget) / ah);
    if (visited) *visited += res.visited;
    std::vector<std::uint16_t> keep(res.symbols.begin(), res.symbols.end());
    return keep;
}

void DecoderRun::gather_column(std::int32_t id, std::uint32_t row, std::uint16_t* out) const {
    std::int32_t cur = id;
    for (std::uint32_t t = row; t-- > 0;) {
        out[t] = arena_[cur].sym;
        cur = arena_[cur].parent;
    }
}

bool DecoderRun::heap_less(std::int32_t a, std::int32_t b) const {
    // "less" means popped later: higher priority value, then shallower,
    // then lexicographically larger prefix.
    const Node& na = arena_[a];
    const Node& nb = arena_[b];
    if (na.priority != nb.priority) return na.priority > nb.priority;
    if (na.depth != nb.depth) return na.depth < nb.depth;
    std::vector<std::uint16_t> pa(na.depth), pb(nb.depth);
    std::int32_t ca = a, cb = b;
    for (std::uint32_t t = na.depth; t-- > 0;) {
        pa[t] = arena_[ca].sym;
        ca = arena_[ca].parent;
        pb[t] = arena_[cb].sym;
        cb = arena_[cb].parent;
    }
    return pa > pb;
}

void DecoderRun::heap_push(std::int32_t id) {
    heap_.push_back(id);
    std::push_heap(heap_.begin(), heap_.end(),
                   [this](std::int32_t a, std::int32_t b) { return heap_less(a, b); });
}

std::int32_t DecoderRun::heap_pop() {
    std::pop_heap(heap_.begin(), heap_.end(),
                  [this](std::int32_t a, std::int32_t b) { return heap_less(a, b); });
    const std::int32_t id = heap_.back();
    heap_.pop_back();
    return id;
}

DecodeResult DecoderRun::run() {
    DecodeResult result;
    DecodeStats& stats = result.stats;
    const bool sphere = cfg_.spherical;
    const std::uint32_t info_depth = info_cols_ * col_size_;
    const std::uint32_t q = con_->size();

    double alpha = cfg_.alpha;
    std::vector<std::uint16_t> cur(col_size_);
    std::vector<std::uint16_t> info(info_depth);
    std::unordered_map<std::int32_t, std::vector<std::uint16_t>> tails;

    for (;;) {  // restart loop; the threshold only ever grows
        arena_.clear();
        heap_.clear();
        tails.clear();
        const double threshold = sphere ? alpha * noise_energy_ : kInf;
        arena_.push_back(Node{0.0, offset_, -1, 0, 0});
        heap_push(0);
        std::int32_t leaf = -1;

        while (!heap_.empty()) {
            const std::int32_t id = heap_pop();
            const Node v = arena_[id];
            if (v.depth == n_) {
                leaf = id;
                break;
            }
            const std::uint32_t D = v.depth;
            const std::uint32_t col = D / col_size_, row = D % col_size_;
            gather_column(id, row, cur.data());
            const CMatrix& Lb = lfac_[col_block_[col]];
            std::complex<double> u = col_y_[col](row);
            for (std::uint32_t t = 0; t < row; ++t) u -= Lb(row, t) * con_->point(cur[t]);
            const std::complex<double> hc = Lb(row, row);
            const double budget = threshold - v.cost;

            auto push_child = [&](std::uint16_t sym, double f) {
                if (heap_.size() >= cfg_.stack_capacity)
                    throw Error(Errc::StackOverflow, "priority queue exceeded stack_capacity");
                const double cost = v.cost + f;
                const double prio = cost + (h_.empty() ? 0.0 : h_[D + 1]);
                arena_.push_back(Node{prio, cost, id, sym, std::uint16_t(D + 1)});
                heap_push(std::int32_t(arena_.size() - 1));
            };

            if (D < info_depth) {
                const double ah = std::abs(hc);
                if (sphere && con_->is_lattice() && ah >= kDiagTiny) {
                    if (budget >= 0) {
                        const auto res = enumerate_circle(*con_, u / hc, std::sqrt(budget) / ah);
                        stats.nodes_visited += res.visited;
                        for (auto sym : res.symbols)
                            push_child(std::uint16_t(sym), std::norm(u - hc * con_->point(sym)));
                    }
                } else {
                    for (std::uint16_t sym = 0; sym < q; ++sym) {
                        ++stats.nodes_visited;
                        const double f = std::norm(u - hc * con_->point(sym));
                        if (sphere && f > budget) continue;
                        push_child(sym, f);
                    }
                }
            } else {
                // Parity leg: single continuation, cost-checked directly.
                std::int32_t anc = id;
                for (std::uint32_t t = D; t > info_depth; --t) anc = arena_[anc].parent;
                auto it = tails.find(anc);
                if (it == tails.end()) {
                    std::int32_t walk = anc;
                    for (std::uint32_t t = info_depth; t-- > 0;) {
                        info[t] = arena_[walk].sym;
                        walk = arena_[walk].parent;
                    }
                    std::vector<std::uint16_t> tail((n_cols_ - info_cols_) * col_size_);
                    parity_tail(info.data(), tail.data());
                    it = tails.emplace(anc, std::move(tail)).first;
                }
                const std::uint16_t sym = it->second[D - info_depth];
                ++stats.nodes_visited;
                const double f = std::norm(u - hc * con_->point(sym));
                if (!(sphere && f > budget)) push_child(sym, f);
            }
            stats.peak_stack = std::max<std::uint64_t>(stats.peak_stack, heap_.size());
        }

        if (leaf >= 0) {
            result.cost = arena_[leaf].cost;
            // Undo both permutations while reading the path back.
            result.symbols.assign(n_, 0);
            std::int32_t walk = leaf;
            for (std::uint32_t D = n_; D-- > 0;) {
                const std::uint32_t jj = D / col_size_, r = D % col_size_;
                const std::uint32_t orig_col = temporal_[jj];
                const std::uint32_t block = enc_ ? orig_col / enc_->params.T : 0;
                result.symbols[orig_col * col_size_ + spatial_[block][r]] = arena_[walk].sym;
                walk = arena_[walk].parent;
            }
            return result;
        }
        if (!sphere)
            throw Error(Errc::BadParams, "search exhausted without spherical bounding");
        alpha += cfg_.delta;
        ++stats.restarts;
    }
}

double ml_cost(const ChannelRealization& real, const std::vector<CMatrix>& Y, const CMatrix& X,
               std::uint32_t T) {
    double c = 0;
    for (std::size_t ell = 0; ell < Y.size(); ++ell)
        c += (Y[ell] - real.rho * real.H[ell] * X.middleCols(Eigen::Index(ell) * T, T)).squaredNorm();
    return c;
}

DecodeResult exhaustive_ml(const SpaceTimeEncoder& enc, const ChannelRealization& real,
                           const std::vector<CMatrix>& Y, const std::vector<StCodeword>* book) {
    std::vector<StCodeword> local;
    if (!book) {
        local = enumerate_codebook(enc);
        book = &local;
    }
    const std::uint32_t T = enc.params.T;
    double best = kInf;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < book->size(); ++i) {
        const double c = ml_cost(real, Y, (*book)[i].X, T);
        if (c < best) {
            best = c;
            best_idx = i;
        }
    }
    DecodeResult res;
    res.symbols = (*book)[best_idx].symbols;
    res.cost = best;
    res.stats.nodes_visited = book->size();
    return res;
}

DecodeResult stack_decode(const SpaceTimeEncoder& enc, const ChannelRealization& real,
                          const std::vector<CMatrix>& Y, const DecoderConfig& cfg) {
    DecoderRun run(enc, real, Y, cfg);
    return run.run();
}

}  // namespace srst
