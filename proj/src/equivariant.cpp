#include "colocal/equivariant.hpp"

#include "colocal/errors.hpp"

#include <algorithm>
#include <climits>
#include <string>

namespace colocal {

namespace {

QMatrix zero_vec(std::size_t n) { return QMatrix(n, 1); }

QMatrix unit_vec(std::size_t n, std::size_t i) {
    QMatrix v(n, 1);
    v(i, 0) = 1;
    return v;
}

bool same_shape(const QMatrix& a, std::size_t r, std::size_t c) { return a.rows() == r && a.cols() == c; }

// Columns of `basis` followed by standard vectors, keeping those that raise the rank.
QMatrix complement(const QMatrix& span, std::size_t n) {
    QMatrix cur = column_basis(span.cols() ? span : QMatrix(n, 0));
    QMatrix extra(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        QMatrix trial = cur.hcat(unit_vec(n, i));
        if (rank(trial) > cur.cols()) {
            cur = trial;
            extra = extra.hcat(unit_vec(n, i));
        }
    }
    return extra.cols() ? extra : QMatrix(n, 0);
}

}  // namespace

std::size_t FiniteGroup::identity() const {
    for (std::size_t e = 0; e < order(); ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < order() && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
        if (ok) return e;
    }
    throw InvalidAction("group table has no identity");
}

std::size_t FiniteGroup::inverse(std::size_t g) const {
    const std::size_t e = identity();
    for (std::size_t h = 0; h < order(); ++h)
        if (table[g][h] == e) return h;
    throw InvalidAction("group element without inverse");
}

void FiniteGroup::validate() const {
    const std::size_t n = order();
    if (n == 0) throw InvalidAction("empty group");
    for (const auto& row : table) {
        if (row.size() != n) throw InvalidAction("group table is not square");
        for (auto v : row)
            if (v >= n) throw InvalidAction("group table entry out of range");
    }
    identity();
    for (std::size_t g = 0; g < n; ++g) {
        inverse(g);
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k)
                if (table[table[g][h]][k] != table[g][table[h][k]]) throw InvalidAction("group table is not associative");
    }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    FiniteGroup g;
    g.table.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
    return g;
}

TableAlgebra::TableAlgebra(int top, std::vector<std::size_t> dims) : top_(top), dims_(std::move(dims)) {
    if (static_cast<int>(dims_.size()) != top + 1) throw ValidationError("algebra needs one dimension per degree 0..top");
    unit_ = QMatrix(dim(0), 1);
}

void TableAlgebra::set_product(int a, int b, QMatrix table) {
    if (a < 0 || b < 0 || a + b > top_) throw ValidationError("product outside the algebra window");
    if (!same_shape(table, dim(a + b), dim(a) * dim(b))) throw ValidationError("product table has the wrong shape");
    products_[{a, b}] = std::move(table);
}

QMatrix TableAlgebra::basis_vector(int d, std::size_t i) const { return unit_vec(dim(d), i); }

QMatrix TableAlgebra::multiply(int a, const QMatrix& x, int b, const QMatrix& y) const {
    const int c = a + b;
    QMatrix out = zero_vec(dim(c));
    if (dim(c) == 0 || dim(a) == 0 || dim(b) == 0) return out;
    auto it = products_.find({a, b});
    if (it == products_.end()) return out;
    const QMatrix& T = it->second;
    const std::size_t db = dim(b);
    for (std::size_t i = 0; i < dim(a); ++i) {
        if (x(i, 0) == 0) continue;
        for (std::size_t j = 0; j < db; ++j) {
            if (y(j, 0) == 0) continue;
            const mpq_class s = x(i, 0) * y(j, 0);
            for (std::size_t k = 0; k < dim(c); ++k) out(k, 0) += s * T(k, i * db + j);
        }
    }
    return out;
}

QMatrix TableAlgebra::left_multiplication(int a, const QMatrix& x, int b) const {
    QMatrix m(dim(a + b), dim(b));
    for (std::size_t j = 0; j < dim(b); ++j) {
        QMatrix col = multiply(a, x, b, basis_vector(b, j));
        for (std::size_t k = 0; k < col.rows(); ++k) m(k, j) = col(k, 0);
    }
    return m;
}

QMatrix TableAlgebra::right_multiplication(int a, const QMatrix& x, int b) const {
    QMatrix m(dim(a + b), dim(b));
    for (std::size_t j = 0; j < dim(b); ++j) {
        QMatrix col = multiply(b, basis_vector(b, j), a, x);
        for (std::size_t k = 0; k < col.rows(); ++k) m(k, j) = col(k, 0);
    }
    return m;
}

void TableAlgebra::validate() const {
    if (!same_shape(unit_, dim(0), 1)) throw ValidationError("unit has the wrong shape");
    for (int d = 0; d <= top_; ++d)
        for (std::size_t i = 0; i < dim(d); ++i) {
            const QMatrix e = basis_vector(d, i);
            if (multiply(0, unit_, d, e) != e || multiply(d, e, 0, unit_) != e)
                throw ValidationError("unit law fails in degree " + std::to_string(d));
        }
    for (int a = 0; a <= top_; ++a)
        for (int b = 0; a + b <= top_; ++b)
            for (int c = 0; a + b + c <= top_; ++c)
                for (std::size_t i = 0; i < dim(a); ++i)
                    for (std::size_t j = 0; j < dim(b); ++j)
                        for (std::size_t k = 0; k < dim(c); ++k) {
                            const QMatrix x = basis_vector(a, i), y = basis_vector(b, j), z = basis_vector(c, k);
                            if (multiply(a + b, multiply(a, x, b, y), c, z) != multiply(a, x, b + c, multiply(b, y, c, z)))
                                throw ValidationError("product is not associative in degrees " + std::to_string(a) +
                                                      ", " + std::to_string(b) + ", " + std::to_string(c));
                        }
}

TableAlgebra TableAlgebra::opposite() const {
    TableAlgebra op(top_, dims_);
    op.unit_ = unit_;
    for (const auto& [key, T] : products_) {
        const auto [a, b] = key;
        QMatrix S(dim(a + b), dim(b) * dim(a));
        for (std::size_t j = 0; j < dim(b); ++j)
            for (std::size_t i = 0; i < dim(a); ++i)
                for (std::size_t k = 0; k < dim(a + b); ++k) S(k, j * dim(a) + i) = T(k, i * dim(b) + j);
        op.products_[{b, a}] = std::move(S);
    }
    return op;
}

TableAlgebra TableAlgebra::polynomial(int degree, int top) {
    if (degree <= 0) throw ValidationError("polynomial generator needs positive degree");
    std::vector<std::size_t> dims(top + 1, 0);
    for (int d = 0; d <= top; d += degree) dims[d] = 1;
    TableAlgebra a(top, dims);
    a.unit_ = QMatrix{{1}};
    for (int p = 0; p <= top; p += degree)
        for (int q = 0; p + q <= top; q += degree) a.products_[{p, q}] = QMatrix{{1}};
    return a;
}

TableAlgebra TableAlgebra::group_algebra(const FiniteGroup& g) {
    g.validate();
    const std::size_t n = g.order();
    TableAlgebra a(0, {n});
    a.unit_ = unit_vec(n, g.identity());
    QMatrix T(n, n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) T(g.mul(x, y), x * n + y) = 1;
    a.products_[{0, 0}] = std::move(T);
    return a;
}

void GroupAction::validate(const TableAlgebra& u) const {
    group.validate();
    const std::size_t n = group.order();
    if (matrices.size() != n) throw InvalidAction("one family of matrices per group element expected");
    for (std::size_t g = 0; g < n; ++g) {
        if (static_cast<int>(matrices[g].size()) != u.top() + 1) throw InvalidAction("action matrices per degree missing");
        for (int d = 0; d <= u.top(); ++d)
            if (!same_shape(matrices[g][d], u.dim(d), u.dim(d))) throw InvalidAction("action matrix has the wrong shape");
    }
    const std::size_t e = group.identity();
    for (int d = 0; d <= u.top(); ++d) {
        if (on(e, d) != QMatrix::identity(u.dim(d))) throw InvalidAction("identity does not act trivially");
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h)
                if (on(g, d) * on(h, d) != on(group.mul(g, h), d)) throw InvalidAction("action is not a representation");
    }
    for (std::size_t g = 0; g < n; ++g) {
        if (on(g, 0) * u.unit() != u.unit()) throw InvalidAction("action does not fix the unit");
        for (int a = 0; a <= u.top(); ++a)
            for (int b = 0; a + b <= u.top(); ++b)
                for (std::size_t i = 0; i < u.dim(a); ++i)
                    for (std::size_t j = 0; j < u.dim(b); ++j) {
                        const QMatrix x = u.basis_vector(a, i), y = u.basis_vector(b, j);
                        if (on(g, a + b) * u.multiply(a, x, b, y) != u.multiply(a, on(g, a) * x, b, on(g, b) * y))
                            throw InvalidAction("group does not act by algebra automorphisms");
                    }
    }
}

GroupAction GroupAction::by_sign(const TableAlgebra& u, FiniteGroup g, const std::vector<int>& sign, int step) {
    GroupAction act;
    act.group = std::move(g);
    for (std::size_t x = 0; x < act.group.order(); ++x) {
        std::vector<QMatrix> per;
        for (int d = 0; d <= u.top(); ++d) {
            const int s = (d / step) % 2 == 1 ? sign[x] : 1;
            per.push_back(QMatrix::identity(u.dim(d)).scaled(mpq_class(s)));
        }
        act.matrices.push_back(std::move(per));
    }
    return act;
}

Semidirect semidirect(const TableAlgebra& u, const GroupAction& action) {
    action.validate(u);
    const FiniteGroup& G = action.group;
    const std::size_t n = G.order();
    std::vector<std::size_t> dims;
    for (int d = 0; d <= u.top(); ++d) dims.push_back(u.dim(d) * n);
    TableAlgebra a(u.top(), dims);
    QMatrix unit(dims[0], 1);
    for (std::size_t i = 0; i < u.dim(0); ++i) unit(i * n + G.identity(), 0) = u.unit()(i, 0);
    a.set_unit(unit);
    for (int p = 0; p <= u.top(); ++p)
        for (int q = 0; p + q <= u.top(); ++q) {
            if (!dims[p] || !dims[q] || !dims[p + q]) continue;
            QMatrix T(dims[p + q], dims[p] * dims[q]);
            for (std::size_t i = 0; i < u.dim(p); ++i)
                for (std::size_t g = 0; g < n; ++g)
                    for (std::size_t j = 0; j < u.dim(q); ++j)
                        for (std::size_t h = 0; h < n; ++h) {
                            QMatrix prod = u.multiply(p, u.basis_vector(p, i), q, action.on(g, q) * u.basis_vector(q, j));
                            const std::size_t col = (i * n + g) * dims[q] + (j * n + h);
                            for (std::size_t k = 0; k < prod.rows(); ++k) T(k * n + G.mul(g, h), col) += prod(k, 0);
                        }
            a.set_product(p, q, std::move(T));
        }
    Semidirect out{a, G, {}};
    for (std::size_t g = 0; g < n; ++g) {
        QMatrix v(dims[0], 1);
        for (std::size_t i = 0; i < u.dim(0); ++i) v(i * n + g, 0) = u.unit()(i, 0);
        out.group_elements.push_back(std::move(v));
    }
    return out;
}

std::size_t piece_dimension(const TableAlgebra& a, const QMatrix& e, const QMatrix& f, int d) {
    return rank(a.left_multiplication(0, e, d) * a.right_multiplication(0, f, d));
}

CornerData idempotents(const Semidirect& s) {
    const TableAlgebra& A = s.algebra;
    CornerData c;
    c.epsilon = QMatrix(A.dim(0), 1);
    for (const auto& g : s.group_elements) c.epsilon = c.epsilon + g;
    c.epsilon = c.epsilon.scaled(mpq_class(1, static_cast<long>(s.group.order())));
    c.omega = A.unit() - c.epsilon;
    for (int d = 0; d <= A.top(); ++d) {
        const QMatrix L = A.left_multiplication(0, c.omega, d), R = A.right_multiplication(0, c.omega, d);
        c.corner.push_back(column_basis(L * R));
        c.left_piece.push_back(column_basis(L));
        c.right_piece.push_back(column_basis(R));
    }
    return c;
}

QMatrix TableModule::act(int a, const QMatrix& x, int d) const {
    QMatrix m(dim(d + a), dim(d));
    if (m.rows() == 0 || m.cols() == 0) return m;
    auto it = action.find({a, d});
    if (it == action.end()) return m;
    for (std::size_t k = 0; k < it->second.size(); ++k)
        if (x(k, 0) != 0) m = m + it->second[k].scaled(x(k, 0));
    return m;
}

void TableModule::validate(const TableAlgebra& A) const {
    if (static_cast<int>(dims.size()) != hi - lo + 1) throw ValidationError("module needs one dimension per degree");
    for (const auto& [key, mats] : action) {
        const auto [a, d] = key;
        if (mats.size() != A.dim(a)) throw ValidationError("module action needs one matrix per basis element");
        for (const auto& m : mats)
            if (!same_shape(m, dim(d + a), dim(d))) throw ValidationError("module action matrix has the wrong shape");
    }
    for (int d = lo; d <= hi; ++d)
        if (act(0, A.unit(), d) != QMatrix::identity(dim(d)))
            throw ValidationError("unit does not act as the identity in degree " + std::to_string(d));
    for (int d = lo; d <= hi; ++d)
        for (int a = 0; d + a <= hi && a <= A.top(); ++a)
            for (int b = 0; d + a + b <= hi && a + b <= A.top(); ++b)
                for (std::size_t i = 0; i < A.dim(a); ++i)
                    for (std::size_t j = 0; j < A.dim(b); ++j) {
                        const QMatrix x = A.basis_vector(a, i), y = A.basis_vector(b, j);
                        bool ok;
                        if (side == Side::Right)  // (m x) y = m (x y)
                            ok = act(b, y, d + a) * act(a, x, d) == act(a + b, A.multiply(a, x, b, y), d);
                        else  // y (x m) = (y x) m
                            ok = act(b, y, d + a) * act(a, x, d) == act(a + b, A.multiply(b, y, a, x), d);
                        if (!ok) throw ValidationError("module action is not associative from degree " + std::to_string(d));
                    }
}

TableModule graded_dual(const TableModule& m) {
    TableModule out;
    out.side = m.side == Side::Left ? Side::Right : Side::Left;
    out.lo = -m.hi;
    out.hi = -m.lo;
    out.dims.assign(m.dims.rbegin(), m.dims.rend());
    out.complete = m.complete;
    // x acting on f in degree j is the transpose of x acting from M<-j-a> to M<-j>
    for (const auto& [key, mats] : m.action) {
        const auto [a, d] = key;
        std::vector<QMatrix> t;
        for (const auto& x : mats) t.push_back(x.transpose());
        out.action[{a, -d - a}] = std::move(t);
    }
    return out;
}

TableModule regular_module(const TableAlgebra& A, Side side) {
    TableModule m;
    m.side = side;
    m.lo = 0;
    m.hi = A.top();
    m.complete = false;
    for (int d = 0; d <= A.top(); ++d) m.dims.push_back(A.dim(d));
    for (int a = 0; a <= A.top(); ++a)
        for (int d = 0; d + a <= A.top(); ++d) {
            std::vector<QMatrix> mats;
            for (std::size_t k = 0; k < A.dim(a); ++k) {
                const QMatrix x = A.basis_vector(a, k);
                mats.push_back(side == Side::Left ? A.left_multiplication(a, x, d) : A.right_multiplication(a, x, d));
            }
            m.action[{a, d}] = std::move(mats);
        }
    return m;
}

std::size_t NullTable::at(int p, int q) const {
    auto it = ext.find({p, q});
    return it == ext.end() ? 0 : it->second;
}

namespace {

struct Generator {
    int degree;
    QMatrix vector;  // P<degree> coordinates for F0, F0<degree> coordinates for F1
};

/// Ext over S = Q[y] of P = (M^)omega into N = (omega A)^, degreewise in homological j.
class CornerExt {
public:
    CornerExt(const TableModule& m, const Semidirect& s, const CornerData& c) : m_(m), A_(s.algebra), c_(c) {
        if (m.side != Side::Left) throw ValidationError("null_via_corner expects a left module");
        dual_ = graded_dual(m);
        detect_corner();
        build_p();
        if (c_deg_ > 0) resolve();
        else
            for (int d = dual_.lo; d <= dual_.hi; ++d)
                if (p_basis(d).cols()) gens_.push_back({d, QMatrix()});
    }

    int corner_degree() const { return c_deg_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Generator>& relations() const { return rels_; }

    /// Lowest j for which Hom(F_k, N)<j> only needs N inside the algebra window.
    int lowest_valid_j() const {
        int lo = INT_MIN / 4;
        for (const auto& g : gens_) lo = std::max(lo, -A_.top() - g.degree);
        for (const auto& h : rels_) lo = std::max(lo, -A_.top() - h.degree);
        if (!m_.complete) lo = std::max(lo, -known_top_);
        return lo;
    }

    std::size_t n_dim(int j) const { return j > 0 || j < -A_.top() ? 0 : c_.left_piece[-j].cols(); }

    /// f -> f y^k on N, from N<j> to N<j + k c>.
    QMatrix n_power(int j, int k) const {
        QMatrix r = QMatrix::identity(n_dim(j));
        for (int i = 0; i < k; ++i) {
            const int from = j + i * c_deg_;
            r = n_y(from) * r;
        }
        return r;
    }

    QMatrix hom_differential(int j) const {
        std::vector<std::size_t> off0, off1;
        std::size_t n0 = 0, n1 = 0;
        for (const auto& g : gens_) {
            off0.push_back(n0);
            n0 += n_dim(j + g.degree);
        }
        for (const auto& h : rels_) {
            off1.push_back(n1);
            n1 += n_dim(j + h.degree);
        }
        QMatrix D(n1, n0);
        for (std::size_t hi = 0; hi < rels_.size(); ++hi) {
            const auto& h = rels_[hi];
            const auto basis = f0_basis(h.degree);
            for (std::size_t t = 0; t < basis.size(); ++t) {
                const mpq_class& coef = h.vector(t, 0);
                if (coef == 0) continue;
                const auto [gi, k] = basis[t];
                QMatrix blk = n_power(j + gens_[gi].degree, k).scaled(coef);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t cc = 0; cc < blk.cols(); ++cc) D(off1[hi] + r, off0[gi] + cc) += blk(r, cc);
            }
        }
        if (D.rows() == 0) D = QMatrix(0, n0);
        return D;
    }

    std::size_t hom0_dim(int j) const {
        std::size_t n = 0;
        for (const auto& g : gens_) n += n_dim(j + g.degree);
        return n;
    }
    std::size_t hom1_dim(int j) const {
        std::size_t n = 0;
        for (const auto& h : rels_) n += n_dim(j + h.degree);
        return n;
    }

    /// Unit M<j> -> Hom(F0, N)<j>: m goes to g -> (z -> g(z m)).
    QMatrix unit_map(int j) const {
        QMatrix U(hom0_dim(j), m_.dim(j));
        std::size_t off = 0;
        for (const auto& g : gens_) {
            const int e = -j - g.degree;  // degree of z in omega A
            const std::size_t nd = n_dim(j + g.degree);
            if (nd) {
                // g as a functional on M<-deg g>
                QMatrix gf = p_basis(g.degree) * g.vector;
                for (std::size_t t = 0; t < nd; ++t) {
                    QMatrix z = c_.left_piece[e].column(t);
                    QMatrix row = gf.transpose() * m_.act(e, z, j);
                    for (std::size_t c = 0; c < row.cols(); ++c) U(off + t, c) = row(0, c);
                }
            }
            off += nd;
        }
        return U;
    }

private:
    void detect_corner() {
        if (c_.corner_dim(0) == 0) {
            c_deg_ = 0;  // omega = 0
            return;
        }
        if (c_.corner_dim(0) != 1) throw CornerNotResolvable("corner algebra is not connected");
        for (int d = 1; d <= A_.top(); ++d)
            if (c_.corner_dim(d)) {
                c_deg_ = d;
                break;
            }
        if (c_deg_ == 0) throw CornerNotResolvable("no positive-degree corner element inside the window");
        y_ = c_.corner[c_deg_].column(0);
        QMatrix pw = y_;
        for (int d = c_deg_ + 1; d <= A_.top(); ++d) {
            const bool on_grid = d % c_deg_ == 0;
            if (!on_grid) {
                if (c_.corner_dim(d)) throw CornerNotResolvable("corner algebra is not a polynomial ring on one generator");
                continue;
            }
            pw = A_.multiply(d - c_deg_, pw, c_deg_, y_);
            if (c_.corner_dim(d) != 1 || pw.is_zero())
                throw CornerNotResolvable("corner algebra is not a polynomial ring on one generator");
        }
        if (c_deg_ > A_.top() / 2) throw CornerNotResolvable("window too small to see the corner algebra");
    }

    QMatrix p_basis(int d) const {
        auto it = p_.find(d);
        return it == p_.end() ? QMatrix(dual_.dim(d), 0) : it->second;
    }

    void build_p() {
        const QMatrix& w = c_.omega;
        for (int d = dual_.lo; d <= dual_.hi; ++d) p_[d] = column_basis(dual_.act(0, w, d));
        known_top_ = dual_.hi;
        // P is trusted in degrees where omega and y act from inside the algebra window
        if (dual_.hi - dual_.lo > A_.top() && m_.complete)
            throw WindowTooSmall("algebra window shorter than the module's support");
    }

    // y on P, from P<d> to P<d + c>.
    QMatrix p_y(int d) const {
        QMatrix src = p_basis(d), dst = p_basis(d + c_deg_);
        if (src.cols() == 0 || dst.cols() == 0) return QMatrix(dst.cols(), src.cols());
        auto x = solve(dst, dual_.act(c_deg_, y_, d) * src);
        if (!x) throw CornerNotResolvable("corner action leaves the omega part");
        return *x;
    }

    QMatrix n_y(int j) const {
        // f -> f y is the transpose of z -> y z from (omega A)<-j-c> to (omega A)<-j>
        const int e = -j - c_deg_;
        const std::size_t rows = n_dim(j + c_deg_), cols = n_dim(j);
        if (rows == 0 || cols == 0) return QMatrix(rows, cols);
        const QMatrix& src = c_.left_piece[e];
        const QMatrix& dst = c_.left_piece[-j];
        auto L = solve(dst, A_.left_multiplication(c_deg_, y_, e) * src);
        if (!L) throw CornerNotResolvable("corner action leaves omega A");
        return L->transpose();
    }

    // Basis of F0<d>: (generator, power) pairs.
    std::vector<std::pair<std::size_t, int>> f0_basis(int d) const {
        std::vector<std::pair<std::size_t, int>> b;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            const int diff = d - gens_[g].degree;
            if (diff >= 0 && diff % c_deg_ == 0) b.push_back({g, diff / c_deg_});
        }
        return b;
    }

    QMatrix augmentation(int d) const {
        const auto basis = f0_basis(d);
        const std::size_t pd = p_basis(d).cols();
        QMatrix E(pd, basis.size());
        for (std::size_t t = 0; t < basis.size(); ++t) {
            const auto [g, k] = basis[t];
            QMatrix v = gens_[g].vector;
            for (int i = 0; i < k; ++i) v = p_y(gens_[g].degree + i * c_deg_) * v;
            for (std::size_t r = 0; r < pd; ++r) E(r, t) = v(r, 0);
        }
        return E;
    }

    // Multiplication by y on F0, from F0<d> to F0<d + c>.
    QMatrix f0_shift(int d) const {
        const auto src = f0_basis(d), dst = f0_basis(d + c_deg_);
        QMatrix S(dst.size(), src.size());
        for (std::size_t t = 0; t < src.size(); ++t)
            for (std::size_t u = 0; u < dst.size(); ++u)
                if (dst[u].first == src[t].first && dst[u].second == src[t].second + 1) S(u, t) = 1;
        return S;
    }

    void resolve() {
        const int lo = dual_.lo;
        const int top = m_.complete ? dual_.hi + c_deg_ : dual_.hi;
        for (int d = lo; d <= dual_.hi; ++d) {
            QMatrix image = d - c_deg_ >= lo ? p_y(d - c_deg_) : QMatrix(p_basis(d).cols(), 0);
            QMatrix extra = complement(image, p_basis(d).cols());
            for (std::size_t k = 0; k < extra.cols(); ++k) gens_.push_back({d, extra.column(k)});
        }
        std::map<int, QMatrix> kernels;
        for (int d = lo; d <= top; ++d) {
            QMatrix K = nullspace(augmentation(d));
            QMatrix from_below(K.rows(), 0);
            if (auto it = kernels.find(d - c_deg_); it != kernels.end() && it->second.cols())
                from_below = f0_shift(d - c_deg_) * it->second;
            QMatrix span = from_below;
            if (span.cols()) span = column_basis(span);
            for (std::size_t k = 0; k < K.cols(); ++k) {
                QMatrix trial = span.hcat(K.column(k));
                if (rank(trial) > span.cols()) {
                    span = trial;
                    rels_.push_back({d, K.column(k)});
                }
            }
            kernels[d] = K;
        }
        // over a graded PID the kernel is free: check F1 -> F0 is injective where computed
        for (int d = lo; d <= top; ++d) {
            std::size_t f1 = 0;
            QMatrix img(f0_basis(d).size(), 0);
            for (const auto& h : rels_) {
                const int diff = d - h.degree;
                if (diff < 0 || diff % c_deg_) continue;
                QMatrix v = h.vector;
                for (int i = 0; i < diff / c_deg_; ++i) v = f0_shift(h.degree + i * c_deg_) * v;
                img = img.hcat(v);
                ++f1;
            }
            if (rank(img) != f1) throw CornerNotResolvable("no free resolution of length one in the window");
        }
    }

    const TableModule& m_;
    const TableAlgebra& A_;
    const CornerData& c_;
    TableModule dual_;
    int c_deg_ = 0;
    QMatrix y_;
    int known_top_ = 0;
    std::map<int, QMatrix> p_;
    std::vector<Generator> gens_, rels_;
};

void check_window(const CornerExt& ce, int q_hi) {
    if (-q_hi < ce.lowest_valid_j())
        throw WindowTooSmall("Ext is only determined for q <= " + std::to_string(-ce.lowest_valid_j()) +
                             "; enlarge the algebra window");
}

}  // namespace

NullTable null_via_corner(const TableModule& m, const Semidirect& a, const CornerData& c, int q_lo, int q_hi) {
    m.validate(a.algebra);
    CornerExt ce(m, a, c);
    check_window(ce, q_hi);
    NullTable t;
    t.q_lo = q_lo;
    t.q_hi = q_hi;
    t.corner_degree = ce.corner_degree();
    for (const auto& g : ce.generators()) t.generator_degrees.push_back(g.degree);
    for (const auto& h : ce.relations()) t.relation_degrees.push_back(h.degree);
    for (int q = q_lo; q <= q_hi; ++q) {
        const int j = -q;
        const QMatrix D = ce.hom_differential(j);
        const std::size_t r = rank(D);
        t.ext[{0, q}] = ce.hom0_dim(j) - r;
        t.ext[{1, q}] = ce.hom1_dim(j) - r;
    }
    return t;
}

EquivariantPage equivariant_page(const TableModule& hf, const Semidirect& a, int q_lo, int q_hi) {
    if (hf.side != Side::Right) throw ValidationError("H_*(F) must be a right module");
    hf.validate(a.algebra);
    const TableModule M = graded_dual(hf);
    const CornerData c = idempotents(a);
    EquivariantPage out;
    out.null = null_via_corner(M, a, c, q_lo, q_hi);
    CornerExt ce(M, a, c);
    BigradedPage& page = out.page;
    page.scalars = Scalars::rationals();
    page.cohomological = true;
    page.p_min = -2;
    page.p_max = 0;
    page.q_min = q_lo;
    page.q_max = q_hi;
    page.provenance = "triangle of H^*(F): kernel and cokernel of the unit into Ext^0, then Ext^i in column -(i+1)";
    out.invariants_match = true;
    for (int q = q_lo; q <= q_hi; ++q) {
        const int j = -q;
        const QMatrix U = ce.unit_map(j);
        if (!(ce.hom_differential(j) * U).is_zero()) throw Error("unit map does not land in Ext^0");
        const std::size_t ru = rank(U);
        const std::size_t e0 = M.dim(j) - ru;
        page.entries[{0, q}] = FGAbGroup::vector_space(e0);
        page.entries[{-1, q}] = FGAbGroup::vector_space(out.null.at(0, q) - ru);
        page.entries[{-2, q}] = FGAbGroup::vector_space(out.null.at(1, q));
        // G-invariants of M<j>
        QMatrix stacked(0, M.dim(j));
        for (const auto& g : a.group_elements)
            stacked = stacked.vcat(M.act(0, g, j) - QMatrix::identity(M.dim(j)));
        const std::size_t inv = M.dim(j) ? nullspace(stacked.rows() ? stacked : QMatrix(1, M.dim(j))).cols() : 0;
        if (inv != e0) out.invariants_match = false;
    }
    return out;
}

Rp2nExample rp2n(int n, int top) {
    if (n < 1) throw ValidationError("rp2n needs n >= 1");
    const int deg = 2 * n - 1;
    if (top < 2 * deg) throw ValidationError("rp2n window must reach degree " + std::to_string(2 * deg));
    TableAlgebra U = TableAlgebra::polynomial(deg, top);
    GroupAction act = GroupAction::by_sign(U, FiniteGroup::cyclic(2), {1, -1}, deg);
    Rp2nExample ex;
    ex.n = n;
    ex.algebra = semidirect(U, act);
    // Q[G] in degree 0, u # g acting by aug(u) times right multiplication by g
    TableModule f;
    f.side = Side::Right;
    f.lo = 0;
    f.hi = 0;
    f.dims = {2};
    std::vector<QMatrix> mats;
    for (std::size_t g = 0; g < 2; ++g) {
        QMatrix R(2, 2);
        for (std::size_t h = 0; h < 2; ++h) R(ex.algebra.group.mul(h, g), h) = 1;
        mats.push_back(R);
    }
    f.action[{0, 0}] = mats;
    ex.fiber = std::move(f);
    return ex;
}

}  // namespace colocal
