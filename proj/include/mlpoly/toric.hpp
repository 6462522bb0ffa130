#pragma once

// Lattice-side computations for the associated toric manifold: the kernel torus,
// the shape of the identity component of the isometry group, and integrality criteria.

#include "mlpoly/equiv.hpp"
#include "mlpoly/intlinalg.hpp"
#include "mlpoly/structure.hpp"

namespace mlpoly {

struct KernelLattice {
    IMat basis;  // Hermite-reduced rows b with sum b_i eta_i = 0
    int rank() const { return static_cast<int>(basis.size()); }
};

namespace detail {

// n x N integer matrix whose columns are the conormals.
inline IMat conormal_matrix(const Polytope& p) {
    IMat a(p.n, IVec(p.N));
    for (int i = 0; i < p.N; ++i)
        for (int r = 0; r < p.n; ++r) a[r][i] = numer(p.eta[i][r]);
    return a;
}

inline IMat class_sum_matrix(const Polytope& p, const EquivClasses& ec) {
    IMat c(ec.classes.size(), IVec(p.N, Int(0)));
    for (std::size_t k = 0; k < ec.classes.size(); ++k)
        for (int i : ec.classes[k]) c[k][i] = 1;
    return c;
}

inline void require_lattice(const Polytope& p) {
    if (!p.lattice) throw Error(ErrorKind::NotSmooth, "toric computations need lattice mode");
    auto inv = smith_invariants(conormal_matrix(p));
    bool unimodular = static_cast<int>(inv.size()) == p.n;
    for (const auto& d : inv) unimodular = unimodular && d == 1;
    if (!unimodular) throw Error(ErrorKind::NotSmooth, "conormals do not generate the lattice");
}

}  // namespace detail

inline KernelLattice kernel_lattice(const Polytope& p) {
    detail::require_lattice(p);
    KernelLattice k;
    k.basis = integer_kernel(detail::conormal_matrix(p), p.N);
    return k;
}

struct IsomShape {
    std::vector<int> class_sizes;
    std::vector<std::string> factors;  // S1 for singleton classes, U(k) otherwise
    int pi1_rank = 0;
    std::optional<Int> pi1_torsion;  // order of the finite quotient when the rank is 0
};

inline IsomShape isometry_shape(const Polytope& p, const EquivClasses& ec) {
    auto k = kernel_lattice(p);
    IsomShape s;
    for (const auto& I : ec.classes) {
        s.class_sizes.push_back(static_cast<int>(I.size()));
        s.factors.push_back(I.size() == 1 ? "S1" : "U(" + std::to_string(I.size()) + ")");
    }
    const IMat c = detail::class_sum_matrix(p, ec);
    IMat image;  // class sums of each kernel basis vector
    for (const auto& b : k.basis) {
        IVec row(c.size(), Int(0));
        for (std::size_t r = 0; r < c.size(); ++r)
            for (int i = 0; i < p.N; ++i) row[r] += c[r][i] * b[i];
        image.push_back(row);
    }
    auto inv = smith_invariants(image);
    s.pi1_rank = static_cast<int>(ec.classes.size()) - static_cast<int>(inv.size());
    if (s.pi1_rank == 0) {
        Int t = 1;
        for (const auto& d : inv) t *= d;
        s.pi1_torsion = t;
    }
    return s;
}

inline IsomShape isometry_shape(const Polytope& p) { return isometry_shape(p, equivalence_classes(p)); }

struct IsomTriviality {
    enum class Kind { Trivial, Finite, Infinite } kind = Kind::Infinite;
    Int order = 0;                // 1 when trivial, m when finite, 0 when infinite
    std::optional<IVec> beta;     // integer beta with zero class sums mapping to H, when trivial
};

inline const char* triviality_name(IsomTriviality::Kind k) {
    switch (k) {
        case IsomTriviality::Kind::Trivial: return "trivial";
        case IsomTriviality::Kind::Finite: return "finite";
        case IsomTriviality::Kind::Infinite: return "infinite";
    }
    return "?";
}

// Least m >= 1 with m(H, 0) in the column lattice of [conormals; class sums].
inline IsomTriviality isom_triviality(const Polytope& p, const EquivClasses& ec, const IVec& H) {
    detail::require_lattice(p);
    if (static_cast<int>(H.size()) != p.n) throw Error(ErrorKind::InvalidArgument, "H has wrong dimension");
    IMat m = detail::conormal_matrix(p);
    for (auto& row : detail::class_sum_matrix(p, ec)) m.push_back(row);
    const std::size_t rows = m.size();
    // rows of [M^T | I]: after HNF, rows with a nonzero left part give a basis of
    // the column lattice of M together with the beta producing each
    IMat ext(p.N, IVec(rows + p.N, Int(0)));
    for (int i = 0; i < p.N; ++i) {
        for (std::size_t r = 0; r < rows; ++r) ext[i][r] = m[r][i];
        ext[i][rows + i] = 1;
    }
    Mat basis;
    IMat preimage;
    for (const auto& row : hnf(ext)) {
        IVec left(row.begin(), row.begin() + rows);
        if (std::all_of(left.begin(), left.end(), [](const Int& x) { return x == 0; })) continue;
        basis.push_back(to_vec(left));
        preimage.emplace_back(row.begin() + rows, row.end());
    }
    Vec target = zeros(rows);
    for (int r = 0; r < p.n; ++r) target[r] = H[r];
    IsomTriviality out;
    auto coords = coordinates(basis, target);
    if (!coords) return out;
    Int order = 1;
    for (const auto& x : *coords) order = lcm(order, denom(x));
    out.order = order;
    out.kind = order == 1 ? IsomTriviality::Kind::Trivial : IsomTriviality::Kind::Finite;
    if (order == 1) {
        IVec beta(p.N, Int(0));
        for (std::size_t k = 0; k < preimage.size(); ++k)
            for (int i = 0; i < p.N; ++i) beta[i] += numer((*coords)[k]) * preimage[k][i];
        out.beta = beta;
    }
    return out;
}

inline IsomTriviality isom_triviality(const Polytope& p, const IVec& H) {
    return isom_triviality(p, equivalence_classes(p), H);
}

struct SympReport {
    KernelLattice kernel;
    IsomShape shape;
    std::vector<IVec> integral_H;      // lattice of mass linear H in Z^n with gamma in Z^N
    std::vector<IVec> integral_gamma;  // matching coefficients
    bool no_lattice_mass_linear = false;  // pi_1(T) injectivity criterion
    bool product_of_simplices = false;    // compressibility criterion
    bool essential_lattice_H = false;     // some essential mass linear H in the lattice
};

inline SympReport symp_report(const Polytope& p, const VolumeData& vd, const EquivClasses& ec) {
    SympReport r;
    r.kernel = kernel_lattice(p);
    r.shape = isometry_shape(p, ec);
    auto ml = mass_linear_space(p, vd);
    if (ml.dimension() > 0) {
        // integer points of span{(H, gamma)}: the integer kernel of its annihilator
        Mat span;
        for (const auto& b : ml.basis) {
            Vec row = b.H;
            row.insert(row.end(), b.gamma.begin(), b.gamma.end());
            span.push_back(row);
        }
        const std::size_t dim = p.n + p.N;
        auto ann = kernel(span, dim);
        IMat cons = clear_denominators(ann);
        IMat lat = cons.empty() ? IMat{} : integer_kernel(cons, dim);
        if (cons.empty())
            for (std::size_t i = 0; i < dim; ++i) {
                IVec e(dim, Int(0));
                e[i] = 1;
                lat.push_back(e);
            }
        for (const auto& x : lat) {
            r.integral_H.emplace_back(x.begin(), x.begin() + p.n);
            r.integral_gamma.emplace_back(x.begin() + p.n, x.end());
        }
    }
    r.no_lattice_mass_linear = ml.dimension() == 0;
    r.product_of_simplices = product_recognition(p, ec).kind == ProductKind::Exact;
    r.essential_lattice_H = ml.dimension() > inessential_space(p, ec, nullptr).dimension();
    return r;
}

inline SympReport symp_report(const Polytope& p) {
    auto vd = volume_moments(p);
    return symp_report(p, vd, equivalence_classes(p));
}

}  // namespace mlpoly
