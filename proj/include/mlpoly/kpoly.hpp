#pragma once

// Sparse polynomials over Q in the support numbers kappa_1..kappa_N.

#include "mlpoly/errors.hpp"
#include "mlpoly/rational.hpp"

#include <array>
#include <map>
#include <utility>

namespace mlpoly {

class KPoly {
public:
    static constexpr int kMaxVars = 32;
    using Exp = std::array<std::uint8_t, kMaxVars>;
    using Terms = std::map<Exp, Rat>;

    explicit KPoly(int nvars = 0) : nvars_(nvars) {
        if (nvars < 0 || nvars > kMaxVars)
            throw Error(ErrorKind::InvalidArgument, "KPoly supports at most 32 variables");
    }

    static KPoly constant(int nvars, const Rat& c) {
        KPoly p(nvars);
        p.add_term(Exp{}, c);
        return p;
    }

    static KPoly variable(int nvars, int i) {
        KPoly p(nvars);
        Exp e{};
        e[i] = 1;
        p.add_term(e, 1);
        return p;
    }

    // sum_i c_i kappa_i
    static KPoly linear(const Vec& c) {
        KPoly p(static_cast<int>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            Exp e{};
            e[i] = 1;
            p.terms_.emplace(e, c[i]);
        }
        return p;
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exp& e, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    KPoly& operator+=(const KPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    KPoly& operator-=(const KPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    KPoly& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend KPoly operator+(KPoly a, const KPoly& b) { return a += b; }
    friend KPoly operator-(KPoly a, const KPoly& b) { return a -= b; }
    friend KPoly operator*(KPoly a, const Rat& s) { return a *= s; }
    friend KPoly operator*(const Rat& s, KPoly a) { return a *= s; }

    friend KPoly operator*(const KPoly& a, const KPoly& b) {
        KPoly r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e;
                for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
                r.add_term(e, ca * cb);
            }
        return r;
    }

    // this += a * b, where b is typically a short linear form.
    void add_product(const KPoly& a, const KPoly& b) {
        for (const auto& [eb, cb] : b.terms_)
            for (const auto& [ea, ca] : a.terms_) {
                Exp e;
                for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
                add_term(e, ca * cb);
            }
    }

    friend bool operator==(const KPoly& a, const KPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const KPoly& a, const KPoly& b) { return !(a == b); }

    KPoly derivative(int i) const {
        KPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exp d = e;
            --d[i];
            r.add_term(d, c * Rat(static_cast<int>(e[i])));
        }
        return r;
    }

    Rat eval(const Vec& x) const {
        std::vector<std::vector<Rat>> pw(nvars_);
        Rat total = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (int k = 0; k < nvars_; ++k) {
                if (e[k] == 0) continue;
                auto& cache = pw[k];
                if (cache.empty()) cache.push_back(Rat(1));
                while (static_cast<int>(cache.size()) <= e[k]) cache.push_back(cache.back() * x[k]);
                t *= cache[e[k]];
            }
            total += t;
        }
        return total;
    }

    double eval_double(const std::vector<double>& x) const {
        double total = 0;
        for (const auto& [e, c] : terms_) {
            double t = c.convert_to<double>();
            for (int k = 0; k < nvars_; ++k)
                for (int p = 0; p < e[k]; ++p) t *= x[k];
            total += t;
        }
        return total;
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k = 0; k < nvars_; ++k) s += e[k];
            d = std::max(d, s);
        }
        return d;
    }

    int degree_in(int i) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
        return d;
    }

    // Substitute x_t = sum_j L[t][j] y_j; result has L[0].size() variables.
    KPoly substitute(const Mat& L, int new_nvars) const {
        std::vector<std::vector<KPoly>> pw(nvars_);
        KPoly r(new_nvars);
        for (const auto& [e, c] : terms_) {
            KPoly t = constant(new_nvars, c);
            for (int k = 0; k < nvars_; ++k) {
                if (e[k] == 0) continue;
                auto& cache = pw[k];
                if (cache.empty()) {
                    cache.push_back(constant(new_nvars, 1));
                }
                while (static_cast<int>(cache.size()) <= e[k]) cache.push_back(cache.back() * linear(L[k]));
                t = t * cache[e[k]];
            }
            r += t;
        }
        return r;
    }

    // Coefficient of a monomial given as an exponent list.
    Rat coefficient(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    static std::vector<int> exps(const Exp& e, int nvars) { return std::vector<int>(e.begin(), e.begin() + nvars); }

private:
    int nvars_;
    Terms terms_;
};

}  // namespace mlpoly
