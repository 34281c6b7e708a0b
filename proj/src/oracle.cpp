#include "discop/oracle.hpp"

#include "discop/classify.hpp"

namespace discop {

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix out(n_);
    for (std::int64_t i = 0; i < n_; ++i)
        for (std::int64_t k = 0; k < n_; ++k) {
            const ComplexRat& v = at(i, k);
            if (v.is_zero()) continue;
            for (std::int64_t j = 0; j < n_; ++j) out.at(i, j) = out.at(i, j) + v * o.at(k, j);
        }
    return out;
}

std::int64_t WeightedMatrixRep::index_of(const Label& x) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == x) return static_cast<std::int64_t>(i);
    return -1;
}

WeightedMatrixRep build_matrices(const FiniteInstance& inst) {
    auto ns = check_nonsingular(inst);
    if (auto* v = std::get_if<NonsingularityViolation>(&ns)) throw NotNonsingular(v->witness);

    WeightedMatrixRep rep;
    rep.basis = inst.support();
    auto n = static_cast<std::int64_t>(rep.basis.size());
    for (const Label& x : rep.basis) rep.gram.push_back(inst.mu(x));
    rep.m_c = Matrix(n);
    rep.m_c_star = Matrix(n);
    for (std::int64_t y = 0; y < n; ++y) {
        std::int64_t x = rep.index_of(inst.phi(rep.basis[static_cast<std::size_t>(y)]));
        // Nonsingularity keeps the support closed under the map.
        rep.m_c.at(y, x) = ComplexRat(Rat(1));
        rep.m_c_star.at(x, y) = ComplexRat(rep.gram[static_cast<std::size_t>(y)] /
                                           rep.gram[static_cast<std::size_t>(x)]);
    }
    return rep;
}

bool oracle_normal(const FiniteInstance& inst) {
    WeightedMatrixRep rep = build_matrices(inst);
    return rep.m_c_star * rep.m_c == rep.m_c * rep.m_c_star;
}

bool oracle_quasinormal(const FiniteInstance& inst) {
    WeightedMatrixRep rep = build_matrices(inst);
    return rep.m_c_star * rep.m_c * rep.m_c == rep.m_c * rep.m_c_star * rep.m_c;
}

bool oracle_symmetric(const FiniteInstance& inst) {
    WeightedMatrixRep rep = build_matrices(inst);
    return rep.m_c == rep.m_c_star;
}

FinSuppFn column_fn(const WeightedMatrixRep& rep, const Matrix& m, const Label& x) {
    std::int64_t j = rep.index_of(x);
    if (j < 0) throw NotInSupport(x);
    FinSuppFn out;
    for (std::int64_t i = 0; i < m.size(); ++i)
        out.add(rep.basis[static_cast<std::size_t>(i)], m.at(i, j));
    return out;
}

FinSuppFn oracle_adjoint_column(const FiniteInstance& inst, const Label& x) {
    if (!inst.contains(x) || !inst.mu(x).is_positive()) throw NotInSupport(x);
    WeightedMatrixRep rep = build_matrices(inst);
    return column_fn(rep, rep.m_c_star, x);
}

namespace {

std::string describe(const FiniteInstance& fi) {
    std::string s = "phi=";
    bool first = true;
    for (const Label& x : fi.points()) {
        if (!first) s += ",";
        first = false;
        s += x.str() + "->" + fi.phi(x).str();
    }
    s += ";mu=";
    first = true;
    for (const Label& x : fi.points()) {
        if (!first) s += ",";
        first = false;
        s += x.str() + ":" + fi.mu(x).str();
    }
    return s;
}

}  // namespace

std::vector<FiniteInstance> enumerate_instances(std::int64_t max_points,
                                                const std::vector<Rat>& weight_grid) {
    if (max_points < 1 || max_points > 5)
        throw BadParameters("max_points must be between 1 and 5");
    bool has_positive = false;
    for (const Rat& w : weight_grid) {
        if (w.is_negative()) throw BadParameters("weights must be nonnegative");
        if (w.is_positive()) has_positive = true;
    }
    if (!has_positive) throw BadParameters("weight grid needs a positive value");

    std::vector<FiniteInstance> out;
    for (std::int64_t n = 1; n <= max_points; ++n) {
        std::vector<Label> points;
        for (std::int64_t i = 0; i < n; ++i) points.push_back(Label::named("x" + std::to_string(i)));
        std::int64_t phi_codes = 1;
        for (std::int64_t i = 0; i < n; ++i) phi_codes *= n;
        auto g = static_cast<std::int64_t>(weight_grid.size());
        std::int64_t mu_codes = 1;
        for (std::int64_t i = 0; i < n; ++i) mu_codes *= g;

        for (std::int64_t pc = 0; pc < phi_codes; ++pc) {
            std::map<Label, Label> phi;
            std::int64_t rest = pc;
            for (std::int64_t i = n - 1; i >= 0; --i) {
                phi[points[static_cast<std::size_t>(i)]] =
                    points[static_cast<std::size_t>(rest % n)];
                rest /= n;
            }
            for (std::int64_t mc = 0; mc < mu_codes; ++mc) {
                std::map<Label, Rat> mu;
                bool all_zero = true;
                std::int64_t mrest = mc;
                for (std::int64_t i = n - 1; i >= 0; --i) {
                    const Rat& w = weight_grid[static_cast<std::size_t>(mrest % g)];
                    if (w.is_positive()) all_zero = false;
                    mu[points[static_cast<std::size_t>(i)]] = w;
                    mrest /= g;
                }
                if (all_zero) continue;
                out.emplace_back(points, std::move(mu), phi);
            }
        }
    }
    return out;
}

CrosscheckReport exhaustive_crosscheck(std::int64_t max_points,
                                       const std::vector<Rat>& weight_grid) {
    CrosscheckReport report;
    for (const FiniteInstance& fi : enumerate_instances(max_points, weight_grid)) {
        Instance inst(fi);
        bool nonsingular = std::holds_alternative<std::monostate>(check_nonsingular(fi));
        auto verdict_str = [](const Verdict& v) {
            return v.is_holds() ? "Holds" : v.is_fails() ? "Fails" : "VerifiedOnWindow";
        };
        if (!nonsingular) {
            // Not an operator; every operator-level classifier must refuse.
            const std::pair<const char*, Verdict> checks[] = {
                {"normal", classify_normal(inst)},
                {"quasinormal", classify_quasinormal(inst)},
                {"formally_normal_on_basis", formally_normal_on_basis(inst)},
                {"symmetric", check_symmetric(inst).verdict},
            };
            for (const auto& [name, v] : checks)
                if (v.is_holds())
                    report.disagreements.push_back(
                        {describe(fi), name, verdict_str(v), "not an operator"});
            continue;
        }
        ++report.instances_enumerated;
        const std::tuple<const char*, Verdict, bool> checks[] = {
            {"normal", classify_normal(inst), oracle_normal(fi)},
            {"quasinormal", classify_quasinormal(inst), oracle_quasinormal(fi)},
            {"formally_normal_on_basis", formally_normal_on_basis(inst), oracle_normal(fi)},
            {"symmetric", check_symmetric(inst).verdict, oracle_symmetric(fi)},
        };
        for (const auto& [name, v, truth] : checks)
            if (v.is_holds() != truth)
                report.disagreements.push_back(
                    {describe(fi), name, verdict_str(v), truth ? "true" : "false"});
    }
    return report;
}

}  // namespace discop
