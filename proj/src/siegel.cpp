#include "stheta/siegel.hpp"

#include <stdexcept>

namespace stheta {

Expansion siegel_phi(const Expansion& a) {
    if (a.genus < 1) throw std::invalid_argument("siegel_phi: genus 0 has no boundary");
    Expansion r;
    r.genus = a.genus - 1;
    r.weight = a.weight;
    r.trace_bound = a.trace_bound;
    r.form_label = a.form_label;
    for (FourierIndex& idx : enumerate_indices(r.genus, r.trace_bound)) {
        auto it = a.coeffs.find(extend_by_zero(idx, 1));
        if (it == a.coeffs.end())
            throw std::logic_error("siegel_phi: padded index missing from source expansion");
        r.coeffs.emplace(std::move(idx), it->second);
    }
    return r;
}

StableFamily theta_stable_family(const QuadraticForm& q, int max_genus, long long trace_bound,
                                 NodeBudget* budget) {
    if (max_genus < 0) throw std::invalid_argument("theta_stable_family: negative genus");
    StableFamily f;
    f.max_genus = max_genus;
    f.weight = Weight(q.rank, 2);
    f.trace_bound = trace_bound;
    for (int n = 0; n <= max_genus; ++n) f.members.push_back(theta_expansion(q, n, trace_bound, budget));
    StabilityReport rep = check_stability(f);
    if (!rep.coherent) throw std::logic_error("theta_stable_family: coherence failed at construction");
    return f;
}

StabilityReport check_stability(const std::vector<Expansion>& members) {
    StabilityReport rep;
    for (size_t n = 1; n < members.size(); ++n) {
        const Expansion& hi = members[n];
        const Expansion& lo = members[n - 1];
        if (hi.genus != lo.genus + 1 || hi.trace_bound != lo.trace_bound || !(hi.weight == lo.weight))
            throw std::invalid_argument("check_stability: members must have consecutive genera, equal weight and bound");
        Expansion pushed = siegel_phi(hi);
        auto il = lo.coeffs.begin();
        for (const auto& [idx, found] : pushed.coeffs) {
            if (il == lo.coeffs.end() || !(il->first == idx))
                throw std::logic_error("check_stability: index sets out of step");
            if (found != il->second) {
                rep.coherent = false;
                rep.failures.push_back({int(hi.genus), idx, il->second, found});
            }
            ++il;
        }
    }
    return rep;
}

StabilityReport check_stability(const StableFamily& f) { return check_stability(f.members); }

Expansion igusa_form(int genus, long long trace_bound, NodeBudget* budget) {
    QuadraticForm a = form_by_name("E8E8");
    QuadraticForm b = form_by_name("D16PLUS");
    return expansion_sub(theta_expansion(a, genus, trace_bound, budget),
                         theta_expansion(b, genus, trace_bound, budget));
}

CuspReport cusp_surrogate_check(const Expansion& a) {
    CuspReport rep;
    for (const auto& [idx, c] : a.coeffs) {
        if (!is_singular(idx)) continue;
        ++rep.singular_checked;
        if (c != 0) {
            rep.clean = false;
            rep.violations.push_back({idx, c});
        }
    }
    return rep;
}

SchottkyWitness schottky_witness(long long trace_bound, NodeBudget* budget) {
    SchottkyWitness w;
    if (trace_bound < 8) return w;
    QuadraticForm a = form_by_name("E8E8");
    QuadraticForm b = form_by_name("D16PLUS");
    for (const FourierIndex& idx : enumerate_indices(4, 8)) {
        bool diag2 = true;
        for (int i = 0; i < 4; ++i)
            if (idx.at(i, i) != 2) diag2 = false;
        if (!diag2) continue;
        ++w.scanned;
        long long d = representation_count(a, idx, budget) - representation_count(b, idx, budget);
        if (d != 0) {
            w.index = idx;
            w.value = d;
            return w;
        }
    }
    return w;
}

} // namespace stheta
