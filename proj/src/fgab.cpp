#include "colocal/fgab.hpp"

#include "colocal/errors.hpp"

#include <algorithm>

namespace colocal {

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Scalars Scalars::prime_field(unsigned long p) {
    if (!is_prime(p)) throw ValidationError("prime field characteristic must be prime, got " + std::to_string(p));
    return {ScalarKind::PrimeField, p};
}

std::string Scalars::name() const {
    switch (kind) {
    case ScalarKind::Integers: return "ZZ";
    case ScalarKind::Rationals: return "QQ";
    case ScalarKind::PrimeField: return "GF(" + std::to_string(characteristic) + ")";
    }
    return "?";
}

Scalars Scalars::parse(const std::string& text) {
    if (text == "ZZ" || text == "integers" || text == "Z") return integers();
    if (text == "QQ" || text == "rationals" || text == "Q") return rationals();
    std::string body = text;
    for (const char* prefix : {"GF(", "F(", "F_", "GF", "F"}) {
        std::string pre = prefix;
        if (body.rfind(pre, 0) == 0) {
            body = body.substr(pre.size());
            if (!body.empty() && body.back() == ')') body.pop_back();
            try {
                return prime_field(std::stoul(body));
            } catch (const std::logic_error&) {
                break;
            }
        }
    }
    throw ValidationError("unknown scalars: " + text);
}

FGAbGroup::FGAbGroup(std::size_t free_rank, const std::vector<mpz_class>& cyclic_orders) : free_rank_(free_rank) {
    // Collect prime-power parts and rebuild the invariant factors from the
    // elementary divisors; the inputs are tiny, so trial division is fine.
    std::vector<mpz_class> orders;
    for (mpz_class d : cyclic_orders) {
        d = abs(d);
        if (d == 0) ++free_rank_;
        else if (d != 1) orders.push_back(d);
    }
    if (orders.empty()) return;
    // Invariant factors via repeated gcd/lcm normalization of the multiset.
    // Sorting by divisibility: d_i <- gcd, d_j <- lcm preserves the group.
    for (std::size_t i = 0; i < orders.size(); ++i)
        for (std::size_t j = i + 1; j < orders.size(); ++j) {
            mpz_class g, l;
            mpz_gcd(g.get_mpz_t(), orders[i].get_mpz_t(), orders[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), orders[i].get_mpz_t(), orders[j].get_mpz_t());
            orders[i] = g;
            orders[j] = l;
        }
    for (auto& d : orders)
        if (d != 1) torsion_.push_back(d);
}

FGAbGroup FGAbGroup::cyclic(long order) { return FGAbGroup(0, {mpz_class(order)}); }

mpz_class FGAbGroup::torsion_order() const {
    mpz_class o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
}

FGAbGroup FGAbGroup::direct_sum(const FGAbGroup& other) const {
    std::vector<mpz_class> all = torsion_;
    all.insert(all.end(), other.torsion_.begin(), other.torsion_.end());
    return FGAbGroup(free_rank_ + other.free_rank_, all);
}

FGAbGroup FGAbGroup::as_vector_space(const Scalars& s) const {
    switch (s.kind) {
    case ScalarKind::Integers: return *this;
    case ScalarKind::Rationals: return rationalized();
    case ScalarKind::PrimeField: {
        std::size_t dim = free_rank_;
        for (const auto& d : torsion_)
            if (d % s.characteristic == 0) ++dim;
        return vector_space(dim);
    }
    }
    return *this;
}

std::string FGAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    auto add = [&](const std::string& part) {
        if (!s.empty()) s += " + ";
        s += part;
    };
    if (free_rank_ == 1) add("Z");
    else if (free_rank_ > 1) add("Z^" + std::to_string(free_rank_));
    // Group equal factors: (Z/2)^3
    for (std::size_t i = 0; i < torsion_.size();) {
        std::size_t j = i;
        while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
        std::string f = "Z/" + torsion_[i].get_str();
        add(j - i == 1 ? f : "(" + f + ")^" + std::to_string(j - i));
        i = j;
    }
    return s;
}

}  // namespace colocal
