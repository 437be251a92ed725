#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace colocal {

enum class ScalarKind { Integers, Rationals, PrimeField };

/// Coefficient ring of a computation. Characteristic is 0 for the integers
/// and rationals and a prime for a prime field.
struct Scalars {
    ScalarKind kind = ScalarKind::Integers;
    unsigned long characteristic = 0;

    static Scalars integers() { return {ScalarKind::Integers, 0}; }
    static Scalars rationals() { return {ScalarKind::Rationals, 0}; }
    static Scalars prime_field(unsigned long p);

    bool is_field() const { return kind != ScalarKind::Integers; }
    std::string name() const;
    static Scalars parse(const std::string& text);

    friend bool operator==(const Scalars&, const Scalars&) = default;
};

/// Finitely generated abelian group in invariant-factor form:
/// Z^free_rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k.
/// Over a field the torsion list is empty and free_rank is the dimension.
class FGAbGroup {
public:
    FGAbGroup() = default;
    /// Normalizes arbitrary cyclic orders: units dropped, zeros become free
    /// summands, the rest merged into the divisibility chain.
    FGAbGroup(std::size_t free_rank, const std::vector<mpz_class>& cyclic_orders);

    static FGAbGroup zero() { return {}; }
    static FGAbGroup free(std::size_t rank) { return FGAbGroup(rank, {}); }
    static FGAbGroup cyclic(long order);
    /// Dimension-only group for field coefficients.
    static FGAbGroup vector_space(std::size_t dim) { return free(dim); }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& torsion() const { return torsion_; }
    bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
    /// Product of the torsion coefficients (1 for torsion-free groups).
    mpz_class torsion_order() const;

    FGAbGroup direct_sum(const FGAbGroup& other) const;
    /// Tensor with Q: keeps the free rank only.
    FGAbGroup rationalized() const { return free(free_rank_); }
    /// Reinterpret a Z-module annihilated by p as an F_p vector space.
    FGAbGroup as_vector_space(const Scalars& s) const;

    std::string to_string() const;

    friend bool operator==(const FGAbGroup&, const FGAbGroup&) = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<mpz_class> torsion_;
};

}  // namespace colocal
