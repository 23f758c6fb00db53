#pragma once

#include "nilchar/cyclotomic.hpp"
#include "nilchar/finite_field.hpp"

namespace nilchar {

/// psi_a(x) = zeta_p^{Tr(a x)}. The map a -> psi_a identifies F with its
/// character group; every other module uses this single choice of psi.
class AdditiveCharacter
{
public:
    AdditiveCharacter(FiniteField field, FieldElement a) : field_(std::move(field)), a_(a) {}

    /// Exponent of the value as a power of zeta_p.
    unsigned exponent(FieldElement x) const { return field_.trace(field_.mul(a_, x)); }

    Cyclotomic operator()(FieldElement x) const
    {
        return Cyclotomic::root_of_unity(static_cast<int>(field_.characteristic()), exponent(x));
    }

    FieldElement parameter() const { return a_; }
    bool is_trivial() const { return field_.is_zero(a_); }

private:
    FiniteField field_;
    FieldElement a_;
};

inline AdditiveCharacter additive_character(const FiniteField& field, FieldElement a)
{
    return AdditiveCharacter(field, a);
}

} // namespace nilchar
