#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncm/exact_arith.hpp"

namespace ncm {

enum class FieldTag { rational, q_sqrt2 };

/// Diagonal quadratic form sum a_i x_i^2 over Q or Q(sqrt 2).
///
/// Coefficients are stored as QSqrt2 in both cases; a rational form has
/// every sqrt2 part equal to zero. All coefficients are nonzero.
class QuadraticForm {
public:
    QuadraticForm(FieldTag field, std::vector<QSqrt2> coefficients);

    static QuadraticForm over_q(const std::vector<Rational>& coefficients);

    FieldTag field() const { return field_; }
    std::size_t rank() const { return coefficients_.size(); }
    const std::vector<QSqrt2>& coefficients() const { return coefficients_; }

    /// Throws unless the form is over Q.
    std::vector<Rational> rational_coefficients() const;

    /// (positive, negative) counts under sqrt2 -> +1.414.., or under the
    /// conjugate embedding.
    std::pair<int, int> signature(bool conjugate_embedding = false) const;

    /// Value at an integer vector; length must equal rank.
    QSqrt2 evaluate(const std::vector<Integer>& x) const;

    QuadraticForm scaled(const QSqrt2& lambda) const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.field_ == b.field_ && a.coefficients_ == b.coefficients_;
    }

private:
    FieldTag field_;
    std::vector<QSqrt2> coefficients_;
};

std::string to_string(const QuadraticForm& form);

}  // namespace ncm
